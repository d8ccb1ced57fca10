import io
import subprocess
import sys

import pytest

from conftest import write_collection
from hindiclir.cli import ExperimentConfig, main, read_config, ConfigError
from hindiclir.encoding import encode_iscii
from hindiclir.synthetic import make_collection


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(map(str, argv)), out=out)
    return code, out.getvalue()


def test_translate_worked_example(capsys):
    code, out = run_cli("translate", "Democracy in India", "--qid", "26")
    assert code == 0
    assert out.splitlines() == [
        "26\t00\tलोकतंत्र भारत",
        "26\t01\tलोकतंत्र इंडिया",
        "26\t10\tडेमोक्रेसी भारत",
        "26\t11\tडेमोक्रेसी इंडिया",
    ]
    assert "लोकतंत्र भारत" in capsys.readouterr().err


def test_translate_single_term():
    code, out = run_cli("translate", "India")
    assert code == 0 and len(out.splitlines()) == 2


def test_translate_stopwords_only_is_a_data_error(capsys):
    code, out = run_cli("translate", "in the")
    assert code == 2 and out == ""
    assert "EmptyQuery" in capsys.readouterr().err


def test_translate_cap_exceeded():
    code, _ = run_cli("translate", "Democracy India Bank", "--cap", "4")
    assert code == 2


def test_usage_errors_exit_1():
    assert run_cli()[0] == 1
    assert run_cli("bogus")[0] == 1
    assert run_cli("run", "--k1", "abc")[0] == 1


def test_index_empty_dir(tmp_path):
    (tmp_path / "empty").mkdir()
    code, out = run_cli("index", "--corpus", tmp_path / "empty")
    assert code == 0
    assert out == "N=0 tokens=0 vocabulary=0\n"


def test_index_three_docs_and_persist(tmp_path):
    corpus = tmp_path / "c.sgml"
    corpus.write_text("".join(f"<DOC><DOCNO>d{i}</DOCNO>भारत में शहर {i}</DOC>\n" for i in range(3)),
                      encoding="utf-8")
    code, out = run_cli("index", "--corpus", corpus, "--index-dir", tmp_path / "idx")
    assert code == 0
    assert out.startswith("N=3 ")
    assert (tmp_path / "idx" / "index.bin").exists()
    code, out = run_cli("search", "शहर", "--index-dir", tmp_path / "idx", "--cutoff", "2")
    assert code == 0 and len(out.splitlines()) == 2


def test_index_iscii_corpus(tmp_path):
    corpus = tmp_path / "c.isc"
    corpus.write_bytes(b"<DOC><DOCNO>a</DOCNO>" + encode_iscii("भारत") + b"</DOC>")
    code, out = run_cli("index", "--corpus", corpus, "--corpus-encoding", "iscii")
    assert code == 0 and out.startswith("N=1 tokens=1 ")


def test_index_corrupt_record(tmp_path, capsys):
    corpus = tmp_path / "bad.sgml"
    corpus.write_text("<DOC><DOCNO>a</DOCNO>x</DOC>\n<DOC><DOCNO>b</DOCNO>y", encoding="utf-8")
    code, _ = run_cli("index", "--corpus", corpus)
    err = capsys.readouterr().err
    assert code == 2
    assert "offset 29" in err and "bad.sgml" in err


def test_index_missing_corpus(tmp_path):
    assert run_cli("index", "--corpus", tmp_path / "nope")[0] == 1
    assert run_cli("index")[0] == 1


def test_run_both_modes(democracy_files, tmp_path):
    d = democracy_files
    out_dir = tmp_path / "out"
    code, out = run_cli("run", "--corpus", d / "corpus", "--topics", d / "topics.txt", "--qrels", d / "qrels.txt",
                        "-o", out_dir)
    assert code == 0
    assert sorted(p.name for p in out_dir.iterdir()) == ["ehrt.run", "eht.run", "report.csv", "report.txt"]
    report = (out_dir / "report.txt").read_text(encoding="utf-8")
    assert report == out
    map_row = next(line for line in report.splitlines() if line.startswith("MAP"))
    eht, ehrt = map(float, map_row.split()[1:])
    assert ehrt >= eht
    assert (eht, ehrt) == (0.3595, 1.0)


def test_run_is_deterministic_with_config_file(tmp_path):
    d = write_collection(tmp_path / "c", make_collection(8, num_docs=150))
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(
        "# experiment\n"
        f"corpus = {d / 'corpus'}\n"
        f"topics = {d / 'topics.txt'}\n"
        f"qrels = {d / 'qrels.txt'}\n"
        "k1 = 1.2\nb = 0.75\ncutoff = 1000\nworkers = 1\n",
        encoding="utf-8")
    assert run_cli("run", "--config", cfg, "-o", tmp_path / "a")[0] == 0
    assert run_cli("run", "--config", cfg, "-o", tmp_path / "b", "--workers", "4")[0] == 0
    for name in ("eht.run", "ehrt.run", "report.txt", "report.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_run_single_mode(democracy_files, tmp_path):
    d = democracy_files
    code, _ = run_cli("run", "--corpus", d / "corpus", "--topics", d / "topics.txt", "--qrels", d / "qrels.txt",
                      "-o", tmp_path / "o", "--mode", "EHT")
    assert code == 0
    assert sorted(p.name for p in (tmp_path / "o").iterdir()) == ["eht.run", "report.csv", "report.txt"]


def test_run_missing_qrels_fails_before_retrieval(democracy_files, tmp_path):
    d = democracy_files
    code, out = run_cli("run", "--corpus", d / "corpus", "--topics", d / "topics.txt",
                        "--qrels", tmp_path / "missing", "-o", tmp_path / "o")
    assert code == 1 and out == ""
    assert not (tmp_path / "o").exists()


def test_run_all_topics_skipped(democracy_files, tmp_path):
    d = democracy_files
    (d / "topics.txt").write_text("<top><num>26</num><title>in the</title></top>\n", encoding="utf-8")
    code, _ = run_cli("run", "--corpus", d / "corpus", "--topics", d / "topics.txt", "--qrels", d / "qrels.txt",
                      "-o", tmp_path / "o")
    assert code == 2


def test_evaluate(democracy_files, tmp_path):
    d = democracy_files
    run_cli("run", "--corpus", d / "corpus", "--topics", d / "topics.txt", "--qrels", d / "qrels.txt",
            "-o", tmp_path / "o")
    code, out = run_cli("evaluate", tmp_path / "o" / "ehrt.run", "--qrels", d / "qrels.txt")
    assert code == 0
    assert any(line.split() == ["MAP", "1.0000"] for line in out.splitlines())


def test_config_parsing(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("k1=2\n# x\n\ncutoff = 10\nmode = EHT\n", encoding="utf-8")
    cfg = read_config(p)
    assert (cfg.k1, cfg.cutoff, cfg.mode) == (2.0, 10, "EHT")
    for bad in ("nokey\n", "colour = red\n", "cutoff = many\n"):
        p.write_text(bad, encoding="utf-8")
        with pytest.raises(ConfigError):
            read_config(p)
    for field, value in (("k1", 0.0), ("b", 2.0), ("cutoff", 0), ("mode", "x"), ("policy", "x"), ("cap", 0)):
        cfg = ExperimentConfig()
        setattr(cfg, field, value)
        with pytest.raises(ConfigError):
            cfg.validate()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hindiclir", "translate", "India"], capture_output=True,
                          text=True, encoding="utf-8")
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].endswith("इंडिया")
