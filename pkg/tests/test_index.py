import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from hindiclir.corpus import Document, tokenize
from hindiclir.errors import CorruptIndexFile, DuplicateDocno, MalformedLine
from hindiclir.index import (RankedList, bm25_idf, build_index, format_run, load_index, parse_run, read_run,
                             save_index, score_bm25, write_run)
from hindiclir.lexicon import StopwordSet

VOCAB = "भारत लोकतंत्र डेमोक्रेसी इंडिया चुनाव बैंक किनारा सेना हमला नदी शहर".split()
NO_STOP = StopwordSet()


def random_corpus(rng, max_docs=50):
    docs = []
    for i in range(rng.randint(1, max_docs)):
        words = [rng.choice(VOCAB) for _ in range(rng.randint(0, 25))]
        docs.append(Document(f"d{rng.randint(0, 10**6)}-{i}", " ".join(words)))
    return docs


def random_query(rng):
    return [rng.choice(VOCAB + ["अनुपस्थित"]) for _ in range(rng.randint(1, 4))]


def test_bm25_matches_naive_scanner():
    rng = random.Random(1)
    for _ in range(150):
        docs = random_corpus(rng)
        index = build_index(docs, NO_STOP)
        toks = [(d.docno, tokenize(d.text)) for d in docs]
        for _ in range(5):
            q = random_query(rng)
            k1 = rng.choice([1.2, 0.5, 2.0])
            b = rng.choice([0.75, 0.0, 1.0])
            ranked = score_bm25(index, q, k1=k1, b=b)
            expected = oracles.naive_ranking(oracles.naive_bm25(toks, q, k1, b))
            assert [d for d, _ in ranked.entries] == [d for d, _ in expected] or \
                _same_up_to_float_ties(ranked.entries, expected)
            got = dict(ranked.entries)
            for docno, score in expected:
                assert abs(got[docno] - score) <= 1e-9


def _same_up_to_float_ties(a, b):
    # scores equal to within 1e-12 may order differently between the two sums
    return all(x[0] == y[0] or abs(x[1] - y[1]) < 1e-12 for x, y in zip(a, b)) and len(a) == len(b)


def test_idf_is_positive_even_for_ubiquitous_terms():
    assert bm25_idf(10, 10) > 0
    assert bm25_idf(10, 1) > bm25_idf(10, 5)


def test_ties_break_by_docno_and_zero_scores_are_omitted():
    docs = [Document("b", "भारत"), Document("a", "भारत"), Document("c", "नदी")]
    ranked = score_bm25(build_index(docs, NO_STOP), ["भारत"])
    assert ranked.docnos() == ["a", "b"]


def test_repeated_query_term_counts_twice():
    docs = [Document("a", "भारत नदी"), Document("b", "नदी नदी शहर"), Document("c", "शहर")]
    index = build_index(docs, NO_STOP)
    once = dict(score_bm25(index, ["भारत"]).entries)
    twice = dict(score_bm25(index, ["भारत", "भारत"]).entries)
    assert twice["a"] == pytest.approx(2 * once["a"])


def test_cutoff():
    docs = [Document(f"d{i:02d}", "भारत " * (i % 5 + 1)) for i in range(30)]
    index = build_index(docs, NO_STOP)
    assert len(score_bm25(index, ["भारत"], cutoff=7)) == 7
    assert len(score_bm25(index, ["भारत"])) == 30


def test_bad_params():
    index = build_index([Document("a", "x")], NO_STOP)
    for kw in ({"k1": 0}, {"b": 1.5}, {"cutoff": 0}):
        with pytest.raises(ValueError):
            score_bm25(index, ["x"], **kw)


def test_empty_index_and_query():
    empty = build_index([], NO_STOP)
    assert empty.N == 0 and empty.avgdl == 0.0
    assert len(score_bm25(empty, ["x"])) == 0
    index = build_index([Document("a", "x")], NO_STOP)
    assert len(score_bm25(index, [])) == 0


def test_index_statistics_and_stopwords():
    docs = [Document("a", "भारत में लोकतंत्र"), Document("b", "भारत के शहर")]
    index = build_index(docs)
    assert index.N == 2
    assert index.total_tokens == 4
    assert index.df("भारत") == 2 and index.df("में") == 0
    assert index.analyze_query("भारत में") == ["भारत"]
    assert index.ordinal("b") == 1
    assert "N=2" in repr(index)


def test_duplicate_docno():
    with pytest.raises(DuplicateDocno):
        build_index([Document("a", "x"), Document("a", "y")])


def test_save_load_preserves_rankings(tmp_path):
    rng = random.Random(5)
    for trial in range(20):
        docs = random_corpus(rng)
        index = build_index(docs)
        path = tmp_path / f"i{trial}.bin"
        save_index(index, path)
        loaded = load_index(path)
        assert loaded.doc_ids == index.doc_ids
        assert loaded.stopwords == index.stopwords
        for _ in range(10):
            q = random_query(rng)
            assert format_run([score_bm25(loaded, q, qid="1")]) == format_run([score_bm25(index, q, qid="1")])


def test_corrupt_index_files(tmp_path):
    path = tmp_path / "i.bin"
    save_index(build_index([Document("a", "भारत")]), path)
    data = path.read_bytes()
    cases = {
        "magic": b"XXXXXXXX" + data[8:],
        "version": data[:8] + b"\x09\x00\x00\x00" + data[12:],
        "flip": data[:20] + bytes([data[20] ^ 0xFF]) + data[21:],
        "short": data[:10],
        "truncated": data[:-9] + data[-4:],
    }
    for name, blob in cases.items():
        bad = tmp_path / f"{name}.bin"
        bad.write_bytes(blob)
        with pytest.raises(CorruptIndexFile):
            load_index(bad)


def test_run_file_round_trip(tmp_path):
    lists = [RankedList("26", [("D1", 2.5), ("D2", 1.0)]), RankedList("27", [("D9", 0.25)])]
    path = tmp_path / "x.run"
    write_run(lists, path, "tag")
    text = path.read_text()
    assert text.splitlines()[0] == "26 Q0 D1 1 2.500000 tag"
    back = read_run(path)
    assert back["26"].entries == [("D1", 2.5), ("D2", 1.0)]
    assert back["27"].docnos() == ["D9"]


def test_parse_run_orders_by_rank_and_rejects_junk():
    run = parse_run("1 Q0 b 2 1.0 t\n1 Q0 a 1 2.0 t\n\n")
    assert run["1"].docnos() == ["a", "b"]
    with pytest.raises(MalformedLine):
        parse_run("1 Q0 a 1 2.0\n")
    with pytest.raises(MalformedLine):
        parse_run("1 Q0 a first 2.0 t\n")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.sampled_from(VOCAB), max_size=10), min_size=1, max_size=12),
       st.lists(st.sampled_from(VOCAB), min_size=1, max_size=3))
def test_scores_sorted_and_only_matching_docs(doc_words, query):
    docs = [Document(f"d{i}", " ".join(w)) for i, w in enumerate(doc_words)]
    ranked = score_bm25(build_index(docs, NO_STOP), query)
    scores = [s for _, s in ranked.entries]
    assert scores == sorted(scores, reverse=True)
    matching = {f"d{i}" for i, w in enumerate(doc_words) if set(w) & set(query)}
    assert set(ranked.docnos()) == matching
