"""
The command-line pipeline on files
==================================

Writes a synthetic collection as SGML documents, topics and qrels, then
drives ``hindiclir index``, ``run`` and ``evaluate`` the same way a shell
script would.
"""
import tempfile
from pathlib import Path

from hindiclir.cli import main
from hindiclir.corpus import serialize_documents, serialize_qrels, serialize_topics
from hindiclir.synthetic import make_collection

work = Path(tempfile.mkdtemp(prefix="hindiclir-demo-"))
coll = make_collection(seed=3, num_docs=300, num_topics=10)
(work / "docs.sgml").write_text(serialize_documents(coll.documents), encoding="utf-8")
(work / "topics.txt").write_text(serialize_topics(coll.topics), encoding="utf-8")
(work / "qrels.txt").write_text(serialize_qrels(coll.qrels), encoding="utf-8")

# flat key = value config; flags override it
(work / "exp.cfg").write_text(
    f"index_dir = {work / 'index'}\n"
    f"topics = {work / 'topics.txt'}\n"
    f"qrels = {work / 'qrels.txt'}\n"
    "cutoff = 1000\n", encoding="utf-8")

assert main(["index", "--corpus", str(work / "docs.sgml"), "--index-dir", str(work / "index")]) == 0
assert main(["translate", coll.topics[0].title]) == 0
assert main(["run", "--config", str(work / "exp.cfg"), "-o", str(work / "out")]) == 0
assert main(["evaluate", str(work / "out" / "ehrt.run"), "--qrels", str(work / "qrels.txt")]) == 0
print("files in", work / "out", sorted(p.name for p in (work / "out").iterdir()))
