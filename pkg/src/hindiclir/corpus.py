"""FIRE/TREC collection readers and the shared tokenizer.

Documents and topics use the SGML-ish TREC layout (``<DOC>``/``<DOCNO>``/
``<TEXT>`` and ``<top>``/``<num>``/``<title>``...).  The scanner is
tag-driven and tolerant: unescaped ``&`` and unclosed topic fields are fine.
"""
from __future__ import annotations

import html
import io
import re
import unicodedata
from dataclasses import dataclass
from importlib import resources

from .errors import (
    DuplicateJudgment,
    DuplicateTopic,
    MalformedLine,
    MissingDocno,
    MissingTitle,
    UnterminatedRecord,
)
from .lexicon import StopwordSet


@dataclass(frozen=True)
class Document:
    docno: str
    text: str


@dataclass(frozen=True)
class Topic:
    qid: str
    title: str
    description: str | None = None
    narrative: str | None = None


class Qrels:
    """Relevance judgments keyed by ``(qid, docno)``."""

    def __init__(self, judgments=None):
        self.judgments: dict[tuple[str, str], int] = dict(judgments or {})
        self._by_qid: dict[str, dict[str, int]] = {}
        for (qid, docno), grade in self.judgments.items():
            self._by_qid.setdefault(qid, {})[docno] = grade

    def add(self, qid, docno, grade):
        if (qid, docno) in self.judgments:
            raise DuplicateJudgment(qid, docno)
        self.judgments[(qid, docno)] = grade
        self._by_qid.setdefault(qid, {})[docno] = grade

    def qids(self):
        return sorted(self._by_qid)

    def is_judged(self, qid):
        return qid in self._by_qid

    def relevant(self, qid) -> set[str]:
        return {d for d, g in self._by_qid.get(qid, {}).items() if g >= 1}

    def num_relevant(self, qid) -> int:
        return sum(1 for g in self._by_qid.get(qid, {}).values() if g >= 1)

    def __len__(self):
        return len(self.judgments)

    def __eq__(self, other):
        return isinstance(other, Qrels) and self.judgments == other.judgments

    def __repr__(self):
        return f"Qrels({len(self._by_qid)} topics, {len(self)} judgments)"


def _read_all(stream):
    if isinstance(stream, str):
        return stream
    if isinstance(stream, (bytes, bytearray)):
        return stream.decode("utf-8")
    data = stream.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _clean(fragment):
    text = re.sub(r"<[^>]*>", " ", fragment)
    return " ".join(html.unescape(text).split())


_DOC_OPEN = re.compile(r"<DOC\b[^>]*>", re.I)
_DOC_CLOSE = re.compile(r"</DOC>", re.I)
_DOCNO = re.compile(r"<DOCNO>(.*?)</DOCNO>", re.I | re.S)
_TEXT = re.compile(r"<TEXT>(.*?)</TEXT>", re.I | re.S)


def parse_documents(stream):
    """Yield a :class:`Document` per ``<DOC>`` record.

    ``stream`` is a str, bytes (UTF-8) or a readable file object.
    """
    data = _read_all(stream)
    pos = 0
    index = 0
    while True:
        m = _DOC_OPEN.search(data, pos)
        if m is None:
            return
        end = _DOC_CLOSE.search(data, m.end())
        nxt = _DOC_OPEN.search(data, m.end())
        if end is None or (nxt is not None and nxt.start() < end.start()):
            raise UnterminatedRecord(m.start(), "DOC")
        body = data[m.end():end.start()]
        no = _DOCNO.search(body)
        docno = _clean(no.group(1)) if no else ""
        if not docno:
            raise MissingDocno(index, m.start())
        parts = _TEXT.findall(body)
        if parts:
            text = " ".join(_clean(p) for p in parts)
        else:
            text = _clean(body[:no.start()] + " " + body[no.end():])
        yield Document(docno, " ".join(text.split()))
        index += 1
        pos = end.end()


def serialize_documents(docs) -> str:
    out = io.StringIO()
    for doc in docs:
        out.write("<DOC>\n")
        out.write(f"<DOCNO>{html.escape(doc.docno, quote=False)}</DOCNO>\n")
        out.write(f"<TEXT>\n{html.escape(doc.text, quote=False)}\n</TEXT>\n")
        out.write("</DOC>\n")
    return out.getvalue()


_TOP_OPEN = re.compile(r"<top\b[^>]*>", re.I)
_TOP_CLOSE = re.compile(r"</top>", re.I)
_FIELD_PREFIX = {
    "num": re.compile(r"^\s*number\s*:", re.I),
    "desc": re.compile(r"^\s*description\s*:", re.I),
    "narr": re.compile(r"^\s*narrative\s*:", re.I),
}


def _topic_field(body, tag):
    m = re.search(rf"<{tag}>(.*?)(?=<|\Z)", body, re.I | re.S)
    if m is None:
        return None
    value = m.group(1)
    if tag in _FIELD_PREFIX:
        value = _FIELD_PREFIX[tag].sub("", value)
    return " ".join(html.unescape(value).split())


def parse_topics(stream):
    """Parse ``<top>`` records.  Only ``<num>`` and ``<title>`` are required."""
    data = _read_all(stream)
    topics = []
    seen = set()
    pos = 0
    while True:
        m = _TOP_OPEN.search(data, pos)
        if m is None:
            break
        end = _TOP_CLOSE.search(data, m.end())
        if end is None:
            raise UnterminatedRecord(m.start(), "top")
        body = data[m.end():end.start()]
        num = _topic_field(body, "num") or ""
        digits = re.findall(r"\d+", num)
        qid = digits[-1] if digits else num
        if not qid:
            raise MalformedLine(data.count("\n", 0, m.start()) + 1, body[:60], "topic without <num>")
        title = _topic_field(body, "title")
        if not title:
            raise MissingTitle(qid)
        if qid in seen:
            raise DuplicateTopic(qid)
        seen.add(qid)
        topics.append(Topic(qid, title, _topic_field(body, "desc") or None, _topic_field(body, "narr") or None))
        pos = end.end()
    return topics


def parse_qrels(stream) -> Qrels:
    """Read ``qid iter docno rel`` lines; the iteration column is ignored."""
    data = _read_all(stream)
    qrels = Qrels()
    for lineno, line in enumerate(data.splitlines(), 1):
        if not line.strip():
            continue
        cols = line.split()
        if len(cols) != 4:
            raise MalformedLine(lineno, line, "expected qid iter docno rel")
        qid, _, docno, rel = cols
        try:
            grade = int(rel)
        except ValueError:
            raise MalformedLine(lineno, line, "relevance must be an integer") from None
        if grade < 0:
            raise MalformedLine(lineno, line, "relevance must be non-negative")
        qrels.add(qid, docno, grade)
    return qrels


def serialize_qrels(qrels: Qrels) -> str:
    lines = [f"{q} 0 {d} {g}" for (q, d), g in sorted(qrels.judgments.items())]
    return "".join(line + "\n" for line in lines)


def serialize_topics(topics) -> str:
    out = []
    for t in topics:
        out.append("<top>")
        out.append(f"<num>{t.qid}</num>")
        out.append(f"<title>{html.escape(t.title, quote=False)}</title>")
        if t.description:
            out.append(f"<desc>{html.escape(t.description, quote=False)}</desc>")
        if t.narrative:
            out.append(f"<narr>{html.escape(t.narrative, quote=False)}</narr>")
        out.append("</top>")
    return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------------------
# tokenization

_JOINERS = dict.fromkeys(map(ord, "‌‍"))


def tokenize(text: str) -> list[str]:
    """Split text into index terms.

    Letters, digits and combining marks form tokens; everything else is a
    separator.  Combining marks (matras, anusvara, nukta, halant) stay with
    the preceding base character; a mark with no base is dropped.  ZWJ and
    ZWNJ are removed.  Text is NFC-normalized and lowercased.
    """
    text = unicodedata.normalize("NFC", text.translate(_JOINERS)).lower()
    tokens = []
    cur = []
    for ch in text:
        cat = unicodedata.category(ch)
        if cat[0] in "LN":
            cur.append(ch)
        elif cat[0] == "M":
            if cur:
                cur.append(ch)
        elif cur:
            tokens.append("".join(cur))
            cur = []
    if cur:
        tokens.append("".join(cur))
    return tokens


def analyze(text: str, stopwords: StopwordSet | None = None) -> list[str]:
    """``tokenize`` followed by stopword removal."""
    tokens = tokenize(text)
    if not stopwords:
        return tokens
    return [t for t in tokens if t not in stopwords.words]


def hindi_stopwords_from_lines(lines) -> StopwordSet:
    words = []
    for line in lines:
        if line.startswith("#"):
            continue
        words.extend(tokenize(line))
    return StopwordSet(words)


def load_hindi_stopwords(path) -> StopwordSet:
    with open(path, encoding="utf-8") as fh:
        return hindi_stopwords_from_lines(fh)


def default_hindi_stopwords() -> StopwordSet:
    text = (resources.files("hindiclir") / "data" / "stopwords_hi.txt").read_text(encoding="utf-8")
    return hindi_stopwords_from_lines(text.splitlines())
