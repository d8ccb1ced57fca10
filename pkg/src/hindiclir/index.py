"""Inverted index, BM25 ranking, index persistence and TREC run files."""
from __future__ import annotations

import math
import struct
import zlib
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .corpus import analyze, default_hindi_stopwords
from .errors import CorruptIndexFile, DuplicateDocno, MalformedLine
from .lexicon import StopwordSet

MAGIC = b"HCLIRIDX"
FORMAT_VERSION = 1

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75
DEFAULT_CUTOFF = 1000


@dataclass
class RankedList:
    qid: str
    entries: list[tuple[str, float]] = field(default_factory=list)

    def docnos(self):
        return [d for d, _ in self.entries]

    def __len__(self):
        return len(self.entries)


class InvertedIndex:
    """Term -> (doc ordinals, term frequencies), plus per-document lengths.

    Postings arrays are int64 and sorted by ordinal.  ``stopwords`` are the
    Hindi stopwords removed at build time; :meth:`analyze_query` removes the
    same set from query text so both sides are treated alike.
    """

    def __init__(self, doc_ids, doc_lengths, postings, stopwords=frozenset()):
        self.doc_ids: list[str] = list(doc_ids)
        self.doc_lengths = np.asarray(doc_lengths, dtype=np.int64)
        self.postings: dict[str, tuple[np.ndarray, np.ndarray]] = postings
        self.stopwords = frozenset(stopwords)
        self._ordinal = {d: i for i, d in enumerate(self.doc_ids)}
        # position of each ordinal in ascending docno order, for tie-breaking
        order = sorted(range(len(self.doc_ids)), key=self.doc_ids.__getitem__)
        self._docno_rank = np.empty(len(self.doc_ids), dtype=np.int64)
        self._docno_rank[order] = np.arange(len(order))

    @property
    def N(self) -> int:
        return len(self.doc_ids)

    @property
    def avgdl(self) -> float:
        return float(self.doc_lengths.sum()) / self.N if self.N else 0.0

    @property
    def total_tokens(self) -> int:
        return int(self.doc_lengths.sum())

    @property
    def vocabulary_size(self) -> int:
        return len(self.postings)

    def df(self, term) -> int:
        p = self.postings.get(term)
        return 0 if p is None else len(p[0])

    def ordinal(self, docno) -> int:
        return self._ordinal[docno]

    def analyze_query(self, text: str) -> list[str]:
        return analyze(text, StopwordSet(self.stopwords))

    def __repr__(self):
        return f"InvertedIndex(N={self.N}, terms={self.vocabulary_size})"


def build_index(docs, stopwords: StopwordSet | None = None) -> InvertedIndex:
    """Index a sequence of :class:`~hindiclir.corpus.Document`.

    Hindi stopwords default to the bundled list; pass an empty
    ``StopwordSet()`` to keep every token.
    """
    if stopwords is None:
        stopwords = default_hindi_stopwords()
    doc_ids = []
    lengths = []
    seen = set()
    acc: dict[str, tuple[list[int], list[int]]] = {}
    for ordinal, doc in enumerate(docs):
        if doc.docno in seen:
            raise DuplicateDocno(doc.docno)
        seen.add(doc.docno)
        doc_ids.append(doc.docno)
        counts = Counter(analyze(doc.text, stopwords))
        lengths.append(sum(counts.values()))
        for term, tf in counts.items():
            ords, tfs = acc.setdefault(term, ([], []))
            ords.append(ordinal)
            tfs.append(tf)
    postings = {t: (np.array(o, dtype=np.int64), np.array(f, dtype=np.int64)) for t, (o, f) in acc.items()}
    return InvertedIndex(doc_ids, lengths, postings, stopwords.words)


def bm25_idf(N, df):
    return math.log((N - df + 0.5) / (df + 0.5) + 1.0)


def score_bm25(index: InvertedIndex, query_terms, k1=DEFAULT_K1, b=DEFAULT_B,
               cutoff=DEFAULT_CUTOFF, qid="") -> RankedList:
    """Rank documents for ``query_terms`` with Okapi BM25.

    Each occurrence of a term in ``query_terms`` contributes once, so a
    repeated term counts twice.  Documents matching no term are omitted.
    Ties are broken by ascending docno.
    """
    if k1 <= 0 or not 0 <= b <= 1 or cutoff < 1:
        raise ValueError(f"need k1 > 0, 0 <= b <= 1, cutoff >= 1 (got {k1}, {b}, {cutoff})")
    N = index.N
    if N == 0:
        return RankedList(qid, [])
    scores = np.zeros(N, dtype=np.float64)
    touched = np.zeros(N, dtype=bool)
    avgdl = index.avgdl
    for term in query_terms:
        p = index.postings.get(term)
        if p is None:
            continue
        ords, tfs = p
        idf = bm25_idf(N, len(ords))
        norm = k1 * (1.0 - b + b * index.doc_lengths[ords] / avgdl)
        scores[ords] += idf * (tfs * (k1 + 1.0)) / (tfs + norm)
        touched[ords] = True
    hits = np.flatnonzero(touched)
    if hits.size == 0:
        return RankedList(qid, [])
    order = np.lexsort((index._docno_rank[hits], -scores[hits]))[:cutoff]
    chosen = hits[order]
    return RankedList(qid, [(index.doc_ids[i], float(scores[i])) for i in chosen])


# ---------------------------------------------------------------------------
# persistence: magic, u32 version, length-prefixed sections, u32 crc32 trailer

def _pack_str(out, s):
    data = s.encode("utf-8")
    out += struct.pack("<I", len(data))
    out += data


def save_index(index: InvertedIndex, path):
    out = bytearray(MAGIC)
    out += struct.pack("<I", FORMAT_VERSION)
    out += struct.pack("<I", index.N)
    for docno, length in zip(index.doc_ids, index.doc_lengths.tolist()):
        _pack_str(out, docno)
        out += struct.pack("<I", length)
    stop = sorted(index.stopwords)
    out += struct.pack("<I", len(stop))
    for w in stop:
        _pack_str(out, w)
    terms = sorted(index.postings)
    out += struct.pack("<I", len(terms))
    for term in terms:
        ords, tfs = index.postings[term]
        _pack_str(out, term)
        out += struct.pack("<I", len(ords))
        out += ords.astype("<u4").tobytes()
        out += tfs.astype("<u4").tobytes()
    out += struct.pack("<I", zlib.crc32(out))
    with open(path, "wb") as fh:
        fh.write(out)


class _Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, n):
        if self.pos + n > len(self.data):
            raise CorruptIndexFile(f"truncated at byte {self.pos}")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def u32(self):
        return struct.unpack("<I", self.take(4))[0]

    def string(self):
        try:
            return self.take(self.u32()).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorruptIndexFile(f"bad string at byte {self.pos}: {exc}") from None

    def u32_array(self, n):
        return np.frombuffer(self.take(4 * n), dtype="<u4").astype(np.int64)


def load_index(path) -> InvertedIndex:
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.startswith(MAGIC):
        raise CorruptIndexFile("missing magic header")
    if len(data) < len(MAGIC) + 8:
        raise CorruptIndexFile("file too short")
    r = _Reader(data)
    r.take(len(MAGIC))
    version = r.u32()
    if version != FORMAT_VERSION:
        raise CorruptIndexFile(f"format version {version}, expected {FORMAT_VERSION}")
    body, trailer = data[:-4], data[-4:]
    if zlib.crc32(body) != struct.unpack("<I", trailer)[0]:
        raise CorruptIndexFile("checksum mismatch")
    r.data = body
    n = r.u32()
    doc_ids, lengths = [], []
    for _ in range(n):
        doc_ids.append(r.string())
        lengths.append(r.u32())
    stop = [r.string() for _ in range(r.u32())]
    postings = {}
    for _ in range(r.u32()):
        term = r.string()
        df = r.u32()
        postings[term] = (r.u32_array(df), r.u32_array(df))
    if r.pos != len(body):
        raise CorruptIndexFile(f"{len(body) - r.pos} trailing bytes")
    return InvertedIndex(doc_ids, lengths, postings, stop)


# ---------------------------------------------------------------------------
# TREC run files

def format_run(ranked_lists, runtag="hindiclir") -> str:
    lines = []
    for rl in ranked_lists:
        for rank, (docno, score) in enumerate(rl.entries, 1):
            lines.append(f"{rl.qid} Q0 {docno} {rank} {score:.6f} {runtag}")
    return "".join(line + "\n" for line in lines)


def write_run(ranked_lists, path, runtag="hindiclir"):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_run(ranked_lists, runtag))


def parse_run(text) -> dict[str, RankedList]:
    """Parse TREC run lines into ranked lists ordered by the rank column."""
    rows: dict[str, list] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        cols = line.split()
        if len(cols) != 6:
            raise MalformedLine(lineno, line, "expected qid Q0 docno rank score tag")
        qid, _, docno, rank, score, _ = cols
        try:
            rows.setdefault(qid, []).append((int(rank), docno, float(score)))
        except ValueError:
            raise MalformedLine(lineno, line, "rank/score not numeric") from None
    return {q: RankedList(q, [(d, s) for _, d, s in sorted(r)]) for q, r in rows.items()}


def read_run(path) -> dict[str, RankedList]:
    with open(path, encoding="utf-8") as fh:
        return parse_run(fh.read())
