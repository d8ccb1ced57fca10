"""From an English title to the set of Hindi candidate queries.

Each content term of the title becomes a :class:`TermSlot` holding its
dictionary translation and its transliteration.  A candidate query picks
one variant per slot, keeping slot order; with ``e`` slots that have both
variants there are exactly ``2**e`` candidates.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from .corpus import tokenize
from .errors import CandidateExplosion, DataError, EmptyQuery, NoUsableTerms
from .lexicon import BilingualDictionary, StopwordSet, lookup
from .translit import Transliterator, default_transliterator

log = logging.getLogger(__name__)

DEFAULT_CAP = 2 ** 16
TRANSLATION, TRANSLITERATION = 0, 1


@dataclass(frozen=True)
class TermSlot:
    position: int
    english: str
    translation: str | None
    transliteration: str | None

    @property
    def variants(self) -> tuple[str | None, str | None]:
        return (self.translation, self.transliteration)

    @property
    def is_free(self) -> bool:
        """Both variants available, so the slot doubles the candidate count."""
        return self.translation is not None and self.transliteration is not None


@dataclass(frozen=True)
class QueryCandidate:
    qid: str
    choice_mask: tuple[int, ...]
    terms: tuple[str, ...]

    @property
    def text(self) -> str:
        return " ".join(self.terms)

    @property
    def mask_bits(self) -> str:
        return "".join(map(str, self.choice_mask))

    @property
    def mask_value(self) -> int:
        """The mask read as a binary number, first slot most significant."""
        return int(self.mask_bits, 2) if self.choice_mask else 0


def extract_content_terms(title: str, stopwords: StopwordSet) -> list[str]:
    terms = [t for t in tokenize(title) if t not in stopwords.words]
    if not terms:
        raise EmptyQuery(title)
    return terms


def build_slots(terms, dictionary: BilingualDictionary, stopwords: StopwordSet | None = None,
                transliterator: Transliterator | None = None) -> list[TermSlot]:
    """Pair each term's first dictionary translation with its transliteration.

    A term with neither is dropped (logged).  ``stopwords`` filters any
    stopword that reaches this point, for callers that skip
    :func:`extract_content_terms`.
    """
    if not terms:
        raise ValueError("build_slots needs at least one term")
    translit = transliterator or default_transliterator()
    slots = []
    for term in terms:
        if stopwords is not None and term in stopwords:
            continue
        found = lookup(dictionary, term)
        translation = found[0] if found else None
        try:
            transliteration = translit(term)
        except DataError:
            transliteration = None
        if translation is None and transliteration is None:
            log.warning("dropping %r: no translation or transliteration", term)
            continue
        slots.append(TermSlot(len(slots), term, translation, transliteration))
    if not slots:
        raise NoUsableTerms(terms)
    return slots


def baseline_query(slots, qid="") -> QueryCandidate:
    """All-translation query; a slot without a translation uses its transliteration."""
    if not slots:
        raise ValueError("baseline_query needs at least one slot")
    mask = tuple(TRANSLATION if s.translation is not None else TRANSLITERATION for s in slots)
    return QueryCandidate(qid, mask, tuple(s.variants[bit] for s, bit in zip(slots, mask)))


def count_candidates(slots) -> int:
    return 2 ** sum(s.is_free for s in slots)


def generate_candidates(slots, cap: int = DEFAULT_CAP, qid="") -> list[QueryCandidate]:
    """Every translation/transliteration combination, in binary-counting order.

    Single-variant slots keep their only variant.  The first candidate is
    the baseline and the last is the all-transliteration extreme.
    """
    if not slots:
        raise ValueError("generate_candidates needs at least one slot")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    free = [i for i, s in enumerate(slots) if s.is_free]
    e = len(free)
    if 2 ** e > cap:
        raise CandidateExplosion(e, cap)
    base = list(baseline_query(slots).choice_mask)
    out = []
    for n in range(2 ** e):
        mask = list(base)
        for j, slot_idx in enumerate(free):
            mask[slot_idx] = (n >> (e - 1 - j)) & 1
        terms = tuple(s.variants[bit] for s, bit in zip(slots, mask))
        out.append(QueryCandidate(qid, tuple(mask), terms))
    return out


def format_candidates(candidates) -> str:
    """Candidate dump: ``qid<TAB>mask-bits<TAB>query-text`` per line."""
    return "".join(f"{c.qid}\t{c.mask_bits}\t{c.text}\n" for c in candidates)


@dataclass
class QueryPlan:
    """Everything derived from one English title."""
    qid: str
    title: str
    terms: list[str]
    slots: list[TermSlot]
    baseline: QueryCandidate
    candidates: list[QueryCandidate]


def plan_query(qid, title, dictionary, stopwords, transliterator=None, cap=DEFAULT_CAP) -> QueryPlan:
    terms = extract_content_terms(title, stopwords)
    slots = build_slots(terms, dictionary, transliterator=transliterator)
    return QueryPlan(qid, title, terms, slots, baseline_query(slots, qid),
                     generate_candidates(slots, cap, qid))
