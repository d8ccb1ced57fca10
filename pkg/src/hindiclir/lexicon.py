"""English-side query resources: bilingual dictionary, stopwords, Porter stemmer."""
from __future__ import annotations

import functools
import io
from dataclasses import dataclass
from importlib import resources

from .encoding import decode_iscii
from .errors import DataError, MalformedLine


@dataclass(frozen=True)
class BilingualEntry:
    headword: str
    translations: tuple[str, ...]


class BilingualDictionary:
    """Headword -> ordered, de-duplicated Hindi translations."""

    def __init__(self, entries=()):
        self._entries: dict[str, list[str]] = {}
        for entry in entries:
            self.add(entry.headword, entry.translations)

    def add(self, headword, translations):
        key = headword.strip().lower()
        merged = self._entries.setdefault(key, [])
        for t in translations:
            if t not in merged:
                merged.append(t)

    def __getitem__(self, headword) -> BilingualEntry:
        return BilingualEntry(headword, tuple(self._entries[headword]))

    def get(self, headword):
        found = self._entries.get(headword)
        return list(found) if found is not None else None

    def __contains__(self, headword):
        return headword in self._entries

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(sorted(self._entries))

    def entries(self):
        return [self[h] for h in self]

    def __eq__(self, other):
        if not isinstance(other, BilingualDictionary):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self):
        return f"BilingualDictionary({len(self)} entries)"


def _iter_lines(source, encoding):
    """Yield (lineno, text) from a path, bytes, or binary stream."""
    if isinstance(source, (bytes, bytearray)):
        stream = io.BytesIO(source)
    elif hasattr(source, "read"):
        stream = source
    else:
        stream = open(source, "rb")
    try:
        for lineno, raw in enumerate(stream, 1):
            if isinstance(raw, str):
                raw = raw.encode("utf-8")
            raw = raw.rstrip(b"\r\n")
            if encoding == "iscii":
                try:
                    text = decode_iscii(raw)
                except DataError as exc:
                    raise MalformedLine(lineno, raw.decode("latin-1"), str(exc)) from exc
            else:
                try:
                    text = raw.decode("utf-8")
                except UnicodeDecodeError as exc:
                    raise MalformedLine(lineno, raw.decode("latin-1"), str(exc)) from exc
            yield lineno, text
    finally:
        if stream is not source:
            stream.close()


def load_dictionary(source, encoding="utf8") -> BilingualDictionary:
    """Read ``english<TAB>hindi[|hindi...]`` lines.

    ``source`` may be a path, a bytes object or a binary stream.  With
    ``encoding="iscii"`` every line is decoded through the ISCII codec
    first (ASCII headwords pass through unchanged).  Repeated headwords
    merge their translation lists in file order.
    """
    if encoding not in ("utf8", "utf-8", "iscii"):
        raise ValueError(f"unsupported dictionary encoding {encoding!r}")
    d = BilingualDictionary()
    for lineno, line in _iter_lines(source, encoding):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise MalformedLine(lineno, line, "expected english<TAB>hindi")
        head = cols[0].strip()
        translations = [t.strip() for t in cols[1].split("|") if t.strip()]
        if not head or not translations:
            raise MalformedLine(lineno, line, "empty headword or translation")
        d.add(head, translations)
    return d


@functools.lru_cache(maxsize=None)
def _bundled_text(name):
    return (resources.files("hindiclir") / "data" / name).read_bytes()


def default_dictionary() -> BilingualDictionary:
    return load_dictionary(_bundled_text("sample_dictionary.tsv"))


# ---------------------------------------------------------------------------
# stopwords

class StopwordSet:
    def __init__(self, words=()):
        self.words = frozenset(w.strip().lower() for w in words if w.strip())

    def __contains__(self, token):
        return is_stopword(self, token)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(sorted(self.words))


def is_stopword(stopwords: StopwordSet, token: str) -> bool:
    return bool(token) and token.lower() in stopwords.words


def load_stopwords(path) -> StopwordSet:
    with open(path, encoding="utf-8") as fh:
        return StopwordSet(ln for ln in fh if not ln.startswith("#"))


def default_stopwords() -> StopwordSet:
    text = _bundled_text("stopwords_en.txt").decode("utf-8")
    return StopwordSet(ln for ln in text.splitlines() if not ln.startswith("#"))


# ---------------------------------------------------------------------------
# Porter stemmer
#
# Follows M. F. Porter's reference C implementation, including its two
# departures from the 1980 description (step 2 maps "bli" -> "ble" and
# adds "logi" -> "log").

_VOWELS = frozenset("aeiou")


def _is_cons(w, i):
    ch = w[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_cons(w, i - 1)
    return True


def _measure(stem):
    """Number of VC sequences in ``stem``."""
    m = 0
    i, n = 0, len(stem)
    while i < n and _is_cons(stem, i):
        i += 1
    while i < n:
        while i < n and not _is_cons(stem, i):
            i += 1
        if i >= n:
            break
        while i < n and _is_cons(stem, i):
            i += 1
        m += 1
    return m


def _has_vowel(stem):
    return any(not _is_cons(stem, i) for i in range(len(stem)))


def _ends_double_cons(w):
    return len(w) >= 2 and w[-1] == w[-2] and _is_cons(w, len(w) - 1)


def _cvc(w):
    """Ends consonant-vowel-consonant, last consonant not w, x or y."""
    if len(w) < 3:
        return False
    n = len(w)
    if not (_is_cons(w, n - 3) and not _is_cons(w, n - 2) and _is_cons(w, n - 1)):
        return False
    return w[-1] not in "wxy"


def _replace_if(w, suffixes, min_measure):
    """Replace the first matching suffix if the remaining stem has m > min_measure."""
    for suffix, repl in suffixes:
        if w.endswith(suffix):
            stem = w[: len(w) - len(suffix)]
            if _measure(stem) > min_measure:
                return stem + repl
            return w
    return w


def _step1ab(w):
    if w.endswith("s"):
        if w.endswith("sses"):
            w = w[:-2]
        elif w.endswith("ies"):
            w = w[:-2]
        elif not w.endswith("ss"):
            w = w[:-1]
    if w.endswith("eed"):
        if _measure(w[:-3]) > 0:
            w = w[:-1]
        return w
    for suffix in ("ed", "ing"):
        if w.endswith(suffix) and _has_vowel(w[: -len(suffix)]):
            w = w[: -len(suffix)]
            if w.endswith(("at", "bl", "iz")):
                return w + "e"
            if _ends_double_cons(w):
                return w if w[-1] in "lsz" else w[:-1]
            if _measure(w) == 1 and _cvc(w):
                return w + "e"
            return w
    return w


def _step1c(w):
    if w.endswith("y") and _has_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


_STEP2 = {
    "a": [("ational", "ate"), ("tional", "tion")],
    "c": [("enci", "ence"), ("anci", "ance")],
    "e": [("izer", "ize")],
    "l": [("bli", "ble"), ("alli", "al"), ("entli", "ent"), ("eli", "e"), ("ousli", "ous")],
    "o": [("ization", "ize"), ("ation", "ate"), ("ator", "ate")],
    "s": [("alism", "al"), ("iveness", "ive"), ("fulness", "ful"), ("ousness", "ous")],
    "t": [("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")],
    "g": [("logi", "log")],
}

_STEP3 = {
    "e": [("icate", "ic"), ("ative", ""), ("alize", "al")],
    "i": [("iciti", "ic")],
    "l": [("ical", "ic"), ("ful", "")],
    "s": [("ness", "")],
}

_STEP4 = {
    "a": ["al"],
    "c": ["ance", "ence"],
    "e": ["er"],
    "i": ["ic"],
    "l": ["able", "ible"],
    "n": ["ant", "ement", "ment", "ent"],
    "o": ["ion", "ou"],
    "s": ["ism"],
    "t": ["ate", "iti"],
    "u": ["ous"],
    "v": ["ive"],
    "z": ["ize"],
}


def _step2(w):
    # keyed on the penultimate letter, as in the reference implementation
    if len(w) < 2:
        return w
    return _replace_if(w, _STEP2.get(w[-2], ()), 0)


def _step3(w):
    return _replace_if(w, _STEP3.get(w[-1], ()), 0)


def _step4(w):
    if len(w) < 2:
        return w
    for suffix in _STEP4.get(w[-2], ()):
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if suffix == "ion" and not stem.endswith(("s", "t")):
                return w
            return stem if _measure(stem) > 1 else w
    return w


def _step5(w):
    if w.endswith("e"):
        stem = w[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _cvc(stem)):
            w = stem
    if w.endswith("ll") and _measure(w) > 1:
        w = w[:-1]
    return w


def porter_stem(token: str) -> str:
    """Stem an English word with the classic Porter algorithm.

    >>> porter_stem("caresses"), porter_stem("relational"), porter_stem("sky")
    ('caress', 'relat', 'sky')
    """
    w = token.lower()
    if len(w) <= 2:
        return w
    w = _step1ab(w)
    w = _step1c(w)
    w = _step2(w)
    w = _step3(w)
    w = _step4(w)
    w = _step5(w)
    return w


def lookup(dictionary: BilingualDictionary, token: str):
    """Translations for ``token``, trying the lowercased form then its stem.

    Returns ``None`` when neither form is a headword.
    """
    key = token.lower()
    found = dictionary.get(key)
    if found is None:
        found = dictionary.get(porter_stem(key))
    return found
