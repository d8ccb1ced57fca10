"""English term -> Devanagari transliteration.

Two layers:

* :func:`respell_english` rewrites an English spelling into an ITRANS
  roman string that encodes the conventional Hindi pronunciation
  (``Democracy`` -> ``DemokresI``).  It is driven by an ordered rule file
  plus a whole-word exception list.
* :func:`parse_itrans` renders ITRANS into Devanagari with maximal-munch
  tokenization (``DemokresI`` -> ``डेमोक्रेसी``).

:func:`transliterate_term` chains the two.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import MalformedLine, UntokenizableInput

VOWEL_LETTERS = frozenset("aeiou")
SCHEME_CLASSES = ("consonant", "vowel_i", "vowel_d", "special")


def _data_lines(name):
    return (resources.files("hindiclir") / "data" / name).read_text(encoding="utf-8").splitlines()


# ---------------------------------------------------------------------------
# ITRANS layer

@dataclass(frozen=True)
class ItransScheme:
    consonants: dict[str, str]
    vowels_independent: dict[str, str]
    vowels_dependent: dict[str, str]
    specials: dict[str, str]

    def __post_init__(self):
        if set(self.vowels_independent) != set(self.vowels_dependent):
            raise ValueError("every vowel token needs both an independent and a dependent form")
        groups = [set(self.consonants), set(self.vowels_independent), set(self.specials)]
        for i, a in enumerate(groups):
            for b in groups[i + 1:]:
                if a & b:
                    raise ValueError(f"tokens in more than one class: {sorted(a & b)}")
        if any(not tok or tok.isspace() for g in groups for tok in g):
            raise ValueError("tokens must be nonempty and contain no whitespace")

    @classmethod
    def from_lines(cls, lines) -> "ItransScheme":
        tables = {name: {} for name in SCHEME_CLASSES}
        for lineno, raw in enumerate(lines, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 3 or cols[2] not in tables:
                raise MalformedLine(lineno, line, "expected token<TAB>target<TAB>class")
            token, target, cls_ = cols
            if token in tables[cls_]:
                raise MalformedLine(lineno, line, f"token {token!r} repeated in class {cls_}")
            tables[cls_][token] = target
        return cls(tables["consonant"], tables["vowel_i"], tables["vowel_d"], tables["special"])

    @classmethod
    def load(cls, path) -> "ItransScheme":
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh)

    @functools.cached_property
    def tokens(self) -> frozenset[str]:
        return frozenset(self.consonants) | frozenset(self.vowels_independent) | frozenset(self.specials)

    @functools.cached_property
    def max_token_len(self) -> int:
        return max(map(len, self.tokens), default=1)

    def tokenize(self, text: str) -> list[str]:
        """Split roman text into scheme tokens by maximal munch.

        At each position the longest token is taken, unless that would
        leave a remainder no token sequence can cover, in which case the
        next longest is tried.  When plain greedy matching succeeds the
        result is the same.  Whitespace runs come back as a single ``" "``
        token.
        """
        out = []
        for m in re.finditer(r"\s+|\S+", text):
            if m.group().isspace():
                out.append(" ")
            else:
                out.extend(self._segment(m.group(), m.start(), text))
        return out

    def _segment(self, chunk, offset, text):
        tokens, width = self.tokens, self.max_token_len
        n = len(chunk)
        # viable[i]: chunk[i:] splits into tokens
        viable = [False] * n + [True]
        for i in range(n - 1, -1, -1):
            viable[i] = any(viable[i + w] for w in range(1, min(width, n - i) + 1) if chunk[i:i + w] in tokens)
        if not viable[0]:
            raise UntokenizableInput(offset + self._longest_prefix(chunk), text)
        out, i = [], 0
        while i < n:
            w = next(w for w in range(min(width, n - i), 0, -1) if chunk[i:i + w] in tokens and viable[i + w])
            out.append(chunk[i:i + w])
            i += w
        return out

    def _longest_prefix(self, chunk):
        """End of the longest prefix of ``chunk`` that splits into tokens."""
        reach = {0}
        for i in range(len(chunk)):
            if i in reach:
                reach.update(i + w for w in range(1, self.max_token_len + 1) if chunk[i:i + w] in self.tokens)
        return max(p for p in reach if p <= len(chunk))


@functools.lru_cache(maxsize=None)
def default_scheme() -> ItransScheme:
    return ItransScheme.from_lines(_data_lines("itrans_scheme.tsv"))


def tokenize_itrans(text: str, scheme: ItransScheme | None = None) -> list[str]:
    return (scheme or default_scheme()).tokenize(text)


def parse_itrans(text: str, scheme: ItransScheme | None = None) -> str:
    """Render ITRANS roman text as Devanagari.

    A consonant takes the matra of a following vowel token, is joined to a
    following consonant with a halant, and otherwise keeps its inherent
    ``a`` (no halant at the end of a word).
    """
    scheme = scheme or default_scheme()
    out = []
    after_consonant = False
    for tok in scheme.tokenize(text):
        if tok == " ":
            out.append(" ")
            after_consonant = False
        elif tok in scheme.consonants:
            if after_consonant:
                out.append("्")
            out.append(scheme.consonants[tok])
            after_consonant = True
        elif tok in scheme.vowels_independent:
            table = scheme.vowels_dependent if after_consonant else scheme.vowels_independent
            out.append(table[tok])
            after_consonant = False
        else:
            target = scheme.specials[tok]
            if target:
                out.append(target)
                after_consonant = False
    return "".join(out)


# ---------------------------------------------------------------------------
# English respelling layer

_CONTEXT_ATOM = re.compile(r"^(\^|\$|_V|_C|V_|C_|_\[[a-z]+\]|\[[a-z]+\]_)$")


def _is_consonant(ch):
    return ch.isalpha() and ch not in VOWEL_LETTERS


def _make_condition(atom):
    if atom == "^":
        return lambda w, s, e: s == 0
    if atom == "$":
        return lambda w, s, e: e == len(w)
    if atom == "_V":
        return lambda w, s, e: e < len(w) and w[e] in VOWEL_LETTERS
    if atom == "_C":
        return lambda w, s, e: e < len(w) and _is_consonant(w[e])
    if atom == "V_":
        return lambda w, s, e: s > 0 and w[s - 1] in VOWEL_LETTERS
    if atom == "C_":
        return lambda w, s, e: s > 0 and _is_consonant(w[s - 1])
    if atom.startswith("_["):
        letters = frozenset(atom[2:-1])
        return lambda w, s, e: e < len(w) and w[e] in letters
    letters = frozenset(atom[1:-2])
    return lambda w, s, e: s > 0 and w[s - 1] in letters


@dataclass(frozen=True)
class RespellRule:
    pattern: str
    context: str
    replacement: str
    _conditions: tuple = field(default=(), repr=False, compare=False)

    @classmethod
    def parse(cls, pattern, context, replacement):
        if not pattern or not pattern.isalpha() or not pattern.islower():
            raise ValueError(f"rule pattern must be lowercase letters: {pattern!r}")
        atoms = [] if context.strip() in ("", "*") else [a.strip() for a in context.split(",")]
        for atom in atoms:
            if not _CONTEXT_ATOM.match(atom):
                raise ValueError(f"unknown context condition {atom!r}")
        return cls(pattern, context, replacement, tuple(_make_condition(a) for a in atoms))

    def matches(self, word, start):
        end = start + len(self.pattern)
        return word.startswith(self.pattern, start) and all(c(word, start, end) for c in self._conditions)


@dataclass(frozen=True)
class RespellRuleSet:
    rules: tuple[RespellRule, ...]
    exceptions: dict[str, str]

    @classmethod
    def from_lines(cls, lines) -> "RespellRuleSet":
        rules = []
        exceptions = {}
        for lineno, raw in enumerate(lines, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if line.startswith("!"):
                if len(cols) != 2 or len(cols[0]) < 2:
                    raise MalformedLine(lineno, line, "expected !word<TAB>replacement")
                exceptions[cols[0][1:].lower()] = cols[1]
                continue
            if len(cols) != 3:
                raise MalformedLine(lineno, line, "expected pattern<TAB>context<TAB>replacement")
            try:
                rules.append(RespellRule.parse(*cols))
            except ValueError as exc:
                raise MalformedLine(lineno, line, str(exc)) from None
        return cls(tuple(rules), exceptions)

    @classmethod
    def load(cls, path) -> "RespellRuleSet":
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh)


@functools.lru_cache(maxsize=None)
def default_rules() -> RespellRuleSet:
    return RespellRuleSet.from_lines(_data_lines("respell_en.tsv"))


def respell_english(word: str, rules: RespellRuleSet | None = None) -> str:
    rules = rules or default_rules()
    w = word.lower()
    if w in rules.exceptions:
        return rules.exceptions[w]
    out = []
    i = 0
    while i < len(w):
        for rule in rules.rules:
            if rule.matches(w, i):
                out.append(rule.replacement)
                i += len(rule.pattern)
                break
        else:
            out.append(w[i])
            i += 1
    return "".join(out)


class Transliterator:
    """Bundles a scheme and a rule set; call it on an English word."""

    def __init__(self, scheme: ItransScheme | None = None, rules: RespellRuleSet | None = None):
        self.scheme = scheme or default_scheme()
        self.rules = rules or default_rules()
        self._check_rules()

    def _check_rules(self):
        outputs = [r.replacement for r in self.rules.rules] + list(self.rules.exceptions.values())
        outputs += [chr(c) for c in range(ord("a"), ord("z") + 1)]
        for text in outputs:
            self.scheme.tokenize(text)

    @classmethod
    def from_files(cls, scheme_path=None, respell_path=None) -> "Transliterator":
        scheme = ItransScheme.load(scheme_path) if scheme_path else None
        rules = RespellRuleSet.load(respell_path) if respell_path else None
        return cls(scheme, rules)

    def respell(self, word: str) -> str:
        return respell_english(word, self.rules)

    def __call__(self, word: str) -> str:
        if not word or not word.isascii() or not word.isalpha():
            raise UntokenizableInput(0, word)
        return parse_itrans(self.respell(word), self.scheme)


@functools.lru_cache(maxsize=None)
def default_transliterator() -> Transliterator:
    return Transliterator()


def transliterate_term(word: str) -> str:
    """``parse_itrans(respell_english(word))`` with the bundled tables."""
    return default_transliterator()(word)
