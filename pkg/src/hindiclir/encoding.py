"""ISCII-91 (Devanagari) <-> Unicode codec.

The mapping lives in ``data/iscii91_devanagari.tsv`` so it can be audited
row by row.  Octets below 0x80 are ASCII and pass through unchanged.
Two-octet rows (a base octet followed by NUKTA or HALANT) are digraphs and
take precedence over their single-octet readings when decoding.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import MalformedLine, UnassignedByte, UnmappableScalar

NUKTA = 0xE9
HALANT = 0xE8


@dataclass(frozen=True)
class CodecTable:
    forward: dict[bytes, str]
    reverse: dict[str, bytes]

    @classmethod
    def from_lines(cls, lines) -> "CodecTable":
        forward: dict[bytes, str] = {}
        for lineno, raw in enumerate(lines, 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) < 2:
                raise MalformedLine(lineno, line, "expected octet<TAB>scalars")
            try:
                octets = bytes(int(tok, 16) for tok in cols[0].split(","))
                text = "".join(chr(int(tok.strip()[2:], 16)) for tok in cols[1].split(","))
            except ValueError as exc:
                raise MalformedLine(lineno, line, str(exc)) from None
            if not 1 <= len(octets) <= 2 or any(o < 0x80 for o in octets):
                raise MalformedLine(lineno, line, "octets must be 1 or 2 bytes in 0x80-0xFF")
            if octets in forward:
                raise MalformedLine(lineno, line, "octet sequence mapped twice")
            forward[octets] = text
        reverse = {}
        for octets, text in forward.items():
            if text in reverse:
                raise MalformedLine(0, text, f"scalar sequence mapped from both {reverse[text].hex()} and {octets.hex()}")
            reverse[text] = octets
        return cls(forward, reverse)

    @classmethod
    def load(cls, path) -> "CodecTable":
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh)

    @functools.cached_property
    def _max_scalars(self) -> int:
        return max((len(k) for k in self.reverse), default=1)


@functools.lru_cache(maxsize=None)
def default_table() -> CodecTable:
    ref = resources.files("hindiclir") / "data" / "iscii91_devanagari.tsv"
    with resources.as_file(ref) as path:
        return CodecTable.load(Path(path))


def decode_iscii(data: bytes, table: CodecTable | None = None) -> str:
    """Decode an ISCII byte string into Unicode text.

    Raises :class:`UnassignedByte` with the offending offset for any octet
    at or above 0x80 that the table does not assign.  A NUKTA octet that
    does not complete a digraph decodes to the standalone nukta sign.
    """
    table = table or default_table()
    fwd = table.forward
    out = []
    i, n = 0, len(data)
    while i < n:
        b = data[i]
        if b < 0x80:
            out.append(chr(b))
            i += 1
            continue
        pair = data[i:i + 2]
        if len(pair) == 2 and pair in fwd:
            out.append(fwd[pair])
            i += 2
            continue
        single = fwd.get(data[i:i + 1])
        if single is None:
            raise UnassignedByte(i, b)
        out.append(single)
        i += 1
    return "".join(out)


def encode_iscii(text: str, table: CodecTable | None = None) -> bytes:
    table = table or default_table()
    rev = table.reverse
    width = table._max_scalars
    out = bytearray()
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ord(ch) < 0x80:
            out.append(ord(ch))
            i += 1
            continue
        for w in range(min(width, n - i), 0, -1):
            octets = rev.get(text[i:i + w])
            if octets is not None:
                out += octets
                i += w
                break
        else:
            raise UnmappableScalar(i, ch)
    return bytes(out)
