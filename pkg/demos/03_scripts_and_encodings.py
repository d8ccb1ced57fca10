"""
From English spelling to Devanagari, and from ISCII to Unicode
==============================================================
"""
from hindiclir.encoding import decode_iscii, encode_iscii
from hindiclir.errors import UnassignedByte
from hindiclir.translit import parse_itrans, respell_english, tokenize_itrans, transliterate_term

# English -> ITRANS respelling -> Devanagari
for word in ("Democracy", "India", "station", "bank", "computer", "election"):
    roman = respell_english(word)
    print(f"{word:10s} {roman:12s} {tokenize_itrans(roman)}  {transliterate_term(word)}")

# ITRANS on its own: halant between consonants, inherent 'a' at the end
print(parse_itrans("bhArat"), parse_itrans("kShatriya"), parse_itrans("j~nAna"))

# ISCII-91 bytes from legacy Hindi text files
raw = bytes.fromhex("cbdacfc2")
print(raw.hex(), "->", decode_iscii(raw))
print(encode_iscii("लोकतंत्र").hex())

# octet 0xFF is not assigned; the error carries its offset
try:
    decode_iscii(b"ab\xff")
except UnassignedByte as exc:
    print(exc)
