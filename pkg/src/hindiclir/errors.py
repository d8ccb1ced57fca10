"""Exception types raised across the package.

Every error derives from :class:`ClirError`.  :class:`DataError` marks
problems with input files or input text (the CLI maps these to exit code 2);
everything else is a usage or configuration problem.
"""


class ClirError(Exception):
    pass


class DataError(ClirError, ValueError):
    pass


# encoding

class UnassignedByte(DataError):
    def __init__(self, position, octet):
        self.position = position
        self.octet = octet
        super().__init__(f"unassigned ISCII octet 0x{octet:02X} at position {position}")


class UnmappableScalar(DataError):
    def __init__(self, position, char):
        self.position = position
        self.char = char
        super().__init__(f"U+{ord(char):04X} at position {position} has no ISCII mapping")


# translit

class UntokenizableInput(DataError):
    def __init__(self, position, text):
        self.position = position
        self.text = text
        super().__init__(f"no ITRANS token matches {text[position:position + 8]!r} at position {position}")


# lexicon / corpus parsers

class MalformedLine(DataError):
    def __init__(self, lineno, line, reason=""):
        self.lineno = lineno
        self.line = line
        msg = f"malformed line {lineno}: {line!r}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class MissingDocno(DataError):
    def __init__(self, record_index, offset=None):
        self.record_index = record_index
        self.offset = offset
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"document record {record_index}{where} has no DOCNO")


class UnterminatedRecord(DataError):
    def __init__(self, offset, tag="DOC"):
        self.offset = offset
        super().__init__(f"<{tag}> record starting at offset {offset} is never closed")


class MissingTitle(DataError):
    def __init__(self, qid):
        self.qid = qid
        super().__init__(f"topic {qid!r} has no title")


class DuplicateJudgment(DataError):
    def __init__(self, qid, docno):
        self.qid = qid
        self.docno = docno
        super().__init__(f"duplicate judgment for ({qid}, {docno})")


# index

class DuplicateDocno(DataError):
    def __init__(self, docno):
        self.docno = docno
        super().__init__(f"duplicate docno {docno!r}")


class CorruptIndexFile(DataError):
    def __init__(self, detail):
        self.detail = detail
        super().__init__(f"corrupt index file: {detail}")


# querypipe

class EmptyQuery(DataError):
    def __init__(self, text=""):
        self.text = text
        super().__init__(f"no content terms in query {text!r}")


class NoUsableTerms(DataError):
    def __init__(self, terms):
        self.terms = list(terms)
        super().__init__(f"no term could be translated or transliterated: {self.terms}")


class CandidateExplosion(ClirError):
    def __init__(self, free_slots, cap):
        self.free_slots = free_slots
        self.cap = cap
        super().__init__(f"2^{free_slots} candidates exceeds cap {cap}")


# eval

class UnjudgedQuery(DataError):
    def __init__(self, qid):
        self.qid = qid
        super().__init__(f"query {qid!r} has no relevance judgments")


class DuplicateTopic(DataError):
    def __init__(self, qid):
        self.qid = qid
        super().__init__(f"topic {qid!r} appears more than once")
