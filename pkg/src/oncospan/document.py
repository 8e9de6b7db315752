"""Document model: spans, sentences, tokens.

All offsets are Unicode code-point indexes into the original document text,
begin inclusive, end exclusive.  Normalization (case and accent folding)
happens on shadow copies used for matching; spans always point back into
the text as written.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from . import _textops
from .errors import OutOfBounds

# Tokens before a period that never end a sentence.  Extend per corpus via
# the extra_abbreviations argument of split_sentences; single letters
# ("J.") are always treated as abbreviations.
ABBREVIATION_STOPLIST = frozenset({"dr", "dra", "sr", "sra", "vs", "fig", "pag"})


@dataclass(frozen=True, slots=True)
class Span:
    begin: int
    end: int

    def __post_init__(self):
        if self.begin < 0 or self.end <= self.begin:
            raise ValueError(f"invalid span [{self.begin}, {self.end})")

    def overlaps(self, other: "Span") -> bool:
        return self.begin < other.end and other.begin < self.end


@dataclass(frozen=True, slots=True)
class Document:
    id: str
    text: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")
        if any(c in "\n\r\t" for c in self.id):
            raise ValueError("document id must not contain control characters")


@dataclass(frozen=True, slots=True)
class Sentence:
    span: Span
    index: int


class TokenKind(Enum):
    WORD = "Word"
    NUMBER = "Number"
    SYMBOL = "Symbol"


_KIND_BY_CODE = (TokenKind.WORD, TokenKind.NUMBER, TokenKind.SYMBOL)


@dataclass(frozen=True, slots=True)
class Token:
    span: Span
    surface: str
    kind: TokenKind


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """A non-fatal finding tied to a text location."""

    span: Span
    message: str


def covered_text(document: Document, span: Span) -> str:
    if span.end > len(document.text):
        raise OutOfBounds(
            f"span [{span.begin}, {span.end}) exceeds document "
            f"{document.id!r} of length {len(document.text)}"
        )
    return document.text[span.begin : span.end]


def split_sentences(
    text: str, extra_abbreviations: frozenset[str] = frozenset()
) -> list[Sentence]:
    abbrevs = ABBREVIATION_STOPLIST | extra_abbreviations
    return [
        Sentence(Span(b, e), i)
        for i, (b, e) in enumerate(_textops.sentence_spans(text, abbrevs))
    ]


def tokenize(document: Document, sentence: Sentence) -> list[Token]:
    span = sentence.span
    if span.end > len(document.text):
        raise OutOfBounds(
            f"sentence span [{span.begin}, {span.end}) exceeds document "
            f"{document.id!r}"
        )
    return [
        Token(Span(b, e), document.text[b:e], _KIND_BY_CODE[kind])
        for b, e, kind in _textops.token_spans(document.text, span.begin, span.end)
    ]


@lru_cache(maxsize=4096)
def normalize_word(word: str) -> str:
    """Case- and accent-fold a short string (token surfaces, cue words)."""
    return _textops.normalize_text(word)[0]


class SentenceView:
    """One sentence prepared for matching.

    Carries the original slice, its normalized shadow with the offset map
    back to the original, and the token list (spans absolute in the source
    document).  Built once per sentence and shared by every annotator.
    """

    __slots__ = (
        "text",
        "base",
        "norm",
        "norm_map",
        "tokens",
        "norm_surfaces",
        "_token_begins",
    )

    def __init__(self, text: str, base: int = 0):
        self.text = text
        self.base = base
        self.norm, self.norm_map = _textops.normalize_text(text)
        self.tokens = tuple(
            Token(Span(base + b, base + e), text[b:e], _KIND_BY_CODE[kind])
            for b, e, kind in _textops.token_spans(text, 0, len(text))
        )
        self.norm_surfaces = tuple(normalize_word(t.surface) for t in self.tokens)
        self._token_begins = tuple(t.span.begin for t in self.tokens)

    @classmethod
    def from_sentence(cls, document: Document, sentence: Sentence) -> "SentenceView":
        return cls(covered_text(document, sentence.span), sentence.span.begin)

    def orig_span(self, norm_begin: int, norm_end: int) -> Span:
        """Map a half-open range on the normalized shadow to a source span."""
        if norm_begin >= norm_end:
            raise ValueError("empty normalized range")
        return Span(
            self.base + self.norm_map[norm_begin],
            self.base + self.norm_map[norm_end - 1] + 1,
        )

    def covered(self, span: Span) -> str:
        return self.text[span.begin - self.base : span.end - self.base]

    def token_range(self, span: Span) -> tuple[int, int] | None:
        """Indexes (first, last) of tokens overlapping *span*, or None."""
        first = last = -1
        for i, tok in enumerate(self.tokens):
            if tok.span.overlaps(span):
                if first == -1:
                    first = i
                last = i
        if first == -1:
            return None
        return first, last
