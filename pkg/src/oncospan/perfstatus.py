"""Performance status: ECOG (0-5) and Karnofsky (0-100).

Keyword plus nearby integer, tolerant of the separators clinicians actually
type ("ECOG-PS 0", "ECOG_PS: 0", "ECOG (3)", "Karnofsky: 100%").  Out-of-
range values produce a diagnostic instead of an annotation; a Karnofsky
value that is not a multiple of ten is annotated but flagged.
"""

import re
from dataclasses import dataclass
from enum import Enum

from .document import Diagnostic, SentenceView, Span


class PSScale(Enum):
    ECOG = "ECOG"
    KARNOFSKY = "Karnofsky"


@dataclass(frozen=True, slots=True)
class PSAnnotation:
    span: Span
    scale: PSScale
    value: int
    raw: str

    def __post_init__(self):
        limit = 5 if self.scale is PSScale.ECOG else 100
        if not 0 <= self.value <= limit:
            raise ValueError(
                f"{self.scale.value} value {self.value} outside 0-{limit}"
            )


_PS_SEP = r"[ :\-_().]*"
_ECOG_RE = re.compile(
    r"(?<![0-9a-z])ecog(?:" + _PS_SEP + r"ps)?" + _PS_SEP +
    r"([0-9]+)(?![0-9a-z])\)?"
)
_KARNOFSKY_RE = re.compile(
    r"(?<![0-9a-z])(?:karnofsky|kps)" + _PS_SEP +
    r"([0-9]+)(?![0-9a-z])(?: ?%)?\)?"
)


def ecog_in_view(view: SentenceView) -> tuple[list[PSAnnotation], list[Diagnostic]]:
    return _scan(view, _ECOG_RE, PSScale.ECOG, 5)


def karnofsky_in_view(
    view: SentenceView,
) -> tuple[list[PSAnnotation], list[Diagnostic]]:
    annotations, diagnostics = _scan(view, _KARNOFSKY_RE, PSScale.KARNOFSKY, 100)
    for ann in annotations:
        if ann.value % 10 != 0:
            diagnostics.append(
                Diagnostic(
                    ann.span,
                    f"Karnofsky value {ann.value} is not a multiple of 10",
                )
            )
    return annotations, diagnostics


def _scan(
    view: SentenceView, pattern: re.Pattern, scale: PSScale, limit: int
) -> tuple[list[PSAnnotation], list[Diagnostic]]:
    annotations = []
    diagnostics = []
    for m in pattern.finditer(view.norm):
        span = view.orig_span(m.start(), m.end())
        value = int(m.group(1))
        if value > limit:
            diagnostics.append(
                Diagnostic(
                    span,
                    f"{scale.value} value {value} outside 0-{limit}",
                )
            )
            continue
        annotations.append(PSAnnotation(span, scale, value, view.covered(span)))
    return annotations, diagnostics


def annotate_ecog(text: str) -> tuple[list[PSAnnotation], list[Diagnostic]]:
    return ecog_in_view(SentenceView(text))


def annotate_karnofsky(text: str) -> tuple[list[PSAnnotation], list[Diagnostic]]:
    return karnofsky_in_view(SentenceView(text))


__all__ = [
    "PSScale",
    "PSAnnotation",
    "annotate_ecog",
    "annotate_karnofsky",
]
