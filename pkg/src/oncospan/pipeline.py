"""Annotator composition: one configured engine, one result per document.

Segmentation and normalization run once per document; every enabled
annotator consumes the same sentence views.  The pipeline object is
immutable after build, so one instance can serve any number of worker
threads.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence, Union

from . import mutation, perfstatus, staging
from .assertion import CueLexicon, load_cue_lexicon
from .document import Diagnostic, Document, SentenceView, split_sentences
from .errors import ConfigError, DuplicateDocumentId
from .mutation import Gene, MutationAnnotation
from .perfstatus import PSAnnotation
from .staging import ConsistencyReport, StageAnnotation, TNMAnnotation, check_consistency

Annotation = Union[MutationAnnotation, TNMAnnotation, StageAnnotation, PSAnnotation]


class AnnotatorKind(Enum):
    EGFR = "EGFR"
    ALK = "ALK"
    ROS1 = "ROS1"
    TNM = "TNM"
    STAGE = "Stage"
    ECOG = "ECOG"
    KARNOFSKY = "Karnofsky"


ALL_ANNOTATORS = frozenset(AnnotatorKind)

_GENE_BY_KIND = {
    AnnotatorKind.EGFR: Gene.EGFR,
    AnnotatorKind.ALK: Gene.ALK,
    AnnotatorKind.ROS1: Gene.ROS1,
}


@dataclass(frozen=True)
class PipelineConfig:
    enabled_annotators: frozenset[AnnotatorKind] = ALL_ANNOTATORS
    lexicon_path: str | Path | None = None
    diagnostics: bool = True


@dataclass(frozen=True)
class DocumentResult:
    document_id: str
    text: str
    annotations: tuple[Annotation, ...] = ()
    diagnostics: tuple[Diagnostic, ...] = ()
    consistency: tuple[ConsistencyReport, ...] = ()


def annotator_name(annotation: Annotation) -> str:
    """Annotator column value used in standoff records and SQL rows."""
    if isinstance(annotation, MutationAnnotation):
        return "mutation"
    if isinstance(annotation, TNMAnnotation):
        return "tnm"
    if isinstance(annotation, StageAnnotation):
        return "stage"
    if isinstance(annotation, PSAnnotation):
        return "ps"
    raise TypeError(f"not an annotation: {annotation!r}")


class Pipeline:
    """Immutable bundle of compiled rules; see build_pipeline."""

    __slots__ = ("config", "lexicon", "_genes", "_tnm", "_stage", "_ecog", "_karnofsky")

    def __init__(self, config: PipelineConfig, lexicon: CueLexicon):
        self.config = config
        self.lexicon = lexicon
        enabled = config.enabled_annotators
        self._genes = frozenset(
            gene for kind, gene in _GENE_BY_KIND.items() if kind in enabled
        )
        self._tnm = AnnotatorKind.TNM in enabled
        self._stage = AnnotatorKind.STAGE in enabled
        self._ecog = AnnotatorKind.ECOG in enabled
        self._karnofsky = AnnotatorKind.KARNOFSKY in enabled

    def process_document(self, document: Document) -> DocumentResult:
        return process_document(self, document)


def build_pipeline(config: PipelineConfig) -> Pipeline:
    enabled = frozenset(config.enabled_annotators)
    if not enabled:
        raise ConfigError("no annotators enabled")
    try:
        lexicon = load_cue_lexicon(config.lexicon_path)
    except OSError as exc:
        raise ConfigError(f"cannot read cue lexicon: {exc}") from exc
    return Pipeline(config, lexicon)


def process_document(pipeline: Pipeline, document: Document) -> DocumentResult:
    annotations: list[Annotation] = []
    diagnostics: list[Diagnostic] = []
    for sentence in split_sentences(document.text):
        view = SentenceView.from_sentence(document, sentence)
        if pipeline._genes:
            annotations.extend(
                mutation.annotate_view(view, pipeline.lexicon, pipeline._genes)
            )
        if pipeline._tnm:
            annotations.extend(staging.tnm_in_view(view))
        if pipeline._stage:
            annotations.extend(staging.stages_in_view(view))
        if pipeline._ecog:
            anns, diags = perfstatus.ecog_in_view(view)
            annotations.extend(anns)
            diagnostics.extend(diags)
        if pipeline._karnofsky:
            anns, diags = perfstatus.karnofsky_in_view(view)
            annotations.extend(anns)
            diagnostics.extend(diags)
    annotations.sort(key=lambda a: (a.span.begin, a.span.end, annotator_name(a)))
    reports: list[ConsistencyReport] = []
    if pipeline._tnm and pipeline._stage:
        tnms = [a for a in annotations if isinstance(a, TNMAnnotation)]
        stages = [a for a in annotations if isinstance(a, StageAnnotation)]
        for tnm in tnms:
            for stage in stages:
                reports.append(check_consistency(tnm, stage))
    if not pipeline.config.diagnostics:
        diagnostics = []
    return DocumentResult(
        document_id=document.id,
        text=document.text,
        annotations=tuple(annotations),
        diagnostics=tuple(diagnostics),
        consistency=tuple(reports),
    )


def process_corpus(
    pipeline: Pipeline, documents: Sequence[Document], jobs: int = 1
) -> list[DocumentResult]:
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    seen: set[str] = set()
    for doc in documents:
        if doc.id in seen:
            raise DuplicateDocumentId(doc.id)
        seen.add(doc.id)
    if jobs <= 1 or len(documents) <= 1:
        results = [process_document(pipeline, doc) for doc in documents]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda d: process_document(pipeline, d), documents))
    results.sort(key=lambda r: r.document_id)
    return results


__all__ = [
    "Annotation",
    "AnnotatorKind",
    "ALL_ANNOTATORS",
    "PipelineConfig",
    "DocumentResult",
    "Pipeline",
    "annotator_name",
    "build_pipeline",
    "process_document",
    "process_corpus",
]
