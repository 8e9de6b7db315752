import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import MUTATION_NOTE, STAGING_NOTE, COMBINED_NOTE, PERFSTATUS_NOTE
from oncospan import (
    ALL_ANNOTATORS,
    AnnotatorKind,
    ConfigError,
    Document,
    DocumentResult,
    DuplicateDocumentId,
    PipelineConfig,
    build_pipeline,
    process_corpus,
    serialize_result,
)
from oncospan.pipeline import annotator_name
from oncospan.mutation import MutationAnnotation
from oncospan.perfstatus import PSAnnotation
from oncospan.staging import StageAnnotation, TNMAnnotation


def _pipe(*kinds, diagnostics=True):
    enabled = frozenset(kinds) if kinds else ALL_ANNOTATORS
    return build_pipeline(
        PipelineConfig(enabled_annotators=enabled, diagnostics=diagnostics)
    )


def test_all_annotators_has_seven():
    assert len(ALL_ANNOTATORS) == 7
    assert AnnotatorKind.EGFR in ALL_ANNOTATORS
    assert AnnotatorKind.KARNOFSKY in ALL_ANNOTATORS


def test_empty_config_rejected():
    with pytest.raises(ConfigError):
        build_pipeline(PipelineConfig(enabled_annotators=frozenset()))


def test_missing_lexicon_rejected():
    with pytest.raises(ConfigError):
        build_pipeline(PipelineConfig(lexicon_path="/nonexistent/cues.tsv"))


def test_result_fields(default_pipeline):
    doc = Document("d1", MUTATION_NOTE)
    result = default_pipeline.process_document(doc)
    assert isinstance(result, DocumentResult)
    assert result.document_id == "d1"
    assert result.text == MUTATION_NOTE
    assert len(result.annotations) == 3
    assert result.consistency == ()


def test_annotations_sorted(default_pipeline):
    text = " ".join([COMBINED_NOTE, STAGING_NOTE, PERFSTATUS_NOTE])
    result = default_pipeline.process_document(Document("d", text))
    keys = [
        (a.span.begin, a.span.end, annotator_name(a)) for a in result.annotations
    ]
    assert keys == sorted(keys)


def test_consistency_cross_product(default_pipeline):
    text = "pT1aN0M0, estadio IA1. Luego T3N3M0 con estadio IIB."
    result = default_pipeline.process_document(Document("d", text))
    tnm = [a for a in result.annotations if isinstance(a, TNMAnnotation)]
    stages = [a for a in result.annotations if isinstance(a, StageAnnotation)]
    assert len(tnm) == 2 and len(stages) == 2
    assert len(result.consistency) == 4
    pairs = {(r.tnm.raw, r.stage.raw, r.verdict.value) for r in result.consistency}
    assert ("pT1aN0M0", "IA1", "Consistent") in pairs
    assert ("T3N3M0", "IIB", "Inconsistent") in pairs


def test_no_consistency_without_stage_annotator():
    pipe = _pipe(AnnotatorKind.TNM)
    result = pipe.process_document(Document("d", "pT1aN0M0, estadio IA1."))
    assert len(result.annotations) == 1
    assert result.consistency == ()


def test_no_consistency_without_tnm_annotator():
    pipe = _pipe(AnnotatorKind.STAGE)
    result = pipe.process_document(Document("d", "pT1aN0M0, estadio IA1."))
    assert len(result.annotations) == 1
    assert result.consistency == ()


def test_single_annotator_filtering():
    pipe = _pipe(AnnotatorKind.ECOG)
    text = " ".join([MUTATION_NOTE, STAGING_NOTE, PERFSTATUS_NOTE])
    result = pipe.process_document(Document("d", text))
    assert all(isinstance(a, PSAnnotation) for a in result.annotations)
    assert [a.value for a in result.annotations] == [0]


def test_gene_annotator_filtering():
    pipe = _pipe(AnnotatorKind.ALK)
    result = pipe.process_document(Document("d", MUTATION_NOTE))
    assert len(result.annotations) == 1
    ann = result.annotations[0]
    assert isinstance(ann, MutationAnnotation)
    assert ann.gene.value == "ALK"


def test_diagnostics_flag():
    noisy = "ECOG 7 y Karnofsky 95."
    with_diags = _pipe().process_document(Document("d", noisy))
    assert len(with_diags.diagnostics) == 2
    without = _pipe(diagnostics=False).process_document(Document("d", noisy))
    assert without.diagnostics == ()
    # annotations unaffected by the flag
    assert len(without.annotations) == len(with_diags.annotations) == 1


def test_empty_document(default_pipeline):
    result = default_pipeline.process_document(Document("d", ""))
    assert result.annotations == ()
    assert result.diagnostics == ()
    assert result.consistency == ()


def test_annotator_independence(default_pipeline):
    # each annotator alone produces exactly its slice of the full run
    text = " ".join([MUTATION_NOTE, STAGING_NOTE, PERFSTATUS_NOTE, COMBINED_NOTE])
    doc = Document("d", text)
    full = default_pipeline.process_document(doc)
    by_kind = {}
    for kind in ALL_ANNOTATORS:
        solo = _pipe(kind).process_document(doc)
        by_kind[kind] = solo.annotations
    merged = sorted(
        itertools.chain.from_iterable(by_kind.values()),
        key=lambda a: (a.span.begin, a.span.end, annotator_name(a)),
    )
    assert list(full.annotations) == merged


def test_idempotence(default_pipeline):
    doc = Document("d", " ".join([MUTATION_NOTE, STAGING_NOTE]))
    first = default_pipeline.process_document(doc)
    second = default_pipeline.process_document(doc)
    assert first == second
    assert serialize_result(first) == serialize_result(second)


def test_corpus_sorted_by_id(default_pipeline):
    docs = [
        Document("zeta", MUTATION_NOTE),
        Document("alfa", STAGING_NOTE),
        Document("mu", PERFSTATUS_NOTE),
    ]
    results = process_corpus(default_pipeline, docs)
    assert [r.document_id for r in results] == ["alfa", "mu", "zeta"]


def test_corpus_duplicate_id(default_pipeline):
    docs = [Document("a", "x"), Document("a", "y")]
    with pytest.raises(DuplicateDocumentId):
        process_corpus(default_pipeline, docs)


def test_corpus_empty(default_pipeline):
    assert process_corpus(default_pipeline, []) == []


def test_corpus_parallel_equals_serial(default_pipeline):
    docs = [
        Document(f"doc{i}", text)
        for i, text in enumerate([MUTATION_NOTE, STAGING_NOTE, PERFSTATUS_NOTE, COMBINED_NOTE] * 3)
    ]
    serial = process_corpus(default_pipeline, docs, jobs=1)
    parallel = process_corpus(default_pipeline, docs, jobs=4)
    assert serial == parallel
    assert [serialize_result(r) for r in serial] == [
        serialize_result(r) for r in parallel
    ]


def test_jobs_validation(default_pipeline):
    with pytest.raises(ValueError):
        process_corpus(default_pipeline, [], jobs=0)


@given(
    st.lists(
        st.sampled_from([MUTATION_NOTE, STAGING_NOTE, PERFSTATUS_NOTE, COMBINED_NOTE, "", "Sin datos."]),
        max_size=4,
    )
)
@settings(deadline=None, max_examples=25)
def test_concatenation_only_adds(default_pipeline, parts):
    # annotating a concatenation never loses the leading document's spans when
    # parts are joined on sentence boundaries
    text = " ".join(parts)
    lead = default_pipeline.process_document(Document("d", parts[0] if parts else ""))
    combined = default_pipeline.process_document(Document("d", text))
    lead_spans = [(a.span.begin, a.span.end) for a in lead.annotations]
    combined_spans = [(a.span.begin, a.span.end) for a in combined.annotations]
    for span in lead_spans:
        assert span in combined_spans
