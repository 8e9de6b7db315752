"""Per-document standoff files (.ann).

Layout, all UTF-8:

    #doc <document id>
    #len <source text length in code points>
    <source text, exactly that many code points, then one newline>
    <one record per line>
    <#diag lines>
    <#check lines>

Record line: ``begin<TAB>end<TAB>annotator<TAB>covered_text<TAB>features``
with features ``key=value;key=value``.  Covered text and diagnostic
messages escape backslash, tab, newline and carriage return so one record
is always one line.  ``#diag`` carries a diagnostic (begin, end, message);
``#check`` carries a consistency report as two record indexes, the verdict
and the expected group (``-`` when not comparable).  Deserialization is the
exact inverse of serialization and is strict: anything unexpected raises
MalformedFile with a line number, and a covered-text disagreement raises
SpanMismatch.
"""

from dataclasses import dataclass

from .assertion import Polarity
from .document import Diagnostic, Span
from .errors import MalformedFile, SpanMismatch
from .mutation import (
    ExonKind,
    ExonMention,
    Gene,
    MutationAnnotation,
    MutationPoint,
    PointVariant,
)
from .perfstatus import PSAnnotation, PSScale
from .pipeline import Annotation, DocumentResult, annotator_name
from .staging import (
    ConsistencyReport,
    ConsistencyVerdict,
    MCategory,
    NCategory,
    StageAnnotation,
    StageGroup,
    TCategory,
    TNMAnnotation,
    TnmPrefix,
)


@dataclass(frozen=True, slots=True)
class StandoffRecord:
    begin: int
    end: int
    annotator: str
    covered_text: str
    features: tuple[tuple[str, str], ...]


@dataclass(frozen=True, slots=True)
class StandoffFile:
    document_id: str
    source_text: str
    records: tuple[StandoffRecord, ...]


def _escape(value: str) -> str:
    return (
        value.replace("\\", "\\\\")
        .replace("\t", "\\t")
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


_UNESCAPE = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}


def _unescape(value: str, line_no: int) -> str:
    if "\\" not in value:
        return value
    out = []
    i = 0
    n = len(value)
    while i < n:
        ch = value[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n or value[i + 1] not in _UNESCAPE:
            raise MalformedFile("bad escape sequence", line_no)
        out.append(_UNESCAPE[value[i + 1]])
        i += 2
    return "".join(out)


def _features_of(ann: Annotation) -> list[tuple[str, str]]:
    if isinstance(ann, MutationAnnotation):
        pairs = [("gene", ann.gene.value), ("polarity", ann.polarity.value)]
        if ann.exon is not None:
            pairs.append(("exon", str(ann.exon.number)))
            if ann.exon.kind is not None:
                pairs.append(("exon_kind", ann.exon.kind.value))
            pairs.append(("exon_begin", str(ann.exon.span.begin)))
            pairs.append(("exon_end", str(ann.exon.span.end)))
        if ann.point is not None:
            pairs.append(("point", ann.point.value.value))
            pairs.append(("point_begin", str(ann.point.span.begin)))
            pairs.append(("point_end", str(ann.point.span.end)))
        pairs.append(("implied", "true" if ann.implied else "false"))
        return pairs
    if isinstance(ann, TNMAnnotation):
        return [
            ("prefix", ann.prefix.value),
            ("t", ann.t.value),
            ("n", ann.n.value),
            ("m", ann.m.value),
        ]
    if isinstance(ann, StageAnnotation):
        return [("stage", ann.stage.value)]
    if isinstance(ann, PSAnnotation):
        return [("scale", ann.scale.value), ("value", str(ann.value))]
    raise TypeError(f"not an annotation: {ann!r}")


def serialize_result(result: DocumentResult) -> bytes:
    text = result.text
    parts = [f"#doc {result.document_id}\n#len {len(text)}\n{text}\n"]
    annotations = list(result.annotations)
    for ann in annotations:
        covered = text[ann.span.begin : ann.span.end]
        features = ";".join(f"{k}={v}" for k, v in _features_of(ann))
        parts.append(
            f"{ann.span.begin}\t{ann.span.end}\t{annotator_name(ann)}\t"
            f"{_escape(covered)}\t{features}\n"
        )
    for diag in result.diagnostics:
        parts.append(
            f"#diag\t{diag.span.begin}\t{diag.span.end}\t{_escape(diag.message)}\n"
        )
    for report in result.consistency:
        expected = "-" if report.expected is None else report.expected.value
        parts.append(
            f"#check\t{annotations.index(report.tnm)}\t"
            f"{annotations.index(report.stage)}\t"
            f"{report.verdict.value}\t{expected}\n"
        )
    return "".join(parts).encode("utf-8")


def _parse_int(raw: str, what: str, line_no: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise MalformedFile(f"{what} is not an integer: {raw!r}", line_no) from None


def _parse_enum(enum_cls, raw: str, what: str, line_no: int):
    try:
        return enum_cls(raw)
    except ValueError:
        raise MalformedFile(f"unknown {what} {raw!r}", line_no) from None


def _parse_span(begin: str, end: str, text_len: int, line_no: int) -> Span:
    b = _parse_int(begin, "begin", line_no)
    e = _parse_int(end, "end", line_no)
    if b < 0 or e <= b or e > text_len:
        raise MalformedFile(f"span [{b}, {e}) out of bounds", line_no)
    return Span(b, e)


_FEATURE_KEYS = {
    "mutation": (
        frozenset({"gene", "polarity", "implied"}),
        frozenset(
            {
                "exon",
                "exon_kind",
                "exon_begin",
                "exon_end",
                "point",
                "point_begin",
                "point_end",
            }
        ),
    ),
    "tnm": (frozenset({"prefix", "t", "n", "m"}), frozenset()),
    "stage": (frozenset({"stage"}), frozenset()),
    "ps": (frozenset({"scale", "value"}), frozenset()),
}


def _parse_features(raw: str, annotator: str, line_no: int) -> dict[str, str]:
    required, optional = _FEATURE_KEYS[annotator]
    features: dict[str, str] = {}
    for item in raw.split(";"):
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise MalformedFile(f"bad feature item {item!r}", line_no)
        if key in features:
            raise MalformedFile(f"duplicate feature key {key!r}", line_no)
        if key not in required and key not in optional:
            raise MalformedFile(
                f"unknown feature key {key!r} for annotator {annotator!r}", line_no
            )
        features[key] = value
    missing = required - features.keys()
    if missing:
        raise MalformedFile(
            f"missing feature keys: {', '.join(sorted(missing))}", line_no
        )
    return features


def _build_annotation(
    span: Span, annotator: str, covered: str, features: dict[str, str], line_no: int
) -> Annotation:
    try:
        if annotator == "mutation":
            return _build_mutation(span, features, line_no)
        if annotator == "tnm":
            return TNMAnnotation(
                span,
                _parse_enum(TnmPrefix, features["prefix"], "prefix", line_no),
                _parse_enum(TCategory, features["t"], "T category", line_no),
                _parse_enum(NCategory, features["n"], "N category", line_no),
                _parse_enum(MCategory, features["m"], "M category", line_no),
                covered,
            )
        if annotator == "stage":
            return StageAnnotation(
                span,
                _parse_enum(StageGroup, features["stage"], "stage group", line_no),
                covered,
            )
        return PSAnnotation(
            span,
            _parse_enum(PSScale, features["scale"], "scale", line_no),
            _parse_int(features["value"], "value", line_no),
            covered,
        )
    except ValueError as exc:
        raise MalformedFile(str(exc), line_no) from None


def _build_mutation(
    span: Span, features: dict[str, str], line_no: int
) -> MutationAnnotation:
    gene = _parse_enum(Gene, features["gene"], "gene", line_no)
    polarity = _parse_enum(Polarity, features["polarity"], "polarity", line_no)
    implied_raw = features["implied"]
    if implied_raw not in ("true", "false"):
        raise MalformedFile(f"implied must be true/false, got {implied_raw!r}", line_no)
    exon = None
    exon_keys = {"exon", "exon_begin", "exon_end"} & features.keys()
    if exon_keys:
        if {"exon", "exon_begin", "exon_end"} - features.keys():
            raise MalformedFile("incomplete exon feature group", line_no)
        kind = None
        if "exon_kind" in features:
            kind = _parse_enum(ExonKind, features["exon_kind"], "exon kind", line_no)
        exon = ExonMention(
            Span(
                _parse_int(features["exon_begin"], "exon_begin", line_no),
                _parse_int(features["exon_end"], "exon_end", line_no),
            ),
            _parse_int(features["exon"], "exon", line_no),
            kind,
        )
    elif "exon_kind" in features:
        raise MalformedFile("exon_kind without exon", line_no)
    point = None
    point_keys = {"point", "point_begin", "point_end"} & features.keys()
    if point_keys:
        if {"point", "point_begin", "point_end"} - features.keys():
            raise MalformedFile("incomplete point feature group", line_no)
        point = MutationPoint(
            Span(
                _parse_int(features["point_begin"], "point_begin", line_no),
                _parse_int(features["point_end"], "point_end", line_no),
            ),
            _parse_enum(PointVariant, features["point"], "mutation point", line_no),
        )
    return MutationAnnotation(
        span, gene, polarity, exon, point, implied_raw == "true"
    )


def deserialize_result(data: bytes) -> DocumentResult:
    try:
        content = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedFile(f"not valid UTF-8: {exc}") from None

    nl1 = content.find("\n")
    if nl1 == -1 or not content.startswith("#doc "):
        raise MalformedFile("first line must be '#doc <id>'", 1)
    document_id = content[5:nl1]
    if not document_id:
        raise MalformedFile("empty document id", 1)

    nl2 = content.find("\n", nl1 + 1)
    if nl2 == -1 or not content.startswith("#len ", nl1 + 1):
        raise MalformedFile("second line must be '#len <n>'", 2)
    length = _parse_int(content[nl1 + 6 : nl2], "text length", 2)
    if length < 0:
        raise MalformedFile("negative text length", 2)

    text_start = nl2 + 1
    text_end = text_start + length
    if text_end > len(content):
        raise MalformedFile("source text shorter than declared length", 3)
    text = content[text_start:text_end]
    if text_end == len(content) or content[text_end] != "\n":
        raise MalformedFile("source text must end with a newline delimiter", 3)

    first_line = 4 + text.count("\n")
    body = content[text_end + 1 :]
    lines = body.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    else:
        raise MalformedFile("file must end with a newline", first_line + len(lines) - 1)

    annotations: list[Annotation] = []
    diagnostics: list[Diagnostic] = []
    reports: list[ConsistencyReport] = []
    section = "records"
    for offset, line in enumerate(lines):
        line_no = first_line + offset
        if line.startswith("#diag\t"):
            if section == "checks":
                raise MalformedFile("#diag after #check", line_no)
            section = "diags"
            fields = line.split("\t")
            if len(fields) != 4:
                raise MalformedFile("#diag needs 4 tab-separated fields", line_no)
            span = _parse_span(fields[1], fields[2], len(text), line_no)
            diagnostics.append(Diagnostic(span, _unescape(fields[3], line_no)))
            continue
        if line.startswith("#check\t"):
            section = "checks"
            fields = line.split("\t")
            if len(fields) != 5:
                raise MalformedFile("#check needs 5 tab-separated fields", line_no)
            reports.append(
                _parse_check(fields, annotations, line_no)
            )
            continue
        if line.startswith("#"):
            raise MalformedFile(f"unknown directive {line.split(chr(9))[0]!r}", line_no)
        if section != "records":
            raise MalformedFile("record after #diag/#check section", line_no)
        fields = line.split("\t")
        if len(fields) != 5:
            raise MalformedFile("record needs 5 tab-separated fields", line_no)
        begin_raw, end_raw, annotator, covered_raw, features_raw = fields
        if annotator not in _FEATURE_KEYS:
            raise MalformedFile(f"unknown annotator {annotator!r}", line_no)
        span = _parse_span(begin_raw, end_raw, len(text), line_no)
        covered = _unescape(covered_raw, line_no)
        if text[span.begin : span.end] != covered:
            raise SpanMismatch(
                f"line {line_no}: covered text {covered!r} does not match "
                f"text[{span.begin}:{span.end}]"
            )
        features = _parse_features(features_raw, annotator, line_no)
        annotations.append(
            _build_annotation(span, annotator, covered, features, line_no)
        )

    return DocumentResult(
        document_id=document_id,
        text=text,
        annotations=tuple(annotations),
        diagnostics=tuple(diagnostics),
        consistency=tuple(reports),
    )


def _parse_check(
    fields: list[str], annotations: list[Annotation], line_no: int
) -> ConsistencyReport:
    tnm_idx = _parse_int(fields[1], "tnm record index", line_no)
    stage_idx = _parse_int(fields[2], "stage record index", line_no)
    if not 0 <= tnm_idx < len(annotations) or not isinstance(
        annotations[tnm_idx], TNMAnnotation
    ):
        raise MalformedFile(f"index {tnm_idx} is not a tnm record", line_no)
    if not 0 <= stage_idx < len(annotations) or not isinstance(
        annotations[stage_idx], StageAnnotation
    ):
        raise MalformedFile(f"index {stage_idx} is not a stage record", line_no)
    verdict = _parse_enum(ConsistencyVerdict, fields[3], "verdict", line_no)
    expected = None
    if fields[4] != "-":
        expected = _parse_enum(StageGroup, fields[4], "stage group", line_no)
    try:
        return ConsistencyReport(
            annotations[tnm_idx], annotations[stage_idx], verdict, expected
        )
    except ValueError as exc:
        raise MalformedFile(str(exc), line_no) from None


def read_standoff(data: bytes) -> StandoffFile:
    """Parse only the header, text and annotation records of a file."""
    result = deserialize_result(data)
    records = []
    for ann in result.annotations:
        covered = result.text[ann.span.begin : ann.span.end]
        records.append(
            StandoffRecord(
                ann.span.begin,
                ann.span.end,
                annotator_name(ann),
                covered,
                tuple(_features_of(ann)),
            )
        )
    return StandoffFile(result.document_id, result.text, tuple(records))


__all__ = [
    "StandoffFile",
    "StandoffRecord",
    "serialize_result",
    "deserialize_result",
    "read_standoff",
]
