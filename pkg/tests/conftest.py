import pytest

from oncospan import PipelineConfig, build_pipeline

MUTATION_NOTE = (
    "EGFR + (del exon 19), no se detecta traslocación de ALK y ROS1 no traslocado."
)
STAGING_NOTE = (
    "Adenocarcinoma de pulmón, pT1aN0M0 (micronódulos pulmonares bilaterales, "
    "linfangitis carcinomatosa, derrame pleural), estadio I_A1."
)
PERFSTATUS_NOTE = (
    "ECOG-PS 0. Regular estado general. Disnea de reposo/mínimos esfuerzos. "
    "Karnofsky: 100%."
)
COMBINED_NOTE = (
    "Paciente varón de 70 años. ECOG 3. Adenocarcinoma de pulmón estadio IV. "
    "EGFR no mutado. ALK no traslocado."
)

# Stage-group table transcribed by hand from the 8th-edition lung grouping:
# one row per T/M category, columns N0..N3.  Kept as plain strings so the
# tests never depend on the package's own table.
STAGE_TABLE = {
    "T1a": ("IA1", "IIB", "IIIA", "IIIB"),
    "T1b": ("IA2", "IIB", "IIIA", "IIIB"),
    "T1c": ("IA3", "IIB", "IIIA", "IIIB"),
    "T2a": ("IB", "IIB", "IIIA", "IIIB"),
    "T2b": ("IIA", "IIB", "IIIA", "IIIB"),
    "T3": ("IIB", "IIIA", "IIIB", "IIIC"),
    "T4": ("IIIA", "IIIA", "IIIB", "IIIC"),
    "M1a": ("IVA", "IVA", "IVA", "IVA"),
    "M1b": ("IVA", "IVA", "IVA", "IVA"),
    "M1c": ("IVB", "IVB", "IVB", "IVB"),
}

N_COLUMNS = ("N0", "N1", "N2", "N3")


@pytest.fixture(scope="session")
def default_pipeline():
    return build_pipeline(PipelineConfig())


_criteria_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        _criteria_results.append((marker.args[0], marker.args[1], report.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria_results:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed in sorted(_criteria_results):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status} - {description}")
