import pytest
from hypothesis import settings

from frontdoor import parse_graph

from helpers import GRAPH_TEXTS

settings.register_profile("suite", derandomize=True, max_examples=60,
                          deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def graphs():
    """Name -> parsed Dag for the reference graphs."""
    return {name: parse_graph(text) for name, text in GRAPH_TEXTS.items()}


@pytest.fixture
def graph_file(tmp_path):
    """Write a named reference graph (or raw text) to disk, return the path."""

    def write(name_or_text, filename="g.txt"):
        text = GRAPH_TEXTS.get(name_or_text, name_or_text)
        path = tmp_path / filename
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


# One summary line per acceptance criterion, printed after the normal
# pytest output so the result of each is visible at a glance.

_CRITERIA = {
    "test_golden_examples": "golden examples",
    "test_matches_bruteforce_oracle": "oracle equivalence",
    "test_scaling_is_linear": "near-linear scaling",
    "test_enumeration_delay_bound": "enumeration delay",
    "test_estimator_tracks_interventional_truth": "estimator accuracy",
    "test_identifiability_shape": "identifiability shape",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for status, reports in terminalreporter.stats.items():
        for rep in reports:
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.rsplit("::", 1)[-1]
            if name not in _CRITERIA:
                continue
            if status in ("failed", "error"):
                outcomes[name] = "FAIL"
            elif status == "skipped":
                outcomes.setdefault(name, "SKIP")
            elif status == "passed":
                outcomes.setdefault(name, "PASS")
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, label in _CRITERIA.items():
        if name in outcomes:
            terminalreporter.write_line(f"{label}: {outcomes[name]}")
