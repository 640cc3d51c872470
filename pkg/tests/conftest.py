"""Shared pytest hooks: print one PASS/FAIL line per acceptance criterion."""
from __future__ import annotations

CRITERIA = {
    "test_activation_threshold_fidelity": (
        "activation threshold fidelity: 500 seeded wiggles, rate >= 99%, "
        "activation index exactly matches the brute-force oracle, < 10 s"
    ),
    "test_zero_false_activations": (
        "zero false activations: 500 seeded non-wiggle traces, 0 Activated, < 10 s"
    ),
    "test_granularity_boundary": (
        "granularity boundary: extents 40/64 -> word, 65/120 -> block, exact"
    ),
    "test_valence_formula": (
        "valence formula: 1.0 -> +/-10, 0.5 -> +/-5, 0.0 -> 0, exact; "
        "mirror antisymmetry on 100 committed traces"
    ),
    "test_priority_mapping": (
        "priority mapping: up/down x mid/edge -> high/normal/urgent/low, exact"
    ),
    "test_target_voting_matches_oracle": (
        "target voting: equals voting oracle on 200 layouts x 50 paths; "
        "no-region paths abstain"
    ),
    "test_reversal_counting_matches_oracle": (
        "reversal counting: equals independent oracle on 1000 random traces, exact"
    ),
    "test_mode_axis_exclusivity": (
        "mode axis exclusivity: 100 horizontal traces never activate mobile, "
        "100 vertical never activate desktop"
    ),
    "test_determinism_golden_and_undo": (
        "determinism: bundled goldens replay bit-exact; store round-trips; "
        "undo exact on 200 random mutation sequences"
    ),
    "test_triage_semantics_vs_reference": (
        "triage semantics: query partition and batch trash match a naive "
        "reference on 100 randomized stores"
    ),
    "test_eager_latency_budget": (
        "eager latency budget: median feed() < 1 ms on the bundled corpus"
    ),
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for status, verdict in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            if outcomes.get(name) != "FAIL":
                outcomes[name] = verdict
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, label in CRITERIA.items():
        if name in outcomes:
            terminalreporter.write_line(f"{outcomes[name]}  {label}")
    for name, verdict in outcomes.items():
        if name not in CRITERIA:
            terminalreporter.write_line(f"{verdict}  {name}")
