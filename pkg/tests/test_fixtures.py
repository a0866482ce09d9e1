"""The built-in counterexample corpus must verify all documented claims."""

import numpy as np
import pytest

from localsolv import poisson_bracket, span_rank
from localsolv.fixtures import all_fixtures, verify_fixture


def test_corpus_has_all_documented_cases():
    keys = {f.key for f in all_fixtures()}
    assert keys == {
        "plane-rotated",
        "plane-sheared",
        "quartet-nonspanning",
        "isotropic-radical-d5",
        "picked-c-trivial-radical-d5",
        "picked-c-full-rank-d5",
    }


def test_every_fixture_has_independent_triple():
    for fixture in all_fixtures():
        assert span_rank(fixture.a, fixture.b, fixture.third_form) == 3


def test_documented_bracket_values_up_to_sign():
    for fixture in all_fixtures():
        if fixture.expected_bracket is None:
            continue
        computed = poisson_bracket(fixture.a, fixture.b, fixture.structure).matrix
        expected = fixture.expected_bracket.matrix
        gap = min(
            np.max(np.abs(computed - expected)), np.max(np.abs(computed + expected))
        )
        assert gap <= 1e-12


@pytest.mark.parametrize("fixture", all_fixtures(), ids=lambda f: f.key)
def test_fixture_verifies(fixture):
    report = verify_fixture(fixture, seeds=(0, 1, 2, 3, 4))
    failures = [c for c in report.checks if not c.passed]
    assert not failures, failures
