import math

import pytest

from src.core import verifiers
from src.core.surgery import filling_from_param, joint_solve, solve_filling
from src.models.holonomy import Side
from src.models.surgery import FillingCoeffs

ROUND_TRIP_VALUES = (-8, -7, -5, -4, -3, 3, 4, 5, 7, 8)


def _failures(report):
    return [(c.name, c.failures, c.max_residual) for c in report.checks if not c.passed]


@pytest.mark.integration
def test_consistency_verifier():
    report = verifiers.verify_consistency(n_samples=300, seed=7)

    assert report.passed, _failures(report)
    assert report.sample_count + len(report.skipped) == 300
    assert report.max_residual < 1e-11
    assert report.check("l_Y(x) = m_W(x)").samples == report.sample_count
    assert report.check("m_Y(x) = 1/l_W(x)").samples == report.sample_count


@pytest.mark.integration
def test_consistency_verifier_is_deterministic():
    first = verifiers.verify_consistency(n_samples=50, seed=11)
    second = verifiers.verify_consistency(n_samples=50, seed=11)

    assert first.model_dump() == second.model_dump()


@pytest.mark.integration
def test_isolation_verifier():
    report = verifiers.verify_isolation(grid=4, n_alpha=60, seed=1)

    assert report.passed, _failures(report)
    low, high = report.notes["volume_range"]
    assert low < high
    assert report.check("beta-cusp modulus independent of the alpha filling").max_residual < 1e-12
    assert report.check("finite-difference complete beta-cusp modulus is i").passed


@pytest.mark.integration
def test_isolation_grid_must_be_large_enough():
    with pytest.raises(ValueError):
        verifiers.verify_isolation(grid=3)


@pytest.mark.integration
def test_circle_verifier():
    report = verifiers.verify_theorem2(n_samples=32)

    assert report.passed, _failures(report)
    flat = report.check("w1, w3, z2, z4 flat")
    assert flat.tolerance == 1e-9
    assert flat.max_residual < 1e-9
    lengths = list(report.notes["blowup_lengths"].values())
    assert lengths == sorted(lengths)


@pytest.mark.integration
def test_corollary_verifier():
    report = verifiers.verify_corollary()

    assert report.passed, _failures(report)
    assert report.notes["half_volume"] == pytest.approx(3.6638623767, abs=1e-9)


@pytest.mark.integration
def test_large_circle_verifier():
    angles = [math.pi / 16 + k * math.pi / 4 for k in range(8)]
    report = verifiers.verify_theorem3(radii=(1e2, 1e3, 1e4), angles=angles)

    assert report.passed, _failures(report)
    assert report.notes["sector_edges"]["right"] == "p -> -1"


@pytest.mark.integration
def test_large_circle_radii_validated():
    with pytest.raises(ValueError):
        verifiers.verify_theorem3(radii=(1e3, 1e2))
    with pytest.raises(ValueError):
        verifiers.verify_theorem3(radii=(5.0, 1e2))


@pytest.mark.integration
def test_octagon_verifier():
    report = verifiers.verify_octagon(n_samples=200, seed=5)

    assert report.passed, _failures(report)
    assert report.notes["S - U"] == "-i"


@pytest.mark.integration
def test_cut_plane_verifier():
    report = verifiers.verify_cut_plane_logs(n_samples=40, seed=2)

    assert report.passed, _failures(report)


@pytest.mark.integration
@pytest.mark.parametrize("side", list(Side))
def test_round_trip_grid(side):
    for p in ROUND_TRIP_VALUES:
        for q in ROUND_TRIP_VALUES:
            result = solve_filling(FillingCoeffs(p, q), side)
            recovered = filling_from_param(result.param, side)
            assert max(abs(recovered.p - p), abs(recovered.q - q)) < 1e-8, (p, q)


@pytest.mark.integration
def test_joint_solve_matches_independent_solves():
    f_alpha, f_beta = FillingCoeffs(5, 1), FillingCoeffs(3, -4)
    alpha, beta = joint_solve(f_alpha, f_beta)

    assert alpha.param == pytest.approx(solve_filling(f_alpha, Side.ALPHA).param, abs=1e-12)
    assert beta.param == pytest.approx(solve_filling(f_beta, Side.BETA).param, abs=1e-12)


@pytest.mark.integration
@pytest.mark.parametrize(
    "run",
    [
        lambda: verifiers.verify_octagon(n_samples=40, seed=9),
        lambda: verifiers.verify_cut_plane_logs(n_samples=10, seed=9),
        lambda: verifiers.verify_isolation(grid=4, n_alpha=20, seed=9),
        lambda: verifiers.verify_theorem2(n_samples=16),
    ],
    ids=["octagon", "continuation", "thm1", "thm2"],
)
def test_reports_identical_across_reruns(run):
    assert run().model_dump() == run().model_dump()
