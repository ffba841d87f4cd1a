import cmath
import math

import pytest

import dbarkit as dk


def test_weights_and_moments():
    assert dk.WeightSpec.parse("fock:m=4").describe() == "fock:m=4"
    s = dk.MomentSequence(dk.WeightSpec.disc(0.0))
    assert [s.moment(n) for n in range(4)] == pytest.approx([math.pi / (n + 1) for n in range(4)], rel=1e-15)
    g = dk.MomentSequence(dk.WeightSpec.fock(2.0))
    assert g.moment(5) == pytest.approx(math.pi * 120, rel=1e-14)


def test_custom_density_matches_fock():
    custom = dk.WeightSpec.custom(lambda r: math.exp(-r * r), label="gauss")
    for n in range(6):
        assert dk.moment_log(custom, n) == pytest.approx(dk.fock_moment_closed(2.0, n), rel=1e-9)


def test_errors_map_to_python():
    with pytest.raises(dk.ParameterError):
        dk.WeightSpec.disc(-1.0)
    with pytest.raises(dk.InputError):
        dk.WeightSpec.parse("ring:r=2")
    with pytest.raises(dk.DomainError):
        dk.kernel_eval(dk.MomentSequence(dk.WeightSpec.disc(0.0)), 1.5, 0.0)
    assert issubclass(dk.DivergenceError, dk.Error)


def test_spectrum():
    fock4 = dk.MomentSequence(dk.WeightSpec.fock(4.0))
    assert dk.classify(fock4).verdict == dk.Verdict.CompactNotHilbertSchmidt
    d = dk.diagnose(dk.MomentSequence(dk.WeightSpec.disc(1.0)), 1000)
    assert d.classification.verdict == dk.Verdict.HilbertSchmidt
    assert d.partial_sums[-1] == pytest.approx(d.ratios[-1], rel=1e-12)
    assert dk.gamma_ratio_difference(4.0, 2) == pytest.approx(2 / math.sqrt(math.pi) - math.sqrt(math.pi) / 2, rel=1e-14)


def test_solver():
    s = dk.MomentSequence(dk.WeightSpec.disc(0.0))
    F = dk.apply_solution_operator([0, 1], s)
    assert F.conj_factor == [0, 1]
    assert F.holo_part == [pytest.approx(-0.5)]
    assert F(0.5j) == pytest.approx(0.25 - 0.5)
    assert dk.defect_norm_sq([0, 1], 1.0, s) == pytest.approx(math.pi / 12, rel=1e-14)
    assert dk.monomial_inner_product(F, 0, s) == 0
    assert dk.dbar_residual(F, [0, 1], [0.1, 0.2j, -0.3 + 0.1j]) < 1e-8
    assert dk.project_dilated([0, 0, 1], 0.9, s) == [0, pytest.approx(0.81 * 2 / 3)]
    g = dk.MomentSequence(dk.WeightSpec.fock(2.0))
    assert dk.kernel_eval(g, 1.0, 1.0) == pytest.approx(math.e / math.pi, rel=1e-13)
    z = 1 + 0.5j
    assert dk.reproduce_check(g, [0, 0, 1], z) == pytest.approx(z * z, rel=1e-6)


def test_ball():
    assert dk.ball.ball_moment_log(0.0, 0, 0) == pytest.approx(math.log(math.pi**2 / 2), rel=1e-15)
    assert dk.ball.form_energy(1.0, 2, 0, 1) == pytest.approx(0.1, rel=1e-15)
    assert dk.ball.ball_hs_partial_sum(0.0, 1) == pytest.approx(0.3)
    z = [0.5, 0]
    assert dk.ball.ball_kernel_series(0.0, z, z) == pytest.approx(2 / math.pi**2 * 64 / 27, rel=1e-12)


def test_psh():
    w = dk.nd.PshWeight(1, lambda z: abs(z[0]) ** 2, [10.0, 100.0, 1000.0])
    assert dk.nd.conjugate_transform(w, [2.0]) == pytest.approx(1.0, abs=1e-3)
    assert dk.nd.sup_shift(w, [3.0]) == pytest.approx(16.0, rel=1e-6)
    report = dk.nd.check_hs_hypotheses(w, 1.0, 2.0)
    assert report.all_passed
    assert [c.name for c in report.checks] == [
        "conjugate-finite", "superlinear-growth", "shift-ratio", "integrability"]


def test_criterion():
    assert len(dk.criterion_ids()) == 10
    r = dk.run_criterion("telescoping")
    assert r["passed"]
    assert r["table"]["columns"][0] == "weight"
