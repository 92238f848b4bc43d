"""Exact root isolation and sign certification on (0, 1), both backends."""

from fractions import Fraction

import numpy as np
import pytest

from lastsuccess import (
    NEGATIVE_SOMEWHERE,
    NON_NEGATIVE,
    IntPolynomial,
    isolate_negative_region,
    isolate_roots01,
    monotonicity_certificate,
    plugin_polynomial,
)
from lastsuccess.isolation import METHODS, _decimal_str, _round4, sturm_chain
from lastsuccess.polynomial import eval_rational, sign_at, squarefree_part


def witness_floats(cert):
    lo, hi = cert.witness
    return float(lo), float(hi)


class TestHelpers:
    def test_round4(self):
        assert _round4(Fraction(53709, 1000000)) == Fraction(537, 10000)
        assert _round4(Fraction(1, 3)) == Fraction(3333, 10000)

    def test_decimal_str(self):
        assert _decimal_str(Fraction(1, 2)) == "0.5"
        assert _decimal_str(Fraction(55, 1024)) == "0.0537109375"
        assert _decimal_str(Fraction(0)) == "0"
        assert _decimal_str(Fraction(1, 3)) == "1/3"


class TestSturmChain:
    def test_counts_distinct_roots(self):
        # (4x - 1)(4x - 3) has two roots in (0,1)
        f = IntPolynomial([3, -16, 16])
        chain = sturm_chain(f)
        # chain ends in a nonzero constant for square-free input
        assert chain[-1].degree == 0


class TestIsolation:
    @pytest.mark.parametrize("method", METHODS)
    def test_two_simple_roots(self, method):
        # 6x^2 - 5x + 1 = (2x-1)(3x-1): roots 1/3 and 1/2 (1/2 is dyadic)
        f = IntPolynomial([1, -5, 6])
        ivs = isolate_roots01(f, method=method)
        assert len(ivs) == 2
        assert ivs[0].lo < Fraction(1, 3) <= ivs[0].hi or ivs[0].exact
        for iv, root in zip(ivs, (Fraction(1, 3), Fraction(1, 2))):
            assert iv.lo <= root <= iv.hi

    @pytest.mark.parametrize("method", METHODS)
    def test_no_roots(self, method):
        assert isolate_roots01(IntPolynomial([1, 0, 1]), method=method) == []

    @pytest.mark.parametrize("method", METHODS)
    def test_endpoint_roots_ignored(self, method):
        # x (x-1) (2x-1): only the interior root 1/2 counts
        f = IntPolynomial([0, 1]) * IntPolynomial([-1, 1]) * IntPolynomial([-1, 2])
        ivs = isolate_roots01(f, method=method)
        assert len(ivs) == 1
        assert ivs[0].lo <= Fraction(1, 2) <= ivs[0].hi

    def test_soundness_opposite_signs(self):
        # non-exact isolating intervals bracket a sign change of the
        # square-free part
        for n in (58, 59, 60):
            f = squarefree_part(plugin_polynomial(n).derivative())
            for iv in isolate_roots01(f, method="descartes"):
                if iv.exact:
                    assert eval_rational(f, iv.lo) == 0
                else:
                    assert sign_at(f, iv.lo) * sign_at(f, iv.hi) == -1

    def test_backends_agree_on_root_counts(self):
        for n in (12, 25, 59, 60):
            f = plugin_polynomial(n).derivative()
            a = isolate_roots01(f, method="descartes")
            b = isolate_roots01(f, method="sturm")
            assert len(a) == len(b)


class TestSignCertificates:
    @pytest.mark.parametrize("method", METHODS)
    def test_positive_constant(self, method):
        cert = isolate_negative_region(IntPolynomial([1]), method=method)
        assert cert.verdict == NON_NEGATIVE and cert.witness is None

    @pytest.mark.parametrize("method", METHODS)
    def test_negative_constant(self, method):
        cert = isolate_negative_region(IntPolynomial([-1]), method=method)
        assert cert.verdict == NEGATIVE_SOMEWHERE
        lo, hi = cert.witness
        assert 0 <= lo < hi <= 1

    @pytest.mark.parametrize("method", METHODS)
    def test_negative_between_roots(self, method):
        # (2x-1)(3x-1) < 0 exactly on (1/3, 1/2)
        cert = isolate_negative_region(IntPolynomial([1, -5, 6]), method=method)
        assert cert.verdict == NEGATIVE_SOMEWHERE
        lo, hi = witness_floats(cert)
        assert 1 / 3 < lo < hi < 1 / 2 + 1e-12
        assert round(lo, 4) == pytest.approx(0.3333, abs=1e-12)
        assert round(hi, 4) == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("method", METHODS)
    def test_even_multiplicity_touch_is_nonnegative(self, method):
        # (2x-1)^2 touches zero but is never negative
        f = IntPolynomial([1, -4, 4])
        cert = isolate_negative_region(f, method=method)
        assert cert.verdict == NON_NEGATIVE

    @pytest.mark.parametrize("method", METHODS)
    def test_negative_even_multiplicity(self, method):
        # -(2x-1)^2 is negative everywhere except the double root at 1/2
        f = IntPolynomial([-1, 4, -4])
        cert = isolate_negative_region(f, method=method)
        assert cert.verdict == NEGATIVE_SOMEWHERE
        lo, hi = cert.witness
        mid = (lo + hi) / 2
        assert eval_rational(f, mid) < 0

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError):
            isolate_negative_region(IntPolynomial([]))


class TestMonotonicityCertificate:
    def test_n2_trivial(self):
        assert monotonicity_certificate(2).verdict == NON_NEGATIVE

    def test_n59_nonnegative(self):
        assert monotonicity_certificate(59).verdict == NON_NEGATIVE

    @pytest.mark.parametrize("method", METHODS)
    def test_n60_witness(self, method):
        cert = monotonicity_certificate(60, method=method)
        assert cert.verdict == NEGATIVE_SOMEWHERE
        lo, hi = witness_floats(cert)
        assert round(lo, 4) == 0.0537
        assert round(hi, 4) == 0.0602

    def test_witness_soundness_16_points(self):
        cert = monotonicity_certificate(60)
        f = plugin_polynomial(60).derivative()
        lo, hi = cert.witness
        step = (hi - lo) / 17
        for i in range(1, 17):
            assert eval_rational(f, lo + i * step) < 0

    def test_json_shape(self):
        d = monotonicity_certificate(60).to_json_dict()
        assert d["n"] == 60 and d["verdict"] == NEGATIVE_SOMEWHERE
        assert d["witness_lo"].startswith("0.0537")

    def test_guard(self):
        with pytest.raises(ValueError):
            monotonicity_certificate(1)
        with pytest.raises(ValueError):
            monotonicity_certificate(257)

    def test_float_scan_agrees(self):
        # a dense float scan of W_n itself (the stable DP path; float Horner
        # on the huge derivative coefficients is hopeless) never contradicts
        # the exact verdict: certified-monotone n shows no decrease beyond
        # rounding, and n = 60 shows a real dip
        from lastsuccess import _kernel

        grid = np.linspace(1e-4, 1 - 1e-4, 10_000)
        for n in (12, 35, 59, 60):
            steps = np.diff(_kernel.dp_win_prob_grid(n, grid))
            verdict = monotonicity_certificate(n).verdict
            if verdict == NON_NEGATIVE:
                assert steps.min() >= -1e-12, n
            else:
                assert steps.min() < -1e-9, n

    def test_finite_difference_cross_check(self):
        # centered differences of the float DP match the exact derivative
        from fractions import Fraction as F

        from lastsuccess import plugin_value
        from lastsuccess.polynomial import eval_rational

        h = 1e-5
        for n in (10, 30, 60):
            dw = plugin_polynomial(n).derivative()
            for p in np.linspace(0.05, 0.95, 20):
                p = float(p)
                fd = (plugin_value(n, p + h) - plugin_value(n, p - h)) / (2 * h)
                exact = float(eval_rational(dw, F(p)))
                assert fd == pytest.approx(exact, abs=5e-4 * (1 + abs(exact)))
