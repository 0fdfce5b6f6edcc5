import itertools
import math

import numpy as np
import pytest

from jtphom import scalar
from jtphom.errors import DomainError, NonPositiveValue
from jtphom.herm import E11, IDENTITY, Herm2, jordan_triple, sample_hermitian
from jtphom.scalar import (
    INDICATOR, ONE, ZERO, EtaTable, MultiplicativeModel, ScalarJtpHom, eval_mult,
    eval_scalar_hom, fe_check, fit_power_exponent, power,
)


def test_eval_mult_examples():
    assert eval_mult(power(1), 6) == 6
    assert eval_mult(INDICATOR, 0) == 0 and eval_mult(INDICATOR, 3) == 1
    assert eval_mult(power(-1, "nonzero", -1), -2) == -0.5
    assert eval_mult(power(-1), 0) == 0
    assert eval_mult(ONE, 0) == 1 and eval_mult(ZERO, 5) == 0


def test_domain_errors():
    with pytest.raises(DomainError):
        eval_mult(power(2), -1.0)
    with pytest.raises(DomainError):
        eval_mult(power(2, "nonzero"), 0.0)


def test_model_validation():
    with pytest.raises(ValueError):
        MultiplicativeModel("power")
    with pytest.raises(ValueError):
        MultiplicativeModel("one", 2.0)
    with pytest.raises(ValueError):
        MultiplicativeModel("cubic")


MODELS = [ZERO, ONE, INDICATOR, power(1), power(2), power(-1), power(0.5),
          power(3, "nonzero", -1), power(-1, "nonzero", -1), MultiplicativeModel("one", None, "nonzero", -1)]


@pytest.mark.parametrize("m", MODELS, ids=lambda m: f"{m.variant}-{m.p}-{m.domain}-{m.neg_sign}")
def test_multiplicativity(m):
    rng = np.random.default_rng(11)
    xs = rng.standard_normal((1000, 2)) * 3
    if m.domain == "nonneg":
        xs = np.abs(xs)
        xs[:10, 0] = 0.0
    for x, y in xs:
        lhs = eval_mult(m, x * y)
        assert abs(lhs - eval_mult(m, x) * eval_mult(m, y)) <= 1e-9 * max(1.0, abs(lhs))
    if m.is_unital:
        assert eval_mult(m, 1.0) == 1.0


def test_scalar_hom_examples():
    assert eval_scalar_hom(ScalarJtpHom(power(1)), Herm2.diag(2, 3)) == 6
    assert eval_scalar_hom(ScalarJtpHom(power(1), EtaTable(-1, 1, -1)), E11) == 0
    assert eval_scalar_hom(ScalarJtpHom(ONE, EtaTable(-1, 1, 1)), -IDENTITY) == -1


def test_scalar_hom_law_on_invertible_pairs():
    for psi, eta in itertools.product([ONE, power(2), power(-1)], [EtaTable(-1, 1, -1), EtaTable(1, -1, 1)]):
        h = ScalarJtpHom(psi, eta)
        for k in range(200):
            A, B = sample_hermitian([k, 0]), sample_hermitian([k, 1])
            lhs = h(jordan_triple(A, B))
            assert abs(lhs - h(A) ** 2 * h(B)) <= 1e-8 * max(1.0, abs(lhs))


def test_psi_must_live_on_nonneg_reals():
    with pytest.raises(ValueError):
        ScalarJtpHom(power(1, "nonzero"))


class TestFunctionalEquation:
    def test_identity_at_seven(self):
        r = fe_check(power(1), 7.0)
        assert r.holds and r.lhs == pytest.approx(2.0) and r.rhs == pytest.approx(2.0)

    def test_at_one(self):
        assert fe_check(power(1), 1.0).holds

    def test_reciprocal_at_seven(self):
        r = fe_check(power(-1, "nonzero", -1), 7.0)
        assert r.holds and r.lhs == pytest.approx(0.5)

    def test_square_fails(self):
        r = fe_check(power(2), 7.0)
        assert not r.holds and r.lhs == pytest.approx(4.0)
        assert r.rhs == pytest.approx((48 + math.sqrt(2 * 49 ** 2 + 2)) / 50)

    def test_domain(self):
        with pytest.raises(DomainError):
            fe_check(power(1), 0.0)


class TestPowerFit:
    def test_identity(self):
        f = fit_power_exponent([(2, 2), (3, 3), (10, 10)])
        assert f.variant == "power" and f.p == 1 and f.residual <= 1e-15

    def test_reciprocal(self):
        assert fit_power_exponent([(2, 0.5), (4, 0.25)]).p == -1

    def test_constant(self):
        f = fit_power_exponent([(2, 1), (5, 1)])
        assert f.variant == "one" and f.p is None
        assert f.model("nonzero", -1) == MultiplicativeModel("one", None, "nonzero", -1)

    def test_non_integer_exponent_kept(self):
        assert fit_power_exponent([(4, 2), (9, 3)]).p == pytest.approx(0.5)

    def test_bad_samples(self):
        with pytest.raises(NonPositiveValue):
            fit_power_exponent([(2, 0), (3, 1)])
        with pytest.raises(ValueError):
            fit_power_exponent([(2, 1)])

    def test_non_power_has_residual(self):
        f = fit_power_exponent([(x, x + 0.1) for x in (2, 3, 5, 7)])
        assert f.residual > 1e-3


def test_describe():
    assert power(-1, "nonzero", -1).describe() == "sgn(x)*x^-1"
    assert scalar.INDICATOR.describe() == "1[x!=0]"
