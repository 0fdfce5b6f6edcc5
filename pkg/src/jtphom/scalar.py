"""Real multiplicative functions and scalar-valued J.T.P. homomorphisms."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DomainError, NonPositiveValue
from .herm import Herm2, determinant, rank_and_inertia, RANK_TOL

VARIANTS = ("zero", "one", "indicator", "power")
DOMAINS = ("nonneg", "nonzero")


@dataclass(frozen=True)
class MultiplicativeModel:
    """A representable multiplicative function.

    On ``x > 0`` the variants evaluate to 0, 1, 1 and ``x**p``; at ``x == 0``
    (``nonneg`` domain only) to 0, 1, 0 and 0. On the ``nonzero`` domain a
    negative argument evaluates to ``neg_sign * f(|x|)``.
    """

    variant: str
    p: Optional[float] = None
    domain: str = "nonneg"
    neg_sign: int = 1

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.domain not in DOMAINS:
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.neg_sign not in (-1, 1):
            raise ValueError("neg_sign must be +1 or -1")
        if self.variant == "power":
            if self.p is None or not math.isfinite(self.p) or self.p == 0:
                raise ValueError("power variant needs a finite nonzero exponent p")
        elif self.p is not None:
            raise ValueError(f"variant {self.variant!r} takes no exponent")

    def __call__(self, x: float) -> float:
        return eval_mult(self, x)

    @property
    def is_unital(self) -> bool:
        return self.variant != "zero"

    def describe(self) -> str:
        if self.variant == "power":
            body = f"x^{self.p:g}"
        else:
            body = {"zero": "0", "one": "1", "indicator": "1[x!=0]"}[self.variant]
        if self.domain == "nonzero" and self.neg_sign == -1:
            body = f"sgn(x)*{body}"
        return body


ZERO = MultiplicativeModel("zero")
ONE = MultiplicativeModel("one")
INDICATOR = MultiplicativeModel("indicator")


def power(p: float, domain: str = "nonneg", neg_sign: int = 1) -> MultiplicativeModel:
    return MultiplicativeModel("power", float(p), domain, neg_sign)


def eval_mult(m: MultiplicativeModel, x: float) -> float:
    if m.domain == "nonneg" and x < 0:
        raise DomainError(f"{x!r} is outside [0, inf)")
    if m.domain == "nonzero" and x == 0:
        raise DomainError("0 is outside the nonzero reals")
    if m.variant == "zero":
        return 0.0
    if x < 0:
        return m.neg_sign * eval_mult(m, -x)
    if m.variant == "one":
        return 1.0
    if x == 0:
        return 0.0
    if m.variant == "indicator":
        return 1.0
    return x ** m.p


@dataclass(frozen=True)
class EtaTable:
    """Sign attached to each inertia value 0, 1, 2."""

    eta0: int = 1
    eta1: int = 1
    eta2: int = 1

    def __post_init__(self):
        for v in (self.eta0, self.eta1, self.eta2):
            if v not in (-1, 1):
                raise ValueError("eta values must be +1 or -1")

    def __getitem__(self, k: int) -> int:
        return (self.eta0, self.eta1, self.eta2)[k]

    @classmethod
    def constant(cls, v: int) -> "EtaTable":
        return cls(v, v, v)

    def negated(self) -> "EtaTable":
        return EtaTable(-self.eta0, -self.eta1, -self.eta2)


@dataclass(frozen=True)
class ScalarJtpHom:
    """``A -> psi(|det A|) * eta(inertia(A))``."""

    psi: MultiplicativeModel
    eta: EtaTable = EtaTable()

    def __post_init__(self):
        if self.psi.domain != "nonneg":
            raise ValueError("psi must be defined on [0, inf)")

    def __call__(self, A: Herm2) -> float:
        return eval_scalar_hom(self, A)

    def negated(self) -> "ScalarJtpHom":
        return ScalarJtpHom(self.psi, self.eta.negated())


def eval_scalar_hom(h: ScalarJtpHom, A: Herm2, tol: float = RANK_TOL) -> float:
    rank, syl = rank_and_inertia(A, tol)
    return eval_scalar_hom_at(h, abs(determinant(A)) if rank == 2 else 0.0, syl)


def eval_scalar_hom_at(h: ScalarJtpHom, abs_det: float, syl: int) -> float:
    """Evaluate from precomputed ``|det A|`` and inertia.

    Callers pass ``abs_det = 0`` for matrices that are singular at tolerance.
    """
    return eval_mult(h.psi, abs_det) * h.eta[syl]


@dataclass(frozen=True)
class FeResult:
    holds: bool
    lhs: float
    rhs: float


def _fe_map(t: float) -> float:
    return (t - 1.0 + math.sqrt(2.0 * t * t + 2.0)) / (t + 1.0)


def fe_check(gamma: MultiplicativeModel, x: float, tol: float = 1e-10) -> FeResult:
    """Test ``gamma(F(x)) == F(gamma(x))`` with ``F(t) = (t - 1 + sqrt(2t^2 + 2)) / (t + 1)``."""
    if not x > 0:
        raise DomainError(f"functional equation needs x > 0, got {x!r}")
    g = eval_mult(gamma, x)
    lhs = eval_mult(gamma, _fe_map(x))
    rhs = _fe_map(g)
    return FeResult(abs(lhs - rhs) <= tol * max(1.0, abs(rhs)), lhs, rhs)


@dataclass(frozen=True)
class PowerFit:
    """Result of fitting samples with a power law.

    ``variant`` is ``"one"`` (and ``p`` is None) when every sample equals 1.
    """

    variant: str
    p: Optional[float]
    residual: float

    def model(self, domain: str = "nonneg", neg_sign: int = 1) -> MultiplicativeModel:
        if self.variant == "one":
            return MultiplicativeModel("one", None, domain, neg_sign)
        return MultiplicativeModel("power", self.p, domain, neg_sign)


def fit_power_exponent(samples: Sequence[tuple[float, float]], tol: float = 1e-9,
                       snap: float = 1e-9) -> PowerFit:
    """Least-squares fit of ``log f = p log x`` through the origin.

    Exponents within ``snap`` of an integer are rounded to it.
    """
    if len(samples) < 2 or len({x for x, _ in samples}) < 2:
        raise ValueError("need at least two samples with distinct x")
    for x, f in samples:
        if not x > 0:
            raise DomainError(f"sample abscissa {x!r} is not positive")
        if not f > 0:
            raise NonPositiveValue(f"sample value {f!r} at x={x!r} is not positive")
    if all(abs(f - 1.0) <= tol for _, f in samples):
        return PowerFit("one", None, max(abs(math.log(f)) for _, f in samples))
    lx = [math.log(x) for x, _ in samples]
    lf = [math.log(f) for _, f in samples]
    sxx = sum(u * u for u in lx)
    if sxx == 0.0:
        raise ValueError("all samples sit at x = 1; the exponent is not identifiable")
    p = sum(u * v for u, v in zip(lx, lf)) / sxx
    if abs(p - round(p)) <= snap:
        p = float(round(p))
    residual = max(abs(v - p * u) for u, v in zip(lx, lf))
    if p == 0.0:
        return PowerFit("one", None, residual)
    return PowerFit("power", p, residual)
