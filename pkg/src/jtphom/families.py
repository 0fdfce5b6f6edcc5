"""Canonical J.T.P. homomorphisms of 2x2 Hermitian matrices.

Every map ``Phi`` with ``Phi(ABA) = Phi(A) Phi(B) Phi(A)`` on 2x2 Hermitian
matrices is one of four shapes, each conjugated by a unitary ``U``:

* ``FormI``   ``U diag(phi1(A), phi2(A)) U*`` with scalar homomorphisms phi1, phi2;
* ``FormII``  ``+-U A U*``;
* ``FormIII`` ``+-U conj(A) U*``;
* ``FormIV``  ``+-beta(det A) U T(A) U*`` on invertible ``A`` and 0 otherwise,
  where ``T`` is one of the eight :class:`TildeVariant` transforms.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

from . import scalar
from .errors import NonUnitalBeta
from .herm import (
    RANK_TOL, ZERO, Herm2, Unitary2, conjugate, determinant,
    entrywise_conj, eta, inverse, rank_and_inertia, sample_unitary,
)
from .scalar import EtaTable, MultiplicativeModel, ScalarJtpHom


class TildeVariant(enum.Enum):
    A = "A"
    CONJ_A = "conjA"
    INV_A = "invA"
    CONJ_INV_A = "conjInvA"
    ETA_A = "etaA"
    ETA_CONJ_A = "etaConjA"
    ETA_INV_A = "etaInvA"
    ETA_CONJ_INV_A = "etaConjInvA"

    @property
    def conj(self) -> bool:
        return "onj" in self.value

    @property
    def inv(self) -> bool:
        return "nv" in self.value

    @property
    def uses_eta(self) -> bool:
        return self.value.startswith("eta")

    @classmethod
    def build(cls, conj: bool, inv: bool, uses_eta: bool) -> "TildeVariant":
        for v in cls:
            if (v.conj, v.inv, v.uses_eta) == (conj, inv, uses_eta):
                return v
        raise AssertionError("unreachable")

    def apply(self, A: Herm2, tol: float = RANK_TOL) -> Herm2:
        return self._apply(A, eta(A, tol) if self.uses_eta else 1, tol)

    def _apply(self, A: Herm2, sign: int, tol: float) -> Herm2:
        X = entrywise_conj(A) if self.conj else A
        if self.inv:
            X = inverse(X, tol)
        return X * sign if sign != 1 else X


@dataclass(frozen=True)
class FormI:
    U: Unitary2
    hom1: ScalarJtpHom
    hom2: ScalarJtpHom


@dataclass(frozen=True)
class FormII:
    sign: int
    U: Unitary2


@dataclass(frozen=True)
class FormIII:
    sign: int
    U: Unitary2


@dataclass(frozen=True)
class FormIV:
    sign: int
    U: Unitary2
    beta: MultiplicativeModel
    tilde: TildeVariant


FamilySpec = Union[FormI, FormII, FormIII, FormIV]


def _check_sign(sign: int) -> int:
    if sign not in (-1, 1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    return int(sign)


def make_form_i(U: Unitary2, hom1: ScalarJtpHom, hom2: ScalarJtpHom) -> FormI:
    return FormI(U, hom1, hom2)


def make_form_ii(sign: int, U: Unitary2) -> FormII:
    return FormII(_check_sign(sign), U)


def make_form_iii(sign: int, U: Unitary2) -> FormIII:
    return FormIII(_check_sign(sign), U)


def make_form_iv(sign: int, U: Unitary2, beta: MultiplicativeModel, tilde: TildeVariant) -> FormIV:
    if beta.domain != "nonzero":
        raise NonUnitalBeta("beta must be defined on the nonzero reals")
    if not beta.is_unital or scalar.eval_mult(beta, 1.0) != 1.0:
        raise NonUnitalBeta(f"beta(1) must be 1 ({beta.describe()})")
    return FormIV(_check_sign(sign), U, beta, TildeVariant(tilde))


def eval_family(spec: FamilySpec, A: Herm2, tol: float = RANK_TOL) -> Herm2:
    if isinstance(spec, FormII):
        return conjugate(spec.U, A) * spec.sign
    if isinstance(spec, FormIII):
        return conjugate(spec.U, entrywise_conj(A)) * spec.sign
    rank, syl = rank_and_inertia(A, tol)
    if isinstance(spec, FormI):
        d = abs(determinant(A)) if rank == 2 else 0.0
        D = Herm2.diag(scalar.eval_scalar_hom_at(spec.hom1, d, syl),
                       scalar.eval_scalar_hom_at(spec.hom2, d, syl))
        return conjugate(spec.U, D)
    if isinstance(spec, FormIV):
        if rank <= 1:
            return ZERO
        k = spec.sign * scalar.eval_mult(spec.beta, determinant(A))
        sign = -1 if (spec.tilde.uses_eta and syl == 0) else 1
        return conjugate(spec.U, spec.tilde._apply(A, sign, tol)) * k
    raise TypeError(f"not a family spec: {spec!r}")


class FamilyMap:
    """Callable wrapper turning a spec into a black-box map."""

    def __init__(self, spec: FamilySpec, tol: float = RANK_TOL):
        self.spec = spec
        self.tol = tol

    def __call__(self, A: Herm2) -> Herm2:
        return eval_family(self.spec, A, self.tol)

    def __repr__(self):
        return f"FamilyMap({self.spec!r})"


def _unitary_s() -> Unitary2:
    r = 1.0 / math.sqrt(2.0)
    return Unitary2(complex(r), complex(r), complex(r), complex(-r))


SUITE_SEED = 20240611


def canonical_suite() -> list:
    """Fixed list of specs covering every form, sign and tilde variant."""
    I = Unitary2.identity()
    Us = _unitary_s()
    R = [sample_unitary([SUITE_SEED, k]) for k in range(8)]
    nz = "nonzero"
    betas = [MultiplicativeModel("one", None, nz), scalar.power(1, nz), scalar.power(-1, nz, -1)]
    hom = ScalarJtpHom
    suite = [
        make_form_ii(1, I), make_form_ii(-1, Us), make_form_ii(1, R[0]), make_form_ii(-1, R[1]),
        make_form_iii(1, I), make_form_iii(-1, Us), make_form_iii(1, R[2]), make_form_iii(-1, R[3]),
    ]
    units = [I, Us, R[4]]
    for k, tilde in enumerate(TildeVariant):
        suite.append(make_form_iv(1 if k % 4 < 2 else -1, units[k % 3], betas[k % 3], tilde))

    p1, p2, p3 = scalar.power(1), scalar.power(2), scalar.power(-1)
    plus = EtaTable.constant(1)
    suite += [
        # constant involution Phi(A) = Phi(0)
        make_form_i(R[5], hom(scalar.ONE, plus), hom(scalar.ONE, EtaTable.constant(-1))),
        make_form_i(I, hom(scalar.ONE, plus), hom(scalar.ONE, plus)),
        # Phi(0) of rank one: first diagonal entry pinned at -1
        make_form_i(R[6], hom(scalar.ONE, EtaTable.constant(-1)), hom(p1, EtaTable(-1, 1, 1))),
        # zero map and Phi(I) of rank one
        make_form_i(I, hom(scalar.ZERO), hom(scalar.ZERO)),
        make_form_i(Us, hom(p2, EtaTable(1, -1, 1)), hom(scalar.ZERO)),
        # Phi(I) a nonscalar involution
        make_form_i(R[7], hom(p1, plus), hom(p1, EtaTable.constant(-1))),
        # nontrivial involutions sent to scalars
        make_form_i(R[0], hom(p1, EtaTable(-1, -1, 1)), hom(p2, EtaTable(1, -1, 1))),
        make_form_i(I, hom(scalar.INDICATOR, EtaTable(-1, 1, 1)), hom(p3, plus)),
        # degenerate, scalars not sent to scalars
        make_form_i(R[1], hom(p1, plus), hom(scalar.power(3), EtaTable(1, -1, 1))),
        # degenerate with commuting involution images: diag(alpha(det), alpha(|det|))
        make_form_i(R[2], hom(p1, EtaTable(1, -1, 1)), hom(p1, plus)),
        make_form_i(Us, hom(p2, EtaTable(-1, -1, 1)), hom(p2, EtaTable(-1, 1, 1))),
        # Phi(I) = -I, reduced to a regular map by negation
        make_form_i(R[3], hom(p1, EtaTable(1, 1, -1)), hom(p2, EtaTable(1, -1, -1))),
    ]
    return suite
