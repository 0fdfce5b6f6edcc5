"""Recover the canonical form of a black-box J.T.P. homomorphism.

The map is evaluated once on a fixed, versioned probe set (plus the inputs of
20 spot-check triples) and every decision below is taken from that table, so
a finite transcript of input/output pairs is as good as the map itself.

Decision tree, in order:

1. ``Phi(0)`` invertible -> constant map; rank one -> first entry pinned.
2. ``Phi(I)`` zero, rank one, nonscalar involution -> diagonal pair;
   ``-I`` -> classify ``-Phi`` and flip the sign; ``I`` -> regular.
3. ``Phi(diag(1,-1))`` scalar -> diagonal pair (involutions sent to scalars).
4. ``Phi(E11) != 0`` -> ``U A U*`` or ``U conj(A) U*``.
5. Otherwise degenerate: nonscalar image of a scalar matrix, or commuting
   images of the two basic involutions -> diagonal pair; non-commuting ->
   ``beta(det A) U T(A) U*``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import scalar
from .errors import InconsistentProbes, MissingProbe, NotAHomomorphism, UnrecognizedMultiplicative
from .families import (
    FamilySpec, FormI, FormII, FormIII, TildeVariant, eval_family,
    make_form_i, make_form_ii, make_form_iii, make_form_iv,
)
from .herm import (
    E11, E22, IDENTITY, SWAP, ZERO, J, S, Herm2, Unitary2, commutator_norm, conjugate,
    determinant, eigensystem, eigenvalues, hermitian_from_normals, inertia, is_scalar,
    jordan_triple, rank_of,
)
from .scalar import EtaTable, ScalarJtpHom

EvaluatableMap = Callable[[Herm2], Herm2]

PROBE_VERSION = 1
PROBE_SEED = 7207
SPOT_CHECK_SEED = 7208
N_RANDOM_PROBES = 17
N_SPOT_CHECKS = 20

K = Herm2(0.0, 0.0, 1j)
MINUS_J = Herm2(-1.0, 1.0)
D_2_HALF = Herm2.diag(2.0, 0.5)
BETA_PROBES = (2.0, 3.0, 5.0, 7.0, 0.5, -1.0, -2.0)

FIT_NOTE = ("multiplicative parts were fitted on finitely many probes; "
            "global multiplicativity is assumed, not certified")


def probe_set() -> list[Herm2]:
    """The 40 probe matrices (version 1)."""
    fixed = [
        ZERO, IDENTITY, -IDENTITY, Herm2.scalar(2.0), E11, E22, J, MINUS_J, SWAP, K, S,
        Herm2(1.0, 1.0, 1 + 0j),
    ]
    fixed += [Herm2.diag(t, 1.0) for t in BETA_PROBES if t != -1.0]
    fixed += [D_2_HALF, Herm2.diag(-2.0, -3.0), Herm2(1.0, 0.0, 1 + 0j),
              Herm2.diag(3.0, 0.0), Herm2.scalar(0.5)]
    rng = np.random.default_rng(PROBE_SEED)
    fixed += [hermitian_from_normals(x) for x in rng.standard_normal((N_RANDOM_PROBES, 4))]
    return fixed


def spot_check_pairs() -> list[tuple[Herm2, Herm2]]:
    rng = np.random.default_rng(SPOT_CHECK_SEED)
    draws = rng.standard_normal((N_SPOT_CHECKS, 2, 4))
    return [(hermitian_from_normals(x), hermitian_from_normals(y)) for x, y in draws]


def probe_inputs() -> list[Herm2]:
    """Every input :func:`classify` evaluates, without duplicates."""
    out = list(probe_set())
    for A, B in spot_check_pairs():
        out += [A, B, jordan_triple(A, B)]
    return list(dict.fromkeys(out))


class TranscriptMap:
    """A map known only through a finite table of input/output pairs."""

    def __init__(self, pairs: Iterable[tuple[Herm2, Herm2]]):
        self.table = dict(pairs)

    def __call__(self, A: Herm2) -> Herm2:
        try:
            return self.table[A]
        except KeyError:
            raise MissingProbe(f"transcript has no entry for {A}") from None

    def __len__(self):
        return len(self.table)

    def pairs(self) -> list[tuple[Herm2, Herm2]]:
        return list(self.table.items())


def record_transcript(m: EvaluatableMap, inputs: Iterable[Herm2] | None = None) -> TranscriptMap:
    inputs = probe_inputs() if inputs is None else inputs
    return TranscriptMap((A, m(A)) for A in inputs)


@dataclass
class ClassificationReport:
    branch_path: list[str]
    fitted: FamilySpec
    gauge_note: str
    fit_residual: float
    notes: list[str] = field(default_factory=list)


def _dev(X: Herm2, Y: Herm2) -> float:
    return (X - Y).fro / max(1.0, Y.fro)


def _spectrum_in_unit_set(X: Herm2, tol: float) -> bool:
    return all(min(abs(lam), abs(lam - 1), abs(lam + 1)) <= tol for lam in eigenvalues(X))


def _is_involution(X: Herm2, tol: float) -> bool:
    return (jordan_triple(X, IDENTITY) - IDENTITY).fro <= tol * 4


def _trace_pair(X: Herm2, Y: Herm2) -> float:
    """``trace(X @ Y)`` for Hermitian X, Y."""
    return X.a * Y.a + X.c * Y.c + 2.0 * (X.b * Y.b.conjugate()).real


def _basis(es, first: int = 0) -> Unitary2:
    cols = (es.q1, es.q2) if first == 0 else (es.q2, es.q1)
    return Unitary2.from_columns(*cols)


def _orth(u):
    return (-u[1].conjugate(), u[0].conjugate())


class _Table:
    """Cached probe values; refuses anything outside the probe inputs."""

    def __init__(self, values: dict):
        self.values = values

    def __call__(self, A: Herm2) -> Herm2:
        return self.values[A]

    def negated(self) -> "_Table":
        return _Table({A: -X for A, X in self.values.items()})

    def items(self):
        return self.values.items()


class _Classifier:
    def __init__(self, tol: float):
        self.tol = tol
        self.path: list[str] = []
        self.notes: list[str] = []

    # -- scalar homomorphism fitting ---------------------------------------

    def fit_scalar_hom(self, samples: list[tuple[Herm2, float, float]]) -> ScalarJtpHom:
        """Fit ``psi(|det A|) eta(Syl A)`` to ``(A, value, scale)`` samples."""
        tol = self.tol
        if all(abs(v) <= tol * max(1.0, sc) for _, v, sc in samples):
            return ScalarJtpHom(scalar.ZERO)
        signs: dict[int, int] = {}
        mags = []
        singular = []
        for A, v, sc in samples:
            if rank_of(A, tol) < 2:
                singular.append((A, v, sc))
                continue
            if abs(v) <= tol * max(1.0, sc):
                raise UnrecognizedMultiplicative(
                    f"scalar part vanishes at |det| = {abs(determinant(A)):.6g} but not everywhere")
            syl = inertia(A, tol)
            sg = 1 if v > 0 else -1
            if signs.setdefault(syl, sg) != sg:
                raise UnrecognizedMultiplicative(f"sign of the scalar part is not a function of inertia {syl}")
            mags.append((abs(determinant(A)), abs(v)))
        fit = scalar.fit_power_exponent(mags, tol=tol)
        if fit.residual > tol:
            raise UnrecognizedMultiplicative(
                f"|det| samples do not follow a power law (log residual {fit.residual:.3e})")
        eta = EtaTable(signs.get(0, 1), signs.get(1, 1), signs.get(2, 1))
        if fit.variant == "one":
            vanish = [abs(v) <= tol * max(1.0, sc) for _, v, sc in singular]
            if all(vanish):
                return ScalarJtpHom(scalar.INDICATOR, eta)
            if any(vanish):
                raise UnrecognizedMultiplicative("psi(0) is neither 0 nor 1 consistently")
            return ScalarJtpHom(scalar.ONE, eta)
        return ScalarJtpHom(scalar.power(fit.p), eta)

    def fit_pair(self, table: _Table, U: Unitary2, which=(0, 1)) -> tuple[ScalarJtpHom, ScalarJtpHom]:
        Ud = U.dagger()
        cols = ([], [])
        for A, X in table.items():
            D = conjugate(Ud, X)
            cols[0].append((A, D.a, X.fro))
            cols[1].append((A, D.c, X.fro))
        zero = ScalarJtpHom(scalar.ZERO)
        return tuple(self.fit_scalar_hom(cols[k]) if k in which else zero for k in (0, 1))

    def common_basis(self, table: _Table, first: Iterable[Herm2] = ()) -> Unitary2:
        """Eigenbasis of the probe image with the widest normalized eigen-gap."""
        order = list(dict.fromkeys(list(first) + list(table.values)))
        best, best_gap = None, self.tol
        for A in order:
            X = table(A)
            l1, l2 = eigenvalues(X)
            gap = (l1 - l2) / max(1.0, X.fro)
            if gap > best_gap * (1 + 1e-9):
                best, best_gap = X, gap
        if best is None:
            return Unitary2.identity()
        return _basis(eigensystem(best))

    def diagonal_pair(self, table: _Table, U: Unitary2 | None = None, first=()) -> FormI:
        if U is None:
            U = self.common_basis(table, first)
        h1, h2 = self.fit_pair(table, U)
        return make_form_i(U, h1, h2)

    # -- the tree -----------------------------------------------------------

    def check_unit_spectrum(self, X: Herm2, name: str):
        if not _spectrum_in_unit_set(X, self.tol * max(1.0, X.fro)):
            l1, l2 = eigenvalues(X)
            raise InconsistentProbes(f"spectrum of {name} is ({l1:.6g}, {l2:.6g}), not within {{-1, 0, 1}}")

    def run(self, table: _Table) -> tuple[FamilySpec, str]:
        tol = self.tol
        P0 = table(ZERO)
        self.check_unit_spectrum(P0, "Phi(0)")
        r0 = rank_of(P0, tol)
        if r0 == 2:
            self.path += ["Phi0 invertible", "case1/constant"]
            es = eigensystem(P0)
            U = Unitary2.identity() if is_scalar(P0, tol) else _basis(es)
            h = [ScalarJtpHom(scalar.ONE, EtaTable.constant(1 if lam > 0 else -1))
                 for lam in (es.lambda1, es.lambda2)]
            if is_scalar(P0, tol):
                h = [ScalarJtpHom(scalar.ONE, EtaTable.constant(1 if P0.a > 0 else -1))] * 2
            return make_form_i(U, *h), "U is any eigenbasis of Phi(0); column phases are free"
        if r0 == 1:
            self.path += ["Phi0 rank1", "case2/pinned"]
            es = eigensystem(P0)
            alpha = 1 if abs(es.lambda1) > abs(es.lambda2) else -1
            U = _basis(es, first=0 if alpha == 1 else 1)
            _, h2 = self.fit_pair(table, U, which=(1,))
            return (make_form_i(U, ScalarJtpHom(scalar.ONE, EtaTable.constant(alpha)), h2),
                    "first column of U spans the range of Phi(0); column phases are free")
        self.path.append("Phi0=0")
        return self.from_phi_i(table)

    def from_phi_i(self, table: _Table) -> tuple[FamilySpec, str]:
        tol = self.tol
        PI = table(IDENTITY)
        self.check_unit_spectrum(PI, "Phi(I)")
        rI = rank_of(PI, tol)
        if rI == 0:
            self.path.append("PhiI=0/case3")
            return make_form_i(Unitary2.identity(), ScalarJtpHom(scalar.ZERO), ScalarJtpHom(scalar.ZERO)), \
                "zero map; U is arbitrary"
        if rI == 1:
            self.path.append("PhiI rank1/case4")
            es = eigensystem(PI)
            U = _basis(es, first=0 if abs(es.lambda1) > abs(es.lambda2) else 1)
            h1, _ = self.fit_pair(table, U, which=(0,))
            return make_form_i(U, h1, ScalarJtpHom(scalar.ZERO)), \
                "first column of U spans the range of Phi(I); column phases are free"
        if not is_scalar(PI, tol):
            self.path.append("PhiI nonscalar involution/case5")
            U = _basis(eigensystem(PI))
            return self.diagonal_pair(table, U), (
                "pair ordered by eta at inertia 2 (+1 first); U is the eigenbasis of Phi(I), "
                "column phases are free")
        if PI.a < 0:
            self.path.append("PhiI=-I/negated")
            spec, note = self.regular(table.negated())
            return _negate(spec), note
        self.path.append("PhiI=I/regular")
        return self.regular(table)

    def regular(self, table: _Table) -> tuple[FamilySpec, str]:
        tol = self.tol
        PJ = table(J)
        if not _is_involution(PJ, tol):
            raise InconsistentProbes("Phi(diag(1,-1)) is not an involution")
        if is_scalar(PJ, tol):
            self.path.append("PhiJ scalar/scalar-image")
            return self.diagonal_pair(table, first=[-IDENTITY] + [Herm2.diag(t, 1.0) for t in (2.0, 3.0, 5.0, 7.0, 0.5)]), (
                "nontrivial involutions map to scalars; U diagonalizes every image and is "
                "fixed only up to column phases (and is arbitrary where both parts agree)")
        self.path.append("PhiJ nonscalar")
        if table(E11).fro > tol:
            self.path.append("rank1 image nonzero")
            return self.nondegenerate(table)
        self.path.append("rank1 image zero")
        return self.degenerate(table)

    def nondegenerate(self, table: _Table) -> tuple[FamilySpec, str]:
        es = eigensystem(table(E11))
        if es.lambda1 - es.lambda2 < 0.5:
            self.notes.append("Phi(E11) eigen-gap too small; U taken from Phi(diag(2,1))")
            es = eigensystem(table(Herm2.diag(2.0, 1.0)))
        u1 = es.q1
        w = _orth(u1)
        X = table(SWAP)
        # z = u1* Phi(X) w fixes the phase of the second column
        Xe = X.entries()
        z = (u1[0].conjugate() * (Xe[0] * w[0] + Xe[1] * w[1])
             + u1[1].conjugate() * (Xe[2] * w[0] + Xe[3] * w[1]))
        if abs(z) < 0.5:
            raise InconsistentProbes("Phi([0 1;1 0]) does not couple the two columns of U")
        ph = z.conjugate() / abs(z)
        U = Unitary2.from_columns(u1, (w[0] * ph, w[1] * ph))
        s = _trace_pair(table(K), conjugate(U, K))
        if abs(s) <= 1.0:
            raise InconsistentProbes(f"trace pairing s = {s:.6g} does not separate A from conj(A)")
        note = "U is fixed up to a global phase"
        if s > 0:
            self.path.append("nondegenerate/identity")
            return make_form_ii(1, U), note
        self.path.append("nondegenerate/conjugation")
        return make_form_iii(1, U), note

    def degenerate(self, table: _Table) -> tuple[FamilySpec, str]:
        tol = self.tol
        for lam in (2.0, -1.0):
            if not is_scalar(table(Herm2.scalar(lam)), tol):
                self.path.append("degenerate/nonscalar-scalar-image")
                return self.diagonal_pair(table, first=[Herm2.scalar(lam)]), (
                    "U diagonalizes every image; column phases are free")
        PX, PmJ = table(SWAP), table(MINUS_J)
        c = commutator_norm(PX, PmJ)
        if c <= 4 * tol:
            self.path.append("degenerate/commuting")
            return self.diagonal_pair(table, first=[MINUS_J]), (
                "U diagonalizes every image; column phases are free")
        if c < 0.5:
            raise InconsistentProbes(f"commutator norm {c:.3e} is neither 0 nor of order 1")
        self.path.append("degenerate/non-commuting")
        return self.det_scaled(table)

    def det_scaled(self, table: _Table) -> tuple[FamilySpec, str]:
        tol = self.tol
        PmJ = table(MINUS_J)
        if not _is_involution(PmJ, tol) or is_scalar(PmJ, tol):
            raise InconsistentProbes("Phi(diag(-1,1)) is not a nontrivial involution")
        # beta(-1) = +1 gauge: Phi(diag(-1,1)) = U diag(-1,1) U*
        u1 = eigensystem(PmJ).q2
        w = _orth(u1)
        Xe = table(SWAP).entries()
        z = (u1[0].conjugate() * (Xe[0] * w[0] + Xe[1] * w[1])
             + u1[1].conjugate() * (Xe[2] * w[0] + Xe[3] * w[1]))
        if abs(z) < 0.5:
            raise InconsistentProbes("Phi([0 1;1 0]) does not couple the two columns of U")
        ph = z.conjugate() / abs(z)
        U = Unitary2.from_columns(u1, (w[0] * ph, w[1] * ph))
        Ud = U.dagger()

        PmI = table(-IDENTITY)
        if (PmI + IDENTITY).fro <= tol * 4:
            uses_eta = False
            self.path.append("Phi(-I)=-I/plain")
        elif (PmI - IDENTITY).fro <= tol * 4:
            uses_eta = True
            self.path.append("Phi(-I)=I/eta")
        else:
            raise InconsistentProbes("Phi(-I) is not +-I")

        top = conjugate(Ud, table(D_2_HALF)).a
        if abs(top - 2.0) <= 1e-6:
            inv = False
        elif abs(top - 0.5) <= 1e-6:
            inv = True
        else:
            raise InconsistentProbes(f"Phi(diag(2,1/2)) has {top:.6g} against U e1, expected 2 or 1/2")

        s = _trace_pair(table(K), conjugate(U, K))
        if abs(s) <= 1.0:
            raise InconsistentProbes(f"trace pairing s = {s:.6g} does not separate A from conj(A)")
        conj = s < 0
        self.path.append("conjugation" if conj else "no conjugation")
        tilde = TildeVariant.build(conj, inv, uses_eta)

        samples = {}
        for t in BETA_PROBES:
            D = Herm2.diag(t, 1.0)
            Y = conjugate(U, tilde.apply(D))
            samples[t] = _trace_pair(table(D), Y) / _trace_pair(Y, Y)
        pos = [(t, samples[t]) for t in BETA_PROBES if t > 0]
        if any(v <= 0 for _, v in pos):
            raise UnrecognizedMultiplicative("beta is not positive on positive reals")
        fit = scalar.fit_power_exponent(pos, tol=tol)
        if fit.residual > tol:
            raise UnrecognizedMultiplicative(f"beta does not follow a power law (log residual {fit.residual:.3e})")
        neg_sign = 1 if samples[-1.0] > 0 else -1
        beta = fit.model("nonzero", neg_sign)
        if abs(scalar.eval_mult(beta, -2.0) - samples[-2.0]) > tol * 10 * max(1.0, abs(samples[-2.0])):
            raise UnrecognizedMultiplicative("beta is not multiplicative across the sign of its argument")
        self.path.append("degenerate/non-commuting/" + ("inverse" if inv else "direct"))
        return make_form_iv(1, U, beta, tilde), (
            "gauge beta(-1) = +1 with Phi(diag(-1,1)) = U diag(-1,1) U*; A^-1 = Y conj(A) Y*/det A "
            "for Y = [0 1;-1 0] makes direct/inverse interchangeable with conj/no-conj otherwise")


def _negate(spec: FamilySpec) -> FamilySpec:
    if isinstance(spec, FormI):
        return make_form_i(spec.U, spec.hom1.negated(), spec.hom2.negated())
    if isinstance(spec, FormII):
        return make_form_ii(-spec.sign, spec.U)
    if isinstance(spec, FormIII):
        return make_form_iii(-spec.sign, spec.U)
    return make_form_iv(-spec.sign, spec.U, spec.beta, spec.tilde)


def _tabulate(m: EvaluatableMap) -> _Table:
    return _Table({A: m(A) for A in probe_inputs()})


def spot_check(m: EvaluatableMap, tol: float) -> float:
    """Largest normalized J.T.P. residual over the 20 spot-check triples."""
    worst = 0.0
    for A, B in spot_check_pairs():
        lhs = m(jordan_triple(A, B))
        rhs = jordan_triple(m(A), m(B))
        worst = max(worst, _dev(rhs, lhs))
    return worst


def fit_residual(spec: FamilySpec, table, inputs: Iterable[Herm2]) -> float:
    return max(_dev(eval_family(spec, A), table(A)) for A in inputs)


def classify(m: EvaluatableMap, tol: float = 1e-8) -> ClassificationReport:
    table = _tabulate(m)
    worst = spot_check(table, tol)
    if not worst <= tol:
        raise NotAHomomorphism(f"J.T.P. spot-check residual {worst:.3e} exceeds {tol:g}")
    clf = _Classifier(tol)
    spec, note = clf.run(table)
    residual = fit_residual(spec, table, table.values)
    return ClassificationReport(clf.path, spec, f"{note}; {FIT_NOTE}", residual, clf.notes)


def gauge_equivalent(s1: FamilySpec, s2: FamilySpec, tol: float = 1e-8) -> bool:
    """Extensional equality of two specs on the probe set."""
    return all(_dev(eval_family(s1, A), eval_family(s2, A)) <= tol for A in probe_set())
