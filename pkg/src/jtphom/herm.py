"""Closed-form algebra of 2x2 complex Hermitian matrices.

Everything here is plain Python arithmetic on ``float``/``complex`` scalars;
numpy is only used for seeded sampling. For 2x2 matrices this is both exact
to a few ulps and several times faster than dispatching through numpy.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotAnInvolution, NotUnitary, ParamOutOfRange, SingularInput

RANK_TOL = 1e-9
RECON_TOL = 1e-10
CONSTRUCT_TOL = 1e-12


class _Entries(NamedTuple):
    a: float
    c: float
    b: complex = 0j


class Herm2(_Entries):
    """The Hermitian matrix ``[[a, b], [conj(b), c]]``.

    Backed by a named tuple: immutable, hashable, and cheap to build in the
    inner loops of the verifier.
    """

    __slots__ = ()

    def __new__(cls, a: float, c: float, b: complex = 0j):
        # One test covers the common case; the sum can only overflow when every entry is finite.
        if not math.isfinite(a + c + abs(b)) and not (
                math.isfinite(a) and math.isfinite(c) and cmath.isfinite(b)):
            raise ValueError(f"non-finite entry in Herm2({a}, {c}, {b})")
        return tuple.__new__(cls, (a, c, b))

    @classmethod
    def diag(cls, x: float, y: float) -> "Herm2":
        return cls(float(x), float(y), 0j)

    @classmethod
    def scalar(cls, x: float) -> "Herm2":
        return cls(float(x), float(x), 0j)

    @classmethod
    def from_array(cls, m) -> "Herm2":
        """Build from a 2x2 array-like, checking it is Hermitian."""
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        scale = max(1.0, float(np.abs(m).max()))
        if (abs(m[1, 0] - m[0, 1].conjugate()) > CONSTRUCT_TOL * scale
                or abs(m[0, 0].imag) > CONSTRUCT_TOL * scale
                or abs(m[1, 1].imag) > CONSTRUCT_TOL * scale):
            raise ValueError("matrix is not Hermitian")
        return cls(float(m[0, 0].real), float(m[1, 1].real), complex(m[0, 1]))

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.b.conjugate(), self.c]], dtype=complex)

    def entries(self) -> tuple:
        """Row-major entries as a 4-tuple of complex numbers."""
        return (complex(self.a), self.b, self.b.conjugate(), complex(self.c))

    @property
    def fro(self) -> float:
        return math.sqrt(self.a * self.a + self.c * self.c + 2.0 * abs(self.b) ** 2)

    def __add__(self, other: "Herm2") -> "Herm2":
        return Herm2(self.a + other.a, self.c + other.c, self.b + other.b)

    def __sub__(self, other: "Herm2") -> "Herm2":
        return Herm2(self.a - other.a, self.c - other.c, self.b - other.b)

    def __neg__(self) -> "Herm2":
        return Herm2(-self.a, -self.c, -self.b)

    def __mul__(self, k: float) -> "Herm2":
        return Herm2(self.a * k, self.c * k, self.b * k)

    __rmul__ = __mul__


ZERO = Herm2(0.0, 0.0)
IDENTITY = Herm2(1.0, 1.0)
E11 = Herm2(1.0, 0.0)
E22 = Herm2(0.0, 1.0)
J = Herm2(1.0, -1.0)
SWAP = Herm2(0.0, 0.0, 1 + 0j)
_R2 = 1.0 / math.sqrt(2.0)
S = Herm2(_R2, -_R2, complex(_R2))


def jordan_triple(A: Herm2, B: Herm2) -> Herm2:
    """Return ``A @ B @ A``.

    Only the upper triangle is formed, so the result is Hermitian by construction.
    """
    a, c, b = A.a, A.c, A.b
    bb = b.conjugate()
    p, r, q = B.a, B.c, B.b
    # first row of A @ B, then (A @ B) @ A
    x00 = a * p + b * q.conjugate()
    x01 = a * q + b * r
    m00 = (x00 * a + x01 * bb).real
    m01 = x00 * b + x01 * c
    m11 = c * c * r + 2.0 * c * (bb * q).real + (b * bb).real * p
    return Herm2(m00, m11, m01)


def determinant(A: Herm2) -> float:
    return A.a * A.c - (A.b.real * A.b.real + A.b.imag * A.b.imag)


def trace(A: Herm2) -> float:
    return A.a + A.c


def _spread(A: Herm2) -> float:
    # sqrt(tr^2 - 4 det) written without cancellation
    return math.hypot(A.a - A.c, 2.0 * abs(A.b))


def eigenvalues(A: Herm2) -> tuple[float, float]:
    """Eigenvalues ordered ``lambda1 >= lambda2``."""
    half_tr = 0.5 * (A.a + A.c)
    half_s = 0.5 * _spread(A)
    return half_tr + half_s, half_tr - half_s


def _fix_phase(v0: complex, v1: complex) -> tuple[complex, complex]:
    n = math.hypot(abs(v0), abs(v1))
    v0, v1 = v0 / n, v1 / n
    pivot = v0 if abs(v0) >= 1e-8 else v1
    ph = pivot.conjugate() / abs(pivot)
    v0, v1 = v0 * ph, v1 * ph
    if abs(v0) >= 1e-8:
        v0 = complex(v0.real, 0.0)
    else:
        v1 = complex(v1.real, 0.0)
    return v0, v1


@dataclass(frozen=True)
class EigenSystem:
    lambda1: float
    lambda2: float
    q1: tuple[complex, complex]
    q2: tuple[complex, complex]


def eigensystem(A: Herm2) -> EigenSystem:
    """Eigenvalues and gauge-fixed unit eigenvectors.

    Each eigenvector has its first component real and nonnegative (the second,
    when the first is below 1e-8). A scalar matrix gets the standard basis.
    """
    l1, l2 = eigenvalues(A)
    if _spread(A) == 0.0:
        return EigenSystem(l1, l2, (1 + 0j, 0j), (0j, 1 + 0j))
    if A.a >= A.c:
        v = (complex(l1 - A.c), A.b.conjugate())
    else:
        v = (A.b, complex(l1 - A.a))
    q1 = _fix_phase(*v)
    q2 = _fix_phase(-q1[1].conjugate(), q1[0].conjugate())
    return EigenSystem(l1, l2, q1, q2)


def _scale(A: Herm2) -> float:
    return max(1.0, A.fro)


def inertia(A: Herm2, tol: float = RANK_TOL) -> int:
    """Number of eigenvalues above ``tol * max(1, ||A||_F)``."""
    thr = tol * _scale(A)
    return sum(1 for lam in eigenvalues(A) if lam > thr)


def rank_and_inertia(A: Herm2, tol: float = RANK_TOL) -> tuple[int, int]:
    """``(rank_of(A, tol), inertia(A, tol))`` from a single eigenvalue computation."""
    thr = tol * _scale(A)
    l1, l2 = eigenvalues(A)
    return (abs(l1) > thr) + (abs(l2) > thr), (l1 > thr) + (l2 > thr)


def rank_of(A: Herm2, tol: float = RANK_TOL) -> int:
    thr = tol * _scale(A)
    return sum(1 for lam in eigenvalues(A) if abs(lam) > thr)


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"
    INDEFINITE_INVERTIBLE = "IndefiniteInvertible"
    SINGULAR = "Singular"


def definiteness(A: Herm2, tol: float = RANK_TOL) -> Definiteness:
    thr = tol * _scale(A)
    l1, l2 = eigenvalues(A)
    if abs(l1) <= thr or abs(l2) <= thr:
        return Definiteness.SINGULAR
    if l2 > 0:
        return Definiteness.POSITIVE_DEFINITE
    if l1 < 0:
        return Definiteness.NEGATIVE_DEFINITE
    return Definiteness.INDEFINITE_INVERTIBLE


def eta(A: Herm2, tol: float = RANK_TOL) -> int:
    """-1 on negative definite matrices, +1 on the other invertible ones."""
    d = definiteness(A, tol)
    if d is Definiteness.SINGULAR:
        raise SingularInput("eta is only defined on invertible matrices")
    return -1 if d is Definiteness.NEGATIVE_DEFINITE else 1


@dataclass(frozen=True)
class BDBDecomposition:
    B: Herm2
    lambda1: float
    lambda2: float

    def reconstruct(self) -> Herm2:
        return jordan_triple(self.B, Herm2.diag(self.lambda1, self.lambda2))


def decompose_bdb(A: Herm2) -> BDBDecomposition:
    """Write ``A = B diag(l1, l2) B`` with ``B`` a Hermitian unitary involution.

    ``B`` is the Householder reflection exchanging ``e1`` and the gauge-fixed
    top eigenvector ``q1``; it is the identity when ``q1 == e1``.
    """
    es = eigensystem(A)
    q0, q1 = es.q1
    # 1 - q0 computed without cancellation (q0 is real, |q|=1)
    w0 = abs(q1) ** 2 / (1.0 + q0.real)
    w1 = -q1
    n = w0 * w0 + abs(w1) ** 2
    if n == 0.0:
        return BDBDecomposition(IDENTITY, es.lambda1, es.lambda2)
    B = Herm2(1.0 - 2.0 * w0 * w0 / n, 1.0 - 2.0 * abs(w1) ** 2 / n, -2.0 * w0 * w1.conjugate() / n)
    return BDBDecomposition(B, es.lambda1, es.lambda2)


@dataclass(frozen=True)
class InvolutionParam:
    """Parameter of a Hermitian involution.

    ``kind == "scalar"`` encodes ``sign * I``; otherwise the matrix is
    ``[[sign*r, a], [conj(a), -sign*r]]`` with ``r = sqrt(1 - |a|^2)``.
    """

    kind: str
    sign: int
    a: complex = 0j

    def __post_init__(self):
        if self.kind not in ("branch", "scalar"):
            raise ValueError(f"unknown involution kind {self.kind!r}")
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")


def involution_from_param(p: InvolutionParam) -> Herm2:
    if p.kind == "scalar":
        return Herm2.scalar(float(p.sign))
    m = abs(p.a)
    if m > 1.0 + 1e-12:
        raise ParamOutOfRange(f"|a| = {m!r} exceeds 1")
    m = min(m, 1.0)
    r = math.sqrt((1.0 - m) * (1.0 + m))
    return Herm2(p.sign * r, -p.sign * r, complex(p.a))


def involution_to_param(A: Herm2) -> InvolutionParam:
    sq = jordan_triple(A, IDENTITY)
    if (sq - IDENTITY).fro > 1e-9:
        raise NotAnInvolution(f"||A^2 - I||_F = {(sq - IDENTITY).fro:.3e}")
    if (A - IDENTITY).fro <= 1e-9:
        return InvolutionParam("scalar", 1)
    if (A + IDENTITY).fro <= 1e-9:
        return InvolutionParam("scalar", -1)
    a = A.b
    if abs(a) > 1.0:
        a = a / abs(a)
    return InvolutionParam("branch", 1 if A.a >= 0 else -1, a)


def _matmul(x: tuple, y: tuple) -> tuple:
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def _dagger(x: tuple) -> tuple:
    return (x[0].conjugate(), x[2].conjugate(), x[1].conjugate(), x[3].conjugate())


@dataclass(frozen=True)
class Unitary2:
    """A 2x2 unitary matrix, stored row-major."""

    u00: complex
    u01: complex
    u10: complex
    u11: complex

    def __post_init__(self):
        p = _matmul(self.entries(), _dagger(self.entries()))
        err = math.sqrt(abs(p[0] - 1) ** 2 + abs(p[1]) ** 2 + abs(p[2]) ** 2 + abs(p[3] - 1) ** 2)
        if not err <= CONSTRUCT_TOL:
            raise NotUnitary(f"||U U* - I||_F = {err:.3e}")

    @classmethod
    def identity(cls) -> "Unitary2":
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    @classmethod
    def from_columns(cls, q1, q2) -> "Unitary2":
        return cls(complex(q1[0]), complex(q2[0]), complex(q1[1]), complex(q2[1]))

    @classmethod
    def from_array(cls, m) -> "Unitary2":
        m = np.asarray(m, dtype=complex)
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    def entries(self) -> tuple:
        return (self.u00, self.u01, self.u10, self.u11)

    def column(self, k: int) -> tuple[complex, complex]:
        return (self.u00, self.u10) if k == 0 else (self.u01, self.u11)

    def to_array(self) -> np.ndarray:
        return np.array([[self.u00, self.u01], [self.u10, self.u11]], dtype=complex)

    def __matmul__(self, other: "Unitary2") -> "Unitary2":
        return Unitary2(*_matmul(self.entries(), other.entries()))

    def dagger(self) -> "Unitary2":
        return Unitary2(*_dagger(self.entries()))


def conjugate(U: Unitary2, A: Herm2) -> Herm2:
    """Return ``U A U*``, expanded entrywise so the result is Hermitian exactly."""
    u00, u01, u10, u11 = U.u00, U.u01, U.u10, U.u11
    a, c, b = A.a, A.c, A.b
    # rows of U A
    r00 = u00 * a + u01 * b.conjugate()
    r01 = u00 * b + u01 * c
    r10 = u10 * a + u11 * b.conjugate()
    r11 = u10 * b + u11 * c
    m00 = (r00 * u00.conjugate() + r01 * u01.conjugate()).real
    m11 = (r10 * u10.conjugate() + r11 * u11.conjugate()).real
    m01 = r00 * u10.conjugate() + r01 * u11.conjugate()
    return Herm2(m00, m11, m01)


def entrywise_conj(A: Herm2) -> Herm2:
    return Herm2(A.a, A.c, A.b.conjugate())


def inverse(A: Herm2, tol: float = RANK_TOL) -> Herm2:
    d = determinant(A)
    if abs(d) <= tol * _scale(A) ** 2:
        raise SingularInput(f"cannot invert a matrix with det = {d!r}")
    return Herm2(A.c / d, A.a / d, -A.b / d)


def hermitian_from_normals(x, scale: float = 1.0) -> Herm2:
    """Map four standard normal draws to a Herm2 with the sampling law used here."""
    return Herm2(float(x[0]) * scale, float(x[1]) * scale,
                 complex(float(x[2]), float(x[3])) * (scale / math.sqrt(2.0)))


def sample_hermitian(seed, scale: float = 1.0) -> Herm2:
    rng = np.random.default_rng(seed)
    return hermitian_from_normals(rng.standard_normal(4), scale)


def unitary_from_angles(theta: float, phi: float, alpha: float, alpha2: float) -> Unitary2:
    c, s = math.cos(theta), math.sin(theta)
    e = cmath.exp(1j * phi)
    pa, pb = cmath.exp(1j * alpha), cmath.exp(1j * alpha2)
    return Unitary2(c * pa, e * s * pb, -e.conjugate() * s * pa, c * pb)


def sample_unitary(seed) -> Unitary2:
    rng = np.random.default_rng(seed)
    return unitary_from_angles(*rng.uniform(0.0, 2.0 * math.pi, size=4))


def sample_involution(seed) -> Herm2:
    """A random Hermitian involution ``U diag(+-1, +-1) U*``."""
    rng = np.random.default_rng(seed)
    U = unitary_from_angles(*rng.uniform(0.0, 2.0 * math.pi, size=4))
    s1, s2 = rng.choice([-1.0, 1.0], size=2)
    return conjugate(U, Herm2.diag(s1, s2))


def commutator_norm(X: Herm2, Y: Herm2) -> float:
    x, y = X.entries(), Y.entries()
    xy, yx = _matmul(x, y), _matmul(y, x)
    return math.sqrt(sum(abs(p - q) ** 2 for p, q in zip(xy, yx)))


def is_scalar(X: Herm2, tol: float) -> bool:
    """Basis-free scalar test ``||X - (tr X / 2) I||_F <= tol * max(1, ||X||_F)``."""
    return _spread(X) / math.sqrt(2.0) <= tol * _scale(X)
