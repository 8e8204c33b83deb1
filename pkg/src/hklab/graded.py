"""Graded *-algebra primitives: the rank-one Clifford algebra, parity-graded
matrix algebras, even/odd decomposition, and graded tensor products with
Koszul signs.

Only finite-dimensional factors are supported; there the algebraic tensor
product is already complete and carries a unique C*-norm, so no completion
machinery is needed.  Tensor elements are stored as dense coefficient arrays
over a fixed homogeneous basis, and equality is coefficientwise to 1e-12.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np

COEFF_TOL = 1e-12


@dataclass(frozen=True)
class CliffordElement:
    """Element (z, w) of the complexified Clifford algebra of the line,
    identified with C (+) C under componentwise multiplication.

    The grading automorphism is the component swap; even elements have
    z == w, odd elements z == -w.  The degree-one generator is (1, -1),
    whose square is the unit (1, 1).
    """

    z: complex
    w: complex

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        return CliffordElement(self.z + other.z, self.w + other.w)

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return CliffordElement(self.z - other.z, self.w - other.w)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(-self.z, -self.w)

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return clifford_mul(self, other)
        return CliffordElement(self.z * other, self.w * other)

    __rmul__ = __mul__

    def star(self) -> "CliffordElement":
        return CliffordElement(np.conj(self.z), np.conj(self.w))

    def grading(self) -> "CliffordElement":
        return CliffordElement(self.w, self.z)

    def norm(self) -> float:
        return max(abs(self.z), abs(self.w))

    def approx_eq(self, other: "CliffordElement", tol: float = COEFF_TOL) -> bool:
        return abs(self.z - other.z) <= tol and abs(self.w - other.w) <= tol


CLIFF_UNIT = CliffordElement(1.0, 1.0)
CLIFF_E = CliffordElement(1.0, -1.0)


def clifford_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    return CliffordElement(a.z * b.z, a.w * b.w)


def clifford_embed(x: float) -> CliffordElement:
    """The self-adjoint odd element (x, -x) representing the vector x."""
    return CliffordElement(x, -x)


def cliff_grading(a: CliffordElement) -> CliffordElement:
    return a.grading()


def even_odd_decompose(a, grading):
    """Split ``a`` into its even and odd parts for an order-two automorphism.

    Works for any value type closed under addition and halving:
    a0 = (a + grading(a))/2 is fixed by the grading, a1 = (a - grading(a))/2
    is negated, and a = a0 + a1.
    """
    ga = grading(a)
    return (a + ga) * 0.5, (a - ga) * 0.5


class GradedAlgebra:
    """A finite-dimensional graded *-algebra given by structure constants.

    ``mult[i, j, :]`` holds the coefficients of ``b_i b_j``; ``star[i, :]``
    the coefficients of ``b_i^*`` (extended antilinearly); ``degrees[i]`` is
    the parity of the basis element ``b_i``.  Bases are chosen homogeneous.
    """

    def __init__(self, name, degrees, mult, star, unit, basis_names=None):
        self.name = name
        self.degrees = np.asarray(degrees, dtype=int)
        self.mult = np.asarray(mult, dtype=complex)
        self.star = np.asarray(star, dtype=complex)
        self.unit = np.asarray(unit, dtype=complex)
        self.dim = len(self.degrees)
        self.basis_names = basis_names or [f"b{i}" for i in range(self.dim)]

    def __repr__(self):
        return f"GradedAlgebra({self.name}, dim={self.dim})"

    def multiply_coeffs(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, self.mult)

    def star_coeffs(self, a: np.ndarray) -> np.ndarray:
        return np.conj(a) @ self.star

    def grading_coeffs(self, a: np.ndarray) -> np.ndarray:
        return a * np.where(self.degrees % 2 == 1, -1.0, 1.0)

    def random_homogeneous(self, rng, degree=None) -> np.ndarray:
        if degree is None:
            degree = int(rng.integers(0, 2))
        mask = self.degrees == degree
        c = np.zeros(self.dim, dtype=complex)
        c[mask] = rng.normal(size=mask.sum()) + 1j * rng.normal(size=mask.sum())
        return c


def clifford_algebra() -> GradedAlgebra:
    """C (+) C on the homogeneous basis {unit, e} with e^2 = unit and swap grading."""
    mult = np.zeros((2, 2, 2), dtype=complex)
    mult[0, 0, 0] = 1.0  # 1*1 = 1
    mult[0, 1, 1] = 1.0  # 1*e = e
    mult[1, 0, 1] = 1.0  # e*1 = e
    mult[1, 1, 0] = 1.0  # e*e = 1
    star = np.eye(2, dtype=complex)
    return GradedAlgebra("Cliff(R)", [0, 1], mult, star, [1.0, 0.0], ["1", "e"])


def scalar_algebra() -> GradedAlgebra:
    return GradedAlgebra("C", [0], np.ones((1, 1, 1)), np.eye(1), [1.0], ["1"])


def matrix_algebra(parity=(1, -1)) -> GradedAlgebra:
    """Full matrix algebra on matrix units, graded by a diagonal parity vector.

    A unit E_ij is even when parity[i] == parity[j] and odd otherwise; for
    parity (1, -1) this is the usual block grading with diagonal blocks even
    and off-diagonal blocks odd.
    """
    d = len(parity)
    m = d * d
    idx = {(i, j): i * d + j for i in range(d) for j in range(d)}
    degrees = [0 if parity[i] == parity[j] else 1 for i in range(d) for j in range(d)]
    mult = np.zeros((m, m, m), dtype=complex)
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                mult[a, b, idx[(i, l)]] = 1.0
    star = np.zeros((m, m), dtype=complex)
    for (i, j), a in idx.items():
        star[a, idx[(j, i)]] = 1.0
    unit = np.zeros(m, dtype=complex)
    for i in range(d):
        unit[idx[(i, i)]] = 1.0
    names = [f"E{i}{j}" for i in range(d) for j in range(d)]
    return GradedAlgebra(f"M{d}(parity={tuple(parity)})", degrees, mult, star, unit, names)


def matrix_parity_grading(parity):
    """Grading automorphism A -> P A P of a matrix algebra, P = diag(parity)."""
    p = np.asarray(parity, dtype=float)

    def grade(a: np.ndarray) -> np.ndarray:
        return (p[:, None] * p[None, :]) * a

    return grade


class GradedTensorElement:
    """Element of the graded tensor product of two GradedAlgebra factors.

    Coefficients are indexed by pairs of homogeneous basis elements; the
    degree of an elementary tensor is the mod-2 sum of the factor degrees.
    """

    def __init__(self, left: GradedAlgebra, right: GradedAlgebra, coeffs):
        self.left = left
        self.right = right
        self.coeffs = np.asarray(coeffs, dtype=complex)
        if self.coeffs.shape != (left.dim, right.dim):
            raise ValueError("coefficient array does not match the factor algebras")

    @classmethod
    def elementary(cls, left, right, a, b) -> "GradedTensorElement":
        """Elementary tensor from factor coefficient vectors a, b."""
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        return cls(left, right, np.outer(a, b))

    def _check_compatible(self, other: "GradedTensorElement") -> None:
        if self.left is not other.left or self.right is not other.right:
            raise ValueError("tensor elements live over different factor algebras")

    def __add__(self, other):
        self._check_compatible(other)
        return GradedTensorElement(self.left, self.right, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check_compatible(other)
        return GradedTensorElement(self.left, self.right, self.coeffs - other.coeffs)

    def __neg__(self):
        return GradedTensorElement(self.left, self.right, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, GradedTensorElement):
            return graded_tensor_mul(self, other)
        return GradedTensorElement(self.left, self.right, self.coeffs * other)

    def __rmul__(self, scalar):
        return GradedTensorElement(self.left, self.right, self.coeffs * scalar)

    def star(self) -> "GradedTensorElement":
        return graded_tensor_star(self)

    def grading(self) -> "GradedTensorElement":
        signs = np.where((self.left.degrees[:, None] + self.right.degrees[None, :]) % 2 == 1, -1.0, 1.0)
        return GradedTensorElement(self.left, self.right, signs * self.coeffs)

    def degree(self):
        """0 or 1 for homogeneous elements, None for mixed or zero."""
        total = (self.left.degrees[:, None] + self.right.degrees[None, :]) % 2
        present = np.abs(self.coeffs) > COEFF_TOL
        degs = np.unique(total[present])
        return int(degs[0]) if degs.size == 1 else None

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def approx_eq(self, other, tol: float = COEFF_TOL) -> bool:
        self._check_compatible(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= tol)

    def __repr__(self):
        terms = []
        for i in range(self.left.dim):
            for j in range(self.right.dim):
                c = self.coeffs[i, j]
                if abs(c) > COEFF_TOL:
                    terms.append(f"({c:.3g})*{self.left.basis_names[i]}(x){self.right.basis_names[j]}")
        return " + ".join(terms) if terms else "0"


def graded_tensor_mul(x: GradedTensorElement, y: GradedTensorElement) -> GradedTensorElement:
    """Bilinear extension of (a1 (x) b1)(a2 (x) b2) = (-1)^(deg b1 * deg a2) a1 a2 (x) b1 b2."""
    x._check_compatible(y)
    A, B = x.left, x.right
    sign = np.where((B.degrees[:, None] * A.degrees[None, :]) % 2 == 1, -1.0, 1.0)
    out = np.einsum("ij,kl,jk,ikp,jlq->pq", x.coeffs, y.coeffs, sign, A.mult, B.mult)
    return GradedTensorElement(A, B, out)


def graded_tensor_star(x: GradedTensorElement) -> GradedTensorElement:
    """Antilinear extension of (a (x) b)^* = (-1)^(deg a * deg b) a^* (x) b^*."""
    A, B = x.left, x.right
    sign = np.where((A.degrees[:, None] * B.degrees[None, :]) % 2 == 1, -1.0, 1.0)
    out = np.einsum("ij,ip,jq->pq", sign * np.conj(x.coeffs), A.star, B.star)
    return GradedTensorElement(A, B, out)
