"""Convolution *-algebra of finitely supported coefficient-valued functions
on the infinite dihedral group, with a truncated regular representation for
norm estimates.

The covariant convolution (f1 * f2)(g) = sum_h f1(h) . (h . f2(h^{-1} g)) is
the standard convention making the involution f*(g) = g . (f(g^{-1})^*)
antimultiplicative; both identities are verified as invariants by the test
suite rather than assumed.  Truncation artifacts of the regular
representation are confined to a boundary shell, so norms are always taken
after compressing to an interior of half the truncation radius.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graded import GradedAlgebra, clifford_algebra, matrix_algebra, scalar_algebra
from .group import DihedralElement, E, inverse, multiply, sign

PRUNE_TOL = 0.0  # coefficients are pruned only when exactly zero


class CoefficientAlgebra:
    """A finite-dimensional graded *-algebra together with a group action.

    ``action(g)`` returns the matrix of the automorphism alpha_g on the
    algebra's homogeneous basis.  The action must be by grading-preserving
    *-automorphisms; the bundled algebras satisfy this by construction.
    """

    def __init__(self, algebra: GradedAlgebra, action, name: str | None = None):
        self.algebra = algebra
        self._action = action
        self.name = name or algebra.name
        self.dim = algebra.dim

    def action(self, g: DihedralElement) -> np.ndarray:
        return self._action(g)

    def act(self, g: DihedralElement, coeffs: np.ndarray) -> np.ndarray:
        return self.action(g) @ coeffs

    def __repr__(self):
        return f"CoefficientAlgebra({self.name})"


def trivial_complex() -> CoefficientAlgebra:
    alg = scalar_algebra()
    eye = np.eye(1)
    return CoefficientAlgebra(alg, lambda g: eye, "C (trivial action)")


def cliff_coefficients() -> CoefficientAlgebra:
    """The Clifford algebra with the orientation-character action: reflections
    act by the grading swap (basis {1, e}: 1 -> 1, e -> sign(g) e)."""
    alg = clifford_algebra()
    plus = np.eye(2)
    minus = np.diag([1.0, -1.0])

    def action(g: DihedralElement) -> np.ndarray:
        return plus if sign(g) == 1 else minus

    return CoefficientAlgebra(alg, action, "Cliff(R) (sign action)")


def m2_trivial() -> CoefficientAlgebra:
    alg = matrix_algebra((1, -1))
    eye = np.eye(alg.dim)
    return CoefficientAlgebra(alg, lambda g: eye, "M2 (trivial action)")


@dataclass
class GroupAlgebraElement:
    """Finitely supported coefficient-valued function on the group."""

    coefficients: CoefficientAlgebra
    terms: dict

    def __post_init__(self):
        pruned = {}
        for g, c in self.terms.items():
            arr = np.asarray(c, dtype=complex)
            if arr.shape != (self.coefficients.dim,):
                raise ValueError("coefficient vector has the wrong dimension")
            if np.max(np.abs(arr)) > PRUNE_TOL:
                pruned[g] = arr
        self.terms = pruned

    @property
    def support(self):
        return set(self.terms)

    def support_radius(self) -> int:
        return max((abs(g.n) for g in self.terms), default=0)

    def coefficient(self, g: DihedralElement) -> np.ndarray:
        zero = np.zeros(self.coefficients.dim, dtype=complex)
        return self.terms.get(g, zero)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        out = {g: c.copy() for g, c in self.terms.items()}
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return GroupAlgebraElement(self.coefficients, out)

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.coefficients,
                                   {g: scalar * c for g, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return convolve(self, other)
        return self.__rmul__(other)

    def star(self) -> "GroupAlgebraElement":
        return involution(self)

    def grading(self) -> "GroupAlgebraElement":
        """Pointwise grading automorphism of the coefficient algebra."""
        alg = self.coefficients.algebra
        return GroupAlgebraElement(self.coefficients,
                                   {g: alg.grading_coeffs(c) for g, c in self.terms.items()})

    def max_abs(self) -> float:
        return max((float(np.max(np.abs(c))) for c in self.terms.values()), default=0.0)

    def _check(self, other: "GroupAlgebraElement") -> None:
        if self.coefficients is not other.coefficients:
            raise ValueError("elements live over different coefficient algebras")


def delta(coefficients: CoefficientAlgebra, g: DihedralElement, coeff=None) -> GroupAlgebraElement:
    """The one-point function delta_g with the given coefficient (unit by default)."""
    c = coefficients.algebra.unit if coeff is None else np.asarray(coeff, dtype=complex)
    return GroupAlgebraElement(coefficients, {g: c})


def convolve(f1: GroupAlgebraElement, f2: GroupAlgebraElement) -> GroupAlgebraElement:
    """Covariant convolution (f1 * f2)(g) = sum_h f1(h) . (h . f2(h^{-1} g))."""
    f1._check(f2)
    alg = f1.coefficients.algebra
    out: dict = {}
    for h, c1 in f1.terms.items():
        act_h = f1.coefficients.action(h)
        for k, c2 in f2.terms.items():
            g = multiply(h, k)
            val = alg.multiply_coeffs(c1, act_h @ c2)
            out[g] = out.get(g, 0) + val
    return GroupAlgebraElement(f1.coefficients, out)


def involution(f: GroupAlgebraElement) -> GroupAlgebraElement:
    """f*(g) = g . (f(g^{-1})^*)."""
    alg = f.coefficients.algebra
    out = {}
    for h, c in f.terms.items():
        g = inverse(h)
        out[g] = f.coefficients.act(g, alg.star_coeffs(c))
    return GroupAlgebraElement(f.coefficients, out)


class TruncatedL2:
    """Finite window of the regular-representation Hilbert space.

    Basis vectors are indexed by (group element, orthonormal coefficient
    basis vector) for group elements rho^n sigma^eps with |n| <= radius;
    the carrier of the coefficient algebra is the algebra itself with its
    left-multiplication representation.
    """

    def __init__(self, radius: int, coefficients: CoefficientAlgebra):
        if radius < 1:
            raise ValueError("truncation radius must be positive")
        self.radius = radius
        self.coefficients = coefficients
        self.elements = [DihedralElement(n, eps)
                         for n in range(-radius, radius + 1) for eps in (0, 1)]
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.dim = len(self.elements) * coefficients.dim
        alg = coefficients.algebra
        # left-multiplication matrices of the homogeneous (orthonormal) basis
        self.left_mult = [alg.mult[i].T.copy() for i in range(alg.dim)]

    def represent_coefficient(self, coeffs: np.ndarray) -> np.ndarray:
        out = np.zeros((self.coefficients.dim, self.coefficients.dim), dtype=complex)
        for i, c in enumerate(coeffs):
            if c != 0:
                out += c * self.left_mult[i]
        return out

    def interior_slice(self) -> np.ndarray:
        """Flat indices of the interior block (support radius <= radius/2)."""
        keep = []
        d = self.coefficients.dim
        for i, g in enumerate(self.elements):
            if abs(g.n) <= self.radius // 2:
                keep.extend(range(i * d, (i + 1) * d))
        return np.asarray(keep, dtype=int)


def regular_representation(f: GroupAlgebraElement, trunc: TruncatedL2) -> np.ndarray:
    """Matrix of left convolution by ``f`` on the truncated window.

    (f xi)(g) = sum_h pi0(alpha_{g^{-1}}(f(h))) xi(h^{-1} g), with pi0 the
    left-multiplication representation of the coefficient algebra on itself.
    Rows and columns outside the window are simply absent; only conclusions
    drawn from interior-supported vectors are trusted.
    """
    if f.coefficients is not trunc.coefficients:
        raise ValueError("element and truncation use different coefficient algebras")
    if f.support_radius() > trunc.radius // 2:
        raise ValueError("support radius exceeds half the truncation radius")
    d = trunc.coefficients.dim
    out = np.zeros((trunc.dim, trunc.dim), dtype=complex)
    for g, gi in trunc.index.items():
        ginv = inverse(g)
        act_ginv = trunc.coefficients.action(ginv)
        for h, c in f.terms.items():
            src = multiply(inverse(h), g)
            si = trunc.index.get(src)
            if si is None:
                continue
            block = trunc.represent_coefficient(act_ginv @ c)
            out[gi * d:(gi + 1) * d, si * d:(si + 1) * d] = block
    return out


def interior_restricted_norm(matrix: np.ndarray, trunc: TruncatedL2) -> float:
    """Operator norm of the two-sided compression to the interior block."""
    keep = trunc.interior_slice()
    sub = matrix[np.ix_(keep, keep)]
    if np.iscomplexobj(sub) and (sub.size == 0 or float(np.linalg.norm(sub.imag)) <= 1e-12):
        sub = sub.real
    if sub.size == 0:
        return 0.0
    return float(np.linalg.svd(sub, compute_uv=False)[0])


def interior_column_defect(matrix: np.ndarray, trunc: TruncatedL2) -> float:
    """Largest singular value of the matrix restricted to interior columns
    (the norm of its action on interior-supported vectors)."""
    keep = trunc.interior_slice()
    sub = matrix[:, keep]
    if np.iscomplexobj(sub) and (sub.size == 0 or float(np.linalg.norm(sub.imag)) <= 1e-12):
        sub = sub.real
    if sub.size == 0:
        return 0.0
    return float(np.linalg.svd(sub, compute_uv=False)[0])


def reduced_norm_estimate(f: GroupAlgebraElement, radii) -> list[float]:
    """Interior-compressed norms of the regular representation over growing
    windows; nondecreasing up to rounding, stabilizing at the reduced norm.

    Amenability of the group makes full and reduced norms agree, so the
    stabilized value is the full C*-norm as well; the estimate exhibits the
    stabilization, it does not prove the equality.
    """
    radii = list(radii)
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    out = []
    for r in radii:
        trunc = TruncatedL2(r, f.coefficients)
        out.append(interior_restricted_norm(regular_representation(f, trunc), trunc))
    return out


def random_element(coefficients: CoefficientAlgebra, rng, radius: int = 3,
                   n_terms: int = 4) -> GroupAlgebraElement:
    """Random finitely supported element for property checks."""
    terms = {}
    for _ in range(n_terms):
        g = DihedralElement(int(rng.integers(-radius, radius + 1)), int(rng.integers(0, 2)))
        c = rng.normal(size=coefficients.dim) + 1j * rng.normal(size=coefficients.dim)
        terms[g] = terms.get(g, 0) + c
    return GroupAlgebraElement(coefficients, terms)
