"""Finite models of the function spaces: a symmetric periodic grid for the
line, scalar test functions with parity, Clifford-algebra-valued functions
with sup norm, discretized L^2 (+) L^2 vectors, and an orthonormal Hermite
system with exact recurrence tables.

Translations in exact mode move samples by whole grid steps and zero-extend;
the absolute mass of the discarded samples is recorded, never silently
wrapped.  Rescalings x -> x/t are always evaluated from callables, never by
resampling arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .group import DihedralElement, ScaledAction, act, inverse

BOUNDARY_DECAY_THRESHOLD = 1e-8


class MisalignedTranslationError(ValueError):
    """Raised when an exact-mode translation is not a whole number of grid steps."""


class GridQualityError(ValueError):
    """Raised when grid parameters cannot support the requested resolution."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid x_j = -L + j*h, j = 0..N-1, with spacing h = 2L/N.

    N must be even.  The grid is symmetric under x -> -x up to the single
    point -L, which is identified with +L (period 2L).
    """

    half_width: float = 20.0
    size: int = 1024

    def __post_init__(self) -> None:
        if self.size <= 0 or self.size % 2 != 0:
            raise ValueError(f"grid size must be a positive even integer, got {self.size}")
        if not self.half_width > 0:
            raise ValueError(f"grid half-width must be positive, got {self.half_width}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.size

    @cached_property
    def points(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.size)

    @cached_property
    def frequencies(self) -> np.ndarray:
        """Angular FFT frequencies, Nyquist included."""
        return 2.0 * np.pi * np.fft.fftfreq(self.size, d=self.spacing)

    @cached_property
    def reflection_indices(self) -> np.ndarray:
        """Index permutation realizing x -> -x (with -L identified to +L)."""
        return (self.size - np.arange(self.size)) % self.size

    def steps(self, amount: float, tol: float = 1e-9) -> int:
        """Translation amount as a whole number of grid steps, or raise."""
        m = amount / self.spacing
        mi = round(m)
        if abs(m - mi) > tol:
            raise MisalignedTranslationError(
                f"translation {amount} is {m:.6f} grid steps (spacing {self.spacing}); "
                "exact mode needs an integer"
            )
        return mi

    def aligned_time(self, t: float) -> float:
        """Nearest t' >= 1 to t such that t' is a whole number of grid steps."""
        m = max(round(t / self.spacing), math.ceil((1.0 - 1e-12) / self.spacing))
        return m * self.spacing


def _parity_product(p: str | None, q: str | None) -> str | None:
    if p is None or q is None:
        return None
    return "even" if p == q else "odd"


class SFunction:
    """Scalar test function on the line with an optional parity tag.

    Instances are closed under products, sums, conjugation and the reflection
    grading f(x) -> f(-x); the generators below are the Gaussian u and its
    odd sibling v.
    """

    def __init__(self, fn, name: str | None = None, parity: str | None = None):
        self.fn = fn
        self.name = name
        self.parity = parity

    def __call__(self, x):
        return self.fn(x)

    def __mul__(self, other):
        if isinstance(other, SFunction):
            name = f"{self.name}*{other.name}" if self.name and other.name else None
            return SFunction(lambda x, f=self.fn, g=other.fn: f(x) * g(x), name,
                             _parity_product(self.parity, other.parity))
        return SFunction(lambda x, f=self.fn, c=other: c * f(x), None, self.parity)

    __rmul__ = __mul__

    def __add__(self, other: "SFunction") -> "SFunction":
        parity = self.parity if self.parity == other.parity else None
        return SFunction(lambda x, f=self.fn, g=other.fn: f(x) + g(x), None, parity)

    def star(self) -> "SFunction":
        return SFunction(lambda x, f=self.fn: np.conj(f(x)), f"{self.name}*" if self.name else None, self.parity)

    def grading(self) -> "SFunction":
        """Reflection grading f(x) -> f(-x)."""
        flipped = {"even": "even", "odd": "odd"}.get(self.parity)
        return SFunction(lambda x, f=self.fn: f(np.negative(x)), None, flipped)

    def reflected_sign(self) -> float | None:
        return {"even": 1.0, "odd": -1.0}.get(self.parity)

    def __repr__(self):
        return f"SFunction({self.name or '<anon>'}, parity={self.parity})"


def u_function() -> SFunction:
    """The even Gaussian generator u(x) = exp(-x^2)."""
    return SFunction(lambda x: np.exp(-np.square(x)), "u", "even")


def v_function() -> SFunction:
    """The odd generator v(x) = x exp(-x^2)."""
    return SFunction(lambda x: x * np.exp(-np.square(x)), "v", "odd")


ZERO_FUNCTION = SFunction(lambda x: np.zeros_like(np.asarray(x, dtype=float)), "0", "even")


class CliffFunction:
    """Clifford-algebra-valued function on the grid, x -> (F1(x), F2(x)).

    Samples live on a GridSpec; the optional callables allow exact off-grid
    evaluation (used for rescalings and for misaligned group translations).
    The sup norm is the grid maximum of max(|F1|, |F2|), matching the C*-norm
    max of components.
    """

    def __init__(self, grid: GridSpec, samples1, samples2, fn1=None, fn2=None,
                 name: str | None = None, boundary_mass: float = 0.0):
        self.grid = grid
        self.samples1 = np.asarray(samples1)
        self.samples2 = np.asarray(samples2)
        if self.samples1.shape != (grid.size,) or self.samples2.shape != (grid.size,):
            raise ValueError("sample arrays do not match the grid")
        self.fn1 = fn1
        self.fn2 = fn2
        self.name = name
        self.boundary_mass = boundary_mass

    @classmethod
    def from_callables(cls, grid: GridSpec, fn1, fn2, name=None) -> "CliffFunction":
        x = grid.points
        return cls(grid, fn1(x), fn2(x), fn1, fn2, name)

    @classmethod
    def from_scalar_pair(cls, grid: GridSpec, f: SFunction, g: SFunction) -> "CliffFunction":
        name = f"({f.name},{g.name})" if f.name and g.name else None
        return cls.from_callables(grid, f.fn, g.fn, name)

    @property
    def has_callables(self) -> bool:
        return self.fn1 is not None and self.fn2 is not None

    def _require_callables(self, what: str):
        if not self.has_callables:
            raise ValueError(f"{what} needs the callable form of the function")

    def value(self, x):
        self._require_callables("off-grid evaluation")
        return self.fn1(x), self.fn2(x)

    def scaled(self, t: float) -> "CliffFunction":
        """F_t(x) = F(x/t), evaluated from callables to avoid resampling error."""
        self._require_callables("rescaling")
        inv_t = 1.0 / t
        f1, f2 = self.fn1, self.fn2
        return CliffFunction.from_callables(
            self.grid,
            lambda x, f=f1, c=inv_t: f(x * c),
            lambda x, f=f2, c=inv_t: f(x * c),
            f"{self.name}_t={t:g}" if self.name else None,
        )

    def __mul__(self, other):
        if not isinstance(other, CliffFunction):
            return self.__rmul__(other)
        if self.grid != other.grid:
            raise ValueError("grid mismatch")
        fn1 = fn2 = None
        if self.has_callables and other.has_callables:
            fn1 = lambda x, f=self.fn1, g=other.fn1: f(x) * g(x)
            fn2 = lambda x, f=self.fn2, g=other.fn2: f(x) * g(x)
        return CliffFunction(self.grid, self.samples1 * other.samples1,
                             self.samples2 * other.samples2, fn1, fn2)

    def __add__(self, other: "CliffFunction") -> "CliffFunction":
        if self.grid != other.grid:
            raise ValueError("grid mismatch")
        fn1 = fn2 = None
        if self.has_callables and other.has_callables:
            fn1 = lambda x, f=self.fn1, g=other.fn1: f(x) + g(x)
            fn2 = lambda x, f=self.fn2, g=other.fn2: f(x) + g(x)
        return CliffFunction(self.grid, self.samples1 + other.samples1,
                             self.samples2 + other.samples2, fn1, fn2)

    def __sub__(self, other: "CliffFunction") -> "CliffFunction":
        return self + (-1.0) * other

    def __rmul__(self, scalar):
        fn1 = fn2 = None
        if self.has_callables:
            fn1 = lambda x, f=self.fn1, c=scalar: c * f(x)
            fn2 = lambda x, f=self.fn2, c=scalar: c * f(x)
        return CliffFunction(self.grid, scalar * self.samples1, scalar * self.samples2, fn1, fn2)

    def star(self) -> "CliffFunction":
        fn1 = fn2 = None
        if self.has_callables:
            fn1 = lambda x, f=self.fn1: np.conj(f(x))
            fn2 = lambda x, f=self.fn2: np.conj(f(x))
        return CliffFunction(self.grid, np.conj(self.samples1), np.conj(self.samples2), fn1, fn2)

    def grading(self) -> "CliffFunction":
        """Pointwise Clifford grading: swap the two components."""
        return CliffFunction(self.grid, self.samples2, self.samples1, self.fn2, self.fn1)

    def sup_norm(self) -> float:
        return float(max(np.max(np.abs(self.samples1)), np.max(np.abs(self.samples2))))

    def boundary_values(self) -> float:
        return float(max(abs(self.samples1[0]), abs(self.samples2[0]),
                         abs(self.samples1[-1]), abs(self.samples2[-1])))

    def __repr__(self):
        return f"CliffFunction({self.name or '<anon>'}, grid={self.grid.size}@{self.grid.half_width})"


class HilbertVector:
    """Sampled vector of the discretized Hilbert space L^2 (+) L^2.

    Inner product is the Riemann sum h * sum(conj(F1) G1 + conj(F2) G2); the
    grading operator is the component swap.
    """

    def __init__(self, grid: GridSpec, comp1, comp2):
        self.grid = grid
        self.comp1 = np.asarray(comp1)
        self.comp2 = np.asarray(comp2)
        if self.comp1.shape != (grid.size,) or self.comp2.shape != (grid.size,):
            raise ValueError("component arrays do not match the grid")

    def inner(self, other: "HilbertVector") -> complex:
        if self.grid != other.grid:
            raise ValueError("grid mismatch")
        return self.grid.spacing * (np.vdot(self.comp1, other.comp1) + np.vdot(self.comp2, other.comp2))

    def norm(self) -> float:
        return float(np.sqrt(self.inner(self).real))

    def swap(self) -> "HilbertVector":
        return HilbertVector(self.grid, self.comp2, self.comp1)

    def flat(self) -> np.ndarray:
        """Stacked sample vector (component-major) used by the operator layer."""
        return np.concatenate([self.comp1, self.comp2])

    @classmethod
    def from_flat(cls, grid: GridSpec, data: np.ndarray) -> "HilbertVector":
        n = grid.size
        return cls(grid, data[:n], data[n:])

    def __add__(self, other):
        return HilbertVector(self.grid, self.comp1 + other.comp1, self.comp2 + other.comp2)

    def __sub__(self, other):
        return HilbertVector(self.grid, self.comp1 - other.comp1, self.comp2 - other.comp2)

    def __rmul__(self, scalar):
        return HilbertVector(self.grid, scalar * self.comp1, scalar * self.comp2)


def sup_norm(f: CliffFunction) -> float:
    return f.sup_norm()


def l2_norm(f: HilbertVector) -> float:
    return f.norm()


def _translation_sources(grid: GridSpec, g: DihedralElement, scale: float):
    """Source index array and validity mask for sampling F(g^{-1} ._s x_j).

    g^{-1} ._s x_j = (-1)^eps (x_j + n*s): shift by m = n*s/h whole steps,
    then reflect the shifted point when eps = 1.  Shifts leaving the window
    are zero-extended; reflection is an exact permutation (with -L and +L
    identified).
    """
    n = grid.size
    m = grid.steps(g.n * scale)
    idx = np.arange(n) + m
    valid = (idx >= 0) & (idx < n)
    idx = np.clip(idx, 0, n - 1)
    if g.eps:
        idx = grid.reflection_indices[idx]
    return idx, valid, m


def act_on_cliff_function(g: DihedralElement, F: CliffFunction, s=ScaledAction(1.0),
                          exact: bool = True) -> CliffFunction:
    """Group action (g.F)(x) = pi(g)(F(g^{-1} ._s x)) on Clifford-valued functions.

    In exact mode the translation must map the grid to itself; samples moved
    off the window are zero-extended and their absolute mass is recorded on
    the result.  In callable mode the action is composed symbolically and
    works for any translation amount.
    """
    sv = s.s if isinstance(s, ScaledAction) else float(s)
    grid = F.grid
    fn1 = fn2 = None
    if F.has_callables:
        nsv, eps = g.n * sv, g.eps
        f1, f2 = F.fn1, F.fn2

        def arg(x):
            y = x + nsv
            return np.negative(y) if eps else y

        if eps:
            fn1 = lambda x, f=f2: f(arg(x))
            fn2 = lambda x, f=f1: f(arg(x))
        else:
            fn1 = lambda x, f=f1: f(arg(x))
            fn2 = lambda x, f=f2: f(arg(x))

    if not exact:
        F._require_callables("misaligned group translation")
        return CliffFunction.from_callables(grid, fn1, fn2, None)

    idx, valid, _ = _translation_sources(grid, g, sv)
    s1 = np.where(valid, F.samples1[idx], 0.0)
    s2 = np.where(valid, F.samples2[idx], 0.0)
    if g.eps:
        s1, s2 = s2, s1
    read = np.zeros(grid.size, dtype=bool)
    read[idx[valid]] = True
    mass = float(np.sum(np.abs(F.samples1[~read])) + np.sum(np.abs(F.samples2[~read])))
    return CliffFunction(grid, s1, s2, fn1, fn2, boundary_mass=mass)


def act_on_hilbert(g: DihedralElement, F: HilbertVector, s=ScaledAction(1.0)) -> HilbertVector:
    """Unitary action (g ._s F)(x) = pi(g)(F(g^{-1} ._s x)) on sampled vectors.

    Exact mode only; reflections are exact permutations, translations are
    zero-extended whole-step shifts (an isometry on vectors supported away
    from the window boundary).
    """
    sv = s.s if isinstance(s, ScaledAction) else float(s)
    idx, valid, _ = _translation_sources(F.grid, g, sv)
    c1 = np.where(valid, F.comp1[idx], 0.0)
    c2 = np.where(valid, F.comp2[idx], 0.0)
    if g.eps:
        c1, c2 = c2, c1
    return HilbertVector(F.grid, c1, c2)


class HermiteBasis:
    """Orthonormal Hermite functions with exact tridiagonal coefficient tables.

    The tables encode x phi_k = sqrt((k+1)/2) phi_{k+1} + sqrt(k/2) phi_{k-1}
    and phi_k' = sqrt(k/2) phi_{k-1} - sqrt((k+1)/2) phi_{k+1}; they are exact
    and grid-free.  Sampling on a grid is optional and validated: the grid
    must resolve the basis (M <= N/4) and contain its support (L >= 2 sqrt(M),
    which keeps the sampled Gram matrix within 1e-10 of the identity).
    """

    def __init__(self, size: int):
        if size < 2:
            raise ValueError("need at least two Hermite functions")
        self.size = size
        c = np.sqrt((np.arange(size - 1) + 1) / 2.0)
        # x_mat[j, k] = <phi_j, x phi_k>; d_mat[j, k] = <phi_j, phi_k'>
        self.x_mat = np.diag(c, 1) + np.diag(c, -1)
        self.d_mat = np.diag(c, 1) - np.diag(c, -1)

    def validate_grid(self, grid: GridSpec) -> None:
        if self.size > grid.size // 4:
            raise GridQualityError(
                f"basis size {self.size} needs at least {4 * self.size} grid points, grid has {grid.size}")
        needed = 2.0 * math.sqrt(self.size)
        if grid.half_width < needed:
            raise GridQualityError(
                f"basis size {self.size} needs half-width >= {needed:.2f}, grid has {grid.half_width}")

    def sample_matrix(self, grid: GridSpec) -> np.ndarray:
        """(size, N) array of phi_k(x_j), by the stable forward recurrence."""
        self.validate_grid(grid)
        x = grid.points
        phi = np.zeros((self.size, grid.size))
        phi[0] = np.pi ** -0.25 * np.exp(-0.5 * np.square(x))
        phi[1] = np.sqrt(2.0) * x * phi[0]
        for k in range(1, self.size - 1):
            phi[k + 1] = np.sqrt(2.0 / (k + 1)) * x * phi[k] - np.sqrt(k / (k + 1.0)) * phi[k - 1]
        return phi

    def gram_error(self, grid: GridSpec) -> float:
        phi = self.sample_matrix(grid)
        gram = grid.spacing * phi @ phi.T
        return float(np.max(np.abs(gram - np.eye(self.size))))


def hermite_basis(size: int, grid: GridSpec | None = None) -> HermiteBasis:
    """Hermite system of the given size; validates grid quality when sampling is requested."""
    basis = HermiteBasis(size)
    if grid is not None:
        basis.validate_grid(grid)
    return basis


def ground_state_samples(grid: GridSpec) -> np.ndarray:
    """Normalized phi_0(x) = pi^(-1/4) exp(-x^2/2) on the grid."""
    return np.pi ** -0.25 * np.exp(-0.5 * np.square(grid.points))
