"""Exact arithmetic for the infinite dihedral group and its affine actions on the line.

The group is generated by a translation ``rho`` and a reflection ``sigma``
subject to ``sigma^2 = e`` and ``sigma rho sigma = rho^{-1}``.  Every element
has a unique normal form ``rho^n sigma^eps`` with ``n`` an integer and
``eps`` in {0, 1}; all arithmetic below is exact integer arithmetic on that
normal form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class DihedralElement:
    """Group element ``rho^n sigma^eps`` in normal form (reflection on the right)."""

    n: int = 0
    eps: int = 0

    def __post_init__(self) -> None:
        if self.eps not in (0, 1):
            raise ValueError(f"eps must be 0 or 1, got {self.eps!r}")

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        return multiply(self, other)

    def inverse(self) -> "DihedralElement":
        return inverse(self)

    def __repr__(self) -> str:
        if self.eps == 0 and self.n == 0:
            return "e"
        rho = "" if self.n == 0 else (f"rho^{self.n}" if self.n != 1 else "rho")
        sig = "sigma" if self.eps else ""
        return rho + ("*" if rho and sig else "") + sig


E = DihedralElement(0, 0)
RHO = DihedralElement(1, 0)
SIGMA = DihedralElement(0, 1)


def rho_power(n: int) -> DihedralElement:
    return DihedralElement(n, 0)


def reflection(l: int) -> DihedralElement:
    """The reflection ``rho^l sigma``."""
    return DihedralElement(l, 1)


@dataclass(frozen=True)
class ScaledAction:
    """Affine action of the group on the line with translation length ``s``.

    ``rho`` acts by ``x -> x - s`` and ``sigma`` by ``x -> -x``; ``s = 1``
    is the standard action and ``s = 0`` collapses all translations.
    """

    s: float = 1.0

    def __post_init__(self) -> None:
        if not self.s >= 0:
            raise ValueError(f"translation scale must be >= 0, got {self.s!r}")


STANDARD_ACTION = ScaledAction(1.0)


def multiply(g: DihedralElement, h: DihedralElement) -> DihedralElement:
    """Product in normal form: rho^a sigma^e * rho^b sigma^d = rho^(a + (-1)^e b) sigma^(e+d)."""
    b = -h.n if g.eps else h.n
    return DihedralElement(g.n + b, (g.eps + h.eps) % 2)


def inverse(g: DihedralElement) -> DihedralElement:
    """(rho^n sigma^eps)^(-1) = rho^(-(-1)^eps n) sigma^eps."""
    return DihedralElement(g.n if g.eps else -g.n, g.eps)


def sign(g: DihedralElement) -> int:
    """The orientation character: +1 on translations, -1 on reflections."""
    return -1 if g.eps else 1


def _as_scale(s) -> float:
    return s.s if isinstance(s, ScaledAction) else float(s)


def act(g: DihedralElement, x: float, s=STANDARD_ACTION) -> float:
    """Left action: rho^n sigma^eps . x = (-1)^eps x - n*s."""
    sv = _as_scale(s)
    y = -x if g.eps else x
    return y - g.n * sv


def properness_ball(x: float, radius: float, s=STANDARD_ACTION) -> frozenset[DihedralElement]:
    """All group elements moving ``x`` by at most ``radius``.

    Finiteness is what makes the scaled action metrically proper for s > 0.
    A translation rho^n moves x by |n|*s and a reflection rho^l sigma moves
    it by |2x + l*s|, so every solution lies in the candidate window
    |n| <= ceil((radius + 2|x|)/s) + 1; candidates are then filtered with the
    defining predicate so the result is exact.
    """
    sv = _as_scale(s)
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if sv == 0:
        raise ValueError("action with s=0 is not proper: every rho^n fixes every point")
    bound = math.ceil((radius + 2.0 * abs(x)) / sv) + 1
    hits = []
    for n in range(-bound, bound + 1):
        for eps in (0, 1):
            g = DihedralElement(n, eps)
            if abs(x - act(g, x, sv)) <= radius:
                hits.append(g)
    return frozenset(hits)
