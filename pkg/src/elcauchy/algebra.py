"""Arithmetic of the elliptic complex algebra with i**2 = -beta*i - alpha.

An element ``x + iy`` is an :class:`ElComplex`; its components may be floats
or numpy arrays of a common shape, in which case every operation below acts
elementwise (this is how the quadrature rules evaluate whole node sets at
once).  Products, inverses, norms and inner products depend on the algebra
parameters, which travel separately as an :class:`AlgebraParams`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DivisionByZero, EllipticityViolation

__all__ = [
    "ElComplex",
    "AlgebraParams",
    "make_params",
    "mul",
    "inv",
    "conj",
    "tilde",
    "untilde",
    "inner",
    "norm",
    "equivalence_ratio_bounds",
    "eigen_directions",
    "ONE",
    "ZERO",
    "I",
]


@dataclass(frozen=True, eq=False)
class ElComplex:
    """The element ``re + i*im``.

    Addition, subtraction and scaling by reals do not depend on the algebra
    and are available as operators; the product is :func:`mul`.
    """

    re: float | np.ndarray
    im: float | np.ndarray

    def __add__(self, other):
        if not isinstance(other, ElComplex):
            return NotImplemented
        return ElComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        if not isinstance(other, ElComplex):
            return NotImplemented
        return ElComplex(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return ElComplex(-self.re, -self.im)

    def __mul__(self, s):
        # real scalars (or real arrays) only; algebra products go through mul()
        if isinstance(s, ElComplex):
            raise TypeError("use elcauchy.algebra.mul(z, w, params) for algebra products")
        return ElComplex(self.re * s, self.im * s)

    __rmul__ = __mul__

    def __truediv__(self, s):
        if isinstance(s, ElComplex):
            raise TypeError("use elcauchy.algebra.inv(z, params) for algebra division")
        return ElComplex(self.re / s, self.im / s)

    def __eq__(self, other):
        if not isinstance(other, ElComplex):
            return NotImplemented
        return bool(np.all(self.re == other.re) and np.all(self.im == other.im))

    def __hash__(self):
        return hash((float(self.re), float(self.im)))

    def __repr__(self):
        if np.ndim(self.re) == 0 and np.ndim(self.im) == 0:
            return f"ElComplex({float(self.re)!r}, {float(self.im)!r})"
        return f"ElComplex(<batch shape={np.shape(self.re)}>)"

    @property
    def shape(self):
        return np.broadcast_shapes(np.shape(self.re), np.shape(self.im))

    def is_zero(self):
        return bool(np.all(self.re == 0) and np.all(self.im == 0))

    def to_complex(self):
        """The coordinate pair as a Python/numpy complex ``re + 1j*im``."""
        return self.re + 1j * self.im

    @classmethod
    def from_complex(cls, c):
        return cls(np.real(c) if np.ndim(c) else float(np.real(c)),
                   np.imag(c) if np.ndim(c) else float(np.imag(c)))

    def to_json(self):
        return {"re": float(self.re), "im": float(self.im)}

    @classmethod
    def from_json(cls, obj):
        return cls(float(obj["re"]), float(obj["im"]))


ONE = ElComplex(1.0, 0.0)
ZERO = ElComplex(0.0, 0.0)
I = ElComplex(0.0, 1.0)


@dataclass(frozen=True)
class AlgebraParams:
    """Parameters (alpha, beta) of an elliptic algebra plus cached constants.

    ``i_hat`` is (beta + 2i)/sqrt(4 alpha - beta**2), a square root of -1 in
    the algebra.  ``k1`` and ``k2`` are the tight constants with
    ``k1*norm(z, p) <= |z| <= k2*norm(z, p)``.
    """

    alpha: float
    beta: float
    discriminant: float = field(init=False)
    i_hat: ElComplex = field(init=False, compare=False)
    k1: float = field(init=False, compare=False)
    k2: float = field(init=False, compare=False)

    def __post_init__(self):
        alpha = float(self.alpha)
        beta = float(self.beta)
        if not (math.isfinite(alpha) and math.isfinite(beta)):
            raise ValueError(f"alpha and beta must be finite, got ({alpha!r}, {beta!r})")
        disc = 4.0 * alpha - beta * beta
        if not disc > 0.0:
            raise EllipticityViolation(alpha, beta)
        root = math.sqrt(disc)
        # eigenvalues of [[1, -beta/2], [-beta/2, alpha]]
        mean = 0.5 * (1.0 + alpha)
        rad = math.hypot(0.5 * (1.0 - alpha), 0.5 * beta)
        lam_max = mean + rad
        lam_min = (0.25 * disc) / lam_max  # det / lam_max; avoids cancellation
        set_ = object.__setattr__
        set_(self, "alpha", alpha)
        set_(self, "beta", beta)
        set_(self, "discriminant", disc)
        set_(self, "i_hat", ElComplex(beta / root, 2.0 / root))
        set_(self, "k1", 1.0 / math.sqrt(lam_max))
        set_(self, "k2", 1.0 / math.sqrt(lam_min))

    @property
    def is_classical(self):
        return self.alpha == 1.0 and self.beta == 0.0

    def to_json(self):
        return {"alpha": self.alpha, "beta": self.beta}

    @classmethod
    def from_json(cls, obj):
        return make_params(obj["alpha"], obj["beta"])


def make_params(alpha: float, beta: float) -> AlgebraParams:
    """Validate ``(alpha, beta)`` and precompute the derived constants.

    Raises :class:`EllipticityViolation` unless ``4*alpha - beta**2 > 0``.
    """
    return AlgebraParams(alpha, beta)


def mul(z1: ElComplex, z2: ElComplex, p: AlgebraParams) -> ElComplex:
    x1, y1, x2, y2 = z1.re, z1.im, z2.re, z2.im
    return ElComplex(
        x1 * x2 - p.alpha * y1 * y2,
        x1 * y2 + y1 * x2 - p.beta * y1 * y2,
    )


def inv(z: ElComplex, p: AlgebraParams) -> ElComplex:
    """Multiplicative inverse ``(x - beta*y - i*y) / (x**2 - beta*x*y + alpha*y**2)``.

    Only an exact zero is rejected; tiny inputs give huge outputs.
    """
    x, y = z.re, z.im
    zero = np.logical_and(np.equal(x, 0), np.equal(y, 0))
    if np.any(zero):
        raise DivisionByZero("inverse of 0 in the algebra")
    # rescale so the quadratic form cannot underflow or overflow
    s = np.maximum(np.abs(x), np.abs(y))
    xs, ys = x / s, y / s
    den = (xs * xs - p.beta * xs * ys + p.alpha * ys * ys) * s
    return ElComplex((xs - p.beta * ys) / den, -ys / den)


def conj(z: ElComplex) -> ElComplex:
    return ElComplex(z.re, -z.im)


def tilde(z: ElComplex) -> ElComplex:
    """``z~ = y - i x``; a quarter turn of the coordinate plane."""
    return ElComplex(z.im, -z.re)


def untilde(w: ElComplex) -> ElComplex:
    """Inverse of :func:`tilde`: ``(a, b) -> (-b, a)``."""
    return ElComplex(-w.im, w.re)


def _algebraic_conj(z, p):
    # z-bar - beta*Im(z): the conjugate that swaps the two roots of X^2 + beta X + alpha
    return ElComplex(z.re - p.beta * z.im, -z.im)


def inner(z: ElComplex, w: ElComplex, p: AlgebraParams):
    """Real inner product ``<z, w>`` whose square root is :func:`norm`.

    The defining expression is algebra-valued; its imaginary part cancels
    identically and is checked to vanish up to roundoff.
    """
    a = mul(w, _algebraic_conj(z, p), p)
    b = mul(_algebraic_conj(w, p), z, p)
    re = 0.5 * (a.re + b.re)
    im = 0.5 * (a.im + b.im)
    scale = (1.0 + abs(p.alpha) + abs(p.beta)) * (
        np.hypot(z.re, z.im) * np.hypot(w.re, w.im) + 1e-300
    )
    if np.any(np.abs(im) > 1e-12 * scale):
        raise ArithmeticError("inner product has a non-vanishing imaginary part")
    return re


def norm(z: ElComplex, p: AlgebraParams):
    x, y = z.re, z.im
    s = np.maximum(np.abs(x), np.abs(y))
    safe = np.where(s > 0, s, 1.0)
    xs, ys = x / safe, y / safe
    q = xs * xs - p.beta * xs * ys + p.alpha * ys * ys
    return s * np.sqrt(np.maximum(q, 0.0))


def equivalence_ratio_bounds(p: AlgebraParams) -> tuple[float, float]:
    """``(k1, k2)`` bracketing ``|z| / norm(z, p)`` over all nonzero ``z``.

    Both bounds are attained along the eigenvectors of the quadratic form.
    """
    return p.k1, p.k2


def eigen_directions(p: AlgebraParams) -> tuple[ElComplex, ElComplex]:
    """Unit vectors attaining ``k1`` and ``k2`` respectively."""
    q = np.array([[1.0, -0.5 * p.beta], [-0.5 * p.beta, p.alpha]])
    _, vecs = np.linalg.eigh(q)
    lo, hi = vecs[:, 0], vecs[:, 1]
    return ElComplex(float(hi[0]), float(hi[1])), ElComplex(float(lo[0]), float(lo[1]))
