"""Polynomial representation and evaluation paths.

Two kinds of evaluators are supported: :class:`Polynomial`, which owns a
coefficient vector (lowest degree first), and :class:`BlackBoxEvaluator`,
which wraps an opaque callable together with a caller-asserted degree bound.
The winding-number counter only ever calls an evaluator and reads its
``degree``, so both kinds plug into it interchangeably.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np


class DegreeError(ValueError):
    """Raised when a polynomial has the wrong degree for an operation."""


class FFTSizeError(ValueError):
    """Raised when the transform length cannot hold the coefficient vector."""


def _as_coefficients(coeffs) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128)).copy()
    if arr.ndim != 1:
        raise ValueError("coefficients must be a flat sequence")
    nonzero = np.flatnonzero(arr)
    if nonzero.size == 0:
        # the zero polynomial; kept as a single zero so degree() is defined
        return np.zeros(1, dtype=np.complex128)
    return arr[: nonzero[-1] + 1]


@dataclass(frozen=True, eq=False)
class Polynomial:
    """A univariate complex polynomial ``sum_k coeffs[k] * z**k``.

    Trailing zero coefficients are stripped at construction so the leading
    coefficient is nonzero (except for the zero polynomial, which is only
    produced as the derivative of a constant and flagged by ``is_zero``).
    """

    coeffs: np.ndarray

    def __post_init__(self):
        arr = _as_coefficients(self.coeffs)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def from_roots(cls, roots: Sequence[complex], leading: complex = 1.0) -> "Polynomial":
        """Build ``leading * prod (z - root)``."""
        coeffs = np.array([leading], dtype=np.complex128)
        for root in roots:
            shifted = np.zeros(coeffs.size + 1, dtype=np.complex128)
            shifted[1:] = coeffs
            shifted[:-1] -= root * coeffs
            coeffs = shifted
        return cls(coeffs)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    def __call__(self, z):
        return evaluate(self, z)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        terms = ", ".join(f"{c:.6g}" for c in self.coeffs)
        return f"Polynomial([{terms}])"

    def scaled(self, alpha: complex) -> "Polynomial":
        return Polynomial(self.coeffs * alpha)


@dataclass(frozen=True)
class BlackBoxEvaluator:
    """An opaque polynomial known only through evaluation.

    ``func`` maps a complex number to a complex number. When ``vectorized``
    is true it is also assumed to accept and return numpy arrays, which
    avoids a Python-level loop over sample points. ``degree`` is an upper
    bound used only to size the sampling plan.
    """

    func: Callable
    degree: int
    vectorized: bool = False
    name: str = field(default="black-box", compare=False)

    def __post_init__(self):
        if self.degree < 0:
            raise DegreeError("degree bound must be non-negative")

    def __call__(self, z):
        if np.isscalar(z):
            return complex(self.func(complex(z)))
        z = np.asarray(z, dtype=np.complex128)
        if self.vectorized:
            return np.asarray(self.func(z), dtype=np.complex128)
        flat = np.fromiter((self.func(complex(w)) for w in z.ravel()),
                           dtype=np.complex128, count=z.size)
        return flat.reshape(z.shape)


def evaluate(p: Polynomial, z):
    """Horner evaluation of ``p`` at a scalar or an array of points."""
    c = p.coeffs
    if np.isscalar(z):
        acc = complex(c[-1])
        z = complex(z)
        for k in range(c.size - 2, -1, -1):
            acc = acc * z + c[k]
        return acc
    z = np.asarray(z, dtype=np.complex128)
    acc = np.full(z.shape, c[-1], dtype=np.complex128)
    for k in range(c.size - 2, -1, -1):
        acc *= z
        acc += c[k]
    return acc


def derivative(p: Polynomial) -> Polynomial:
    """Formal derivative. A constant yields the zero polynomial (``is_zero``)."""
    if p.degree == 0:
        return Polynomial([0.0])
    k = np.arange(1, p.degree + 1)
    return Polynomial(p.coeffs[1:] * k)


def affine_substitute(p: Polynomial, center: complex, radius: float) -> Polynomial:
    """Return ``q`` with ``q(w) = p(center + radius * w)``.

    The roots of ``q`` are ``(z_j - center) / radius``, so counting roots
    of ``p`` in the disc ``D(center, radius)`` becomes counting roots of
    ``q`` in the unit disc.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    # Taylor shift by repeated synthetic division, then scale powers.
    shifted = p.coeffs.copy()
    n = shifted.size
    if center != 0:
        for i in range(n - 1):
            for k in range(n - 2, i - 1, -1):
                shifted[k] += center * shifted[k + 1]
    if radius != 1:
        shifted = shifted * radius ** np.arange(n)
    return Polynomial(shifted)


def _bit_reverse_permutation(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def fft_eval_unit_circle(p: Polynomial, h: int) -> np.ndarray:
    """Values of ``p`` at the ``2**h`` roots of unity ``exp(2j*pi*k/2**h)``.

    Iterative radix-2 transform with a bit-reversal permutation of the
    zero-padded coefficient vector. Entry ``k`` is ``p(exp(2j*pi*k/n))``.
    """
    if h < 0:
        raise FFTSizeError("h must be non-negative")
    n = 1 << h
    if n < p.degree + 1:
        raise FFTSizeError(f"2**{h} = {n} points cannot hold degree {p.degree}")
    a = np.zeros(n, dtype=np.complex128)
    a[: p.coeffs.size] = p.coeffs
    a = a[_bit_reverse_permutation(n)]
    m = 2
    while m <= n:
        half = m // 2
        twiddle = np.exp(2j * np.pi * np.arange(half) / m)
        blocks = a.reshape(n // m, m)
        even = blocks[:, :half]
        odd = blocks[:, half:] * twiddle
        a = np.concatenate((even + odd, even - odd), axis=1).ravel()
        m *= 2
    return a


def fft_size_for(points: int, degree: int) -> int:
    """Smallest ``h`` with ``2**h >= max(points, degree + 1)``."""
    need = max(points, degree + 1, 1)
    return (need - 1).bit_length()


def coefficient_scale(p: Polynomial, z) -> np.ndarray | float:
    """``sum_k |p_k| |z|^k``, the natural error scale of Horner at ``z``."""
    return evaluate(Polynomial(np.abs(p.coeffs)), np.abs(z)).real
