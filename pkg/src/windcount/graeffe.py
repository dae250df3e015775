"""Dandelin-Graeffe root squaring for amplifying disc isolation.

One step maps ``p`` to ``(-1)**d * p(sqrt z) * p(-sqrt z)``, whose roots are
the squares of the roots of ``p``. If the unit disc is ``theta``-isolated for
``p`` (no roots in the annulus ``1/theta < |z| < theta``) it is
``theta**(2**s)``-isolated after ``s`` steps.

This needs coefficients, so it applies to :class:`Polynomial` only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .polynomial import DegreeError, Polynomial, affine_substitute

# Iterates square coefficient magnitudes; refuse to go past this spread.
GROWTH_LIMIT = 1e120


class GraeffeOverflowError(OverflowError):
    pass


def graeffe_step(p: Polynomial) -> Polynomial:
    """Root-squaring step via the even/odd split ``p(z) = E(z^2) + z O(z^2)``:
    the result is ``(-1)**d * (E(z)**2 - z * O(z)**2)``."""
    if p.degree < 1:
        raise DegreeError("graeffe_step needs degree >= 1")
    d = p.degree
    even = p.coeffs[0::2]
    odd = p.coeffs[1::2]
    out = np.zeros(d + 1, dtype=np.complex128)
    e2 = np.convolve(even, even)
    out[: e2.size] += e2
    if odd.size:
        o2 = np.convolve(odd, odd)
        out[1: o2.size + 1] -= o2
    if d % 2:
        out = -out
    return Polynomial(out)


def coefficient_spread(p: Polynomial) -> float:
    """``max |p_k| / |p_d|``."""
    return float(np.abs(p.coeffs).max() / abs(p.coeffs[-1]))


def _normalized(p: Polynomial) -> Polynomial:
    return Polynomial(p.coeffs / np.abs(p.coeffs).max())


def graeffe_sequence(p: Polynomial, s: int, normalize: bool = True) -> list[Polynomial]:
    """``[p_0, p_1, ..., p_s]`` with ``p_0 = p``.

    With ``normalize`` every iterate after ``p_0`` is divided by its largest
    coefficient magnitude, which leaves roots unchanged.
    """
    if s < 0:
        raise ValueError("iteration count must be non-negative")
    seq = [p]
    for j in range(s):
        cur = seq[-1]
        if coefficient_spread(cur) > GROWTH_LIMIT:
            raise GraeffeOverflowError(
                f"iterate {j} has coefficient spread {coefficient_spread(cur):.3g} > {GROWTH_LIMIT:g}")
        nxt = graeffe_step(cur)
        seq.append(_normalized(nxt) if normalize else nxt)
    return seq


@dataclass
class AmplificationRecord:
    """How the returned iterate relates to the original disc."""

    center: complex
    radius: float
    iterations: int
    spreads: list[float] = field(default_factory=list)

    def isolation_after(self, theta: float) -> float:
        return theta ** (2 ** self.iterations)

    def to_json(self) -> dict:
        return {"center": [self.center.real, self.center.imag], "radius": self.radius,
                "iterations": self.iterations, "spreads": self.spreads}


def amplify_isolation(p: Polynomial, disc_center: complex, disc_radius: float,
                      s: int) -> tuple[Polynomial, AmplificationRecord]:
    """Map ``D(disc_center, disc_radius)`` to the unit disc and apply ``s`` steps.

    The root count of the result in the unit disc equals the count of ``p``
    in the original disc as long as no root of the shifted polynomial sits
    on the unit circle.
    """
    if s < 0:
        raise ValueError("iteration count must be non-negative")
    shifted = affine_substitute(p, complex(disc_center), float(disc_radius))
    seq = graeffe_sequence(shifted, s)
    rec = AmplificationRecord(complex(disc_center), float(disc_radius), s,
                              [coefficient_spread(q) for q in seq])
    return seq[-1], rec
