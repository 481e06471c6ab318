"""Root-of-unity context and quantum-scalar arithmetic.

Everything in this package is built over a fixed integer order ``r >= 2``
with ``r`` not divisible by 4.  The derived data are

* ``q = exp(i*pi/r)``, a primitive 2r-th root of unity,
* ``rprime``: ``r`` when r is odd, ``r/2`` when r is even,
* ``s``: the element of {1, 2, 3} congruent to r mod 4,

together with the usual quantum-number notation

* ``{x} = q**x - q**(-x) = 2i sin(pi*x/r)``,
* ``[x] = {x} / {1}``.

Powers ``q**x`` are defined for arbitrary complex ``x`` through the
single-valued exponential ``exp(i*pi*x/r)``, so no branch cuts appear
anywhere downstream.

Scalars are plain Python complex numbers; :func:`approx_equal` implements the
package-wide comparison ``|a - b| <= tol * max(1, |a|, |b|)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["RootParams", "approx_equal"]


def approx_equal(a: complex, b: complex, tol: float = 1e-9) -> bool:
    """Relative-absolute mixed comparison |a - b| <= tol * max(1, |a|, |b|)."""
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class RootParams:
    """The root-of-unity context: order, derived constants, tolerances.

    Parameters
    ----------
    r : int
        Order of the root, ``r >= 2`` and ``r % 4 != 0``.
    tol : float
        Comparison tolerance for complex equality checks.
    epsilon_int : float
        Tolerance for "is this number an integer" tests, which gate the
        domain Ċ = (ℂ∖ℤ) ∪ rℤ of the modified dimension.
    """

    r: int
    tol: float = 1e-9
    epsilon_int: float = 1e-9

    def __post_init__(self):
        if not isinstance(self.r, (int, np.integer)) or isinstance(self.r, bool):
            raise DomainError(f"root order must be an integer, got {self.r!r}")
        if self.r < 2 or self.r % 4 == 0:
            raise DomainError(
                f"root order must satisfy r >= 2 and r != 0 mod 4, got r={self.r}"
            )

    # ------------------------------------------------------------------
    # derived integers and q itself
    # ------------------------------------------------------------------

    @property
    def rprime(self) -> int:
        """r' = r for odd r and r/2 for even r."""
        return self.r if self.r % 2 else self.r // 2

    @property
    def s(self) -> int:
        """The element of {1, 2, 3} congruent to r modulo 4."""
        return self.r % 4

    @property
    def q(self) -> complex:
        """q = exp(i*pi/r)."""
        return self.q_pow(1)

    # ------------------------------------------------------------------
    # integrality testing
    # ------------------------------------------------------------------

    def nearest_int(self, x: complex) -> int:
        """The integer closest to Re(x)."""
        return int(round(complex(x).real))

    def is_near_int(self, x: complex) -> bool:
        """True when x lies within epsilon_int of an integer (in ℂ)."""
        z = complex(x)
        return abs(z - round(z.real)) <= self.epsilon_int

    def is_congruent_mod2(self, x: complex, y: complex) -> bool:
        """True when x ≡ y modulo 2ℤ within epsilon_int."""
        return self.is_near_int((complex(x) - complex(y)) / 2.0)

    # ------------------------------------------------------------------
    # quantum numbers
    # ------------------------------------------------------------------

    def q_pow(self, x: complex) -> complex:
        """q**x = exp(i*pi*x/r) for arbitrary complex x."""
        return cmath.exp(1j * cmath.pi * complex(x) / self.r)

    def q_num(self, x: complex) -> complex:
        """{x} = q**x - q**(-x) = 2i sin(pi*x/r)."""
        return self.q_pow(x) - self.q_pow(-x)

    def bracket(self, x: complex) -> complex:
        """[x] = {x}/{1}."""
        return self.q_num(x) / self.q_num(1)

    def q_num_factorial(self, n: int) -> complex:
        """{n}! = {n}{n-1}···{1} (empty product 1 for n = 0)."""
        out: complex = 1.0
        for k in range(1, n + 1):
            out *= self.q_num(k)
        return out

    # ------------------------------------------------------------------
    # modified dimension
    # ------------------------------------------------------------------

    def mdim(self, alpha: complex) -> complex:
        """Modified dimension d(α) = (−1)**(r−1) · r · {α}/{rα}.

        Defined on Ċ = (ℂ∖ℤ) ∪ rℤ.  At α = r·m the singularity is removable
        and the returned value is the limit (−1)**((r−1)(1+m)).  Arguments
        within ``epsilon_int`` of ℤ∖rℤ raise :class:`DomainError`, since
        {rα} vanishes there while {α} does not.
        """
        if self.is_near_int(alpha):
            n = self.nearest_int(alpha)
            m, rem = divmod(n, self.r)
            if rem != 0:
                raise DomainError(
                    f"modified dimension undefined at alpha={alpha!r}: "
                    f"within {self.epsilon_int} of the excluded integer {n}"
                )
            return complex((-1) ** ((self.r - 1) * (1 + m)))
        sign = (-1) ** (self.r - 1)
        return sign * self.r * self.q_num(alpha) / self.q_num(self.r * alpha)

    def is_projective_color(self, alpha: complex) -> bool:
        """True when α ∈ Ċ, i.e. V_α exists and is projective (generic or rℤ)."""
        if not self.is_near_int(alpha):
            return True
        return self.nearest_int(alpha) % self.r == 0

    # ------------------------------------------------------------------
    # global normalization constants
    # ------------------------------------------------------------------

    @property
    def lam(self) -> float:
        """λ = √r' / r²."""
        return math.sqrt(self.rprime) / self.r**2

    @property
    def eta(self) -> float:
        """η = 1 / (r √r')."""
        return 1.0 / (self.r * math.sqrt(self.rprime))

    @property
    def delta(self) -> complex:
        """δ = q**(−3/2) · exp(−i(s+1)π/4), satisfying δ = λΔ₊ = (λΔ₋)⁻¹."""
        return self.q_pow(-1.5) * cmath.exp(-1j * (self.s + 1) * cmath.pi / 4)

    @property
    def delta_plus(self) -> complex:
        """Δ₊ = δ/λ, the +1-framed Kirby-colored meridian constant."""
        return self.delta / self.lam

    @property
    def delta_minus(self) -> complex:
        """Δ₋ = 1/(δλ), the −1-framed Kirby-colored meridian constant."""
        return 1.0 / (self.delta * self.lam)

    def constants(self) -> tuple[float, float, complex, complex, complex]:
        """The normalization tuple (λ, η, δ, Δ₊, Δ₋)."""
        return (self.lam, self.eta, self.delta, self.delta_plus, self.delta_minus)

    # ------------------------------------------------------------------
    # Kirby index set
    # ------------------------------------------------------------------

    def h_r_set(self) -> list[int]:
        """H_r = {1−r, 3−r, …, r−1}: the r integers stepping by 2."""
        return list(range(1 - self.r, self.r, 2))

    def close(self, a: complex, b: complex) -> bool:
        """Package-wide scalar comparison at this context's tolerance."""
        return approx_equal(a, b, self.tol)
