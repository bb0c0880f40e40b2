"""L-polynomial algebra: reconstruction, bounds, and the naive zeta oracle.

An L-polynomial L(T) = sum a_j T^j of a genus-g curve mod p has degree
2g, integer coefficients, a_0 = 1, and the functional equation
a_{2g-j} = p^(g-j) a_j.  L(1) is the Jacobian order and L(-1) the order
of the twist's Jacobian.  Everything here is exact integer arithmetic;
interval endpoints involving sqrt(p) are rounded through isqrt, never
floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt

import numpy as np


class NonIntegralCoefficient(ValueError):
    """Inputs force a non-integer coefficient (inconsistent data)."""


class OutOfWeilBounds(ValueError):
    """A reconstructed coefficient violates |a_j| <= C(2g,j) p^(j/2)."""


class TooLarge(ValueError):
    """Exhaustive enumeration guard exceeded."""


# Exhaustive zeta enumeration cap on p^g.  Chosen so the genus-3 oracle
# reaches p = 300, where the generic-group strategy takes over.
NAIVE_ENUM_LIMIT = 1 << 25


@dataclass(frozen=True)
class LPolynomial:
    """Coefficients a_0..a_2g of the local factor at p for a genus-g curve."""

    g: int
    p: int
    a: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != 2 * self.g + 1:
            raise ValueError("coefficient count must be 2g + 1")
        if self.a[0] != 1:
            raise ValueError("a_0 must be 1")
        for j in range(self.g):
            if self.a[2 * self.g - j] != self.p ** (self.g - j) * self.a[j]:
                raise ValueError("functional equation violated")

    def value(self, t: int) -> int:
        acc = 0
        for c in reversed(self.a):
            acc = acc * t + c
        return acc

    @property
    def order(self) -> int:
        """L(1) = #J(C/F_p)."""
        return self.value(1)

    @property
    def twist_order(self) -> int:
        """L(-1) = #J of the quadratic twist."""
        return self.value(-1)

    def normalized(self, j: int) -> float:
        """a_j / p^(j/2)."""
        return self.a[j] / self.p ** (j / 2)

    def check_bounds(self) -> None:
        """Raise OutOfWeilBounds unless |a_j| <= C(2g,j) p^(j/2) for all j."""
        for j in range(1, 2 * self.g + 1):
            if self.a[j] ** 2 > comb(2 * self.g, j) ** 2 * self.p**j:
                raise OutOfWeilBounds(f"a_{j} = {self.a[j]} out of range for p = {self.p}")


def _fill(g: int, p: int, low: list[int]) -> LPolynomial:
    """Complete a_0..a_g to a full coefficient tuple via the functional eq."""
    a = list(low)
    for j in range(g - 1, -1, -1):
        a.append(p ** (g - j) * a[j])
    return LPolynomial(g=g, p=p, a=tuple(a))


def from_point_counts(g: int, p: int, counts: list[int]) -> LPolynomial:
    """L-polynomial from the point counts N_1..N_g over F_p..F_{p^g}.

    Newton's identities convert the power sums s_k = 1 + p^k - N_k of the
    inverse roots into elementary symmetric functions e_k = (-1)^k a_k;
    every division by k must be exact.
    """
    if len(counts) != g:
        raise ValueError(f"need exactly {g} point counts")
    s = [0] * (g + 1)
    for k in range(1, g + 1):
        s[k] = 1 + p**k - counts[k - 1]
    e = [1] + [0] * g
    for k in range(1, g + 1):
        acc = 0
        sign = 1
        for i in range(1, k + 1):
            acc += sign * e[k - i] * s[i]
            sign = -sign
        if acc % k:
            raise NonIntegralCoefficient(f"e_{k} is not integral from counts {counts}")
        e[k] = acc // k
    low = [(-1) ** k * e[k] for k in range(g + 1)]
    lp = _fill(g, p, low)
    lp.check_bounds()
    return lp


def from_orders(
    g: int,
    p: int,
    a1: int | None = None,
    L1: int | None = None,
    Lm1: int | None = None,
) -> LPolynomial:
    """L-polynomial from group orders L(1), L(-1), and optionally a_1.

    Sufficient data: genus 1 needs L1; genus 2 needs (a1, L1) or
    (L1, Lm1); genus 3 needs (a1, L1, Lm1).  All divisions must be exact
    or NonIntegralCoefficient is raised.
    """
    if L1 is None:
        raise ValueError("L1 is always required")
    if g == 1:
        low = [1, L1 - p - 1]
    elif g == 2:
        if a1 is not None:
            a2 = L1 - p**2 - 1 - a1 * (p + 1)
        elif Lm1 is not None:
            num = L1 - Lm1
            if num % (2 * (p + 1)):
                raise NonIntegralCoefficient("L(1) - L(-1) not divisible by 2(p+1)")
            a1 = num // (2 * (p + 1))
            if (L1 + Lm1) % 2:
                raise NonIntegralCoefficient("L(1) + L(-1) is odd")
            a2 = (L1 + Lm1) // 2 - p**2 - 1
        else:
            raise ValueError("genus 2 needs a1 or Lm1 besides L1")
        low = [1, a1, a2]
    elif g == 3:
        if a1 is None or Lm1 is None:
            raise ValueError("genus 3 needs a1, L1 and Lm1")
        tot = L1 + Lm1
        if tot % 2:
            raise NonIntegralCoefficient("L(1) + L(-1) is odd")
        num = tot // 2 - p**3 - 1
        if num % (p + 1):
            raise NonIntegralCoefficient("a_2 reconstruction not divisible by p+1")
        a2 = num // (p + 1)
        diff = L1 - Lm1
        if diff % 2:
            raise NonIntegralCoefficient("L(1) - L(-1) is odd")
        a3 = diff // 2 - a1 * (p**2 + 1)
        low = [1, a1, a2, a3]
    else:
        raise ValueError("genus must be 1, 2 or 3")
    lp = _fill(g, p, low)
    lp.check_bounds()
    return lp


@dataclass(frozen=True)
class WeilInterval:
    """[ceil((sqrt(q)-1)^2g), floor((sqrt(q)+1)^2g)], containing #J."""

    q: int
    g: int
    lo: int
    hi: int


def weil_interval(q: int, g: int) -> WeilInterval:
    """Exact integer endpoints of the Weil interval for #J(C/F_q)."""
    if q < 2:
        raise ValueError("q must be at least 2")
    # (sqrt(q) +- 1)^(2g) = A +- B sqrt(q) with A, B integers.
    A = sum(comb(2 * g, 2 * t) * q**t for t in range(g + 1))
    B = sum(comb(2 * g, 2 * t + 1) * q**t for t in range(g))
    s = isqrt(B * B * q)  # floor(B sqrt(q))
    return WeilInterval(q=q, g=g, lo=A - s, hi=A + s)


def a2_bounds(a1_hat: float, g: int) -> tuple[float, float]:
    """Sharp interval for the normalized a_2 given the normalized a_1.

    Upper bound g + ((g-1)/2g) a1^2; lower bound -g + 2 + (a1^2 - d^2)/2
    where d is the distance from a1 to the nearest integer congruent to
    0 mod 4 (g odd) or 2 mod 4 (g even).  The interval has length <= 2g.
    """
    if abs(a1_hat) > 2 * g + 1e-9:
        raise ValueError("normalized a_1 out of [-2g, 2g]")
    hi = g + (g - 1) / (2 * g) * a1_hat * a1_hat
    c = _nearest_allowed(a1_hat, g)
    delta = a1_hat - c
    lo = -g + 2 + (a1_hat * a1_hat - delta * delta) / 2
    return lo, hi


def _nearest_allowed(x: float, g: int) -> float:
    if g % 2 == 1:
        return 4.0 * round(x / 4.0)
    return 2.0 + 4.0 * round((x - 2.0) / 4.0)


def _ceil_sqrt_term(k: int, p: int) -> int:
    """ceil(k * sqrt(p)) for integer k of either sign (p not a square)."""
    v = k * k * p
    r = isqrt(v)
    if k >= 0:
        return r if r * r == v else r + 1
    return -r


def _floor_sqrt_term(k: int, p: int) -> int:
    """floor(k * sqrt(p)) for integer k of either sign."""
    v = k * k * p
    r = isqrt(v)
    if k >= 0:
        return r
    return -r if r * r == v else -(r + 1)


def conditional_a2_interval(a1: int, p: int, g: int) -> tuple[int, int]:
    """Exact integer bounds on a_2 given a_1, scaled from a2_bounds by p.

    The upper endpoint is rational and floors exactly; the lower endpoint
    carries a c*a1*sqrt(p) term rounded up through isqrt.  Rounding is
    inward, which is sound because the normalized bounds are theorems.
    """
    if g not in (2, 3):
        raise ValueError("conditional a_2 interval needs genus 2 or 3")
    hi = (2 * g * g * p + (g - 1) * a1 * a1) // (2 * g)
    c = _nearest_allowed_int(a1, p, g)
    # lo*p = (2-g)p - c^2 p/2 + c*a1*sqrt(p), with c even so c^2/2 integral
    base = (2 - g) * p - (c * c // 2) * p
    lo = base + _ceil_sqrt_term(c * a1, p)
    return lo, hi


def _nearest_allowed_int(a1: int, p: int, g: int) -> int:
    """Nearest allowed integer to a1/sqrt(p) (0 mod 4 or 2 mod 4), exactly."""
    s = 1 if a1 >= 0 else -1
    m = a1 * a1  # compare m = a1^2 against boundary^2 * p
    if g % 2 == 1:
        # boundaries at 2, 6 between candidates 0, 4, 8
        if m <= 4 * p:
            return 0
        if m <= 36 * p:
            return 4 * s
        return 8 * s
    # g even: candidates 2 mod 4; boundaries at 0, 4
    if m <= 16 * p:
        return 2 * s
    return 6 * s


def prop2_holds(a1: int, a2: int, p: int, g: int) -> bool:
    """Exact containment check of (a1, a2) in the conditional interval."""
    lo, hi = conditional_a2_interval(a1, p, g)
    return lo <= a2 <= hi


# ---------------------------------------------------------------------------
# Naive zeta oracle: exhaustive counting over F_p, F_{p^2}, F_{p^3}.
# ---------------------------------------------------------------------------


def naive_zeta(f: list[int] | tuple[int, ...], p: int, g: int) -> LPolynomial:
    """L-polynomial by brute-force point counts over F_{p^k}, k = 1..g.

    Counts points of y^2 = f(x) by evaluating f at every element of an
    explicitly constructed extension field and testing squares against a
    table built by squaring every element.  Guarded by p^g <= 2^25.
    """
    if p**g > NAIVE_ENUM_LIMIT:
        raise TooLarge(f"p^g = {p**g} exceeds enumeration limit {NAIVE_ENUM_LIMIT}")
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    counts = [_count_base(f, p)]
    for k in range(2, g + 1):
        counts.append(_count_ext(f, p, k))
    return from_point_counts(g, p, counts)


def _count_base(f, p: int) -> int:
    x = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in reversed(list(f)):
        vals = (vals * x + c % p) % p
    sq = np.zeros(p, dtype=bool)
    sq[(x[1:] * x[1:]) % p] = True
    return int(1 + np.count_nonzero(vals == 0) + 2 * np.count_nonzero(sq[vals]))


def _find_irreducible(p: int, k: int) -> np.ndarray:
    """Smallest monic irreducible of degree k by ascending coefficient code.

    The candidate with code e has constant term e % p, next coefficient
    (e // p) % p, and so on.  For k in {2, 3} irreducibility is exactly
    "no roots in F_p".
    """
    assert k in (2, 3)
    x = np.arange(p, dtype=np.int64)
    e = 1  # constant term must be nonzero for irreducibility
    while True:
        c = [(e // p**i) % p for i in range(k)]
        vals = np.full(p, 1, dtype=np.int64)
        for ci in reversed(c):
            vals = (vals * x + ci) % p
        if not np.any(vals == 0):
            return np.array(c, dtype=np.int64)
        e += 1


def _count_ext(f, p: int, k: int) -> int:
    """Points of y^2 = f over F_{p^k} via polynomial-basis enumeration."""
    q = p**k
    m = _find_irreducible(p, k)
    # reduction rows: t^(k+i) mod m(t) for i = 0..k-2
    red = np.zeros((k - 1, k), dtype=np.int64)
    cur = (-m) % p  # t^k mod m
    red[0] = cur
    for i in range(1, k - 1):
        nxt = np.zeros(k + 1, dtype=np.int64)
        nxt[1:] = cur
        nxt[:k] = (nxt[:k] + nxt[k] * red[0]) % p
        cur = nxt[:k] % p
        red[i] = cur

    def ext_mul(a, b):
        # a, b: (k, n) coefficient arrays; schoolbook product then reduce
        n = a.shape[1]
        prod = np.zeros((2 * k - 1, n), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                prod[i + j] += a[i] * b[j]
            prod %= p
        out = prod[:k].copy()
        for i in range(k - 1):
            out += red[i][:, None] * prod[k + i][None, :]
        return out % p

    fc = [c % p for c in f]
    chunk = 1 << 18
    sq_table = np.zeros(q, dtype=bool)
    pows = p ** np.arange(k, dtype=np.int64)
    for lo in range(0, q, chunk):
        hi = min(lo + chunk, q)
        idx = np.arange(lo, hi, dtype=np.int64)
        z = (idx[None, :] // pows[:, None]) % p
        z2 = ext_mul(z, z)
        sq_table[(z2 * pows[:, None]).sum(axis=0)] = True
    total = 1
    for lo in range(0, q, chunk):
        hi = min(lo + chunk, q)
        idx = np.arange(lo, hi, dtype=np.int64)
        z = (idx[None, :] // pows[:, None]) % p
        acc = np.zeros((k, hi - lo), dtype=np.int64)
        for c in reversed(fc):
            acc = ext_mul(acc, z)
            acc[0] = (acc[0] + c) % p
        nonzero = acc.any(axis=0)
        total += int(np.count_nonzero(~nonzero))
        vals_idx = (acc * pows[:, None]).sum(axis=0)
        total += 2 * int(np.count_nonzero(sq_table[vals_idx] & nonzero))
    return total
