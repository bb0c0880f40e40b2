"""Fixed-width modular arithmetic for odd primes in Montgomery form.

Residues are plain ints in [0, p) holding the Montgomery image x*R mod p
with R = 2**64; ``PrimeField`` carries the constants and the operations.
Products of two residues stay below 2**128, i.e. double-word arithmetic,
which bounds the admissible moduli at p < 2**62 (far above the 2**40
design ceiling).  All operations are pure; a field object is immutable
and safe to share between threads or processes.
"""

from __future__ import annotations

from math import isqrt

from .sieve import is_prime

WORD_BITS = 64
_R = 1 << WORD_BITS
_MASK = _R - 1


class ZeroOperand(ValueError):
    """An input that must be invertible was divisible by p."""

    def __init__(self, index: int):
        super().__init__(f"operand at index {index} is zero mod p")
        self.index = index


class PrimeField:
    """Arithmetic mod an odd prime p via 64-bit Montgomery representation."""

    __slots__ = ("p", "r_mod_p", "r2", "n_prime", "one", "shape")

    def __init__(self, p: int):
        if p < 3 or p % 2 == 0:
            raise ValueError(f"modulus must be an odd prime, got {p}")
        if p >= 1 << (WORD_BITS - 2):
            raise ValueError(f"modulus {p} too large for double-word products")
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.r_mod_p = _R % p
        self.r2 = self.r_mod_p * self.r_mod_p % p
        # n_prime = -p^-1 mod R, the REDC folding constant.
        self.n_prime = (-pow(p, -1, _R)) & _MASK
        self.one = self.r_mod_p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def _redc(self, t: int) -> int:
        """Montgomery reduction: t * R^-1 mod p, for 0 <= t < p*R."""
        m = ((t & _MASK) * self.n_prime) & _MASK
        u = (t + m * self.p) >> WORD_BITS
        return u - self.p if u >= self.p else u

    def to_mont(self, x: int) -> int:
        return self._redc((x % self.p) * self.r2)

    def from_mont(self, a: int) -> int:
        return self._redc(a)

    def mul(self, a: int, b: int) -> int:
        """Montgomery product of two residues."""
        return self._redc(a * b)

    def add(self, a: int, b: int) -> int:
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a: int, b: int) -> int:
        d = a - b
        return d + self.p if d < 0 else d

    def neg(self, a: int) -> int:
        return self.p - a if a else 0

    def inv(self, a: int) -> int:
        """Inverse of a residue (extended-gcd based, not Fermat)."""
        if a == 0:
            raise ZeroOperand(0)
        # pow(x, -1, p) is CPython's extended-Euclid inverse.  Montgomery
        # form is preserved by inverting the canonical value and mapping
        # back, at the cost of two reductions.
        return self.to_mont(pow(self.from_mont(a), -1, self.p))

    def exp(self, a: int, n: int) -> int:
        """a**n for a residue a and integer n >= 0; n = 0 gives one."""
        if n < 0:
            raise ValueError("negative exponent")
        acc = self.one
        base = a
        while n:
            if n & 1:
                acc = self._redc(acc * base)
            base = self._redc(base * base)
            n >>= 1
        return acc

    def simultaneous_invert(self, xs: list[int]) -> list[int]:
        """Invert every residue using one inversion and 3n-3 products.

        Prefix products replace the n inversions: c_i = x_0 * ... * x_i
        costs n-1 products, the single inversion is applied to c_{n-1},
        and walking back recovers each inverse with two products per
        element.  Raises ZeroOperand (with the offending index) if any
        input is divisible by p.
        """
        n = len(xs)
        if n == 0:
            return []
        for i, x in enumerate(xs):
            if x == 0:
                raise ZeroOperand(i)
        prefix = [xs[0]] * n
        for i in range(1, n):
            prefix[i] = self.mul(prefix[i - 1], xs[i])
        acc = self.inv(prefix[n - 1])
        out = [0] * n
        for i in range(n - 1, 0, -1):
            out[i] = self.mul(acc, prefix[i - 1])
            acc = self.mul(acc, xs[i])
        out[0] = acc
        return out


def mont_mul(a: int, b: int, field: PrimeField) -> int:
    """Module-level alias for the Montgomery product."""
    return field.mul(a, b)


def mod_exp(a: int, n: int, field: PrimeField) -> int:
    """Module-level alias for residue exponentiation."""
    return field.exp(a, n)


def simultaneous_invert(xs: list[int], field: PrimeField) -> list[int]:
    """Module-level alias for batched inversion."""
    return field.simultaneous_invert(xs)


def batch_invert(xs: list[int], p: int) -> list[int]:
    """Batched inversion of canonical (non-Montgomery) residues mod p.

    Same one-inversion, 3n-3-product scheme as simultaneous_invert; used
    by the scalar group paths that work on canonical values.
    """
    n = len(xs)
    if n == 0:
        return []
    for i, x in enumerate(xs):
        if x % p == 0:
            raise ZeroOperand(i)
    prefix = [xs[0] % p] * n
    for i in range(1, n):
        prefix[i] = prefix[i - 1] * xs[i] % p
    acc = pow(prefix[n - 1], -1, p)
    out = [0] * n
    for i in range(n - 1, 0, -1):
        out[i] = acc * prefix[i - 1] % p
        acc = acc * xs[i] % p
    out[0] = acc
    return out


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, 1} via Jacobi reciprocity."""
    a %= p
    if a == 0:
        return 0
    acc = 1
    n, m = a, p
    while n:
        while n % 2 == 0:
            n //= 2
            if m % 8 in (3, 5):
                acc = -acc
        n, m = m, n
        if n % 4 == 3 and m % 4 == 3:
            acc = -acc
        n %= m
    return acc if m == 1 else 0


def mod_sqrt(a: int, p: int) -> int:
    """A square root of a mod p (Tonelli-Shanks); raises if a is not a QR."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise ValueError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Write p-1 = q * 2^s with q odd.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def isqrt_ceil(n: int) -> int:
    """Smallest integer >= sqrt(n) for n >= 0."""
    r = isqrt(n)
    return r if r * r == n else r + 1
