"""Jacobian group law via the Mumford representation.

A reduced divisor of y^2 = f(x) (f monic, odd degree 2g+1) is a pair of
polynomials (u, v) with u monic, deg v < deg u <= g and u | v^2 - f; the
identity is (1, 0) and the inverse of (u, v) is (u, -v), so inversion is
free.  ``add`` is Cantor composition plus reduction, written for any
genus up to 3.  This scalar path is the reference implementation and the
fallback for inputs the batched kernels decline; the marching workloads
go through ``batched_add`` which delegates to the compiled engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import polyfp
from .modarith import legendre, mod_sqrt


@dataclass(frozen=True)
class MumfordDivisor:
    """Reduced divisor (u, v); coefficients canonical ints, low-to-high."""

    u: tuple[int, ...]
    v: tuple[int, ...]

    @property
    def weight(self) -> int:
        return len(self.u) - 1

    def is_identity(self) -> bool:
        return self.u == (1,)


IDENTITY = MumfordDivisor(u=(1,), v=())


class JacobianContext:
    """Group context for J(C/F_p): curve data plus operation plumbing.

    Immutable except for the group-operation counter ``ops`` (the object
    is owned by one prime's computation).  Satisfies the generic group
    interface used by the search algorithms: identity, add, inverse,
    batched_add, random_element, serialize.
    """

    def __init__(self, f, p: int, batch_engine: bool = True):
        self.p = p
        self.f = tuple(c % p for c in f)
        d = len(self.f) - 1
        if d % 2 == 0 or not 3 <= d <= 7:
            raise ValueError("f must have odd degree 3, 5 or 7")
        if self.f[-1] != 1:
            raise ValueError("f must be monic mod p")
        self.genus = d // 2
        self.identity = IDENTITY
        self.ops = 0
        self._engine = None
        if batch_engine:
            from . import jacobian_batch

            self._engine = jacobian_batch.BatchEngine(self.f, p)

    # -- basic group operations ------------------------------------------

    def add(self, d1: MumfordDivisor, d2: MumfordDivisor) -> MumfordDivisor:
        """Cantor composition and reduction."""
        self.ops += 1
        p, f = self.p, self.f
        if d1.is_identity():
            return d2
        if d2.is_identity():
            return d1
        u1, v1, u2, v2 = d1.u, d1.v, d2.u, d2.v
        d_poly, e1, e2 = polyfp.xgcd(u1, u2, p)
        if d_poly == (1,):
            u = polyfp.mul(u1, u2, p)
            diff = polyfp.sub(v2, v1, p)
            v = polyfp.add(v1, polyfp.mul(polyfp.mul(e1, u1, p), diff, p), p)
            v = polyfp.mod(v, u, p)
        else:
            vsum = polyfp.add(v1, v2, p)
            d_full, c1, c2 = polyfp.xgcd(d_poly, vsum, p)
            s1 = polyfp.mul(c1, e1, p)
            s2 = polyfp.mul(c1, e2, p)
            s3 = c2
            num_u, rem = polyfp.divmod_poly(polyfp.mul(u1, u2, p), polyfp.mul(d_full, d_full, p), p)
            assert not rem, "u1*u2 not divisible by d^2"
            u = num_u
            t = polyfp.add(
                polyfp.add(
                    polyfp.mul(polyfp.mul(s1, u1, p), v2, p),
                    polyfp.mul(polyfp.mul(s2, u2, p), v1, p),
                    p,
                ),
                polyfp.mul(s3, polyfp.add(polyfp.mul(v1, v2, p), f, p), p),
                p,
            )
            q, rem = polyfp.divmod_poly(t, d_full, p)
            assert not rem, "composition numerator not divisible by d"
            v = polyfp.mod(q, u, p) if u != (1,) else ()
        return self._reduce(u, v)

    def _reduce(self, u, v) -> MumfordDivisor:
        p, f, g = self.p, self.f, self.genus
        while len(u) - 1 > g:
            num = polyfp.sub(f, polyfp.mul(v, v, p), p)
            u_next, rem = polyfp.divmod_poly(num, u, p)
            assert not rem, "reduction step not exact"
            u_next = polyfp.monic(u_next, p)
            v = polyfp.mod(polyfp.neg(v, p), u_next, p)
            u = u_next
        return MumfordDivisor(u=polyfp.monic(u, p), v=v)

    def neg(self, d: MumfordDivisor) -> MumfordDivisor:
        return MumfordDivisor(u=d.u, v=polyfp.neg(d.v, self.p))

    def scalar_mul(self, d: MumfordDivisor, n: int) -> MumfordDivisor:
        """n*D by double-and-add; negative n goes through the inverse."""
        if n < 0:
            return self.scalar_mul(self.neg(d), -n)
        acc = IDENTITY
        base = d
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    # -- batched operations ----------------------------------------------

    def batched_add(self, pairs) -> list[MumfordDivisor]:
        """Elementwise sums of (D, D') pairs with shared field inversions.

        Generic-shape lanes run through the compiled engine, which
        performs the per-pair work to each inversion site and serves all
        lanes with one simultaneous inversion there; lanes with
        exceptional shapes (short u, equal u, anomalous degree drops) are
        recomputed by the scalar path.
        """
        if not pairs:
            return []
        self.ops += len(pairs)
        if self._engine is None:
            out = []
            for a, b in pairs:
                self.ops -= 1  # add() will count it
                out.append(self.add(a, b))
            return out
        return self._engine.add_pairs(pairs, self)

    # -- sampling and enumeration ----------------------------------------

    def random_point(self, rng) -> tuple[int, int] | None:
        """Uniform random point of the curve; None encodes infinity."""
        p, f = self.p, self.f
        while True:
            r = int(rng.integers(0, p + 1))
            if r == p:
                if rng.integers(0, 2) == 0:
                    return None  # infinity, weight-matched by the coin
                continue
            fx = polyfp.evaluate(f, r, p)
            if fx == 0:
                if rng.integers(0, 2) == 0:
                    return (r, 0)
                continue
            if legendre(fx, p) == 1:
                y = mod_sqrt(fx, p)
                if rng.integers(0, 2) == 0:
                    y = p - y
                return (r, y)

    def random_element(self, rng) -> MumfordDivisor:
        """Sum of g uniform random curve points as a divisor class.

        Near-uniform on the Jacobian: classes of weight below g appear
        exactly when some draws hit infinity.
        """
        acc = IDENTITY
        for _ in range(self.genus):
            pt = self.random_point(rng)
            if pt is None:
                continue
            x, y = pt
            acc = self.add(acc, MumfordDivisor(u=((self.p - x) % self.p, 1), v=(y,)))
        return acc

    def enumerate_all(self) -> list[MumfordDivisor]:
        """Every group element, by brute force; only for tiny p."""
        p, f, g = self.p, self.f, self.genus
        if p ** (2 * g) > 1 << 24:
            raise ValueError("group too large to enumerate")
        out = [IDENTITY]
        for w in range(1, g + 1):
            for u_tail in product(range(p), repeat=w):
                u = tuple(u_tail) + (1,)
                for v_tail in product(range(p), repeat=w):
                    v = polyfp.trim(tuple(v_tail))
                    diff = polyfp.sub(polyfp.mul(v, v, p), f, p)
                    if polyfp.mod(diff, u, p) == ():
                        out.append(MumfordDivisor(u=u, v=v))
        return out

    # -- hashing -----------------------------------------------------------

    def serialize(self, d: MumfordDivisor) -> tuple:
        return (d.u, d.v)

    def canonical_key(self, d: MumfordDivisor) -> tuple:
        """Key folding D and -D together (free inverses halve the table)."""
        vneg = polyfp.neg(d.v, self.p)
        return (d.u, min(d.v, vneg))

    def key_sign(self, d: MumfordDivisor) -> int:
        """+1 if d is its canonical representative, -1 if its negation is."""
        vneg = polyfp.neg(d.v, self.p)
        if d.v == vneg:
            return 0
        return 1 if d.v < vneg else -1


def is_order_two(d: MumfordDivisor, ctx: JacobianContext) -> bool:
    """Order 2 iff v = 0 and u divides f (and d is not the identity)."""
    if d.is_identity() or d.v != ():
        return False
    return polyfp.mod(ctx.f, d.u, ctx.p) == ()
