"""Dense polynomial arithmetic over F_p (coefficients low-to-high).

Polynomials are tuples of ints in [0, p); the zero polynomial is ().
Degrees here never exceed a few dozen, so schoolbook algorithms are the
right tool.
"""

from __future__ import annotations


def trim(a: tuple[int, ...]) -> tuple[int, ...]:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def degree(a: tuple[int, ...]) -> int:
    """Degree with deg 0 for constants; -1 for the zero polynomial."""
    return len(a) - 1


def add(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(tuple(out))


def sub(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(tuple(out))


def neg(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple((p - c) % p for c in a)


def mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return trim(tuple(c % p for c in out))


def scale(a: tuple[int, ...], c: int, p: int) -> tuple[int, ...]:
    c %= p
    if c == 0:
        return ()
    return trim(tuple(x * c % p for x in a))


def divmod_poly(
    a: tuple[int, ...], b: tuple[int, ...], p: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Quotient and remainder of a by nonzero b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lb = degree(b), b[-1]
    inv_lb = pow(lb, -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + db] * inv_lb % p
        if c:
            q[i] = c
            for j, cb in enumerate(b):
                r[i + j] = (r[i + j] - c * cb) % p
    return trim(tuple(q)), trim(tuple(r[:db]))


def mod(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    return divmod_poly(a, b, p)[1]


def monic(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a:
        return ()
    if a[-1] == 1:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def xgcd(
    a: tuple[int, ...], b: tuple[int, ...], p: int
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = divmod_poly(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if r0 and r0[-1] != 1:
        c = pow(r0[-1], -1, p)
        r0, s0, t0 = scale(r0, c, p), scale(s0, c, p), scale(t0, c, p)
    return r0, s0, t0


def evaluate(a: tuple[int, ...], x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def derivative(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    return trim(tuple(i * c % p for i, c in enumerate(a) if i)) if len(a) > 1 else ()


def pow_mod(a: tuple[int, ...], n: int, m: tuple[int, ...], p: int) -> tuple[int, ...]:
    """a**n mod m."""
    acc: tuple[int, ...] = (1,)
    base = mod(a, m, p)
    while n:
        if n & 1:
            acc = mod(mul(acc, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        n >>= 1
    return acc


def compose_mod(a: tuple[int, ...], b: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    """a(b) mod m by Horner over polynomial arguments."""
    acc: tuple[int, ...] = ()
    for c in reversed(a):
        acc = mod(mul(acc, b, p), m, p)
        if c:
            acc = add(acc, (c,), p)
    return acc
