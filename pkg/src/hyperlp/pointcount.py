"""Point counting on y^2 = f(x) over F_p via finite-difference enumeration.

The enumeration walks f(0), f(1), ..., f(p-1) keeping the alternating
difference tower t_k = (-1)^k D^k f(x); one step costs deg(f) integer
subtractions with a conditional +p correction each, no multiplications.
Quadratic-residue tests go through a table built the same way from the
squares x^2, x = 1..(p-1)/2.

The inner loops are numba-compiled; ``DifferenceState`` is the scalar
reference form of the tower used by tests and debugging.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

MAX_DEGREE = 7

# Table bytes above which the halved residue table is used instead of the
# full one (the half table costs an extra compare per lookup but stays in
# cache longer).
CACHE_LIMIT_BYTES = 1 << 21


def _stirling_factorial_table(max_j: int) -> tuple[tuple[int, ...], ...]:
    """T[j][k] = k! * S(j, k) with S the Stirling numbers of the 2nd kind."""
    rows = [(1,)]
    for j in range(1, max_j + 1):
        prev = rows[-1]
        row = [0] * (j + 1)
        for k in range(1, j + 1):
            above = prev[k] if k < len(prev) else 0
            row[k] = k * (above + prev[k - 1])
        rows.append(tuple(row))
    return tuple(rows)


STIRLING_FACTORIAL = _stirling_factorial_table(MAX_DEGREE)


@dataclass(frozen=True)
class ResidueTable:
    """Marks the nonzero quadratic residues of F_p.

    ``bits`` is a 0/1 byte vector.  In the full variant bits[t] answers
    directly; the halved variant stores only t < p/2 and lookups use
    min(t, p-t), flipping the answer for p = 3 mod 4.
    """

    p: int
    bits: np.ndarray
    halved: bool

    def is_qr(self, t: int) -> bool:
        """True iff t is a nonzero quadratic residue mod p."""
        t %= self.p
        if t == 0:
            return False
        if not self.halved:
            return bool(self.bits[t])
        if 2 * t < self.p:
            return bool(self.bits[t])
        b = bool(self.bits[self.p - t])
        return (not b) if self.p % 4 == 3 else b


@njit(cache=True)
def _qr_fill(bits, p, halved):
    # Enumerate x^2 for x = 1..(p-1)/2 by summing odd numbers, one
    # conditional correction per step and no multiplications.
    sq = 0
    odd = 1
    half = (p - 1) // 2
    for _ in range(half):
        sq += odd
        if sq >= p:
            sq -= p
        odd += 2
        if odd >= p:
            odd -= p
        if halved:
            if 2 * sq < p:
                bits[sq] = 1
        else:
            bits[sq] = 1


def build_residue_table(p: int, cache_limit: int = CACHE_LIMIT_BYTES) -> ResidueTable:
    """Build the quadratic-residue table for an odd prime p."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    halved = p > cache_limit
    size = (p + 1) // 2 if halved else p
    bits = np.zeros(size, dtype=np.uint8)
    _qr_fill(bits, p, halved)
    return ResidueTable(p=p, bits=bits, halved=halved)


class DifferenceState:
    """Alternating finite-difference tower for one polynomial stream.

    t[k] holds (-1)^k D^k f(x) at the current position; ``step`` advances
    x by 1 using subtractions only, ``value`` is f(x) mod p.
    """

    __slots__ = ("t", "p", "degree")

    def __init__(self, t: list[int], p: int):
        self.t = list(t)
        self.p = p
        self.degree = len(t) - 1

    @property
    def value(self) -> int:
        return self.t[0]

    def step(self) -> None:
        t, p = self.t, self.p
        for k in range(self.degree):
            v = t[k] - t[k + 1]
            if v < 0:
                v += p
            t[k] = v


def init_differences(f: list[int], p: int) -> DifferenceState:
    """Difference tower of f at x = 0: t_k = (-1)^k sum_j T[j][k] f_j mod p."""
    d = len(f) - 1
    if d > MAX_DEGREE:
        raise ValueError(f"degree {d} exceeds supported maximum {MAX_DEGREE}")
    t = []
    for k in range(d + 1):
        acc = 0
        for j in range(k, d + 1):
            acc += STIRLING_FACTORIAL[j][k] * (f[j] % p)
        acc %= p
        if k % 2 == 1 and acc:
            acc = p - acc
        t.append(acc)
    return DifferenceState(t, p)


@njit(cache=True)
def _count_kernel(t, p, bits, halved):
    d = t.shape[0] - 1
    n = 1  # the point at infinity
    p34 = p % 4 == 3
    for _ in range(p):
        t0 = t[0]
        if t0 == 0:
            n += 1
        elif not halved:
            n += 2 * bits[t0]
        else:
            if 2 * t0 < p:
                n += 2 * bits[t0]
            else:
                b = bits[p - t0]
                if p34:
                    n += 2 * (1 - b)
                else:
                    n += 2 * b
        for k in range(d):
            v = t[k] - t[k + 1]
            if v < 0:
                v += p
            t[k] = v
    return n


@njit(cache=True)
def _batch_count_kernel(vals, t, p, bits, halved, counts):
    d = t.shape[0] - 1
    m = vals.shape[0]
    p34 = p % 4 == 3
    for _ in range(p):
        for j in range(m):
            v = vals[j]
            if v == 0:
                counts[j] += 1
            elif not halved:
                counts[j] += 2 * bits[v]
            else:
                if 2 * v < p:
                    counts[j] += 2 * bits[v]
                else:
                    b = bits[p - v]
                    if p34:
                        counts[j] += 2 * (1 - b)
                    else:
                        counts[j] += 2 * b
        t1 = t[1] if d >= 1 else 0
        for j in range(m):
            v = vals[j] - t1
            if v < 0:
                v += p
            vals[j] = v
        for k in range(1, d):
            v = t[k] - t[k + 1]
            if v < 0:
                v += p
            t[k] = v


def count_points(f: list[int], p: int, table: ResidueTable | None = None) -> int:
    """Number of points on y^2 = f(x) over F_p, infinity included.

    f is given low-to-high; its degree must be odd and at most 7.
    Coefficients may be arbitrary integers, reduced mod p once on entry.
    """
    d = len(f) - 1
    if d % 2 == 0:
        raise ValueError("f must have odd degree")
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    if table is None:
        table = build_residue_table(p)
    elif table.p != p:
        raise ValueError("residue table built for a different prime")
    state = init_differences(f, p)
    t = np.array(state.t, dtype=np.int64)
    return int(_count_kernel(t, p, table.bits, table.halved))


def batch_count(
    f: list[int], offsets: list[int], p: int, table: ResidueTable | None = None
) -> list[int]:
    """Counts for y^2 = f(x) + c for each offset c, sharing one enumeration.

    The difference tower above order zero does not depend on the constant
    term, so every extra offset costs one subtraction and one residue
    lookup per x.
    """
    if len(set(offsets)) != len(offsets):
        raise ValueError("offsets must be distinct")
    if any(abs(c) >= p for c in offsets):
        raise ValueError("offsets must satisfy |c| < p")
    d = len(f) - 1
    if d % 2 == 0:
        raise ValueError("f must have odd degree")
    if table is None:
        table = build_residue_table(p)
    state = init_differences(f, p)
    vals = np.array([(state.t[0] + c) % p for c in offsets], dtype=np.int64)
    t = np.array(state.t, dtype=np.int64)
    counts = np.ones(len(offsets), dtype=np.int64)  # infinity for each curve
    _batch_count_kernel(vals, t, p, table.bits, table.halved, counts)
    return [int(c) for c in counts]
