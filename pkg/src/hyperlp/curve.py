"""Curve model bookkeeping for y^2 = f(x), f monic of odd degree 2g+1.

Carries the integer model, its discriminant (resultant of f and f'),
good/bad reduction tests, quadratic twists mod p, and the number k of
irreducible factors of f mod p (the 2-rank of the Jacobian is k-1, so
2^(k-1) divides the group order).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import polyfp
from .modarith import legendre


class NotANonResidue(ValueError):
    """The supplied twisting scalar is a square mod p."""


class NotSquarefree(ValueError):
    """f mod p has a repeated factor (p divides the discriminant)."""


@dataclass(frozen=True)
class CurveSpec:
    """Integer model y^2 = f(x) with f monic of odd degree 2g+1, g <= 3."""

    f: tuple[int, ...]
    genus: int
    disc: int

    @property
    def degree(self) -> int:
        return len(self.f) - 1


@dataclass(frozen=True)
class ReductionStatus:
    p: int
    good: bool


def make_curve(coeffs: list[int] | tuple[int, ...]) -> CurveSpec:
    """Validate a coefficient list (low-to-high) and compute its genus/disc."""
    f = tuple(int(c) for c in coeffs)
    d = len(f) - 1
    if d % 2 == 0 or not 3 <= d <= 7:
        raise ValueError(f"degree must be odd with 3 <= d <= 7, got {d}")
    if f[-1] != 1:
        raise ValueError("f must be monic")
    disc = discriminant(f)
    if disc == 0:
        raise ValueError("polynomial has a repeated root (discriminant zero)")
    return CurveSpec(f=f, genus=d // 2, disc=disc)


def parse_curve(text: str) -> CurveSpec:
    """Parse the CLI coefficient format: decimal integers, low-to-high."""
    try:
        coeffs = [int(tok) for tok in text.replace(";", ",").split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"bad curve coefficient string: {text!r}") from exc
    return make_curve(coeffs)


def resultant(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Resultant of integer polynomials via a fraction-exact Euclidean chain."""
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]
    res = Fraction(1)
    while True:
        da, db = len(fa) - 1, len(fb) - 1
        if db < 0:
            return 0 if da > 0 else _as_int(res)
        if db == 0:
            res *= fb[0] ** da
            return _as_int(res)
        # remainder of fa by fb
        r = fa[:]
        lead = fb[-1]
        for i in range(da - db, -1, -1):
            c = r[i + db] / lead
            for j in range(db + 1):
                r[i + j] -= c * fb[j]
        r = r[:db]
        while r and r[-1] == 0:
            r.pop()
        dr = len(r) - 1
        res *= (-1) ** (da * db) * lead ** (da - dr)
        fa, fb = fb, r


def _as_int(x: Fraction) -> int:
    assert x.denominator == 1
    return int(x)


def discriminant(f: tuple[int, ...]) -> int:
    """disc(f) = (-1)^(d(d-1)/2) res(f, f') / lc(f) for integer monic f."""
    d = len(f) - 1
    fp = tuple(i * c for i, c in enumerate(f) if i)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, fp)


def reduction_status(curve: CurveSpec, p: int) -> ReductionStatus:
    """Good iff p is odd and does not divide the discriminant."""
    good = p != 2 and curve.disc % p != 0
    return ReductionStatus(p=p, good=good)


def smallest_nonresidue(p: int) -> int:
    """Smallest positive quadratic non-residue mod p (deterministic)."""
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


def quadratic_twist(f_mod_p: tuple[int, ...], n: int, p: int) -> tuple[int, ...]:
    """Twisted polynomial ft_j = f_j * n^(d-j) mod p, for a non-residue n.

    y^2 = ft(x) is the nontrivial quadratic twist; point counts satisfy
    N1(f) + N1(ft) = 2p + 2 and #J(twist) = L_p(-1).
    """
    if legendre(n, p) != -1:
        raise NotANonResidue(f"{n} is a square mod {p}")
    d = len(f_mod_p) - 1
    out = []
    power = 1
    for j in range(d, -1, -1):
        out.append(f_mod_p[j] * power % p)
        power = power * n % p
    return tuple(reversed(out))


def irreducible_factor_count(f: tuple[int, ...], p: int) -> int:
    """Number k of distinct irreducible factors of squarefree f mod p.

    Uses a distinct-degree split: x^(p^d) mod f is built once for d = 1
    by binary exponentiation and then iterated by modular composition
    (Frobenius is a ring map), so each degree costs O(deg f) products.
    """
    fp = tuple(c % p for c in f)
    d = len(fp) - 1
    fprime = polyfp.derivative(fp, p)
    if polyfp.gcd(fp, fprime, p) != (1,):
        raise NotSquarefree(f"f has a repeated factor mod {p}")
    x = (0, 1)
    xp = polyfp.pow_mod(x, p, fp, p)  # x^p mod f
    frob = xp
    k = 0
    remaining = fp
    for deg in range(1, d // 2 + 1):
        if len(remaining) - 1 < 2 * deg:
            break
        g = polyfp.gcd(polyfp.sub(frob, x, p), remaining, p)
        if len(g) > 1:
            k += (len(g) - 1) // deg
            remaining = polyfp.divmod_poly(remaining, g, p)[0]
        if deg < d // 2:
            frob = polyfp.compose_mod(frob, xp, fp, p)
    if len(remaining) > 1:
        k += 1  # what survives is a single irreducible factor
    return k
