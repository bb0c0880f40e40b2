"""Compiled batched Jacobian arithmetic (numba kernels).

Lanes of Mumford divisors are stored as coefficient matrices (structure
of arrays) and marched through Cantor addition in phases: each lane runs
the generic-shape straight-line program up to an inversion site, one
shared simultaneous inversion (a balanced product tree, 3n-3 products
and a single real field inversion) serves the whole batch, and the next
phase continues.  Lanes whose shape is not generic (short u, equal u,
vanishing leading coefficients, gcd surprises) are flagged and recomputed
by the scalar reference path; their density is O(1/p).

Field arithmetic is plain reduced representation with a float-reciprocal
Barrett step, exact for p < 2**30; the scalar PrimeField keeps the
Montgomery form for the spec'd contracts, but numpy/numba lack the
128-bit intermediates Montgomery wants, and at these widths the float
path has the same cost profile.
"""

from __future__ import annotations

import numpy as np
from numba import njit
from numba import float64, int64

MAX_BATCH_P = 1 << 30


@njit(inline="always")
def _mm(a, b, p, pinv):
    # product mod p via float-reciprocal quotient; exact for p < 2**30
    q = int64(float64(a) * float64(b) * pinv)
    r = a * b - q * p
    r += p & (r >> 63)
    r -= p & ((p - 1 - r) >> 63)
    return r


@njit(inline="always")
def _rd(x, p, pinv):
    # reduce |x| < 2**62 mod p
    q = int64(float64(x) * pinv)
    r = x - q * p
    r += p & (r >> 63)
    r += p & (r >> 63)
    r -= p & ((p - 1 - r) >> 63)
    r -= p & ((p - 1 - r) >> 63)
    return r


@njit(inline="always")
def _sub(a, b, p):
    r = a - b
    return r + (p & (r >> 63))


@njit(inline="always")
def _add2(a, b, p):
    r = a + b
    return r - (p & ((p - 1 - r) >> 63))


@njit(inline="always")
def _neg(a, p):
    return p - a if a else 0


@njit(cache=True)
def _inv_scalar(a, p):
    t, newt = int64(0), int64(1)
    r, newr = p, a
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True)
def _batch_inv(x, p, pinv):
    """Inverses of a nonzero vector with one real inversion (3n-3 products)."""
    b = x.size
    n = 1
    while n < b:
        n *= 2
    buf = np.ones(2 * n, dtype=np.int64)
    for i in range(b):
        buf[n + i] = x[i]
    for i in range(n - 1, 0, -1):
        buf[i] = _mm(buf[2 * i], buf[2 * i + 1], p, pinv)
    inv = np.empty(2 * n, dtype=np.int64)
    inv[1] = _inv_scalar(buf[1], p)
    for i in range(1, n):
        t = inv[i]
        inv[2 * i] = _mm(t, buf[2 * i + 1], p, pinv)
        inv[2 * i + 1] = _mm(t, buf[2 * i], p, pinv)
    return inv[n : n + b].copy()


# ---------------------------------------------------------------------------
# Genus 1: chord/tangent on y^2 = x^3 + f2 x^2 + f1 x + f0.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _g1_den_add(u1, u2, den, bad, p):
    n = den.size
    for i in range(n):
        d = _sub(u1[0, i], u2[0, i], p)  # x2 - x1 = u1[0] - u2[0]
        if d == 0 or u1[1, i] != 1 or u2[1, i] != 1:
            bad[i] = 1
            d = 1
        den[i] = d


@njit(cache=True)
def _g1_fin_add(u1, v1, u2, v2, inv, ou, ov, f, p, pinv):
    n = inv.size
    f2 = f[2]
    for i in range(n):
        x1 = _neg(u1[0, i], p)
        y1 = v1[0, i]
        x2 = _neg(u2[0, i], p)
        y2 = v2[0, i]
        lam = _mm(_sub(y2, y1, p), inv[i], p, pinv)
        x3 = _rd(_mm(lam, lam, p, pinv) - f2 - x1 - x2, p, pinv)
        y3 = _rd(_mm(lam, _sub(x1, x3, p), p, pinv) - y1, p, pinv)
        ou[0, i] = _neg(x3, p)
        ou[1, i] = 1
        ov[0, i] = y3


@njit(cache=True)
def _g1_den_dbl(u1, v1, den, bad, p):
    n = den.size
    for i in range(n):
        d = _add2(v1[0, i], v1[0, i], p)  # 2 y1
        if d == 0 or u1[1, i] != 1:
            bad[i] = 1
            d = 1
        den[i] = d


@njit(cache=True)
def _g1_fin_dbl(u1, v1, inv, ou, ov, f, p, pinv):
    n = inv.size
    f2, f1 = f[2], f[1]
    for i in range(n):
        x1 = _neg(u1[0, i], p)
        y1 = v1[0, i]
        xx = _mm(x1, x1, p, pinv)
        num = _rd(3 * xx + 2 * _mm(f2, x1, p, pinv) + f1, p, pinv)
        lam = _mm(num, inv[i], p, pinv)
        x3 = _rd(_mm(lam, lam, p, pinv) - f2 - x1 - x1, p, pinv)
        y3 = _rd(_mm(lam, _sub(x1, x3, p), p, pinv) - y1, p, pinv)
        ou[0, i] = _neg(x3, p)
        ou[1, i] = 1
        ov[0, i] = y3


# ---------------------------------------------------------------------------
# Genus 2.  f = x^5 + f4 x^4 + ... + f0.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _g2_phase1_add(u1, v1, u2, v2, den, w1a, w0a, ea, bad, p, pinv):
    """w = u1 - u2; N with s = (w1 x + e)(-N)^-1 the inverse of u1 mod u2."""
    n = den.size
    for i in range(n):
        ok = u1[2, i] == 1 and u2[2, i] == 1
        w1 = _sub(u1[1, i], u2[1, i], p)
        w0 = _sub(u1[0, i], u2[0, i], p)
        c1 = u2[1, i]
        c0 = u2[0, i]
        e = _rd(_mm(w1, c1, p, pinv) - w0, p, pinv)
        nn = _rd(
            _mm(w0, w0, p, pinv)
            - _mm(w0, _mm(w1, c1, p, pinv), p, pinv)
            + _mm(_mm(w1, w1, p, pinv), c0, p, pinv),
            p,
            pinv,
        )
        if w1 == 0 or nn == 0 or not ok:
            bad[i] = 1
            nn = 1
        den[i] = nn
        w1a[i] = w1
        w0a[i] = w0
        ea[i] = e


@njit(cache=True)
def _g2_phase2_add(u1, v1, u2, v2, invn, w1a, ea, uu, vv, den2, bad, f, p, pinv):
    """Compose: U = u1 u2 (deg 4), V = v1 + u1 * (s (v2-v1) mod u2) (deg <= 3),
    then the leading quotient coefficient of (f - V^2)/U as next denominator."""
    n = invn.size
    for i in range(n):
        a1 = u1[1, i]
        a0 = u1[0, i]
        c1 = u2[1, i]
        c0 = u2[0, i]
        # s = -(w1 x + e) * invN
        m = _neg(invn[i], p)
        s1 = _mm(w1a[i], m, p, pinv)
        s0 = _mm(ea[i], m, p, pinv)
        dv1 = _sub(v2[1, i], v1[1, i], p)
        dv0 = _sub(v2[0, i], v1[0, i], p)
        # (s1 x + s0)(dv1 x + dv0) mod u2
        e2 = _mm(s1, dv1, p, pinv)
        e1 = _rd(s1 * dv0 + s0 * dv1, p, pinv)
        e0 = _mm(s0, dv0, p, pinv)
        t1 = _rd(e1 - e2 * c1, p, pinv)
        t0 = _rd(e0 - e2 * c0, p, pinv)
        # V = v1 + u1 * t
        v3 = t1
        v2_ = _rd(t0 + a1 * t1, p, pinv)
        v1_ = _rd(a1 * t0 + a0 * t1 + v1[1, i], p, pinv)
        v0_ = _rd(a0 * t0 + v1[0, i], p, pinv)
        # U = u1 u2
        u3 = _add2(a1, c1, p)
        u2_ = _rd(a0 + c0 + a1 * c1, p, pinv)
        u1_ = _rd(a1 * c0 + a0 * c1, p, pinv)
        u0_ = _mm(a0, c0, p, pinv)
        uu[3, i] = u3
        uu[2, i] = u2_
        uu[1, i] = u1_
        uu[0, i] = u0_
        vv[3, i] = v3
        vv[2, i] = v2_
        vv[1, i] = v1_
        vv[0, i] = v0_
        # leading coefficient of quotient (f - V^2) / U: q2 = -(V3^2)
        q2 = _neg(_mm(v3, v3, p, pinv), p)
        if q2 == 0:
            bad[i] = 1
            q2 = 1
        den2[i] = q2


@njit(cache=True)
def _g2_tail(uu, vv, den2, inv2, ou, ov, f, p, pinv):
    """Reduce: U' = monic (f - V^2)/U, V' = -V mod U'."""
    n = inv2.size
    f4, f3 = f[4], f[3]
    for i in range(n):
        u3 = uu[3, i]
        u2_ = uu[2, i]
        u1_ = uu[1, i]
        u0_ = uu[0, i]
        v3 = vv[3, i]
        v2_ = vv[2, i]
        v1_ = vv[1, i]
        v0_ = vv[0, i]
        # W = V^2 coefficients (deg 6..4 needed for quotient, rest unused)
        w6 = _mm(v3, v3, p, pinv)
        w5 = _rd(2 * v3 * v2_, p, pinv)
        w4 = _rd(v2_ * v2_ + 2 * v3 * v1_, p, pinv)
        n6 = _neg(w6, p)
        n5 = _sub(1, w5, p)  # f5 = 1
        n4 = _sub(f4, w4, p)
        q2 = n6
        q1 = _rd(n5 - q2 * u3, p, pinv)
        q0 = _rd(n4 - q2 * u2_ - q1 * u3, p, pinv)
        iq = inv2[i]
        m1 = _mm(q1, iq, p, pinv)
        m0 = _mm(q0, iq, p, pinv)
        # V mod U' for U' = x^2 + m1 x + m0
        s1 = v3
        c2 = _rd(v2_ - s1 * m1, p, pinv)
        c1 = _rd(v1_ - s1 * m0, p, pinv)
        s0 = c2
        r1 = _rd(c1 - s0 * m1, p, pinv)
        r0 = _rd(v0_ - s0 * m0, p, pinv)
        ou[2, i] = 1
        ou[1, i] = m1
        ou[0, i] = m0
        ov[1, i] = _neg(r1, p)
        ov[0, i] = _neg(r0, p)


@njit(cache=True)
def _g2_phase1_dbl(u1, v1, den, w1a, w0a, ea, bad, p, pinv):
    """Doubling: w = 2v, N from (w, u); s = (w1 x + e)(-N)^-1 = (2v)^-1 mod u."""
    n = den.size
    for i in range(n):
        ok = u1[2, i] == 1
        w1 = _add2(v1[1, i], v1[1, i], p)
        w0 = _add2(v1[0, i], v1[0, i], p)
        a1 = u1[1, i]
        a0 = u1[0, i]
        e = _rd(_mm(w1, a1, p, pinv) - w0, p, pinv)
        nn = _rd(
            _mm(w0, w0, p, pinv)
            - _mm(w0, _mm(w1, a1, p, pinv), p, pinv)
            + _mm(_mm(w1, w1, p, pinv), a0, p, pinv),
            p,
            pinv,
        )
        if w1 == 0 or nn == 0 or not ok:
            bad[i] = 1
            nn = 1
        den[i] = nn
        w1a[i] = w1
        w0a[i] = w0
        ea[i] = e


@njit(cache=True)
def _g2_phase2_dbl(u1, v1, invn, w1a, ea, uu, vv, den2, bad, f, p, pinv):
    n = invn.size
    f4, f3, f2, f1, f0 = f[4], f[3], f[2], f[1], f[0]
    for i in range(n):
        a1 = u1[1, i]
        a0 = u1[0, i]
        b1 = v1[1, i]
        b0 = v1[0, i]
        m = _neg(invn[i], p)
        s1 = _mm(w1a[i], m, p, pinv)
        s0 = _mm(ea[i], m, p, pinv)
        # h = (f - v^2)/u, degree 3 (monic leading x^5 / x^2)
        m2 = _rd(f2 - b1 * b1, p, pinv)
        m1_ = _rd(f1 - 2 * b1 * b0, p, pinv)
        h3 = 1
        h2 = _sub(f4, a1, p)
        h1 = _rd(f3 - a0 - h2 * a1, p, pinv)
        h0 = _rd(m2 - h2 * a0 - h1 * a1, p, pinv)
        # h mod u
        r2 = _rd(h2 - h3 * a1, p, pinv)
        r1 = _rd(h1 - h3 * a0, p, pinv)
        hm1 = _rd(r1 - r2 * a1, p, pinv)
        hm0 = _rd(h0 - r2 * a0, p, pinv)
        # t = s * hm mod u
        e2 = _mm(s1, hm1, p, pinv)
        e1 = _rd(s1 * hm0 + s0 * hm1, p, pinv)
        e0 = _mm(s0, hm0, p, pinv)
        t1 = _rd(e1 - e2 * a1, p, pinv)
        t0 = _rd(e0 - e2 * a0, p, pinv)
        # U = u^2
        u3 = _add2(a1, a1, p)
        u2_ = _rd(a1 * a1 + 2 * a0, p, pinv)
        u1_ = _rd(2 * a1 * a0, p, pinv)
        u0_ = _mm(a0, a0, p, pinv)
        # V = v + u t
        v3 = t1
        v2_ = _rd(t0 + a1 * t1, p, pinv)
        v1_ = _rd(a1 * t0 + a0 * t1 + b1, p, pinv)
        v0_ = _rd(a0 * t0 + b0, p, pinv)
        uu[3, i] = u3
        uu[2, i] = u2_
        uu[1, i] = u1_
        uu[0, i] = u0_
        vv[3, i] = v3
        vv[2, i] = v2_
        vv[1, i] = v1_
        vv[0, i] = v0_
        q2 = _neg(_mm(v3, v3, p, pinv), p)
        if q2 == 0:
            bad[i] = 1
            q2 = 1
        den2[i] = q2


# ---------------------------------------------------------------------------
# Genus 3.  f = x^7 + f6 x^6 + ... + f0.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _g3_w_add(u1, u2, wa, den, bad, p):
    n = den.size
    for i in range(n):
        ok = u1[3, i] == 1 and u2[3, i] == 1
        w2 = _sub(u1[2, i], u2[2, i], p)
        w1 = _sub(u1[1, i], u2[1, i], p)
        w0 = _sub(u1[0, i], u2[0, i], p)
        if w2 == 0 or not ok:
            bad[i] = 1
            w2 = 1
        wa[2, i] = w2
        wa[1, i] = w1
        wa[0, i] = w0
        den[i] = w2


@njit(cache=True)
def _g3_w_dbl(u1, v1, wa, den, bad, p):
    n = den.size
    for i in range(n):
        ok = u1[3, i] == 1
        w2 = _add2(v1[2, i], v1[2, i], p)
        w1 = _add2(v1[1, i], v1[1, i], p)
        w0 = _add2(v1[0, i], v1[0, i], p)
        if w2 == 0 or not ok:
            bad[i] = 1
            w2 = 1
        wa[2, i] = w2
        wa[1, i] = w1
        wa[0, i] = w0
        den[i] = w2


@njit(cache=True)
def _g3_div1(uc, wa, iw2, qa, ra, den, bad, p, pinv):
    """Divide the monic cubic (coeff rows uc) by w: q = q1 x + q0, r = r1 x + r0."""
    n = iw2.size
    for i in range(n):
        c2 = uc[2, i]
        c1 = uc[1, i]
        c0 = uc[0, i]
        w2 = wa[2, i]
        w1 = wa[1, i]
        w0 = wa[0, i]
        iw = iw2[i]
        q1 = iw
        q0 = _mm(_rd(c2 - _mm(w1, iw, p, pinv), p, pinv), iw, p, pinv)
        r1 = _rd(c1 - _mm(w0, iw, p, pinv) - q0 * w1, p, pinv)
        r0 = _rd(c0 - q0 * w0, p, pinv)
        if r1 == 0:
            bad[i] = 1
            r1 = 1
        qa[1, i] = q1
        qa[0, i] = q0
        ra[1, i] = r1
        ra[0, i] = r0
        den[i] = r1


@njit(cache=True)
def _g3_div2(wa, qa, ra, ir1, spre, den, bad, p, pinv):
    """w = q' r + r2; s_pre = 1 + q' q with s_pre * w = r2 mod u."""
    n = ir1.size
    for i in range(n):
        w2 = wa[2, i]
        w1 = wa[1, i]
        w0 = wa[0, i]
        r1 = ra[1, i]
        r0 = ra[0, i]
        ir = ir1[i]
        qp1 = _mm(w2, ir, p, pinv)
        qp0 = _mm(_rd(w1 - qp1 * r0, p, pinv), ir, p, pinv)
        r2 = _rd(w0 - qp0 * r0, p, pinv)
        if r2 == 0:
            bad[i] = 1
            r2 = 1
        q1 = qa[1, i]
        q0 = qa[0, i]
        s2 = _mm(qp1, q1, p, pinv)
        s1 = _rd(qp1 * q0 + qp0 * q1, p, pinv)
        s0 = _rd(qp0 * q0 + 1, p, pinv)
        spre[2, i] = s2
        spre[1, i] = s1
        spre[0, i] = s0
        den[i] = r2


@njit(cache=True)
def _g3_compose_add(u1, v1, u2, v2, ir2, spre, uu, vv, den, bad, f, p, pinv):
    """U = u1 u2, V = v1 + u1 (s (v2 - v1) mod u2); next site is the leading
    quotient coefficient of (f - V^2)/U."""
    n = ir2.size
    for i in range(n):
        a2 = u1[2, i]
        a1 = u1[1, i]
        a0 = u1[0, i]
        c2 = u2[2, i]
        c1 = u2[1, i]
        c0 = u2[0, i]
        ir = ir2[i]
        s2 = _mm(spre[2, i], ir, p, pinv)
        s1 = _mm(spre[1, i], ir, p, pinv)
        s0 = _mm(spre[0, i], ir, p, pinv)
        dv2 = _sub(v2[2, i], v1[2, i], p)
        dv1 = _sub(v2[1, i], v1[1, i], p)
        dv0 = _sub(v2[0, i], v1[0, i], p)
        # T = s * dv (deg 4)
        t4 = _mm(s2, dv2, p, pinv)
        t3 = _rd(s2 * dv1 + s1 * dv2, p, pinv)
        t2 = _rd(s2 * dv0 + s1 * dv1 + s0 * dv2, p, pinv)
        t1 = _rd(s1 * dv0 + s0 * dv1, p, pinv)
        t0 = _mm(s0, dv0, p, pinv)
        # T mod u2 (monic cubic): two steps
        t3 = _rd(t3 - t4 * c2, p, pinv)
        t2 = _rd(t2 - t4 * c1, p, pinv)
        t1 = _rd(t1 - t4 * c0, p, pinv)
        tt2 = _rd(t2 - t3 * c2, p, pinv)
        tt1 = _rd(t1 - t3 * c1, p, pinv)
        tt0 = _rd(t0 - t3 * c0, p, pinv)
        # V = v1 + u1 * t (deg <= 5)
        v5 = tt2
        v4 = _rd(tt1 + a2 * tt2, p, pinv)
        v3 = _rd(tt0 + a2 * tt1 + a1 * tt2, p, pinv)
        v2_ = _rd(a2 * tt0 + a1 * tt1 + a0 * tt2 + v1[2, i], p, pinv)
        v1_ = _rd(a1 * tt0 + a0 * tt1 + v1[1, i], p, pinv)
        v0_ = _rd(a0 * tt0 + v1[0, i], p, pinv)
        # U = u1 u2 (monic deg 6)
        u5 = _add2(a2, c2, p)
        u4 = _rd(a1 + c1 + a2 * c2, p, pinv)
        u3 = _rd(a0 + c0 + a2 * c1 + a1 * c2, p, pinv)
        u2_ = _rd(a2 * c0 + a1 * c1 + a0 * c2, p, pinv)
        u1_ = _rd(a1 * c0 + a0 * c1, p, pinv)
        u0_ = _mm(a0, c0, p, pinv)
        uu[5, i] = u5
        uu[4, i] = u4
        uu[3, i] = u3
        uu[2, i] = u2_
        uu[1, i] = u1_
        uu[0, i] = u0_
        vv[5, i] = v5
        vv[4, i] = v4
        vv[3, i] = v3
        vv[2, i] = v2_
        vv[1, i] = v1_
        vv[0, i] = v0_
        g4 = _neg(_mm(v5, v5, p, pinv), p)  # leading coeff of (f - V^2)/U
        if g4 == 0:
            bad[i] = 1
            g4 = 1
        den[i] = g4


@njit(cache=True)
def _g3_compose_dbl(u1, v1, ir2, spre, uu, vv, den, bad, f, p, pinv):
    """U = u^2, V = v + u (h s mod u) with h = (f - v^2)/u."""
    n = ir2.size
    f6, f5, f4, f3, f2 = f[6], f[5], f[4], f[3], f[2]
    for i in range(n):
        a2 = u1[2, i]
        a1 = u1[1, i]
        a0 = u1[0, i]
        b2 = v1[2, i]
        b1 = v1[1, i]
        b0 = v1[0, i]
        ir = ir2[i]
        s2 = _mm(spre[2, i], ir, p, pinv)
        s1 = _mm(spre[1, i], ir, p, pinv)
        s0 = _mm(spre[0, i], ir, p, pinv)
        # numerator f - v^2 down to degree 3 (enough for h = quotient deg 4
        # and h mod u); v^2 has degree <= 4
        m4 = _sub(f4, _mm(b2, b2, p, pinv), p)
        m3 = _rd(f3 - 2 * b2 * b1, p, pinv)
        # h = quotient of (f - v^2)/u (monic deg 7 / monic deg 3): deg 4
        k4 = 1
        k3 = _sub(f6, a2, p)
        k2 = _rd(f5 - a1 - k3 * a2, p, pinv)
        k1 = _rd(m4 - a0 - k3 * a1 - k2 * a2, p, pinv)
        k0 = _rd(m3 - k3 * a0 - k2 * a1 - k1 * a2, p, pinv)
        # h mod u: two steps (deg 4 -> 2)
        k3b = _rd(k3 - k4 * a2, p, pinv)
        k2b = _rd(k2 - k4 * a1, p, pinv)
        k1b = _rd(k1 - k4 * a0, p, pinv)
        hm2 = _rd(k2b - k3b * a2, p, pinv)
        hm1 = _rd(k1b - k3b * a1, p, pinv)
        hm0 = _rd(k0 - k3b * a0, p, pinv)
        # t = s * hm mod u
        t4 = _mm(s2, hm2, p, pinv)
        t3 = _rd(s2 * hm1 + s1 * hm2, p, pinv)
        t2 = _rd(s2 * hm0 + s1 * hm1 + s0 * hm2, p, pinv)
        t1 = _rd(s1 * hm0 + s0 * hm1, p, pinv)
        t0 = _mm(s0, hm0, p, pinv)
        t3 = _rd(t3 - t4 * a2, p, pinv)
        t2 = _rd(t2 - t4 * a1, p, pinv)
        t1 = _rd(t1 - t4 * a0, p, pinv)
        tt2 = _rd(t2 - t3 * a2, p, pinv)
        tt1 = _rd(t1 - t3 * a1, p, pinv)
        tt0 = _rd(t0 - t3 * a0, p, pinv)
        # U = u^2 (monic deg 6)
        u5 = _add2(a2, a2, p)
        u4 = _rd(a2 * a2 + 2 * a1, p, pinv)
        u3 = _rd(2 * a0 + 2 * a2 * a1, p, pinv)
        u2_ = _rd(a1 * a1 + 2 * a2 * a0, p, pinv)
        u1_ = _rd(2 * a1 * a0, p, pinv)
        u0_ = _mm(a0, a0, p, pinv)
        # V = v + u * t
        v5 = tt2
        v4 = _rd(tt1 + a2 * tt2, p, pinv)
        v3 = _rd(tt0 + a2 * tt1 + a1 * tt2, p, pinv)
        v2_ = _rd(a2 * tt0 + a1 * tt1 + a0 * tt2 + b2, p, pinv)
        v1_ = _rd(a1 * tt0 + a0 * tt1 + b1, p, pinv)
        v0_ = _rd(a0 * tt0 + b0, p, pinv)
        uu[5, i] = u5
        uu[4, i] = u4
        uu[3, i] = u3
        uu[2, i] = u2_
        uu[1, i] = u1_
        uu[0, i] = u0_
        vv[5, i] = v5
        vv[4, i] = v4
        vv[3, i] = v3
        vv[2, i] = v2_
        vv[1, i] = v1_
        vv[0, i] = v0_
        g4 = _neg(_mm(v5, v5, p, pinv), p)
        if g4 == 0:
            bad[i] = 1
            g4 = 1
        den[i] = g4


@njit(cache=True)
def _g3_tail(uu, vv, ig4, ou, ov, f, p, pinv):
    """Two reduction steps: deg-6 (U,V) down to the weight-3 output."""
    n = ig4.size
    f6, f5, f4 = f[6], f[5], f[4]
    for i in range(n):
        u5 = uu[5, i]
        u4 = uu[4, i]
        u3 = uu[3, i]
        u2_ = uu[2, i]
        v5 = vv[5, i]
        v4 = vv[4, i]
        v3 = vv[3, i]
        v2_ = vv[2, i]
        v1_ = vv[1, i]
        v0_ = vv[0, i]
        # W = V^2, coefficients 10..6 (needed for the deg-4 quotient)
        w10 = _mm(v5, v5, p, pinv)
        w9 = _rd(2 * v5 * v4, p, pinv)
        w8 = _rd(v4 * v4 + 2 * v5 * v3, p, pinv)
        w7 = _rd(2 * (v5 * v2_ + v4 * v3), p, pinv)
        w6 = _rd(v3 * v3 + 2 * (v5 * v1_ + v4 * v2_), p, pinv)
        n10 = _neg(w10, p)
        n9 = _neg(w9, p)
        n8 = _neg(w8, p)
        n7 = _sub(1, w7, p)  # f7 = 1
        n6 = _sub(f6, w6, p)
        # quotient g = (f - V^2)/U, deg 4
        g4 = n10
        g3 = _rd(n9 - g4 * u5, p, pinv)
        g2 = _rd(n8 - g4 * u4 - g3 * u5, p, pinv)
        g1 = _rd(n7 - g4 * u3 - g3 * u4 - g2 * u5, p, pinv)
        g0 = _rd(n6 - g4 * u2_ - g3 * u3 - g2 * u4 - g1 * u5, p, pinv)
        ig = ig4[i]
        m3 = _mm(g3, ig, p, pinv)
        m2 = _mm(g2, ig, p, pinv)
        m1 = _mm(g1, ig, p, pinv)
        m0 = _mm(g0, ig, p, pinv)
        # V mod U' (U' = x^4 + m3 x^3 + ... + m0), V deg <= 5: two steps
        k = v5
        a4 = _rd(v4 - k * m3, p, pinv)
        a3 = _rd(v3 - k * m2, p, pinv)
        a2 = _rd(v2_ - k * m1, p, pinv)
        a1 = _rd(v1_ - k * m0, p, pinv)
        k2 = a4
        b3 = _rd(a3 - k2 * m3, p, pinv)
        b2 = _rd(a2 - k2 * m2, p, pinv)
        b1 = _rd(a1 - k2 * m1, p, pinv)
        b0 = _rd(v0_ - k2 * m0, p, pinv)
        # V1 = -(V mod U')
        c3 = _neg(b3, p)
        c2 = _neg(b2, p)
        c1 = _neg(b1, p)
        c0 = _neg(b0, p)
        # second reduction: U'' = (f - V1^2)/U', monic deg 3
        y6 = _mm(c3, c3, p, pinv)
        y5 = _rd(2 * c3 * c2, p, pinv)
        y4 = _rd(c2 * c2 + 2 * c3 * c1, p, pinv)
        q6 = _sub(f6, y6, p)
        q5 = _sub(f5, y5, p)
        q4 = _sub(f4, y4, p)
        h2 = _sub(q6, m3, p)  # h3 = 1
        h1 = _rd(q5 - m2 - h2 * m3, p, pinv)
        h0 = _rd(q4 - m1 - h2 * m2 - h1 * m3, p, pinv)
        # V'' = -(V1 mod U'')
        k3 = c3
        r2 = _rd(c2 - k3 * h2, p, pinv)
        r1 = _rd(c1 - k3 * h1, p, pinv)
        r0 = _rd(c0 - k3 * h0, p, pinv)
        ou[3, i] = 1
        ou[2, i] = h2
        ou[1, i] = h1
        ou[0, i] = h0
        ov[2, i] = _neg(r2, p)
        ov[1, i] = _neg(r1, p)
        ov[0, i] = _neg(r0, p)


# ---------------------------------------------------------------------------
# Canonical-key and hash-table kernels for the search layer.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _canonical_fold(u, v, keys, signs, p):
    """Key = (u rows, canonical v rows); sign says if v or -v was stored."""
    g = v.shape[0]
    gu = u.shape[0]
    n = u.shape[1]
    for i in range(n):
        # compare v with p - v lexicographically from the top coefficient
        sign = 0
        for r in range(g - 1, -1, -1):
            x = v[r, i]
            y = _neg(x, p)
            if x < y:
                sign = 1
                break
            if x > y:
                sign = -1
                break
        signs[i] = sign
        for r in range(gu):
            keys[r, i] = u[r, i]
        if sign >= 0:
            for r in range(g):
                keys[gu + r, i] = v[r, i]
        else:
            for r in range(g):
                keys[gu + r, i] = _neg(v[r, i], p)


@njit(inline="always")
def _hash_col(keys, i, width, mask):
    h = np.uint64(0x9E3779B97F4A7C15)
    for r in range(width):
        h = (h ^ np.uint64(keys[r, i])) * np.uint64(0xBF58476D1CE4E5B9)
        h ^= h >> np.uint64(29)
    return np.int64(h & np.uint64(mask))


@njit(cache=True)
def _hash_insert(keys, table, store, start):
    """Insert key columns into the open-addressing table.

    ``store`` receives the key columns at slots start..start+n-1; table
    maps hash buckets to slot indices (-1 empty).  Duplicate keys keep the
    first slot (earlier = smaller exponent).
    """
    width = keys.shape[0]
    n = keys.shape[1]
    mask = table.size - 1
    for i in range(n):
        h = _hash_col(keys, i, width, mask)
        while True:
            cur = table[h]
            if cur < 0:
                table[h] = start + i
                for r in range(width):
                    store[r, start + i] = keys[r, i]
                break
            same = True
            for r in range(width):
                if store[r, cur] != keys[r, i]:
                    same = False
                    break
            if same:
                break  # first insertion wins
            h = (h + 1) & mask
    return 0


@njit(cache=True)
def _hash_lookup(keys, table, store, out):
    """out[i] = stored slot of keys[:, i], or -1."""
    width = keys.shape[0]
    n = keys.shape[1]
    mask = table.size - 1
    for i in range(n):
        h = _hash_col(keys, i, width, mask)
        res = -1
        while True:
            cur = table[h]
            if cur < 0:
                break
            same = True
            for r in range(width):
                if store[r, cur] != keys[r, i]:
                    same = False
                    break
            if same:
                res = cur
                break
            h = (h + 1) & mask
        out[i] = res
    return 0


# ---------------------------------------------------------------------------
# Python-side engine.
# ---------------------------------------------------------------------------


class BatchEngine:
    """Array-level batched group operations for one curve mod p."""

    def __init__(self, f, p: int):
        if p >= MAX_BATCH_P:
            raise ValueError("batched arithmetic requires p < 2^30")
        self.p = p
        self.pinv = 1.0 / p
        self.genus = (len(f) - 1) // 2
        self.f = np.zeros(8, dtype=np.int64)
        for i, c in enumerate(f):
            self.f[i] = c % p

    # -- packing -----------------------------------------------------------

    def pack(self, divisors):
        g = self.genus
        n = len(divisors)
        u = np.zeros((g + 1, n), dtype=np.int64)
        v = np.zeros((g, n), dtype=np.int64)
        for i, d in enumerate(divisors):
            for r, c in enumerate(d.u):
                u[r, i] = c
            for r, c in enumerate(d.v):
                v[r, i] = c
        return u, v

    def unpack(self, u, v):
        from .jacobian import MumfordDivisor
        from . import polyfp

        g = self.genus
        out = []
        for i in range(u.shape[1]):
            ut = polyfp.trim(tuple(int(u[r, i]) for r in range(g + 1)))
            vt = polyfp.trim(tuple(int(v[r, i]) for r in range(g)))
            out.append(MumfordDivisor(u=ut, v=vt))
        return out

    # -- batched group law ---------------------------------------------------

    def combine(self, u1, v1, u2, v2):
        """Componentwise group law on coefficient lanes.

        Returns (u, v, bad) where flagged lanes hold garbage and must be
        recomputed by the scalar path.  Lanes are routed to the generic
        addition or doubling program; anything else is flagged.
        """
        n = u1.shape[1]
        p, pinv, f = self.p, self.pinv, self.f
        eq_u = (u1 == u2).all(axis=0)
        eq_v = (v1 == v2).all(axis=0)
        is_dbl = eq_u & eq_v
        bad = np.zeros(n, dtype=np.int8)
        bad[eq_u & ~is_dbl] = 1  # equal u, different v: scalar path
        ou = np.empty_like(u1)
        ov = np.empty_like(v1)
        n_dbl = int(np.count_nonzero(is_dbl))
        if n_dbl == 0:
            self._run_add(u1, v1, u2, v2, ou, ov, bad)
        elif n_dbl == n:
            self._run_dbl(u1, v1, ou, ov, bad)
        else:
            idx_a = np.flatnonzero(~is_dbl)
            idx_d = np.flatnonzero(is_dbl)
            ba = bad[idx_a].copy()
            ua, va = np.ascontiguousarray(u1[:, idx_a]), np.ascontiguousarray(v1[:, idx_a])
            ub, vb = np.ascontiguousarray(u2[:, idx_a]), np.ascontiguousarray(v2[:, idx_a])
            oua, ova = np.empty_like(ua), np.empty_like(va)
            self._run_add(ua, va, ub, vb, oua, ova, ba)
            ud, vd = np.ascontiguousarray(u1[:, idx_d]), np.ascontiguousarray(v1[:, idx_d])
            oud, ovd = np.empty_like(ud), np.empty_like(vd)
            bd = bad[idx_d].copy()
            self._run_dbl(ud, vd, oud, ovd, bd)
            ou[:, idx_a], ov[:, idx_a], bad[idx_a] = oua, ova, ba
            ou[:, idx_d], ov[:, idx_d], bad[idx_d] = oud, ovd, bd
        return ou, ov, bad != 0

    def _run_add(self, u1, v1, u2, v2, ou, ov, bad):
        p, pinv, f = self.p, self.pinv, self.f
        n = u1.shape[1]
        g = self.genus
        if g == 1:
            den = np.empty(n, dtype=np.int64)
            _g1_den_add(u1, u2, den, bad, p)
            inv = _batch_inv(den, p, pinv)
            _g1_fin_add(u1, v1, u2, v2, inv, ou, ov, f, p, pinv)
        elif g == 2:
            den = np.empty(n, dtype=np.int64)
            w1a = np.empty(n, dtype=np.int64)
            w0a = np.empty(n, dtype=np.int64)
            ea = np.empty(n, dtype=np.int64)
            _g2_phase1_add(u1, v1, u2, v2, den, w1a, w0a, ea, bad, p, pinv)
            invn = _batch_inv(den, p, pinv)
            uu = np.empty((4, n), dtype=np.int64)
            vv = np.empty((4, n), dtype=np.int64)
            den2 = np.empty(n, dtype=np.int64)
            _g2_phase2_add(u1, v1, u2, v2, invn, w1a, ea, uu, vv, den2, bad, f, p, pinv)
            inv2 = _batch_inv(den2, p, pinv)
            _g2_tail(uu, vv, den2, inv2, ou, ov, f, p, pinv)
        else:
            wa = np.empty((3, n), dtype=np.int64)
            den = np.empty(n, dtype=np.int64)
            _g3_w_add(u1, u2, wa, den, bad, p)
            iw2 = _batch_inv(den, p, pinv)
            qa = np.empty((2, n), dtype=np.int64)
            ra = np.empty((2, n), dtype=np.int64)
            _g3_div1(u2, wa, iw2, qa, ra, den, bad, p, pinv)
            ir1 = _batch_inv(den, p, pinv)
            spre = np.empty((3, n), dtype=np.int64)
            _g3_div2(wa, qa, ra, ir1, spre, den, bad, p, pinv)
            ir2 = _batch_inv(den, p, pinv)
            uu = np.empty((6, n), dtype=np.int64)
            vv = np.empty((6, n), dtype=np.int64)
            _g3_compose_add(u1, v1, u2, v2, ir2, spre, uu, vv, den, bad, f, p, pinv)
            ig4 = _batch_inv(den, p, pinv)
            _g3_tail(uu, vv, ig4, ou, ov, f, p, pinv)

    def _run_dbl(self, u1, v1, ou, ov, bad):
        p, pinv, f = self.p, self.pinv, self.f
        n = u1.shape[1]
        g = self.genus
        if g == 1:
            den = np.empty(n, dtype=np.int64)
            _g1_den_dbl(u1, v1, den, bad, p)
            inv = _batch_inv(den, p, pinv)
            _g1_fin_dbl(u1, v1, inv, ou, ov, f, p, pinv)
        elif g == 2:
            den = np.empty(n, dtype=np.int64)
            w1a = np.empty(n, dtype=np.int64)
            w0a = np.empty(n, dtype=np.int64)
            ea = np.empty(n, dtype=np.int64)
            _g2_phase1_dbl(u1, v1, den, w1a, w0a, ea, bad, p, pinv)
            invn = _batch_inv(den, p, pinv)
            uu = np.empty((4, n), dtype=np.int64)
            vv = np.empty((4, n), dtype=np.int64)
            den2 = np.empty(n, dtype=np.int64)
            _g2_phase2_dbl(u1, v1, invn, w1a, ea, uu, vv, den2, bad, f, p, pinv)
            inv2 = _batch_inv(den2, p, pinv)
            _g2_tail(uu, vv, den2, inv2, ou, ov, f, p, pinv)
        else:
            wa = np.empty((3, n), dtype=np.int64)
            den = np.empty(n, dtype=np.int64)
            _g3_w_dbl(u1, v1, wa, den, bad, p)
            iw2 = _batch_inv(den, p, pinv)
            qa = np.empty((2, n), dtype=np.int64)
            ra = np.empty((2, n), dtype=np.int64)
            _g3_div1(u1, wa, iw2, qa, ra, den, bad, p, pinv)
            ir1 = _batch_inv(den, p, pinv)
            spre = np.empty((3, n), dtype=np.int64)
            _g3_div2(wa, qa, ra, ir1, spre, den, bad, p, pinv)
            ir2 = _batch_inv(den, p, pinv)
            uu = np.empty((6, n), dtype=np.int64)
            vv = np.empty((6, n), dtype=np.int64)
            _g3_compose_dbl(u1, v1, ir2, spre, uu, vv, den, bad, f, p, pinv)
            ig4 = _batch_inv(den, p, pinv)
            _g3_tail(uu, vv, ig4, ou, ov, f, p, pinv)

    # -- divisor-level service ----------------------------------------------

    def add_pairs(self, pairs, ctx):
        u1, v1 = self.pack([a for a, _ in pairs])
        u2, v2 = self.pack([b for _, b in pairs])
        ou, ov, bad = self.combine(u1, v1, u2, v2)
        out = self.unpack(ou, ov)
        for i in np.flatnonzero(bad):
            ctx.ops -= 1  # scalar add re-counts this lane
            out[int(i)] = ctx.add(pairs[int(i)][0], pairs[int(i)][1])
        return out

    # -- canonical keys ------------------------------------------------------

    def fold_keys(self, u, v):
        n = u.shape[1]
        keys = np.empty((u.shape[0] + v.shape[0], n), dtype=np.int64)
        signs = np.empty(n, dtype=np.int8)
        _canonical_fold(u, v, keys, signs, self.p)
        return keys, signs
