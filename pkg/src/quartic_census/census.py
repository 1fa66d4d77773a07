"""Exact desk-scale censuses: dihedral-field counts by conductor and by
discriminant, the symmetric-family count by discriminant, and a brute-force
class oracle for tiny bounds.

Enumeration strategy per family: substitute (u, v, x) with y built from
(u, v), so the bound becomes |y(x^2-y)| <= M (conductor) or |y(x^2-y)^2| <= M
(discriminant).  The outer loop runs over the small cofactor (A or u), the
inner dimension is a numpy x-array, and the cofactor ranges come from exact
integer window endpoints computed once per |x|.  Shards partition the outer
loop; every aggregate is a commutative sum, so shard count cannot change any
output.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .arith import PackedSquarefree, factorize, vec_is_square, vec_isqrt
from .forms import BinQuartForm, FamilyCoords, disc_quartic
from .maximality import vec_is_maximal_at

#: int64 safety caps for the vectorized engines (explicit errors above).
X_MAX_CONDUCTOR = 250_000_000
X_MAX_DISC = 200_000_000


@dataclass(frozen=True)
class CensusRecord:
    coords: FamilyCoords
    disc: int
    conductor: int
    galois: str
    r2: int

    def csv_row(self) -> str:
        c = self.coords
        return (
            f"{c.family},{c.A},{c.B},{c.C},{self.disc},{self.conductor},"
            f"{self.galois},{self.r2}"
        )

    def sort_key(self):
        c = self.coords
        return (abs(self.conductor), c.family, c.A, c.B, c.C)


@dataclass
class CensusConfig:
    x: int
    mode: str = "conductor"  # or "discriminant"
    galois: str = "d4"  # or "v4"
    r2: int | None = None
    families: tuple[int, ...] = (1, 2, 3)
    shards: int = 1
    emit: bool = False

    def __post_init__(self):
        self.families = tuple(sorted(set(self.families)))
        if self.x < 1:
            raise ValueError("X must be >= 1")
        if self.mode not in ("conductor", "discriminant"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.galois not in ("d4", "v4"):
            raise ValueError(f"unsupported galois filter {self.galois!r}")
        if self.r2 not in (None, 0, 1, 2):
            raise ValueError("r2 filter must be None, 0, 1 or 2")
        if any(f not in (1, 2, 3) for f in self.families):
            raise ValueError("families must be within {1,2,3}")
        if self.shards < 1:
            raise ValueError("shards must be >= 1")
        cap = X_MAX_CONDUCTOR if self.mode == "conductor" else X_MAX_DISC
        if self.x > cap:
            raise ValueError(
                f"X={self.x} exceeds the supported bound {cap} for {self.mode} mode"
            )


class Tallies:
    """Order-independent aggregation of census results."""

    def __init__(self):
        self.counts = np.zeros((4, 3), dtype=np.int64)  # [family][r2]
        self.excluded = {"c4": 0, "v4": 0, "reducible": 0, "boundary_orbits": 0}
        self.records: list[CensusRecord] = []

    def merge(self, other: "Tallies") -> "Tallies":
        self.counts += other.counts
        for k in self.excluded:
            self.excluded[k] += other.excluded[k]
        self.records.extend(other.records)
        return self

    def total(self, r2: int | None = None) -> int:
        if r2 is None:
            return int(self.counts.sum())
        return int(self.counts[:, r2].sum())


# ---------------------------------------------------------------------------
# exact integer window endpoints


def product_windows(x2: int, bound: int) -> list[tuple[int, int]]:
    """Integer intervals of y with y != 0, y != x2 and |y(x2-y)| <= bound."""
    return _windows(x2, bound, False)


def disc_windows(x2: int, bound: int) -> list[tuple[int, int]]:
    """Integer intervals of y with y != 0, y != x2 and |y(x2-y)^2| <= bound."""
    return _windows(x2, bound, True)


def _windows(x2: int, bound: int, square: bool) -> list[tuple[int, int]]:
    if bound < 1:
        return []
    e = 2 if square else 1

    def ok(y: int) -> bool:
        return y != 0 and y != x2 and abs(y) * abs(x2 - y) ** e <= bound

    out = []
    if ok(-1):
        t = _grow(lambda v: ok(-v), _approx_neg(x2, bound, e))
        if t >= 1:
            out.append((-t, -1))
    peak_y = max(x2 // (e + 1), 1)
    peak = peak_y * (x2 - peak_y) ** e
    if x2 <= 1 or peak <= bound:
        if ok(1) or ok(2):
            hi = _grow(ok, _approx_outer(x2, bound, e))
            if hi >= 1:
                out.extend(_split_at(1, hi, x2))
    else:
        if ok(1):
            r1 = _grow(ok, _approx_inner(x2, bound, e))
            if r1 >= 1:
                out.append((1, r1))
        else:
            r1 = 0
        # the run straddling x^2 is nonempty iff one of its endpoints is
        if ok(x2 - 1) or ok(x2 + 1):
            lo2 = _search_down(ok, x2, r1)
            hi2 = _grow(ok, _approx_outer(x2, bound, e)) if ok(x2 + 1) else x2 - 1
            if lo2 is not None and hi2 >= lo2:
                out.extend(_split_at(lo2, hi2, x2))
    return out


def _split_at(lo: int, hi: int, x2: int) -> list[tuple[int, int]]:
    if lo <= x2 <= hi:
        parts = []
        if x2 > lo:
            parts.append((lo, x2 - 1))
        if x2 + 1 <= hi:
            parts.append((x2 + 1, hi))
        return parts
    return [(lo, hi)]


def _grow(ok, seed: int) -> int:
    t = max(seed, 0)
    while ok(t + 1):
        t += 1
    while t >= 1 and not ok(t):
        t -= 1
    return t


def _search_down(ok, x2: int, floor: int):
    """Smallest y > floor with ok(y), walking down from x2-1 where the
    condition region around x2 is an interval."""
    t = x2 - 1
    if t <= floor or not ok(t):
        # nothing between the inner run and x2 on this side; the straddling
        # interval may still start at x2+1, handled by the caller via _grow
        return x2 + 1 if ok(x2 + 1) else None
    # binary search for the left edge of the straddling interval
    lo, hi = floor + 1, t
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _approx_neg(x2: int, bound: int, e: int) -> int:
    if e == 1:
        return (isqrt(x2 * x2 + 4 * bound) - x2) // 2
    t = max(int(bound ** (1.0 / 3.0)), 1)
    for _ in range(64):
        nt = max(int(bound // max((x2 + t) ** 2, 1)), 1)
        if abs(nt - t) <= 1:
            break
        t = (t + nt) // 2 or 1
    return t


def _approx_outer(x2: int, bound: int, e: int) -> int:
    if e == 1:
        return (x2 + isqrt(x2 * x2 + 4 * bound)) // 2
    t = x2 + max(int(bound ** (1.0 / 3.0)), 1)
    for _ in range(64):
        nt = x2 + max(int(math.isqrt(bound // max(t, 1))), 1)
        if abs(nt - t) <= 1:
            break
        t = (t + nt) // 2
    return t


def _approx_inner(x2: int, bound: int, e: int) -> int:
    if e == 1:
        s = x2 * x2 - 4 * bound
        return (x2 - isqrt(s)) // 2 if s >= 0 else x2 // 2
    t = 1
    for _ in range(64):
        nt = max(int(bound // max((x2 - t) ** 2, 1)), 1)
        if abs(nt - t) <= 1:
            break
        t = (t + nt) // 2 or 1
    return min(t, x2 // 3)


class _Windows:
    """Per-|x| exact window endpoints: one negative run and up to three
    positive runs (the straddling run splits at y = x^2)."""

    def __init__(self, bound: int, square: bool):
        self.bound = bound
        self.square = square
        # beyond xmax every piece is empty: the cheapest admissible point is
        # y = x^2 - 1 with value x^2 - 1 for either exponent
        xmax = isqrt(bound + 1)
        assert _windows((xmax + 1) ** 2, bound, square) == []
        self.xmax = xmax
        n = xmax + 1
        self.neg_hi = np.zeros(n, dtype=np.int64)
        self.pos_lo = np.ones((3, n), dtype=np.int64)
        self.pos_hi = np.zeros((3, n), dtype=np.int64)
        for x in range(n):
            k = 0
            for lo, hi in _windows(x * x, bound, square):
                if hi < 0:
                    self.neg_hi[x] = -lo
                else:
                    self.pos_lo[k, x], self.pos_hi[k, x] = lo, hi
                    k += 1
        self.max_abs_y = int(max(self.neg_hi.max(initial=0), self.pos_hi.max(initial=0)))

    def contains_mask(self, ax: np.ndarray, y: int) -> np.ndarray:
        """Vectorized membership of a fixed y in the window at each |x|."""
        if y < 0:
            return self.neg_hi[ax] >= -y
        m = np.zeros(len(ax), dtype=bool)
        for k in range(3):
            m |= (self.pos_lo[k, ax] <= y) & (y <= self.pos_hi[k, ax])
        return m


def _ceil_div(a, b):
    return -((-a) // b)


def _ragged(idx, starts, counts, step: int):
    """Expand stepped ranges: for each k, counts[k] values starts[k]+step*j.

    Returns (gathered idx entries, values) as flat arrays."""
    counts = np.maximum(counts, 0)
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    nz = counts > 0
    idx, starts, counts = idx[nz], starts[nz], counts[nz]
    row = np.repeat(np.arange(len(counts)), counts)
    offs = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    return idx[row], starts[row] + step * offs


# ---------------------------------------------------------------------------
# shared candidate classification


class _Ctx:
    """Read-only tables shared by all units of one census run."""

    def __init__(self, config: CensusConfig):
        self.config = config
        X = config.x
        if config.mode == "conductor":
            self.square = False
            self.bounds = {1: (X - 1) // 4, 2: 4 * X - 1, 3: 4 * X - 1}
        else:
            self.square = True
            self.bounds = {1: (X - 1) // 4, 2: 16 * X - 1, 3: 16 * X - 1}
        self.windows = {i: _Windows(self.bounds[i], self.square) for i in config.families}
        # families 2 and 3 have x^2 - y = 4(B^2-4AC), so admissible y satisfy
        # |x^2-y| >= 4 and |y| <= bound/4^e; family 1 has no such gain
        div = 4 if config.mode == "conductor" else 16
        self.y_eff = {
            i: w.max_abs_y if i == 1 else min(w.max_abs_y, self.bounds[i] // div)
            for i, w in self.windows.items()
        }
        lim = max(max(self.y_eff.values()), 16)
        # one packed table serves cofactors and quadratic-cover discriminants
        self.sf = PackedSquarefree(lim)

    def odd_sf(self, n: np.ndarray) -> np.ndarray:
        """Squarefree test of the odd part of |n| (entries must be nonzero)."""
        a = np.abs(n)
        a = a // (a & -a)  # strip the 2-power
        return self.sf.lookup(a)

    def units(self) -> list[tuple[int, int]]:
        out = []
        for fam in self.config.families:
            y_eff = self.y_eff[fam]
            if fam == 1:
                out.extend((1, a) for a in range(1, isqrt(y_eff // 4 or 1) + 1))
            elif fam == 2:
                out.extend((2, u) for u in range(1, isqrt(y_eff) + 1))
            else:
                out.extend((3, u) for u in range(0, isqrt(y_eff) + 1))
        return out

    def run_unit(self, fam: int, outer: int, tal: Tallies) -> None:
        if fam == 1:
            _family1_unit(self, outer, tal)
        elif fam == 2:
            _family2_unit(self, outer, tal)
        else:
            _family3_unit(self, outer, tal)


def _classify_and_tally(ctx: _Ctx, fam: int, A, B, C, y, w, tal: Tallies, boundary=False):
    """Maximality filter + Galois/r2 classification of candidate coordinate
    arrays, accumulated into the tallies.

    y is the cofactor product (4AC, uv, or u^2+v^2), w = B^2-4AC.  The odd
    primes are handled by squarefree-odd-part tests, p=2 by the clause set;
    jointly these are exactly global maximality.
    """
    if len(A) == 0:
        return
    cfg = ctx.config
    ok = A != 0
    ok &= np.gcd(np.gcd(np.abs(A), np.abs(B)), np.abs(C)) == 1
    if fam == 1:
        ok &= (A % 4 != 0) & (C % 4 != 0)
        ok &= ctx.odd_sf(A) & ctx.odd_sf(C) & ctx.odd_sf(w)
    elif fam == 2:
        ok &= ctx.odd_sf(4 * A - 2 * B + C) & ctx.odd_sf(4 * A + 2 * B + C)
        ok &= ctx.odd_sf(w)
    else:
        ok &= ctx.odd_sf(w)
        ok = _fam3_deep_condition(ctx, y, A, B, C, ok)
    ok &= vec_is_maximal_at(fam, A, B, C, 2)
    if not ok.any():
        return
    A, B, C, y, w = A[ok], B[ok], C[ok], y[ok], w[ok]

    conductor = 4 * y * w if fam == 1 else y * w
    disc = conductor * w

    reducible = w == 1
    if fam == 3:
        reducible = reducible | _fam3_type1_pattern(A, B, C)
    v4 = ~reducible & vec_is_square(disc)
    c4 = ~reducible & ~v4 & vec_is_square(conductor)
    d4 = ~(reducible | v4 | c4)

    tal.excluded["reducible"] += int(reducible.sum())
    tal.excluded["c4"] += int(c4.sum())

    keep = v4 if cfg.galois == "v4" else d4
    if cfg.galois == "d4":
        tal.excluded["v4"] += int(v4.sum())
    if boundary:
        tal.excluded["boundary_orbits"] += int(keep.sum())

    r2v = _r2_vec(fam, A, B, C)
    if cfg.r2 is not None:
        keep = keep & (r2v == cfg.r2)
    for r2 in (0, 1, 2):
        tal.counts[fam][r2] += int((keep & (r2v == r2)).sum())

    if cfg.emit and keep.any():
        tag = cfg.galois
        for k in np.flatnonzero(keep):
            a, b, c = int(A[k]), int(B[k]), int(C[k])
            if boundary:
                alt = (c, b, a) if fam == 1 else (a, -b, c)
                a, b, c = min((a, b, c), alt)
            tal.records.append(
                CensusRecord(
                    FamilyCoords(fam, a, b, c),
                    int(disc[k]),
                    int(conductor[k]),
                    tag,
                    int(r2v[k]),
                )
            )


def _r2_vec(fam, A, B, C):
    r2 = np.full(len(A), 2, dtype=np.int64)
    if fam == 1:
        ac = A * C
        r2[ac < 0] = 1
        r2[(ac > 0) & (B * B - 4 * ac > 0) & (A * B < 0)] = 0
        return r2
    if fam == 2:
        u = 4 * A - 2 * B + C
        v = 4 * A + 2 * B + C
        uv = u * v
        r2[uv < 0] = 1
        r2[(uv > 0) & (B * B - 4 * A * C > 0) & (u * (4 * A - C) < 0)] = 0
        return r2
    # family 3: disc > 0 always, so r2 is 0 or 2 via the sign table
    H = 8 * A * (C - 2 * A) - 3 * B * B
    A2 = A * A
    Cm = C - 2 * A
    S = 3 * B**4 - 16 * A * B * B * Cm + 16 * A2 * Cm * Cm - 16 * A2 * B * B - 64 * A2 * A2
    r2[(S > 0) & (H < 0)] = 0
    return r2


def _fam3_type1_pattern(A, B, C):
    """Vectorized test for the involution-pair split that survives the
    family-3 maximality filters (scale factor forced to |m(a+c)| = 1)."""
    out = np.zeros(len(A), dtype=bool)
    for m in (1, -1):
        s2 = 1 - 4 * m * A
        b2 = 1 - m * C
        out |= vec_is_square(s2) & vec_is_square(b2) & (B * B == s2 * b2)
    return out


def _fam3_deep_condition(ctx: _Ctx, y, A, B, C, pre_ok):
    """Family-3 odd-prime depth condition on y = (4A-C)^2 + 4B^2: nonzero mod
    p^2 in general, but only mod p^3 at primes dividing both 4A-C and B."""
    yo = y // (y & -y)
    plain = ctx.sf.lookup(yo)
    out = pre_ok & plain
    tricky = np.flatnonzero(pre_ok & ~plain)
    if len(tricky):
        g = np.gcd(np.abs(4 * A - C), np.abs(B))
        for k in tricky:
            out[k] = _deep_check(int(yo[k]), int(g[k]))
    return out


def _deep_check(y_odd: int, g: int) -> bool:
    for p, e in factorize(y_odd).items():
        if e >= 2 and (g % p != 0 or e >= 3):
            return False
    return True


# ---------------------------------------------------------------------------
# per-family units


def _branches(w: _Windows, ax):
    """(sign, lo, hi) absolute-value branch arrays at the given |x| indices."""
    yield -1, np.ones(len(ax), dtype=np.int64), w.neg_hi[ax]
    for k in range(3):
        yield 1, w.pos_lo[k, ax], w.pos_hi[k, ax]


def _family1_unit(ctx: _Ctx, A: int, tal: Tallies):
    w = ctx.windows[1]
    xs = _pruned_xs(w, 4 * A * A)
    ax = np.abs(xs)
    step = 4 * A
    for sign, lo_a, hi_a in _branches(w, ax):
        lo = np.maximum(lo_a, step * (A + 1))
        first = _ceil_div(lo, step) * step
        counts = hi_a // step - first // step + 1
        xi, yabs = _ragged(xs, first, counts, step)
        if len(xi) == 0:
            continue
        cabs = yabs // step
        y = sign * yabs
        wq = xi * xi - y
        for sA in (1, -1):
            Av = np.full(len(xi), sA * A, dtype=np.int64)
            Cv = (sA * sign) * cabs
            _classify_and_tally(ctx, 1, Av, xi, Cv, y, wq, tal)
    # |C| = A: singleton orbit when C = A, flagged boundary pair when C = -A
    for sign in (1, -1):
        y0 = sign * 4 * A * A
        mask = w.contains_mask(ax, y0)
        if not mask.any():
            continue
        xi = xs[mask]
        y = np.full(len(xi), y0, dtype=np.int64)
        wq = xi * xi - y
        if sign > 0:
            for sA in (1, -1):
                Av = np.full(len(xi), sA * A, dtype=np.int64)
                _classify_and_tally(ctx, 1, Av, xi, Av.copy(), y, wq, tal)
        else:
            Av = np.full(len(xi), -A, dtype=np.int64)
            _classify_and_tally(ctx, 1, Av, xi, -Av, y, wq, tal, boundary=True)


def _pruned_xs(w: _Windows, outer_sq: int, parity: int | None = None):
    """Signed x values whose window can reach |y| >= outer_sq (conservative),
    optionally restricted to x = parity mod 2."""
    if outer_sq <= 1:
        xs = np.arange(-w.xmax, w.xmax + 1, dtype=np.int64)
    else:
        small = isqrt(4 * w.bound // outer_sq + 4) + 2
        big_lo = isqrt(max(outer_sq - 4 * (w.bound // outer_sq) - 8, 0))
        big_lo = max(big_lo - 2, 0)
        if small + 1 >= big_lo:
            a = np.arange(0, w.xmax + 1, dtype=np.int64)
        else:
            a = np.concatenate(
                [
                    np.arange(0, min(small, w.xmax) + 1, dtype=np.int64),
                    np.arange(min(big_lo, w.xmax + 1), w.xmax + 1, dtype=np.int64),
                ]
            )
        xs = np.concatenate([-a[a > 0][::-1], a])
    if parity is not None:
        xs = xs[(xs & 1) == parity]
    return xs


def _family2_unit(ctx: _Ctx, u: int, tal: Tallies):
    w = ctx.windows[2]
    xs = _pruned_xs(w, u * u, parity=u & 1)
    ax = np.abs(xs)
    for sign, lo_a, hi_a in _branches(w, ax):
        vlo = np.maximum(_ceil_div(lo_a, u), u + 1)
        vhi = hi_a // u
        for su in (1, -1):
            sv = su * sign
            u_v = su * u
            res = (sv * (-u_v - 2 * xs)) % 16
            first = vlo + (res - vlo) % 16
            xi, vabs = _ragged(xs, first, (vhi - first) // 16 + 1, 16)
            if len(xi) == 0:
                continue
            v_v = sv * vabs
            y = u_v * v_v
            _emit_family2(ctx, u_v, v_v, xi, y, tal)
    # |v| = |u| ties: v = u is the B = 0 singleton, v = -u the flagged pair
    for su in (1, -1):
        u_v = su * u
        mask = w.contains_mask(ax, u * u) & ((u_v + xs) % 8 == 0)
        if mask.any():
            xi = xs[mask]
            vv = np.full(len(xi), u_v, dtype=np.int64)
            _emit_family2(ctx, u_v, vv, xi, vv * u_v, tal)
    if u % 2 == 0:
        mask = w.contains_mask(ax, -u * u) & (xs % 8 == 0)
        if mask.any():
            xi = xs[mask]
            vv = np.full(len(xi), -u, dtype=np.int64)
            _emit_family2(ctx, u, vv, xi, -u * u * np.ones(len(xi), dtype=np.int64), tal, boundary=True)


def _emit_family2(ctx, u_v, v_v, xi, y, tal, boundary=False):
    A = (u_v + v_v + 2 * xi) >> 4
    B = (v_v - u_v) >> 2
    C = (u_v + v_v - 2 * xi) >> 2
    wq = (xi * xi - y) >> 2
    _classify_and_tally(ctx, 2, A, B, C, y, wq, tal, boundary=boundary)


def _family3_unit(ctx: _Ctx, u: int, tal: Tallies):
    w = ctx.windows[3]
    u2 = u * u
    for u_v in ((u, -u) if u else (0,)):
        xs = _pruned_xs(w, u2)
        xs = xs[(u_v + xs) % 8 == 0]
        if len(xs) == 0:
            continue
        ax = np.abs(xs)
        for k in range(3):
            lo_a, hi_a = w.pos_lo[k, ax], w.pos_hi[k, ax]
            t_lo = np.maximum(lo_a - u2, 4)
            t_hi = hi_a - u2
            valid = t_hi >= t_lo
            if not valid.any():
                continue
            vlo = vec_isqrt(np.maximum(t_lo - 1, 0)) + 1  # ceil sqrt
            vhi = vec_isqrt(np.maximum(t_hi, 0))
            vlo = vlo + (vlo & 1)  # v = 2B is even and positive
            vlo = np.maximum(vlo, 2)
            xi, v = _ragged(xs, vlo, np.where(valid, (vhi - vlo) // 2 + 1, 0), 2)
            if len(xi) == 0:
                continue
            y = u2 + v * v
            _emit_family3(ctx, u_v, v, xi, y, tal)
        # v = 0: B = 0 singleton
        if u > 0:
            mask = w.contains_mask(ax, u2)
            if mask.any():
                xi = xs[mask]
                _emit_family3(ctx, u_v, np.zeros(len(xi), dtype=np.int64), xi, np.full(len(xi), u2, dtype=np.int64), tal)


def _emit_family3(ctx, u_v, v, xi, y, tal):
    A = (u_v + xi) >> 3
    B = v >> 1
    C = (xi - u_v) >> 1
    wq = (y - xi * xi) >> 2
    _classify_and_tally(ctx, 3, A, B, C, y, wq, tal)


# ---------------------------------------------------------------------------
# drivers


def _run_shard(args):
    ctx, units = args
    tal = Tallies()
    for fam, outer in units:
        ctx.run_unit(fam, outer, tal)
    return tal.counts, tal.excluded, tal.records


_FORK_CTX = None


def _run_shard_fork(units):
    return _run_shard((_FORK_CTX, units))


def run_census(config: CensusConfig) -> Tallies:
    """Execute a census; deterministic for any shard count."""
    ctx = _Ctx(config)
    units = ctx.units()
    tal = Tallies()
    if config.shards == 1:
        for fam, outer in units:
            ctx.run_unit(fam, outer, tal)
    else:
        import multiprocessing as mp

        global _FORK_CTX
        _FORK_CTX = ctx
        chunks = [units[k :: config.shards] for k in range(config.shards)]
        with mp.get_context("fork").Pool(config.shards) as pool:
            for counts, excluded, records in pool.map(_run_shard_fork, chunks):
                part = Tallies()
                part.counts = counts
                part.excluded = excluded
                part.records = records
                tal.merge(part)
        _FORK_CTX = None
    tal.records.sort(key=CensusRecord.sort_key)
    return tal


def summarize(config: CensusConfig, tal: Tallies) -> dict:
    """Machine-readable summary in the documented schema."""
    from .asymptotics import main_term

    counts = {f"r2_{k}": tal.total(k) for k in (0, 1, 2)}
    mt = None
    if config.mode == "conductor" and config.galois == "d4":
        mt = main_term("d4_conductor", config.x, config.r2).value
    elif config.mode == "discriminant" and config.galois == "v4":
        mt = main_term("v4_disc", config.x).value
    total = tal.total(config.r2)
    out = {
        "x": config.x,
        "mode": config.mode,
        "galois": config.galois,
        "r2_filter": config.r2,
        "families": list(config.families),
        "counts": counts,
        "total": total,
        "per_family": {
            str(f): [int(v) for v in tal.counts[f]] for f in config.families
        },
        "excluded": dict(tal.excluded),
        "main_term": mt,
        "ratio": (total / mt) if mt else None,
    }
    return out


def count_d4_by_conductor(
    X: int,
    r2: int | None = None,
    families=(1, 2, 3),
    shards: int = 1,
    emit: bool = False,
):
    cfg = CensusConfig(x=X, mode="conductor", galois="d4", r2=r2, families=tuple(families), shards=shards, emit=emit)
    tal = run_census(cfg)
    return summarize(cfg, tal), tal


def count_d4_by_disc(X: int, families=(1, 2, 3), shards: int = 1, emit: bool = False):
    cfg = CensusConfig(x=X, mode="discriminant", galois="d4", families=tuple(families), shards=shards, emit=emit)
    tal = run_census(cfg)
    return summarize(cfg, tal), tal


def count_v4_by_disc(X: int) -> int:
    """Number of symmetric-family pairs (a, b), each its own class, that are
    irreducible with maximal ring and 0 < |4a(b-2a)(b+2a)| < sqrt(X).

    The strict irrational bound is exact over integers: value <= isqrt(X-1).
    Signs: (a,b), (a,-b), (-a,b), (-a,-b) are four distinct classes (two when
    b = 0); negating both coordinates preserves maximality, negating b alone
    does not, so both b signs are tested.
    """
    Y = isqrt(X - 1) if X > 1 else 0
    if Y < 12:
        return 0
    total = 0
    sf = PackedSquarefree(max(Y, 4))
    amax = 1
    while 4 * amax * (4 * amax - 1) <= Y:
        amax += 1
    for a in range(1, amax + 1):
        if a % 4 == 0:
            continue
        a_odd = a // (a & -a)
        if not sf[a_odd]:
            continue
        K = Y // (4 * a)
        if K < 1:
            continue
        b = np.arange(0, isqrt(4 * a * a + K) + 1, dtype=np.int64)
        t = b * b - 4 * a * a
        keep = (t != 0) & (np.abs(t) <= K)
        b, t = b[keep], t[keep]
        if len(b) == 0:
            continue
        to = np.abs(t)
        to = to // (to & -to)
        base = sf.lookup(to) & (np.gcd(np.int64(a), b) == 1)
        aA = np.full(len(b), a, dtype=np.int64)
        okp = base & vec_is_maximal_at(1, aA, b, aA, 2)
        okm = base & vec_is_maximal_at(1, aA, -b, aA, 2)
        total += 2 * int(okp.sum()) + 2 * int((okm & (b > 0)).sum())
    return total


# ---------------------------------------------------------------------------
# brute-force class oracle


_GEN_MATRICES = (
    (1, 1, 0, 1),
    (1, -1, 0, 1),
    (0, 1, 1, 0),
    (1, 0, 0, -1),
)


def _act_tuple(co, T):
    from .forms import GL2Mat, act_quartic

    return act_quartic(BinQuartForm(*co), GL2Mat(*T)).coeffs()


def brute_force_class_oracle(height: int, cap: int | None = None) -> list[dict]:
    """Ground-truth class list for tiny boxes: orbits of family forms with
    coefficients bounded by `height`, grouped by generator BFS within `cap`.

    Returns one entry per class: representative family coordinates, Galois
    tag, conductor, disc and r2, with cross-member consistency asserted.
    Only classes meeting the three families are produced (the census never
    needs the others); grouping is BFS over GL2(Z) generators, independent of
    the canonical-representative theory.
    """
    from .classify import family_real_signature, galois_tag
    from .forms import family_membership, from_form, to_form
    from .maximality import is_maximal
    from .resolvent import conductor_poly

    cap = cap or 3 * height
    seeds = []
    for fam in (1, 2, 3):
        for A in range(-height, height + 1):
            for B in range(-height, height + 1):
                for C in range(-height, height + 1):
                    co = to_form(FamilyCoords(fam, A, B, C))
                    if max(abs(v) for v in co.coeffs()) > height:
                        continue
                    if A != 0 and disc_quartic(co) != 0:
                        seeds.append(co.coeffs())
    seen: dict[tuple, int] = {}
    classes = []
    for seed in seeds:
        if seed in seen:
            continue
        orbit_id = len(classes)
        stack = [seed]
        members = []
        while stack:
            f = stack.pop()
            if f in seen:
                continue
            seen[f] = orbit_id
            members.append(f)
            for T in _GEN_MATRICES:
                g = _act_tuple(f, T)
                if max(abs(v) for v in g) <= cap and g not in seen:
                    stack.append(g)
        infos = []
        for f in members:
            F = BinQuartForm(*f)
            for fam in sorted(family_membership(F)):
                c = from_form(F, fam)
                if c.A == 0:
                    continue
                infos.append(
                    {
                        "family": fam,
                        "coords": c,
                        "tag": galois_tag(c).value,
                        "conductor": conductor_poly(c),
                        "disc": disc_quartic(F),
                        "r2": family_real_signature(c).r2,
                        "maximal": is_maximal(c).is_maximal,
                    }
                )
        if not infos:
            classes.append(None)
            continue
        tags = {i["tag"] for i in infos}
        discs = {i["disc"] for i in infos}
        maxs = {i["maximal"] for i in infos}
        assert len(tags) == 1 and len(discs) == 1 and len(maxs) == 1, infos
        conds = {abs(i["conductor"]) for i in infos}
        if infos[0]["tag"] in ("d4", "c4"):
            # the invariant conductor needs the distinguished J, which is
            # unique only outside the Klein case
            assert len(conds) == 1, infos
        classes.append(
            {
                "members": [i["coords"] for i in infos],
                "tag": infos[0]["tag"],
                "conductor": infos[0]["conductor"] if len(conds) == 1 else None,
                "disc": infos[0]["disc"],
                "r2": infos[0]["r2"],
                "maximal": infos[0]["maximal"],
            }
        )
    return [c for c in classes if c is not None]


# ---------------------------------------------------------------------------
# output helpers


def records_csv(tal: Tallies) -> str:
    lines = ["family,A,B,C,disc,conductor,galois,r2"]
    lines.extend(r.csv_row() for r in tal.records)
    return "\n".join(lines) + "\n"


def summary_json(summary: dict) -> str:
    return json.dumps(summary, sort_keys=True, separators=(",", ":"))


def output_hash(summary: dict, tal: Tallies | None = None) -> str:
    h = hashlib.sha256(summary_json(summary).encode())
    if tal is not None and tal.records:
        h.update(records_csv(tal).encode())
    return h.hexdigest()
