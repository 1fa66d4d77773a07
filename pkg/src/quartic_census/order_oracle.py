"""Independent ground truth for maximality: build the rank-4 ring attached to
a quartic form and decide p-maximality by the radical / multiplier-ring test.

Nothing here knows about the family congruence criteria; agreement between the
two is a theorem, not a construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .forms import BinQuartForm


@dataclass(frozen=True)
class QuarticOrderTable:
    """Structure constants for the basis (1, z1, z2, z3): products[(i, j)] for
    1 <= i <= j <= 3 gives z_i*z_j = c0 + c1*z1 + c2*z2 + c3*z3."""

    products: tuple[tuple[int, int, int, int], ...]  # keyed (1,1),(1,2),(1,3),(2,2),(2,3),(3,3)

    _KEYS = ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3))

    def product(self, i: int, j: int) -> tuple[int, int, int, int]:
        if i > j:
            i, j = j, i
        return self.products[self._KEYS.index((i, j))]

    def mult(self, u, v):
        """Product of two elements given as length-4 coefficient sequences."""
        out = [
            u[0] * v[0],
            u[0] * v[1] + u[1] * v[0],
            u[0] * v[2] + u[2] * v[0],
            u[0] * v[3] + u[3] * v[0],
        ]
        for i in (1, 2, 3):
            ui = u[i]
            if ui == 0:
                continue
            for j in (1, 2, 3):
                vj = v[j]
                if vj == 0:
                    continue
                m = ui * vj
                c = self.product(i, j)
                out[0] += m * c[0]
                out[1] += m * c[1]
                out[2] += m * c[2]
                out[3] += m * c[3]
        return out

    def validate(self) -> None:
        """Associativity on all basis triples (commutativity is structural)."""
        basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
        for a in basis:
            for b in basis:
                for c in basis:
                    lhs = self.mult(self.mult(a, b), c)
                    rhs = self.mult(a, self.mult(b, c))
                    assert lhs == rhs, (a, b, c, lhs, rhs)


def _poly_mult(u, v):
    """Product of two cubics in t, coefficient lists low-to-high, length 7."""
    out = [0] * 7
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                if vj:
                    out[i + j] += ui * vj
    return out


def order_from_form(F: BinQuartForm) -> QuarticOrderTable:
    """Structure constants of Z + Z*z1 + Z*z2 + Z*z3 with z1 = a4*t,
    z2 = a4*t^2 + a3*t, z3 = a4*t^3 + a3*t^2 + a2*t for t a root of F(t,1).

    Products are expanded as polynomials in t and reduced with the exact
    pseudo-remainder a4*t^4 = -(a3 t^3 + a2 t^2 + a1 t + a0); the final change
    of basis divides out the accumulated a4 powers, and every division is
    checked exact (integrality of the table is a theorem, asserted here).
    """
    a4, a3, a2, a1, a0 = F.coeffs()
    if a4 == 0:
        raise ValueError("a4 must be nonzero")
    z = (
        [0, a4, 0, 0],
        [0, a3, a4, 0],
        [0, a2, a3, a4],
    )
    prods = []
    for i in range(3):
        for j in range(i, 3):
            raw = _poly_mult(z[i], z[j])  # degree <= 6
            # three pseudo-reduction steps: multiply the tail by a4 and
            # substitute a4 t^k = -(a3 t^{k-1} + ... + a0 t^{k-4})
            scale = 1
            for deg in (6, 5, 4):
                lead = raw[deg]
                if lead == 0:
                    continue
                raw = [a4 * v for v in raw]
                scale *= a4
                raw[deg] = 0
                raw[deg - 1] -= a3 * lead
                raw[deg - 2] -= a2 * lead
                raw[deg - 3] -= a1 * lead
                raw[deg - 4] -= a0 * lead
            # now raw = scale * (z_i z_j) in powers 1, t, t^2, t^3;
            # convert to the z-basis by back substitution
            c3, rem = divmod(raw[3], a4)
            assert rem == 0
            r2 = raw[2] - c3 * a3
            c2, rem = divmod(r2, a4)
            assert rem == 0
            r1 = raw[1] - c3 * a2 - c2 * a3
            c1, rem = divmod(r1, a4)
            assert rem == 0
            c0 = raw[0]
            coeffs = []
            for v in (c0, c1, c2, c3):
                q, rem = divmod(v, scale)
                assert rem == 0, "non-integral structure constant"
                coeffs.append(q)
            prods.append(tuple(coeffs))
    return QuarticOrderTable(tuple(prods))


def order_disc(o: QuarticOrderTable) -> int:
    """Determinant of the 4x4 trace-pairing matrix of the order."""
    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    # traces of basis elements from the regular representation
    tr = [4, 0, 0, 0]
    for k in (1, 2, 3):
        tr[k] = sum(_basis_product(o, k, j)[j] for j in range(4))
    G = [[0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(i, 4):
            col = _basis_product(o, i, j)
            v = sum(col[k] * tr[k] for k in range(4))
            G[i][j] = G[j][i] = v
    return _det4(G)


def _basis_product(o: QuarticOrderTable, i: int, j: int):
    if i == 0:
        col = [0, 0, 0, 0]
        col[j] = 1
        return col
    if j == 0:
        col = [0, 0, 0, 0]
        col[i] = 1
        return col
    return list(o.product(i, j))


def _det4(M) -> int:
    det = 0
    for c0 in range(4):
        for c1 in range(4):
            if c1 == c0:
                continue
            for c2 in range(4):
                if c2 in (c0, c1):
                    continue
                c3 = 6 - c0 - c1 - c2
                sign = _perm_sign((c0, c1, c2, c3))
                det += sign * M[0][c0] * M[1][c1] * M[2][c2] * M[3][c3]
    return det


def _perm_sign(p) -> int:
    s = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                s = -s
    return s


def _rref_kernel(rows, p, ncols):
    """Kernel basis of a matrix over F_p (rows of length ncols)."""
    M = [[x % p for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = (-M[ri][fc]) % p
        basis.append(v)
    return basis


def _p_radical(o: QuarticOrderTable, p: int):
    """Basis of the nilradical of O/pO as the kernel of x -> x^(p^e), p^e >= 4."""
    e = 1
    while p**e < 4:
        e += 1
    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    frob_cols = []
    for b in basis:
        w = _pow_mod(o, b, p, p)
        frob_cols.append(w)
    M = [[frob_cols[j][i] % p for j in range(4)] for i in range(4)]
    R = M
    for _ in range(e - 1):
        R = [[sum(M[i][k] * R[k][j] for k in range(4)) % p for j in range(4)] for i in range(4)]
    return _rref_kernel(R, p, 4)


def _pow_mod(o: QuarticOrderTable, v, n: int, p: int):
    r = [1, 0, 0, 0]
    b = [x % p for x in v]
    while n:
        if n & 1:
            r = [x % p for x in o.mult(r, b)]
        b = [x % p for x in o.mult(b, b)]
        n >>= 1
    return r


def _hnf_rows(gens):
    """Row HNF basis (4 rows, upper triangular, positive diagonal) of the
    lattice generated by the given length-4 integer rows."""
    M = [list(g) for g in gens]
    r = 0
    for c in range(4):
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(M[i][c]))
            i0 = nz[0]
            for i in nz[1:]:
                q = M[i][c] // M[i0][c]
                M[i] = [a - q * b for a, b in zip(M[i], M[i0])]
        nz = [i for i in range(r, len(M)) if M[i][c] != 0]
        if not nz:
            continue
        M[r], M[nz[0]] = M[nz[0]], M[r]
        if M[r][c] < 0:
            M[r] = [-x for x in M[r]]
        for i in range(r):
            q = M[i][c] // M[r][c]
            M[i] = [a - q * b for a, b in zip(M[i], M[r])]
        r += 1
    assert r == 4, "lattice does not have full rank"
    return M[:4]


def p_maximality_oracle(o: QuarticOrderTable, p: int) -> bool:
    """True iff Z_p tensor O is a maximal quartic ring over Z_p.

    Computes the p-radical ideal R (lift of the nilradical of O/pO plus pO)
    and tests whether the multiplier ring {x : x*R inside R} exceeds O; the
    order is p-maximal exactly when it does not.
    """
    rad = _p_radical(o, p)
    gens = [[p if i == j else 0 for j in range(4)] for i in range(4)]
    gens.extend(rad)
    B = _hnf_rows(gens)

    def coords(w):
        # solve z*B = w over Z (B upper triangular); exactness guaranteed
        # because R is an O-module
        w = list(w)
        z = [0] * 4
        for c in range(4):
            q, rem = divmod(w[c], B[c][c])
            assert rem == 0
            z[c] = q
            for k in range(4):
                w[k] -= q * B[c][k]
        assert all(x == 0 for x in w)
        return z

    basis = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    rows = [[0] * 4 for _ in range(16)]
    for i in range(4):
        for j in range(4):
            z = coords(o.mult(basis[i], B[j]))
            for k in range(4):
                rows[4 * j + k][i] = z[k] % p
    # x = y/p multiplies R into R iff y*R is inside p*R; kernel beyond pO
    # means a strictly larger multiplier ring, i.e. non-maximality
    return len(_rref_kernel(rows, p, 4)) == 0
