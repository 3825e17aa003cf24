"""Simple covariant gl(m|n)-modules materialized as exact sparse matrices.

Matrices are dicts {(target_row, source_col): Fraction}; column j of E gives
the expansion of E applied to the j-th basis vector.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InternalInvariantViolation, NotAdmissibleError
from .patterns import INVALID, SuperShape, enumerate_patterns, pattern_shift

# ---------------------------------------------------------------------------
# sparse matrix helpers (shared with the Yangian layer)


def smat_mul(A, B):
    cols = {}
    for (i, j), v in B.items():
        cols.setdefault(i, []).append((j, v))
    out = {}
    for (i, t), a in A.items():
        for j, b in cols.get(t, ()):
            key = (i, j)
            s = out.get(key, Fraction(0)) + a * b
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def smat_add(A, B):
    out = dict(A)
    for k, v in B.items():
        s = out.get(k, Fraction(0)) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def smat_scale(A, c):
    c = Fraction(c)
    if not c:
        return {}
    return {k: v * c for k, v in A.items()}


def smat_sub(A, B):
    return smat_add(A, smat_scale(B, -1))


def smat_eq(A, B) -> bool:
    return A == B


def smat_apply(A, vec):
    """A applied to a dense vector (list of Fractions)."""
    out = [Fraction(0)] * (len(vec))
    for (i, j), v in A.items():
        x = vec[j]
        if x:
            out[i] += v * x
    return out


def smat_to_dense(A, nrows, ncols):
    out = [[Fraction(0)] * ncols for _ in range(nrows)]
    for (i, j), v in A.items():
        out[i][j] = v
    return out


def super_commutator(A, B, pa: int, pb: int):
    """[A, B] = AB - (-1)^{pa pb} BA."""
    sign = -1 if (pa and pb) else 1
    return smat_sub(smat_mul(A, B), smat_scale(smat_mul(B, A), sign))


# ---------------------------------------------------------------------------


class GlModule:
    """L(lambda) with its Gelfand-Tsetlin basis and generator matrices."""

    def __init__(self, shape: SuperShape, weight, basis, e, f, h, parity):
        self.shape = shape
        self.weight = tuple(weight)
        self.basis = tuple(basis)
        self.index = {p.rows: i for i, p in enumerate(self.basis)}
        self._e = e  # k -> sparse matrix of E_{k,k+1}
        self._f = f  # k -> sparse matrix of E_{k+1,k}
        self._h = h  # k -> list of diagonal eigenvalues of E_{kk}
        self.parity = tuple(parity)
        self._gen_cache = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def generator(self, i: int, j: int):
        """Sparse matrix of e_{ij}, derived by bracketing Chevalley generators."""
        size = self.shape.size
        if not (1 <= i <= size and 1 <= j <= size):
            raise ValueError(f"generator indices ({i}, {j}) out of range")
        key = (i, j)
        if key in self._gen_cache:
            return self._gen_cache[key]
        if i == j:
            mat = {(a, a): Fraction(v) for a, v in enumerate(self._h[i - 1]) if v}
        elif j == i + 1:
            mat = self._e[i - 1]
        elif j == i - 1:
            mat = self._f[j - 1]
        elif i < j:
            a, b = self.generator(i, j - 1), self.generator(j - 1, j)
            mat = super_commutator(a, b, self.gen_parity(i, j - 1), self.gen_parity(j - 1, j))
        else:
            a, b = self.generator(i, j + 1), self.generator(j + 1, j)
            mat = super_commutator(a, b, self.gen_parity(i, j + 1), self.gen_parity(j + 1, j))
        self._gen_cache[key] = mat
        return mat

    def gen_parity(self, i: int, j: int) -> int:
        return (self.shape.parity(i) + self.shape.parity(j)) % 2

    def zz_degree(self, index: int):
        return self.basis[index].zz_degree()

    def generator_names(self):
        size = self.shape.size
        names = [(k, k) for k in range(1, size + 1)]
        names += [(k, k + 1) for k in range(1, size)]
        names += [(k + 1, k) for k in range(1, size)]
        return names

    def to_json(self) -> str:
        gens = {}
        for (i, j) in self.generator_names():
            mat = self.generator(i, j)
            gens[f"E_{i}_{j}"] = [[r, c, str(v)] for (r, c), v in sorted(mat.items())]
        payload = {
            "shape": [self.shape.m, self.shape.n],
            "weight": list(self.weight),
            "basis": [p.to_json() for p in self.basis],
            "parity": list(self.parity),
            "gens": gens,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _prod(factors) -> Fraction:
    out = Fraction(1)
    for x in factors:
        out *= x
    return out


def _ratio(num_factors, den_factors) -> Fraction:
    num = _prod(num_factors)
    den = _prod(den_factors)
    if den == 0:
        if num == 0:
            return Fraction(0)
        raise InternalInvariantViolation("vanishing denominator on a valid pattern move")
    return num / den


def build_module(shape: SuperShape, weight) -> GlModule:
    """Materialize L(weight) via the Gelfand-Tsetlin action formulas."""
    m, n = shape.m, shape.n
    size = shape.size
    basis = enumerate_patterns(shape, weight)
    index = {p.rows: i for i, p in enumerate(basis)}

    def tgt(p, k, i, sign):
        q = pattern_shift(p, k, i, sign)
        return None if q is INVALID else index[q.rows]

    h = []
    for k in range(1, size + 1):
        diag = []
        for p in basis:
            s = sum(p.rows[k - 1]) - (sum(p.rows[k - 2]) if k >= 2 else 0)
            diag.append(Fraction(s))
        h.append(diag)

    e = [dict() for _ in range(size - 1)]
    f = [dict() for _ in range(size - 1)]

    for col, p in enumerate(basis):
        l = {(k, i): p.l_coord(k, i) for k in range(1, size + 1) for i in range(1, k + 1)}

        # E_{k,k+1}, E_{k+1,k} for 1 <= k <= m-1: the classical gl_m formulas
        for k in range(1, m):
            for i in range(1, k + 1):
                row = tgt(p, k, i, +1)
                if row is not None:
                    c = -_ratio(
                        [l[(k + 1, j)] - l[(k, i)] for j in range(1, k + 2)],
                        [l[(k, j)] - l[(k, i)] for j in range(1, k + 1) if j != i],
                    )
                    if c:
                        e[k - 1][(row, col)] = c
                row = tgt(p, k, i, -1)
                if row is not None:
                    c = _ratio(
                        [l[(k - 1, j)] - l[(k, i)] for j in range(1, k)],
                        [l[(k, j)] - l[(k, i)] for j in range(1, k + 1) if j != i],
                    )
                    if c:
                        f[k - 1][(row, col)] = c

        # E_{m,m+1} and E_{m+1,m}: the odd simple pair
        if m >= 1 and n >= 1:
            theta_m = [p.theta(m, i) for i in range(1, m + 1)]
            for i in range(1, m + 1):
                sgn = (-1) ** (i - 1) * (-1) ** sum(theta_m[: i - 1])
                if theta_m[i - 1]:
                    row = tgt(p, m, i, +1)
                    if row is not None:
                        c = sgn * _ratio(
                            [l[(m, j)] - l[(m, i)] - 1 for j in range(1, i)],
                            [l[(m, j)] - l[(m, i)] for j in range(i + 1, m + 1)]
                            + [l[(m + 1, j)] - l[(m, i)] - 1 for j in range(1, m + 1) if j != i],
                        )
                        if c:
                            e[m - 1][(row, col)] = c
                else:
                    row = tgt(p, m, i, -1)
                    if row is not None:
                        c = sgn * _ratio(
                            [l[(m, i)] - l[(m + 1, m + 1)]]
                            + [l[(m, j)] - l[(m, i)] + 1 for j in range(i + 1, m + 1)]
                            + [l[(m - 1, j)] - l[(m, i)] for j in range(1, m)],
                            [l[(m, j)] - l[(m, i)] for j in range(1, i)],
                        )
                        if c:
                            f[m - 1][(row, col)] = c

        # E_{k,k+1} for m+1 <= k <= m+n-1
        for k in range(m + 1, size):
            theta_k = [p.theta(k, i) for i in range(1, m + 1)]
            theta_km1 = [p.theta(k - 1, i) for i in range(1, m + 1)]
            for i in range(1, m + 1):
                sgn = (-1) ** (sum(theta_k[: i - 1]) + sum(theta_km1[i:m]))
                if theta_k[i - 1] and not theta_km1[i - 1]:
                    row = tgt(p, k, i, +1)
                    if row is not None:
                        c = sgn * _ratio(
                            [l[(k, j)] - l[(k, i)] - 1 for j in range(1, m + 1) if j != i],
                            [l[(k + 1, j)] - l[(k, i)] - 1 for j in range(1, m + 1) if j != i],
                        )
                        if c:
                            e[k - 1][(row, col)] = c
            for i in range(m + 1, k + 1):
                row = tgt(p, k, i, +1)
                if row is not None:
                    c = -_ratio(
                        [
                            (l[(k, j)] - l[(k, i)]) * (l[(k, j)] - l[(k, i)] + 1)
                            for j in range(1, m + 1)
                        ]
                        + [l[(k + 1, j)] - l[(k, i)] for j in range(m + 1, k + 2)],
                        [
                            (l[(k + 1, j)] - l[(k, i)]) * (l[(k - 1, j)] - l[(k, i)] + 1)
                            for j in range(1, m + 1)
                        ]
                        + [l[(k, j)] - l[(k, i)] for j in range(m + 1, k + 1) if j != i],
                    )
                    if c:
                        e[k - 1][(row, col)] = c

    parity = [p.parity() for p in basis]
    # Lowerings through the odd rows are pinned by the raisings: in a simple
    # highest-weight module the solution f of [e_i, f] = delta_{ik} h_k with
    # weight -alpha_k is unique. The published closed form for these rows is
    # inconsistent (0/0 on valid moves), so they are solved for exactly.
    weights_by_index = [
        tuple(h[t][a] for t in range(size)) for a in range(len(basis))
    ]
    for k in range(m + 1, size):
        f[k - 1] = _solve_odd_lowering(size, len(basis), weights_by_index, e, h, k)
    return GlModule(shape, weight, basis, e, f, h, parity)


def _solve_odd_lowering(size, dim, wts, e_list, h_list, k):
    """Unique f with weight -alpha_k and [e_i, f] = delta_{ik}(h_k - h_{k+1}).

    Only used for k > m, where f and every e_i relevant sign reduce to plain
    commutators of an even operator, except the odd e_m; the supercommutator
    sign is still trivial because f is even (parities of k, k+1 agree).
    """
    from .exact import rref

    unk = []
    for c in range(dim):
        need = list(wts[c])
        need[k - 1] -= 1
        need[k] += 1
        need = tuple(need)
        for r in range(dim):
            if wts[r] == need:
                unk.append((r, c))
    if not unk:
        return {}
    pos = {rc: t for t, rc in enumerate(unk)}
    by_row = {}
    by_col = {}
    for idx, (r, c) in enumerate(unk):
        by_row.setdefault(r, []).append(idx)
        by_col.setdefault(c, []).append(idx)

    eqs = {}  # (i, a, b) -> {unknown index: coeff}

    def bump(key, idx, val):
        d = eqs.setdefault(key, {})
        s = d.get(idx, Fraction(0)) + val
        if s:
            d[idx] = s
        else:
            d.pop(idx, None)

    for i in range(1, size):
        e = e_list[i - 1]
        for (a, t), val in e.items():
            for idx in by_row.get(t, ()):  # (e f)(a, fc) += val * f[t, fc]
                bump((i, a, unk[idx][1]), idx, val)
            for idx in by_col.get(a, ()):  # (f e)(fr, t) += f[fr, a] * val
                bump((i, unk[idx][0], t), idx, -val)

    rhs_map = {}
    for a in range(dim):
        v = h_list[k - 1][a] - h_list[k][a]
        if v:
            rhs_map[(k, a, a)] = v
            eqs.setdefault((k, a, a), {})

    n = len(unk)
    aug = []
    for key in sorted(eqs):
        row = [Fraction(0)] * (n + 1)
        for idx, v in eqs[key].items():
            row[idx] = v
        row[n] = rhs_map.get(key, Fraction(0))
        aug.append(row)
    R, piv = rref(aug)
    if n in piv:
        raise InternalInvariantViolation(
            f"no lowering operator solves the relations at row {k} (bad raisings?)"
        )
    if len(piv) < n:
        raise InternalInvariantViolation(f"lowering operator at row {k} is not unique")
    x = [Fraction(0)] * n
    for r, p in enumerate(piv):
        x[p] = R[r][n]
    return {rc: v for rc, v in zip(unk, x) if v}


def verify_superalgebra(mod: GlModule):
    """Check [e_ij, e_kl] = d_jk e_il - (-1)^{(i+j)(k+l)} d_il e_kj for all pairs.

    Returns the list of violated quadruples (expected empty).
    """
    size = mod.shape.size
    violations = []
    gens = {}
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            gens[(i, j)] = mod.generator(i, j)
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            pij = mod.gen_parity(i, j)
            for k in range(1, size + 1):
                for lidx in range(1, size + 1):
                    pkl = mod.gen_parity(k, lidx)
                    lhs = super_commutator(gens[(i, j)], gens[(k, lidx)], pij, pkl)
                    rhs = {}
                    if j == k:
                        rhs = smat_add(rhs, gens[(i, lidx)])
                    if i == lidx:
                        sign = -1 if (pij and pkl) else 1
                        rhs = smat_add(rhs, smat_scale(gens[(k, j)], -sign))
                    if not smat_eq(lhs, rhs):
                        violations.append((i, j, k, lidx))
    return violations


def parity_consistency(mod: GlModule):
    """Even generators must preserve basis parity, odd generators flip it."""
    bad = []
    size = mod.shape.size
    for (i, j) in mod.generator_names():
        gp = mod.gen_parity(i, j)
        for (r, c), v in mod.generator(i, j).items():
            if v and (mod.parity[r] - mod.parity[c] - gp) % 2 != 0:
                bad.append((i, j, r, c))
    return bad


def singular_subspace(mod: GlModule, mu):
    """Indices of basis patterns whose rows 1..r are frozen at mu.

    Empty mu-slices give an empty list; only r beyond the even rank is an error.
    """
    mu = tuple(int(x) for x in mu)
    r = len(mu)
    if r == 0:
        return list(range(mod.dim))
    if r > mod.shape.m:
        raise NotAdmissibleError(f"r = {r} exceeds the even rank {mod.shape.m}")
    frozen = tuple(mu[:k] for k in range(1, r + 1))
    return [i for i, p in enumerate(mod.basis) if p.rows[:r] == frozen]


def singular_subspace_kernel(mod: GlModule, mu):
    """Same subspace by exact linear algebra: joint kernel of the gl_r raising
    operators intersected with the mu-weight space. Returns a basis."""
    from .exact import nullspace

    mu = tuple(int(x) for x in mu)
    r = len(mu)
    if r == 0:
        return [[Fraction(int(i == j)) for j in range(mod.dim)] for i in range(mod.dim)]
    rows = []
    for i in range(1, r + 1):
        mat = dict(mod.generator(i, i))
        for a in range(mod.dim):
            mat[(a, a)] = mat.get((a, a), Fraction(0)) - mu[i - 1]
        rows.extend(smat_to_dense(mat, mod.dim, mod.dim))
    for j in range(1, r + 1):
        for k in range(j + 1, r + 1):
            rows.extend(smat_to_dense(mod.generator(j, k), mod.dim, mod.dim))
    return nullspace(rows)
