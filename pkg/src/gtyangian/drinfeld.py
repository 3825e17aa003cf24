"""Highest weights, Drinfeld polynomials, the non-crossing predicates, and
the tensor-to-skew correspondence."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    HypothesisNotMetError,
    InternalInvariantViolation,
    NoHighestVectorError,
    NotDominantError,
    NotEigenError,
    NotNoncrossingError,
    OrderingViolationError,
)
from .exact import RatFunc, nullspace, rat, rational_roots
from .glmod import smat_to_dense
from .patterns import SuperShape, enumerate_patterns, is_covariant
from .spectra import zeta
from .yangian import YangianModule


def highest_weight_series(ym: YangianModule):
    """Eigenvalues of t_{ii}(u) on a joint highest vector.

    The vector is any kernel element of all raising t-coefficient matrices
    that is simultaneously an eigenvector of every t_{ii}(u).
    """
    size = ym.shape.size
    D = ym.dim
    rows = []
    for i in range(1, size + 1):
        for j in range(i + 1, size + 1):
            mat = ym.t[(i, j)]
            den = mat.master_denominator()
            coeffs = {}
            for (a, b), v in mat.entries.items():
                num = v.num * (den // v.den)
                for p, c in enumerate(num.coeffs):
                    if c:
                        coeffs.setdefault(p, {})[(a, b)] = c
            for p in sorted(coeffs):
                rows.extend(smat_to_dense(coeffs[p], D, D))
    kernel = nullspace(rows) if rows else [
        [Fraction(int(i == j)) for j in range(D)] for i in range(D)
    ]
    if not kernel:
        raise NoHighestVectorError("the joint kernel of the raising operators is zero")
    for vec in kernel:
        series = _eigen_series(ym, vec)
        if series is not None:
            return series
    raise NotEigenError("no kernel vector is a simultaneous t_{ii}(u) eigenvector")


def _eigen_series(ym: YangianModule, vec):
    size = ym.shape.size
    out = []
    support = [a for a, x in enumerate(vec) if x]
    pivot = support[0]
    for i in range(1, size + 1):
        mat = ym.t[(i, i)]
        image = {}
        for (a, b), v in mat.entries.items():
            if vec[b]:
                cur = image.get(a)
                term = v * vec[b]
                image[a] = term if cur is None else cur + term
        lam = image.get(pivot)
        if lam is None:
            return None
        lam = lam * RatFunc.constant(Fraction(1) / vec[pivot])
        for a in range(ym.dim):
            got = image.get(a, RatFunc.constant(0))
            want = lam * RatFunc.constant(vec[a])
            if got != want:
                return None
        out.append(lam)
    return out


@dataclass(frozen=True)
class DrinfeldData:
    """Root multisets of the P_k (k != m) and of Q_0, Q_1."""

    m: int
    n: int
    P: tuple  # tuple of (k, sorted tuple of roots)
    Q0: tuple
    Q1: tuple

    def to_json_dict(self):
        return {
            "P": {str(k): [str(r) for r in roots] for k, roots in self.P},
            "Q0": [str(r) for r in self.Q0],
            "Q1": [str(r) for r in self.Q1],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


def _string_roots(f: RatFunc, step: int):
    """Roots of P from P(u+step)/P(u) = f; step is +1 or -1."""
    if f == RatFunc.constant(1):
        return []
    num_roots, rem = rational_roots(f.num)
    if rem.degree > 0:
        raise NotDominantError("numerator has irrational roots")
    den_roots, rem = rational_roots(f.den)
    if rem.degree > 0:
        raise NotDominantError("denominator has irrational roots")
    if len(num_roots) != len(den_roots):
        raise NotDominantError("numerator and denominator degrees differ")
    by_class_num = {}
    by_class_den = {}
    for x in num_roots:
        by_class_num.setdefault(x - math.floor(x), []).append(x)
    for x in den_roots:
        by_class_den.setdefault(x - math.floor(x), []).append(x)
    if set(by_class_num) != set(by_class_den):
        raise NotDominantError("root strings do not pair up")
    roots = []
    for cls in by_class_num:
        nums = sorted(by_class_num[cls], reverse=True)
        dens = sorted(by_class_den[cls], reverse=True)
        if len(nums) != len(dens):
            raise NotDominantError("root strings do not pair up")
        for nr, dr in zip(nums, dens):
            if step == 1:
                # den root d is the top of a string {n+1, ..., d}
                lo, hi = nr + 1, dr
            else:
                # den root d is the bottom of a string {d, ..., n-1}
                lo, hi = dr, nr - 1
            count = hi - lo
            if count < 0 or count != int(count):
                raise NotDominantError("no integer-spaced string fits the ratio")
            x = lo
            while x <= hi:
                roots.append(x)
                x += 1
    return sorted(roots)


def drinfeld_data(hw, m: int, n: int) -> DrinfeldData:
    """Telescope the highest-weight ratios into root multisets."""
    size = m + n
    if len(hw) != size:
        raise ValueError("highest weight series has the wrong length")
    P = []
    for k in range(1, size):
        if k == m:
            continue
        ratio = hw[k - 1] / hw[k]
        step = 1 if k < m else -1
        P.append((k, tuple(_string_roots(ratio, step))))
    if m >= 1 and n >= 1:
        ratio = hw[m - 1] / hw[m]
        q0, rem = rational_roots(ratio.num)
        if rem.degree > 0:
            raise NotDominantError("Q0 has irrational roots")
        q1, rem = rational_roots(ratio.den)
        if rem.degree > 0:
            raise NotDominantError("Q1 has irrational roots")
        Q0, Q1 = tuple(sorted(q0)), tuple(sorted(q1))
    else:
        Q0, Q1 = (), ()
    return DrinfeldData(m, n, tuple(P), Q0, Q1)


def drinfeld_of_tensor(shape: SuperShape, theta, h) -> DrinfeldData:
    """Closed-form Drinfeld data of L_h(lam^(1)) x ... x L_h(lam^(M))."""
    h = rat(h)
    m, n = shape.m, shape.n
    for lam in theta:
        if not is_covariant(shape, tuple(lam)):
            raise ValueError(f"{lam} is not covariant")
    P = []
    for i in range(1, m):
        roots = []
        for lam in theta:
            lo = -(lam[i - 1] - 1 + h)
            hi = -(lam[i] + h)
            x = lo
            while x <= hi:
                roots.append(x)
                x += 1
        P.append((i, tuple(sorted(roots))))
    for j in range(1, n):
        roots = []
        for lam in theta:
            lo = lam[m + j] - h
            hi = lam[m + j - 1] - 1 - h
            x = lo
            while x <= hi:
                roots.append(x)
                x += 1
        P.append((m + j, tuple(sorted(roots))))
    q0 = sorted(-(lam[m - 1] + h) for lam in theta)
    q1 = sorted(lam[m] - h for lam in theta)
    # cancel non-coprime pairs (only possible through zero weights)
    q0c, q1c = list(q0), list(q1)
    for x in list(q0c):
        if x in q1c:
            q0c.remove(x)
            q1c.remove(x)
    return DrinfeldData(m, n, tuple(P), tuple(q0c), tuple(q1c))


# ---------------------------------------------------------------------------
# non-crossing predicates


def strong_noncrossing(shape: SuperShape, theta, h=0) -> bool:
    """Injectivity of the diagonal GT eigenvalue tuples over the tensor basis."""
    h = rat(h)
    seen = set()
    tuples_sets = []
    for lam in theta:
        pats = enumerate_patterns(shape, tuple(lam))
        tuples_sets.append(pats)
    size = shape.size

    def rec(s, acc):
        if s == len(tuples_sets):
            key = tuple(acc)
            if key in seen:
                return False
            seen.add(key)
            return True
        for p in tuples_sets[s]:
            vals = tuple(zeta(p, k, 0, h) for k in range(1, size + 1))
            nxt = tuple(a * b for a, b in zip(acc, vals)) if acc else vals
            if not rec(s + 1, nxt):
                return False
        return True

    return rec(0, ())


def _ks(shape, lam, literal: bool = False):
    """The string-length subscript k_s.

    literal=True reads "maximal subscript with lam_k > 0" over all of
    1..m+n; the default caps it at the even block (the quantity actually
    used by the row-m restriction argument), which is what makes the
    inequality criterion match the operational one.
    """
    top = shape.size if literal else shape.m
    last = 0
    for k in range(1, top + 1):
        if lam[k - 1] > 0:
            last = k
    return last


def _is_js(shape, lam):
    """(i_s, j_s): minimal/maximal 1 <= i <= n-1 with lam_{m+i} > lam_{m+i+1};
    (0, n) when the odd part is constant."""
    m, n = shape.m, shape.n
    drops = [i for i in range(1, n) if lam[m + i - 1] > lam[m + i]]
    if not drops:
        return 0, n
    return min(drops), max(drops)


def arithmetic_noncrossing(
    shape: SuperShape, theta, pairs: str = "all", literal_k: bool = False
) -> bool:
    """The explicit inequalities of the semisimplicity criterion.

    pairs = "all": every ordered pair (s, t) with the stated premises;
    pairs = "adjacent": t = s + 1 after sorting factors by descending lam_1.
    literal_k reproduces the verbatim k_s reading (kept as a cross-check; it
    disagrees with the operational predicate, see the comparison suite).
    """
    m, n = shape.m, shape.n
    if n < 1:
        raise HypothesisNotMetError("the criterion requires n >= 1")
    theta = [tuple(lam) for lam in theta]
    for lam in theta:
        if not is_covariant(shape, lam):
            raise ValueError(f"{lam} is not covariant")
        if not any(lam):
            raise HypothesisNotMetError("all weights must be nontrivial")
    if pairs == "adjacent":
        order = sorted(range(len(theta)), key=lambda s: (-theta[s][0], s))
        index_pairs = [(order[t], order[t + 1]) for t in range(len(theta) - 1)]
        index_pairs += [(b, a) for (a, b) in index_pairs]
    else:
        index_pairs = [
            (s, t) for s in range(len(theta)) for t in range(len(theta)) if s != t
        ]
    for s, t in index_pairs:
        lam_s, lam_t = theta[s], theta[t]
        if lam_s[0] >= lam_t[0]:
            ks = _ks(shape, lam_s, literal_k)
            if max(0, lam_s[m - 1] - n) - lam_t[0] < ks - 1:
                return False
        i_s, _ = _is_js(shape, lam_s)
        _, j_t = _is_js(shape, lam_t)
        if (
            lam_s[m] <= lam_t[m]
            and i_s >= 1
            and j_t <= n - 1
            and j_t >= i_s
            and lam_t[m + n - 1] - lam_s[m] < j_t - i_s + 1
        ):
            return False
    return True


def tame_tensor_predicate(collections) -> bool:
    """True iff all pairwise shift differences are non-integers and every
    collection passes the strong non-crossing condition.

    collections: sequence of (shape, theta, h).
    """
    items = [(shape, [tuple(x) for x in theta], rat(h)) for shape, theta, h in collections]
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if (items[a][2] - items[b][2]).denominator == 1:
                return False
    return all(strong_noncrossing(shape, theta, h) for shape, theta, h in items)


# ---------------------------------------------------------------------------
# Theorem: tensor factor as a skew module


@dataclass(frozen=True)
class SkewPlan:
    """Output of the tensor -> skew correspondence."""

    lam: tuple  # gl(m+r|n) weight
    mu: tuple  # gl_r weight
    r: int
    tails: tuple  # the M-1 constant-headed companion weights


def theta_to_skew(shape: SuperShape, theta, h=0) -> SkewPlan:
    """The (lam, mu, r) of the skew module matching V_h(theta), plus the tail
    weights; factors must be ordered per the construction's normalization."""
    m, n = shape.m, shape.n
    theta = [tuple(lam) for lam in theta]
    if not strong_noncrossing(shape, theta, h):
        raise NotNoncrossingError("theta fails the strong non-crossing condition")
    M = len(theta)
    for s in range(M - 1):
        for i in range(1, m):
            if not theta[s][i] > theta[s + 1][i - 1] - 1:
                raise OrderingViolationError(
                    f"need lam_{i + 1}^({s + 1}) > lam_{i}^({s + 2}) - 1; reorder the factors"
                )
    q = [1]
    for s in range(M - 1):
        gap = theta[s][m - 1] - theta[s + 1][0]
        if gap < m - 1:
            raise OrderingViolationError(
                f"lam_m^({s + 1}) - lam_1^({s + 2}) = {gap} < m - 1; reorder the factors"
            )
        q.append(q[-1] + gap)
    r = q[-1] - 1
    qM = q[-1]
    lam = []
    for s in range(M - 1):
        off = q[s] - qM
        if s == 0:
            lam.extend(theta[0][i - 1] + off for i in range(1, m))
        else:
            lam.extend(theta[s][i - 1] + off for i in range(2, m))
        lam.extend([theta[s][m - 1] + off] * (q[s + 1] - q[s] - m + 2))
    lam.extend(theta[M - 1][i - 1] for i in range(2 if M > 1 else 1, m + 1))
    lam.extend(theta[M - 1][m + j - 1] for j in range(1, n + 1))
    mu = []
    for s in range(M - 1):
        mu.extend([theta[s][m - 1] + q[s] - qM] * (q[s + 1] - q[s]))
    lam = tuple(lam)
    mu = tuple(mu)
    if len(lam) != m + r + n or len(mu) != r:
        raise InternalInvariantViolation("skew plan has inconsistent lengths")
    amb = SuperShape(m + r, n)
    if not is_covariant(amb, lam):
        raise InternalInvariantViolation(f"constructed weight {lam} is not covariant")
    for i in range(1, r + 1):
        if not lam[m + i - 1] <= mu[i - 1] <= lam[i - 1]:
            raise InternalInvariantViolation("constructed mu violates admissibility")
    tails = tuple(
        tuple([theta[b][m - 1]] * m + list(theta[b][m:])) for b in range(M - 1)
    )
    return SkewPlan(lam, mu, r, tails)
