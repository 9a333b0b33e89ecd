"""Relational complexity with certificates, binary tests and witnesses.

Only tuples with pairwise distinct entries are examined: for k >= 2, repeated
entries in one of two k-equivalent tuples are matched by repeats in the
other, and can be dropped.  So "k-types determine n-types for all n >= k"
reduces to injective n-tuples with k <= n <= degree.

Search strategy for a fixed k, with n ascending from k + 1.  Suppose k-types
already determine (n-1)-types and (u, a), (u, b) are k-equivalent n-tuples.
Deleting u_i leaves k-equivalent (n-1)-tuples, which are therefore conjugate
by an element of G_{u minus u_i}; if that stabilizer equals G_u, then a and b
are already conjugate under G_u.  Hence failures at n only occur over
(n-1)-tuples u where every entry is essential (|G_{u minus u_i}| > |G_u| for
all i).  Such tuples are prefix closed and conjugation invariant, so their
orbit representatives form a small tree; once a level is empty, every larger
n holds.
"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .constructions import describe, row_index
from .errors import BudgetExceeded, PreconditionError
from .perm import (
    Permutation,
    PermGroup,
    are_conjugate_tuples,
    orbits,
    point_stabilizer,
)
from .tuples import (
    DEFAULT_INDEX_BUDGET,
    OrbitIndex,
    cached_index,
    fingerprint,
    k_equivalent,
    rank_tuple,
)

DEFAULT_TUPLE_BUDGET = 10**8
TRIVIAL_GROUP_NOTE = (
    "trivial group: relational complexity fixed to 1 by convention "
    "(every nontrivial group has complexity >= 2)"
)


@dataclass
class Verdict:
    """Whether k-types determine n-types (injective tuples); failing verdicts carry a witness."""

    k: int
    n: int
    holds: bool
    witness: Optional[tuple] = None
    reason: str = "checked"

    def to_json(self) -> dict:
        out = {"k": self.k, "n": self.n, "holds": self.holds, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = [list(self.witness[0]), list(self.witness[1])]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Verdict":
        w = data.get("witness")
        if w is not None:
            w = (tuple(w[0]), tuple(w[1]))
        return cls(data["k"], data["n"], data["holds"], w, data.get("reason", "checked"))


@dataclass
class ComplexityCertificate:
    rc: int
    verdicts: list
    exhausted_to: int
    exact: bool
    degree: int
    note: Optional[str] = None

    def failing(self) -> list:
        return [v for v in self.verdicts if not v.holds]

    def to_json(self) -> dict:
        out = {
            "rc": self.rc,
            "exact": self.exact,
            "exhausted_to": self.exhausted_to,
            "degree": self.degree,
            "verdicts": [v.to_json() for v in self.verdicts],
        }
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ComplexityCertificate":
        return cls(
            data["rc"],
            [Verdict.from_json(v) for v in data["verdicts"]],
            data["exhausted_to"],
            data["exact"],
            data["degree"],
            data.get("note"),
        )


@dataclass
class NonBinarityWitness:
    """Two injective n-tuples that are 2-equivalent but not conjugate."""

    n: int
    xs: tuple
    ys: tuple
    pair_conjugators: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "x": list(self.xs),
            "y": list(self.ys),
            "pair_conjugators": [
                {"pair": [i, j], "conjugator": g.to_json()}
                for (i, j), g in sorted(self.pair_conjugators.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "NonBinarityWitness":
        conj = {
            (e["pair"][0], e["pair"][1]): Permutation(e["conjugator"])
            for e in data["pair_conjugators"]
        }
        return cls(data["n"], tuple(data["x"]), tuple(data["y"]), conj)


# -- orbit representatives --------------------------------------------------


def _children(u: tuple, S: PermGroup, degree: int, *, skip_fixed: bool):
    rest = [x for x in range(degree) if x not in u]
    for orb in orbits(S, rest):
        if skip_fixed and len(orb) == 1:
            continue
        a = orb[0]
        Sa = S if S.is_trivial() else point_stabilizer(S, (a,))
        yield u + (a,), Sa


def orbit_representatives(G: PermGroup, n: int, budget: int = DEFAULT_TUPLE_BUDGET) -> list:
    """Lex-least representative of every G-orbit on injective n-tuples, sorted.

    Built greedily: each entry is the least point of its orbit under the
    stabilizer of the previous entries, which makes each tuple lex-least in
    its orbit.
    """
    reps = [((), G)]
    used = 0
    for _ in range(n):
        nxt = []
        for u, S in reps:
            for child in _children(u, S, G.degree, skip_fixed=False):
                nxt.append(child)
                used += 1
                if used > budget:
                    raise BudgetExceeded(
                        f"more than {budget} tuple orbits enumerated", used, budget
                    )
        reps = nxt
    return [u for u, _ in reps]


class IndependentTuples:
    """Orbit representatives of tuples in which every entry is essential.

    A tuple u is kept iff removing any single entry strictly enlarges the
    pointwise stabilizer.  Levels are computed lazily and cached.
    """

    def __init__(self, G: PermGroup):
        self.G = G
        self.levels = [[((), G)]]
        self._orders = {frozenset(): G.order()}

    def stabilizer_order(self, points) -> int:
        key = frozenset(points)
        o = self._orders.get(key)
        if o is None:
            pts = sorted(key)
            o = self._orders[key] = self.G.chain(pts).order(len(pts))
        return o

    def level(self, m: int) -> list:
        while len(self.levels) <= m:
            prev = self.levels[-1]
            nxt = []
            for u, S in prev:
                for child, Sa in _children(u, S, self.G.degree, skip_fixed=True):
                    so = Sa.order()
                    self._orders.setdefault(frozenset(child), so)
                    if all(
                        self.stabilizer_order(child[:i] + child[i + 1:]) > so
                        for i in range(len(u))
                    ):
                        nxt.append((child, Sa))
            self.levels.append(nxt)
        return self.levels[m]


def _scan_extensions(chunk, k: int, index: OrbitIndex, degree: int):
    """First failing (u + b0, u + b1) in a lex-ordered chunk, plus work done."""
    labels = index.labels
    work = 0
    for u, S in chunk:
        m = len(u)
        subsets = list(combinations(range(m), k - 1))
        rest = [x for x in range(degree) if x not in u]
        by_sig: dict = defaultdict(list)
        for orb in orbits(S, rest):
            a = orb[0]
            sig = tuple(int(labels[rank_tuple([u[i] for i in I] + [a], degree)]) for I in subsets)
            by_sig[sig].append(a)
            work += len(subsets)
        clash = [sorted(v) for v in by_sig.values() if len(v) > 1]
        if clash:
            b0, b1 = min(clash)[:2]
            return (u + (b0,), u + (b1,)), work
    return None, work


class _Search:
    def __init__(self, G: PermGroup, threads: int = 1, budget: int = DEFAULT_TUPLE_BUDGET):
        self.G = G
        self.tree = IndependentTuples(G)
        self.threads = max(1, threads)
        self.budget = budget
        self.work = 0

    def check(self, k: int, n: int, index: OrbitIndex):
        """Verdict at (k, n), assuming k-types determine (n-1)-types."""
        reps = self.tree.level(n - 1)
        if not reps:
            return Verdict(k, n, True, reason="no-independent-tuples")
        self.work += len(reps)
        if self.threads == 1 or len(reps) < 2 * self.threads:
            witness, work = _scan_extensions(reps, k, index, self.G.degree)
            self.work += work
        else:
            size = -(-len(reps) // self.threads)
            chunks = [reps[i:i + size] for i in range(0, len(reps), size)]
            with ThreadPoolExecutor(self.threads) as pool:
                results = list(pool.map(
                    lambda c: _scan_extensions(c, k, index, self.G.degree), chunks
                ))
            self.work += sum(w for _, w in results)
            witness = next((w for w, _ in results if w is not None), None)
        if self.work > self.budget:
            raise BudgetExceeded(f"tuple budget {self.budget} exhausted", self.work, self.budget)
        if witness is None:
            return Verdict(k, n, True)
        return Verdict(k, n, False, witness)


# -- public operations ------------------------------------------------------


def k_determines_n(
    G: PermGroup,
    k: int,
    n: int,
    *,
    index: Optional[OrbitIndex] = None,
    budget: int = DEFAULT_TUPLE_BUDGET,
    index_budget: int = DEFAULT_INDEX_BUDGET,
    cache_dir=None,
) -> Verdict:
    """Decide directly whether k-types determine injective n-types.

    All n-tuple orbits are enumerated and grouped by k-fingerprint.  The
    witness is the lex-least pair (x, y), x < y, of k-equivalent,
    non-conjugate tuples.
    """
    if not 2 <= k <= n <= G.degree:
        raise ValueError(f"need 2 <= k <= n <= degree, got k={k}, n={n}")
    if n == k:
        return Verdict(k, n, True)
    if index is None or index.k != k:
        index = cached_index(G, k, cache_dir, index_budget)
    classes: dict = defaultdict(list)
    for r in orbit_representatives(G, n, budget):
        classes[fingerprint(index, r)].append(r)
    bad = [c for c in classes.values() if len(c) > 1]
    if not bad:
        return Verdict(k, n, True)
    worst = min(bad, key=lambda c: c[0])
    return Verdict(k, n, False, (worst[0], worst[1]))


def relational_complexity(
    G: PermGroup,
    max_n: Optional[int] = None,
    *,
    max_k: Optional[int] = None,
    threads: int = 1,
    budget: int = DEFAULT_TUPLE_BUDGET,
    index_budget: int = DEFAULT_INDEX_BUDGET,
    cache_dir=None,
) -> ComplexityCertificate:
    """Smallest k such that k-types determine n-types for all n >= k.

    k ascends from 2; for each k, n ascends from k + 1 and the first failure
    moves on to k + 1.  With ``max_n`` or ``max_k`` set, or when a budget runs
    out, a partial certificate (exact=False) is returned whose ``rc`` is the
    least k not yet refuted, a lower bound.
    """
    d = G.degree
    if G.is_trivial():
        return ComplexityCertificate(1, [], d, True, d, TRIVIAL_GROUP_NOTE)
    limit = d if max_n is None else min(max_n, d)
    search = _Search(G, threads, budget)
    verdicts: list = []
    for k in range(2, d + 1):
        if max_k is not None and k > max_k:
            return ComplexityCertificate(k, verdicts, k, False, d, f"stopped at max_k={max_k}")
        try:
            index = cached_index(G, k, cache_dir, index_budget)
        except BudgetExceeded as exc:
            return ComplexityCertificate(k, verdicts, k, False, d, f"budget: {exc}")
        exhausted = k
        failed = False
        for n in range(k + 1, limit + 1):
            try:
                v = search.check(k, n, index)
            except BudgetExceeded as exc:
                return ComplexityCertificate(k, verdicts, exhausted, False, d, f"budget: {exc}")
            if v.reason == "no-independent-tuples":
                verdicts.extend(Verdict(k, m, True, reason=v.reason) for m in range(n, d + 1))
                exhausted = d
                break
            verdicts.append(v)
            if not v.holds:
                failed = True
                break
            exhausted = n
        else:
            exhausted = max(exhausted, limit)
        if not failed:
            note = None if exhausted == d else f"checked n <= {exhausted} only"
            return ComplexityCertificate(k, verdicts, exhausted, exhausted == d, d, note)
    raise AssertionError("unreachable: k = degree always holds")


def witness_from_pair(G: PermGroup, xs: Sequence[int], ys: Sequence[int]) -> NonBinarityWitness:
    conj = {}
    for i, j in combinations(range(len(xs)), 2):
        g = are_conjugate_tuples(G, (xs[i], xs[j]), (ys[i], ys[j]))
        if g is None:
            raise PreconditionError(f"pair {(i, j)} is not conjugate; tuples are not 2-equivalent")
        conj[(i, j)] = g
    return NonBinarityWitness(len(xs), tuple(xs), tuple(ys), conj)


def is_binary(G: PermGroup, *, threads: int = 1, budget: int = DEFAULT_TUPLE_BUDGET,
              index_budget: int = DEFAULT_INDEX_BUDGET, cache_dir=None):
    """Return (binary?, witness).  The trivial group is not binary (rc = 1), no witness."""
    if G.is_trivial():
        return False, None
    search = _Search(G, threads, budget)
    index = cached_index(G, 2, cache_dir, index_budget)
    for n in range(3, G.degree + 1):
        v = search.check(2, n, index)
        if v.reason == "no-independent-tuples":
            break
        if not v.holds:
            return False, witness_from_pair(G, *v.witness)
    return True, None


# -- verification -----------------------------------------------------------


def verify_witness(G: PermGroup, w: NonBinarityWitness) -> bool:
    """Re-check a witness with conjugacy calls only."""
    if len(w.xs) != w.n or len(w.ys) != w.n:
        return False
    for i, j in combinations(range(w.n), 2):
        g = w.pair_conjugators.get((i, j))
        if g is None or g.degree != G.degree or not G.contains(g):
            return False
        if g.apply((w.xs[i], w.xs[j])) != (w.ys[i], w.ys[j]):
            return False
    return are_conjugate_tuples(G, w.xs, w.ys) is None


def verify_verdict(G: PermGroup, v: Verdict) -> bool:
    """A failing verdict re-verifies when its witness is k-equivalent and not conjugate."""
    if v.holds:
        return v.witness is None
    xs, ys = v.witness
    if len(xs) != v.n or len(ys) != v.n:
        return False
    return k_equivalent(G, xs, ys, v.k) and are_conjugate_tuples(G, xs, ys) is None


def verify_certificate(G: PermGroup, cert: ComplexityCertificate) -> bool:
    """Re-check every verdict and that the verdicts actually support ``rc``.

    Needs a failure at each k < rc, nothing above rc, and holding verdicts at
    k = rc for every n in (rc, exhausted_to]; exact certificates must reach
    the degree.
    """
    if G.is_trivial():
        return cert.rc == 1
    if cert.rc < 2 or cert.degree != G.degree:
        return False
    if cert.exact and cert.exhausted_to != G.degree:
        return False
    if any(v.k > cert.rc for v in cert.verdicts):
        return False
    if not all(verify_verdict(G, v) for v in cert.verdicts):
        return False
    fail_ks = {v.k for v in cert.failing()}
    if any(k not in fail_ks for k in range(2, cert.rc)):
        return False
    top = [v for v in cert.verdicts if v.k == cert.rc]
    if not all(v.holds for v in top):
        return False
    return sorted(v.n for v in top) == list(range(cert.rc + 1, cert.exhausted_to + 1))


def certificate_json(G: PermGroup, cert: ComplexityCertificate) -> dict:
    return {
        "schema": "relcomp.certificate/1",
        "group": G.to_json(),
        "descriptor": describe(G).to_json(),
        "certificate": cert.to_json(),
    }


def witness_json(G: PermGroup, w: NonBinarityWitness) -> dict:
    return {
        "schema": "relcomp.witness/1",
        "group": G.to_json(),
        "descriptor": describe(G).to_json(),
        "witness": w.to_json(),
    }


# -- product lift -----------------------------------------------------------


def lift_witness_to_product(xs: Sequence[int], ys: Sequence[int], m: int, pad: int, ell: int):
    """Pad a witness over Y into tuples over X = Y^m.

    Entry i becomes the row (xs[i], pad, ..., pad); rows are encoded as in
    ``product_action``.  Returns the two tuples of X-points.
    """
    if not 0 <= pad < ell:
        raise ValueError(f"padding point {pad} out of range for |Y|={ell}")
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        raise ValueError("witness tuples must have pairwise distinct entries")
    A = tuple(row_index((x,) + (pad,) * (m - 1), ell) for x in xs)
    B = tuple(row_index((y,) + (pad,) * (m - 1), ell) for y in ys)
    return A, B
