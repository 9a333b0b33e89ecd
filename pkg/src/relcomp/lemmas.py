"""Direct checks of the unconditional lemmas and explicit constructions.

Lemmas whose hypothesis is "(X, G) is binary" for the regular nonabelian and
diagonal types are intentionally absent: those groups are shown not to be
binary, so such a check could only ever confirm a vacuous implication.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .constructions import (
    FiniteGroup,
    GroupDescriptor,
    automorphism_map,
    describe,
    index_row,
    is_nonabelian_simple,
    natural_symmetric,
    product_action,
    project_components,
    row_index,
    semidirect_regular,
)
from .errors import PreconditionError
from .perm import Permutation, PermGroup, are_conjugate_tuples, elements, orbit, point_stabilizer
from .tuples import k_equivalent

EXHAUSTIVE_LIMIT = 10**7
SAMPLE_SIZE = 10**6
SAMPLE_SEED = 20140101


@dataclass
class LemmaReport:
    lemma: str
    instance: dict
    verdict: bool
    data: dict = field(default_factory=dict)
    exhaustiveness: str = "full"
    checks: int = 0

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "instance": self.instance,
            "verdict": self.verdict,
            "data": self.data,
            "exhaustiveness": self.exhaustiveness,
            "checks": self.checks,
        }


def _perms_json(ps: Sequence[Permutation]) -> list:
    return [p.to_json() for p in ps]


# -- regular nonabelian type: pairs ------------------------------------------


def _pair_orbit_labels(G: PermGroup) -> list:
    """Orbit label of every ordered pair (including (a, a)) under G."""
    d = G.degree
    parent = list(range(d * d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G.generators:
        im = g.images
        for a in range(d):
            for b in range(d):
                r1, r2 = find(a * d + b), find(im[a] * d + im[b])
                if r1 != r2:
                    parent[max(r1, r2)] = min(r1, r2)
    return [find(x) for x in range(d * d)]


def check_pair_criterion(
    M: PermGroup,
    automorphisms: Sequence[Sequence[Permutation]],
    *,
    limit: int = EXHAUSTIVE_LIMIT,
    seed: int = SAMPLE_SEED,
    spot_checks: int = 200,
) -> LemmaReport:
    """(a1, a2) ~_G (b1, b2)  iff  a1 a2^-1 ~_H b1 b2^-1, for G = M x| H on M.

    The left side uses pair orbits of G, the right side orbits of H = G_1
    on M; a sample of left-side verdicts is re-derived with conjugacy calls.
    """
    G = semidirect_regular(M, automorphisms)
    FM = FiniteGroup(M)
    n = len(FM)
    H = point_stabilizer(G, (0,))
    pair_label = _pair_orbit_labels(G)
    h_label = [0] * n
    for x in range(n):
        h_label[x] = min(orbit(H, x))
    quot = [[FM.mul(a1, FM.inv(a2)) for a2 in range(n)] for a1 in range(n)]

    total = n**4
    rng = random.Random(seed)
    if total <= limit:
        quads = ((a1, a2, b1, b2) for a1 in range(n) for a2 in range(n)
                 for b1 in range(n) for b2 in range(n))
        mode, checks = "full", total
    else:
        quads = (tuple(rng.randrange(n) for _ in range(4)) for _ in range(SAMPLE_SIZE))
        mode, checks = f"sampled ({SAMPLE_SIZE} of {total}, seed {seed})", SAMPLE_SIZE
    counterexample = None
    for a1, a2, b1, b2 in quads:
        lhs = pair_label[a1 * n + a2] == pair_label[b1 * n + b2]
        rhs = h_label[quot[a1][a2]] == h_label[quot[b1][b2]]
        if lhs != rhs:
            counterexample = {"a": [a1, a2], "b": [b1, b2], "G_conjugate": lhs, "H_conjugate": rhs}
            break

    spot_ok = True
    for _ in range(spot_checks):
        a1, a2, b1, b2 = (rng.randrange(n) for _ in range(4))
        g = are_conjugate_tuples(G, (a1, a2), (b1, b2))
        if (g is not None) != (pair_label[a1 * n + a2] == pair_label[b1 * n + b2]):
            spot_ok = False
            break

    instance = {
        "M": describe(M).to_json(),
        "automorphisms": [_perms_json(imgs) for imgs in automorphisms],
    }
    data = {
        "group_order": G.order(),
        "degree": n,
        "H_order": H.order(),
        "conjugacy_spot_checks": spot_checks,
        "spot_checks_agree": spot_ok,
    }
    if counterexample:
        data["counterexample"] = counterexample
    return LemmaReport("pair-criterion", instance, counterexample is None and spot_ok,
                       data, mode, checks)


def check_inverts_not_centralizes(T: PermGroup, alpha: Sequence[Permutation]) -> LemmaReport:
    """Find t in T with alpha(t) = t^-1 != t, for an involutory automorphism alpha."""
    FT = FiniteGroup(T)
    phi = automorphism_map(FT, alpha)
    if all(phi[i] == i for i in range(len(FT))):
        raise PreconditionError("alpha is the identity automorphism")
    if any(phi[phi[i]] != i for i in range(len(FT))):
        raise PreconditionError("alpha is not an involution")
    if not is_nonabelian_simple(T):
        raise PreconditionError("T is not nonabelian simple")
    found = [i for i in range(len(FT)) if phi[i] == FT.inv(i) and phi[i] != i]
    instance = {"T": describe(T).to_json(), "alpha": _perms_json(alpha)}
    data = {"group_order": len(FT), "inverted_not_centralized": len(found)}
    if found:
        data["t"] = FT.elements[found[0]].to_json()
    return LemmaReport("inverts-not-centralizes", instance, bool(found), data, "full", len(FT))


# -- diagonal type: no inner automorphism inverts a class --------------------


def product_of_noncommuting_involutions(T: PermGroup) -> Permutation:
    """First product i*j (element order) of two noncommuting involutions of T."""
    invols = [e for e in elements(T) if not e.is_identity() and (e * e).is_identity()]
    for a, b in combinations(invols, 2):
        if a * b != b * a:
            return a * b
    raise PreconditionError("T has no pair of noncommuting involutions")


def search_class_inverting_automorphism(
    T: PermGroup,
    r: Permutation,
    automorphisms: Optional[Sequence[Sequence[Permutation]]] = None,
) -> LemmaReport:
    """Look for an automorphism inverting every element of the class r^T.

    ``automorphisms`` defaults to all inner automorphisms.  The verdict is
    True when no candidate inverts the whole class.
    """
    FT = FiniteGroup(T)
    if r not in FT.index:
        raise PreconditionError("r is not an element of T")
    ri = FT.index[r]
    if (r * r).is_identity():
        raise PreconditionError("r is an involution")
    cls = sorted({FT.index[~t * r * t] for t in FT.elements})
    if FT.inv(ri) not in cls:
        raise PreconditionError("r is not conjugate to its inverse")
    if automorphisms is None:
        maps = [[FT.index[~t * e * t] for e in FT.elements] for t in FT.elements]
        source = "inner"
    else:
        maps = [automorphism_map(FT, imgs) for imgs in automorphisms]
        source = "supplied"
    inverting = [i for i, phi in enumerate(maps) if all(phi[c] == FT.inv(c) for c in cls)]
    instance = {
        "T": describe(T).to_json(),
        "r": r.to_json(),
        "automorphisms": None if automorphisms is None else [_perms_json(a) for a in automorphisms],
    }
    data = {
        "class_size": len(cls),
        "r_order": r.order(),
        "source": source,
        "automorphisms_scanned": len(maps),
        "inverting": inverting,
    }
    return LemmaReport("class-inverting-automorphism", instance, not inverting, data,
                       "full", len(maps) * len(cls))


# -- product type ------------------------------------------------------------


def product_witness_matrices(ell: int, k: int):
    """The two 4 x k matrices (labels 1..ell) that are 2- but not 4-equivalent."""
    if ell < 5:
        raise PreconditionError("need |Y| >= 5 so that Alt(Y) is 2-transitive and nonabelian")
    if k < 2:
        raise PreconditionError("need at least two coordinates")
    A = ((1,) * k, (1,) + (2,) * (k - 1), (3,) * k, (3,) + (4,) * (k - 1))
    B = A[:3] + ((4, 3) + (4,) * (k - 2),)
    return A, B


def rows_to_points(rows, ell: int) -> tuple:
    return tuple(row_index([y - 1 for y in row], ell) for row in rows)


def column_patterns(rows) -> list:
    """Sorted list of per-column partitions of the row indices by equal entries."""
    pats = []
    for j in range(len(rows[0])):
        blocks: dict = {}
        for i, row in enumerate(rows):
            blocks.setdefault(row[j], []).append(i)
        pats.append(tuple(sorted(tuple(b) for b in blocks.values())))
    return sorted(pats)


def check_product_witness(ell: int = 5, k: int = 2) -> LemmaReport:
    """Verify the explicit matrices in Sym(ell) wr S_k (product action)."""
    A, B = product_witness_matrices(ell, k)
    G = product_action(natural_symmetric(ell), k)
    xa, xb = rows_to_points(A, ell), rows_to_points(B, ell)
    two_eq = k_equivalent(G, xa, xb, 2)
    conj = are_conjugate_tuples(G, xa, xb)
    two_col = lambda rows: any(len(set(col)) == 2 for col in zip(*rows))
    data = {
        "A": [list(r) for r in A],
        "B": [list(r) for r in B],
        "two_equivalent": two_eq,
        "conjugate": conj is not None,
        "A_has_two_valued_column": two_col(A),
        "B_has_two_valued_column": two_col(B),
        "patterns_differ": column_patterns(A) != column_patterns(B),
        "group_order": G.order(),
    }
    ok = two_eq and conj is None and data["A_has_two_valued_column"] and not data["B_has_two_valued_column"]
    return LemmaReport("product-witness", {"ell": ell, "k": k}, ok, data, "full", 1)


def _apply_coordinate_permutation(row: Sequence[int], s: Permutation) -> tuple:
    out = [0] * len(row)
    for j, y in enumerate(row):
        out[s(j)] = y
    return tuple(out)


TWO_TRANSITIVE_SOCLE_FAMILIES = ("natural_symmetric", "natural_alternating")


def check_realizes_p_on_pairs(
    G: PermGroup,
    *,
    sample: int = 1000,
    window: int = 5,
    seed: int = SAMPLE_SEED,
) -> LemmaReport:
    """For row pairs (y1, y2) and every coordinate permutation s in P, find g'
    in G with (y1, y2) g' = (y1 s, y2 s).

    All pairs of distinct rows with entries below ``window`` are checked, plus
    ``sample`` random pairs.  Requires the component group's socle to be
    2-transitive, which is read from the descriptor (natural S_n / A_n, n >= 5).
    """
    desc = getattr(G, "descriptor", None)
    if desc is None or desc.family != "product":
        raise PreconditionError("needs a group built by product_action")
    Hd = desc.params["H"]
    if not (isinstance(Hd, GroupDescriptor) and Hd.family in TWO_TRANSITIVE_SOCLE_FAMILIES
            and Hd.params.get("n", 0) >= 5):
        raise PreconditionError(
            "component socle is not known to be 2-transitive (need natural S_n or A_n, n >= 5)"
        )
    m = desc.params["m"]
    ell = Hd.params["n"]
    P, _ = project_components(G)
    sigmas = elements(P) if P is not None else [Permutation.identity(1)]
    rows_w = [index_row(i, ell, m) for i in range(ell**m)]
    rows_w = [r for r in rows_w if max(r) < window]
    pairs = [(a, b) for a in rows_w for b in rows_w if a != b]
    rng = random.Random(seed)
    for _ in range(sample):
        a = tuple(rng.randrange(ell) for _ in range(m))
        b = tuple(rng.randrange(ell) for _ in range(m))
        if a != b:
            pairs.append((a, b))
    failure = None
    checks = 0
    for a, b in pairs:
        src = (row_index(a, ell), row_index(b, ell))
        for s in sigmas:
            dst = (row_index(_apply_coordinate_permutation(a, s), ell),
                   row_index(_apply_coordinate_permutation(b, s), ell))
            g = are_conjugate_tuples(G, src, dst)
            checks += 1
            if g is None or g.apply(src) != dst:
                failure = {"rows": [list(a), list(b)], "sigma": s.to_json()}
                break
        if failure:
            break
    instance = {"G": desc.to_json(), "sample": sample, "window": window, "seed": seed}
    data = {"pairs": len(pairs), "P_order": len(sigmas)}
    if failure:
        data["failure"] = failure
    mode = f"window {window} full, plus {sample} sampled pairs (seed {seed})"
    return LemmaReport("realizes-p-on-pairs", instance, failure is None, data, mode, checks)


# -- replay ------------------------------------------------------------------


def replay(report: dict) -> LemmaReport:
    """Recompute a report from its serialized instance."""
    lemma, inst = report["lemma"], report["instance"]

    def group(d):
        return GroupDescriptor.from_json(d).build()

    def perms(lst):
        return [Permutation(p) for p in lst]

    if lemma == "pair-criterion":
        return check_pair_criterion(group(inst["M"]), [perms(a) for a in inst["automorphisms"]])
    if lemma == "inverts-not-centralizes":
        return check_inverts_not_centralizes(group(inst["T"]), perms(inst["alpha"]))
    if lemma == "class-inverting-automorphism":
        autos = inst.get("automorphisms")
        return search_class_inverting_automorphism(
            group(inst["T"]), Permutation(inst["r"]),
            None if autos is None else [perms(a) for a in autos],
        )
    if lemma == "product-witness":
        return check_product_witness(inst["ell"], inst["k"])
    if lemma == "realizes-p-on-pairs":
        return check_realizes_p_on_pairs(
            group(inst["G"]), sample=inst["sample"], window=inst["window"], seed=inst["seed"]
        )
    raise ValueError(f"unknown lemma {lemma!r}")
