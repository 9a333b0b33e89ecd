"""Builders for the group families analysed by the library.

Every builder returns a :class:`PermGroup` whose ``descriptor`` attribute is a
:class:`GroupDescriptor`; ``descriptor.build()`` reproduces the generator list
exactly.
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import BudgetExceeded, DescriptorError, PreconditionError
from .perm import Permutation, PermGroup, elements, is_transitive, point_stabilizer

DEFAULT_ELEMENT_CAP = 10**6
DEFAULT_POINT_CAP = 10**6

FAMILIES = (
    "natural_symmetric",
    "natural_alternating",
    "cyclic_regular",
    "affine_orthogonal",
    "diagonal",
    "product",
    "semidirect_regular",
    "petersen",
    "explicit",
    "twisted_wreath",
)


# -- descriptors ------------------------------------------------------------


@dataclass
class GroupDescriptor:
    """Serializable recipe for a constructed group."""

    family: str
    params: dict = field(default_factory=dict)
    claimed_socle: Optional[str] = None

    def to_json(self) -> dict:
        out = {"family": self.family, "params": _params_to_json(self.params)}
        if self.claimed_socle is not None:
            out["claimed_socle"] = self.claimed_socle
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> "GroupDescriptor":
        if not isinstance(data, dict) or "family" not in data:
            raise DescriptorError("descriptor must be an object with a 'family' key")
        family = data["family"]
        if family not in FAMILIES:
            raise DescriptorError(f"unknown family {family!r}")
        params = dict(data.get("params", {}))
        for key in ("T", "H", "M"):
            if isinstance(params.get(key), dict):
                params[key] = cls.from_json(params[key])
        return cls(family, params, data.get("claimed_socle"))

    def build(self) -> PermGroup:
        return build_group(self)


def _params_to_json(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        if isinstance(v, GroupDescriptor):
            out[k] = v.to_json()
        else:
            out[k] = v
    return out


def describe(G: PermGroup) -> GroupDescriptor:
    """The group's descriptor, falling back to an explicit generator list."""
    desc = getattr(G, "descriptor", None)
    if desc is None:
        desc = GroupDescriptor("explicit", G.to_json())
    return desc


def _tag(G: PermGroup, family: str, params: dict, socle: Optional[str]) -> PermGroup:
    G.descriptor = GroupDescriptor(family, params, socle)
    return G


def build_group(desc: GroupDescriptor) -> PermGroup:
    p = desc.params
    try:
        if desc.family == "natural_symmetric":
            return natural_symmetric(p["n"])
        if desc.family == "natural_alternating":
            return natural_alternating(p["n"])
        if desc.family == "cyclic_regular":
            return cyclic_regular(p["p"])
        if desc.family == "affine_orthogonal":
            return affine_orthogonal(QuadraticForm(p["p"], p["dim"], tuple(p["coefficients"])))
        if desc.family == "petersen":
            return petersen_group()
        if desc.family == "explicit":
            G = PermGroup([Permutation(g) for g in p["generators"]], p["degree"])
            return _tag(G, "explicit", {"degree": G.degree, "generators": p["generators"]},
                        desc.claimed_socle)
        if desc.family == "diagonal":
            T = _sub(p["T"])
            outer = [[Permutation(x) for x in imgs] for imgs in p.get("outer", [])]
            return diagonal_type(T, p["k"], top=p.get("top", "symmetric"), outer=outer)
        if desc.family == "product":
            H = _sub(p["H"])
            top = p.get("top")
            if top is not None:
                top = [Permutation(s) for s in top]
            return product_action(H, p["m"], top)
        if desc.family == "semidirect_regular":
            M = _sub(p["M"])
            autos = [[Permutation(x) for x in imgs] for imgs in p.get("automorphisms", [])]
            return semidirect_regular(M, autos)
        if desc.family == "twisted_wreath":
            raise DescriptorError(
                "twisted wreath products T twr H are not constructed: a regular "
                "nonabelian socle T^k needs k >= 6, so the smallest faithful degree is "
                "at least 60^6"
            )
    except KeyError as exc:
        raise DescriptorError(f"{desc.family}: missing parameter {exc}") from None
    raise DescriptorError(f"unknown family {desc.family!r}")


def _sub(d) -> PermGroup:
    if isinstance(d, GroupDescriptor):
        return d.build()
    return GroupDescriptor.from_json(d).build()


# -- classical families -----------------------------------------------------


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))


def _natural_socle(n: int, alternating: bool) -> str:
    if n >= 5:
        return f"A{n}"
    return {4: "C2^2", 3: "C3", 2: "1" if alternating else "C2"}[n]


def natural_symmetric(n: int) -> PermGroup:
    if n < 2:
        raise ValueError("natural_symmetric needs n >= 2")
    gens = [Permutation.from_cycles(n, (0, 1))]
    if n > 2:
        gens.append(Permutation.from_cycles(n, tuple(range(n))))
    G = PermGroup(gens, n)
    return _tag(G, "natural_symmetric", {"n": n}, _natural_socle(n, False))


def natural_alternating(n: int) -> PermGroup:
    """A_n generated by the 3-cycles (0 1 i), 2 <= i < n."""
    if n < 2:
        raise ValueError("natural_alternating needs n >= 2")
    gens = [Permutation.from_cycles(n, (0, 1, i)) for i in range(2, n)]
    G = PermGroup(gens, n)
    return _tag(G, "natural_alternating", {"n": n}, _natural_socle(n, True))


def cyclic_regular(p: int, allow_composite: bool = False) -> PermGroup:
    """Cyclic group acting regularly on p points (p prime unless allowed)."""
    if p < 2:
        raise ValueError("cyclic_regular needs p >= 2")
    if not allow_composite and not is_prime(p):
        raise ValueError(f"cyclic_regular: {p} is not prime")
    G = PermGroup([Permutation.from_cycles(p, tuple(range(p)))], p)
    if not is_prime(p):
        return _tag(G, "explicit", G.to_json(), None)
    return _tag(G, "cyclic_regular", {"p": p}, f"C{p}")


def petersen_group() -> PermGroup:
    """S5 acting on the 10 two-subsets of {0..4} (automorphisms of the Petersen graph)."""
    verts = list(itertools.combinations(range(5), 2))
    index = {v: i for i, v in enumerate(verts)}
    gens = []
    for s in (Permutation.from_cycles(5, (0, 1)), Permutation.from_cycles(5, (0, 1, 2, 3, 4))):
        gens.append(Permutation([index[tuple(sorted((s(a), s(b))))] for a, b in verts]))
    G = PermGroup(gens, 10)
    return _tag(G, "petersen", {}, "A5")


def petersen_vertices() -> list:
    return list(itertools.combinations(range(5), 2))


def petersen_adjacent(u: int, v: int) -> bool:
    verts = petersen_vertices()
    return not set(verts[u]) & set(verts[v])


# -- affine orthogonal ------------------------------------------------------


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x, y) = a x^2 + b x y + c y^2 over the prime field F_p (dim 1 uses a x^2)."""

    p: int
    dim: int
    coefficients: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if self.dim not in (1, 2):
            raise ValueError("only dimensions 1 and 2 are supported")
        coeffs = tuple(self.coefficients) + (0,) * (3 - len(self.coefficients))
        if self.dim == 1 and (coeffs[1] or coeffs[2]):
            raise ValueError("dimension 1 forms have b = c = 0")
        object.__setattr__(self, "coefficients", coeffs)
        bad = self.isotropic_vector()
        if bad is not None:
            raise PreconditionError(f"quadratic form is isotropic: Q{bad} = 0")

    def __call__(self, v: Sequence[int]) -> int:
        a, b, c = self.coefficients
        if self.dim == 1:
            return a * v[0] * v[0] % self.p
        x, y = v
        return (a * x * x + b * x * y + c * y * y) % self.p

    def vectors(self) -> list:
        return list(itertools.product(range(self.p), repeat=self.dim))

    def isotropic_vector(self) -> Optional[tuple]:
        for v in self.vectors():
            if any(v) and self(v) == 0:
                return v
        return None


def _vec_index(v: Sequence[int], p: int) -> int:
    idx = 0
    for x in v:
        idx = idx * p + x
    return idx


def isometries(form: QuadraticForm) -> list:
    """All invertible matrices M (row-vector convention, v -> vM) preserving Q."""
    p, d = form.p, form.dim
    vecs = form.vectors()
    out = []
    for entries in itertools.product(range(p), repeat=d * d):
        M = [entries[i * d:(i + 1) * d] for i in range(d)]
        images = [tuple(sum(v[i] * M[i][j] for i in range(d)) % p for j in range(d)) for v in vecs]
        if len(set(images)) != len(vecs):
            continue
        if all(form(w) == form(v) for v, w in zip(vecs, images)):
            out.append(tuple(entries))
    return out


def affine_orthogonal(form: QuadraticForm) -> PermGroup:
    """V x| O(V) acting on the p^dim vectors of V."""
    p, d = form.p, form.dim
    vecs = form.vectors()
    n = len(vecs)
    gens = []
    for j in range(d):
        gens.append(Permutation(
            [_vec_index(tuple((v[i] + (i == j)) % p for i in range(d)), p) for v in vecs]
        ))
    linear: list = []
    for entries in isometries(form):
        M = [entries[i * d:(i + 1) * d] for i in range(d)]
        g = Permutation(
            [_vec_index(tuple(sum(v[i] * M[i][jj] for i in range(d)) % p for jj in range(d)), p)
             for v in vecs]
        )
        if g.is_identity():
            continue
        if linear and PermGroup(linear, n).contains(g):
            continue
        linear.append(g)
    G = PermGroup(gens + linear, n)
    params = {"p": p, "dim": d, "coefficients": list(form.coefficients)}
    return _tag(G, "affine_orthogonal", params, f"C{p}^{d}" if d > 1 else f"C{p}")


# -- abstract groups and automorphisms --------------------------------------


class FiniteGroup:
    """Element table of a permutation group; index 0 is the identity."""

    def __init__(self, G: PermGroup, cap: int = DEFAULT_ELEMENT_CAP):
        self.group = G
        self.elements = elements(G, cap)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self._mul: dict = {}
        self._inv = [self.index[~e] for e in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._mul.get(key)
        if r is None:
            r = self._mul[key] = self.index[self.elements[i] * self.elements[j]]
        return r

    def inv(self, i: int) -> int:
        return self._inv[i]

    def generator_indices(self) -> list:
        return [self.index[g] for g in self.group.generators]

    def is_abelian(self) -> bool:
        gens = self.group.generators
        return all(a * b == b * a for a in gens for b in gens)


def conjugation_images(T: PermGroup, g: Permutation) -> list:
    """Generator-image map of ``t -> g^-1 t g`` (g may lie outside T)."""
    gi = ~g
    return [gi * t * g for t in T.generators]


def automorphism_map(FT: FiniteGroup, images: Sequence[Permutation]) -> list:
    """Extend a generator-image map to an element-index map, validating it.

    Raises PreconditionError naming the first (element, generator) pair on
    which the map fails to be a homomorphism, or if it is not bijective.
    """
    gens = FT.group.generators
    if len(images) != len(gens):
        raise PreconditionError(f"need {len(gens)} generator images, got {len(images)}")
    img_idx = []
    for im in images:
        if im not in FT.index:
            raise PreconditionError(f"image {im!r} is not an element of the group")
        img_idx.append(FT.index[im])
    gen_idx = FT.generator_indices()
    phi = {0: 0}
    queue = [0]
    for x in queue:
        for s, si in zip(gen_idx, img_idx):
            y = FT.mul(x, s)
            if y not in phi:
                phi[y] = FT.mul(phi[x], si)
                queue.append(y)
    for x in range(len(FT)):
        for s, si in zip(gen_idx, img_idx):
            if phi[FT.mul(x, s)] != FT.mul(phi[x], si):
                raise PreconditionError(
                    f"not a homomorphism at pair ({FT.elements[x]!r}, {FT.elements[s]!r})"
                )
    out = [phi[i] for i in range(len(FT))]
    if len(set(out)) != len(out):
        raise PreconditionError("generator-image map is not injective")
    return out


def normal_closure(T: PermGroup, x: Permutation) -> PermGroup:
    gens = [x]
    while True:
        N = PermGroup(gens, T.degree)
        new = [c for c in (~t * g * t for g in gens for t in T.generators) if not N.contains(c)]
        if not new:
            return N
        gens.append(new[0])


def is_nonabelian_simple(T: PermGroup, cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    FT = FiniteGroup(T, cap)
    if FT.is_abelian():
        return False
    order = T.order()
    seen_classes: set = set()
    for e in FT.elements[1:]:
        if e in seen_classes:
            continue
        cls = {~t * e * t for t in FT.elements}
        seen_classes |= cls
        if normal_closure(T, e).order() != order:
            return False
    return True


# -- diagonal type ----------------------------------------------------------


def _symmetric_gens(k: int) -> list:
    if k < 2:
        return []
    gens = [Permutation.from_cycles(k, (0, 1))]
    if k > 2:
        gens.append(Permutation.from_cycles(k, tuple(range(k))))
    return gens


def diagonal_type(
    T: PermGroup,
    k: int,
    top="symmetric",
    outer: Sequence[Sequence[Permutation]] = (),
    cap: int = DEFAULT_POINT_CAP,
) -> PermGroup:
    """Diagonal-type action of T^k (plus top and outer parts) on T^k / diag(T).

    Points are classes [a_1, ..., a_k] stored by their representative with
    a_1 = 1, encoded as the base-|T| number with digits (a_2, ..., a_k); the
    class of (1, ..., 1) is point 0.  ``top`` is "symmetric", "none", or a
    list of permutations of the k coordinates; ``outer`` lists automorphisms
    of T as generator-image maps.
    """
    if k < 2:
        raise ValueError("diagonal_type needs k >= 2")
    FT = FiniteGroup(T)
    N = len(FT)
    degree = N ** (k - 1)
    if degree > cap:
        raise BudgetExceeded(f"diagonal action has {degree} points", degree, cap)
    if not is_nonabelian_simple(T):
        warnings.warn("diagonal_type: T is not nonabelian simple; socle claim is void")

    if top == "symmetric":
        top_perms = _symmetric_gens(k)
    elif top == "none" or top is None:
        top_perms = []
    else:
        top_perms = [s if isinstance(s, Permutation) else Permutation(s) for s in top]
    outer_maps = [automorphism_map(FT, imgs) for imgs in outer]

    points = list(itertools.product(range(N), repeat=k - 1))

    def encode(full):
        c = FT.inv(full[0])
        idx = 0
        for a in full[1:]:
            idx = idx * N + FT.mul(c, a)
        return idx

    def build(fn):
        return Permutation([encode(fn((0,) + pt)) for pt in points], check=False)

    gens = []
    for i in range(k):
        for t in FT.generator_indices():
            def right_mult(full, i=i, t=t):
                full = list(full)
                full[i] = FT.mul(full[i], t)
                return full
            gens.append(build(right_mult))
    for s in top_perms:
        def coord_perm(full, s=s):
            out = [0] * k
            for j in range(k):
                out[s(j)] = full[j]
            return out
        gens.append(build(coord_perm))
    for phi in outer_maps:
        gens.append(build(lambda full, phi=phi: [phi[a] for a in full]))

    G = PermGroup(gens, degree)
    params = {
        "T": describe(T),
        "k": k,
        "top": top if isinstance(top, str) or top is None else [s.to_json() for s in top_perms],
        "outer": [[im.to_json() for im in imgs] for imgs in outer],
    }
    tsoc = describe(T).claimed_socle or "T"
    return _tag(G, "diagonal", params, f"{tsoc}^{k}")


def diagonal_point(T_elements: FiniteGroup, full: Sequence[int]) -> tuple:
    """Canonical representative (1, a_2, ..., a_k) of the class of ``full``."""
    c = T_elements.inv(full[0])
    return tuple(T_elements.mul(c, a) for a in full)


# -- product action ---------------------------------------------------------


def row_index(row: Sequence[int], ell: int) -> int:
    return _vec_index(row, ell)


def index_row(idx: int, ell: int, m: int) -> tuple:
    row = []
    for _ in range(m):
        idx, r = divmod(idx, ell)
        row.append(r)
    return tuple(reversed(row))


def product_action(
    H: PermGroup,
    m: int,
    top: Optional[Sequence[Permutation]] = None,
    cap: int = DEFAULT_POINT_CAP,
) -> PermGroup:
    """H wr P in product action on Y^m; ``top`` defaults to generators of S_m.

    Rows (y_0, ..., y_{m-1}) are encoded base |Y| with y_0 most significant.
    A top permutation s sends coordinate j to coordinate s(j).
    """
    if m < 1:
        raise ValueError("product_action needs m >= 1")
    ell = H.degree
    degree = ell**m
    if degree > cap:
        raise BudgetExceeded(f"product action has {degree} points", degree, cap)
    top_perms = _symmetric_gens(m) if top is None else [
        s if isinstance(s, Permutation) else Permutation(s) for s in top
    ]
    if m > 1 and (not top_perms or not is_transitive(PermGroup(top_perms, m))):
        warnings.warn("product_action: top group is not transitive on coordinates")
    rows = list(itertools.product(range(ell), repeat=m))
    gens = []
    for j in range(m):
        for h in H.generators:
            if h.is_identity():
                continue
            gens.append(Permutation(
                [row_index(r[:j] + (h(r[j]),) + r[j + 1:], ell) for r in rows], check=False
            ))
    for s in top_perms:
        imgs = []
        for r in rows:
            out = [0] * m
            for j in range(m):
                out[s(j)] = r[j]
            imgs.append(row_index(out, ell))
        gens.append(Permutation(imgs, check=False))
    G = PermGroup(gens, degree)
    params = {"H": describe(H), "m": m, "top": None if top is None else [s.to_json() for s in top_perms]}
    hsoc = describe(H).claimed_socle or "soc(H)"
    return _tag(G, "product", params, f"({hsoc})^{m}")


def coordinate_permutation(g: Permutation, ell: int, m: int) -> Permutation:
    """The coordinate permutation induced by an element of Sym(Y) wr S_m."""
    zero = (0,) * m
    img0 = index_row(g(row_index(zero, ell)), ell, m)
    out = []
    for j in range(m):
        r = list(zero)
        r[j] = 1
        img = index_row(g(row_index(r, ell)), ell, m)
        diff = [i for i in range(m) if img[i] != img0[i]]
        if len(diff) != 1:
            raise PreconditionError("element does not preserve the product structure")
        out.append(diff[0])
    return Permutation(out)


def project_components(G: PermGroup):
    """Return (P, G_1) for a product-action group.

    P is the image on coordinates (None when m == 1: the trivial group on one
    coordinate); G_1 is the action on the first coordinate of the stabilizer
    of that coordinate.
    """
    desc = getattr(G, "descriptor", None)
    if desc is None or desc.family != "product":
        raise PreconditionError("project_components needs a product-action descriptor")
    m = desc.params["m"]
    n = G.degree
    ell = round(n ** (1 / m))
    while ell**m > n:
        ell -= 1
    while ell**m < n:
        ell += 1
    sigmas = [coordinate_permutation(g, ell, m) for g in G.generators]
    P = PermGroup(sigmas, m) if m > 1 else None
    combined = PermGroup(
        [Permutation(g.images + tuple(n + s(j) for j in range(m)), check=False)
         for g, s in zip(G.generators, sigmas)],
        n + m,
    )
    stab = point_stabilizer(combined, (n,))
    maps = []
    for g in stab.generators:
        img = []
        for y in range(ell):
            row = (y,) + (0,) * (m - 1)
            img.append(index_row(g(row_index(row, ell)), ell, m)[0])
        p = Permutation(img)
        if not p.is_identity() and p not in maps:
            maps.append(p)
    G1 = PermGroup(maps, ell)
    return P, G1


# -- regular normal subgroup with automorphisms -----------------------------


def semidirect_regular(
    M: PermGroup,
    automorphisms: Sequence[Sequence[Permutation]] = (),
    cap: int = DEFAULT_POINT_CAP,
) -> PermGroup:
    """M x| H on the elements of M: M by right translation, H by automorphisms.

    Point i is the i-th element of M in BFS order (point 0 is the identity),
    and ``a . mh = (a m)^h``.
    """
    FM = FiniteGroup(M, cap)
    n = len(FM)
    if n < 2:
        raise ValueError("semidirect_regular needs a nontrivial M")
    gens = []
    for mi in FM.generator_indices():
        gens.append(Permutation([FM.mul(a, mi) for a in range(n)]))
    for imgs in automorphisms:
        phi = automorphism_map(FM, imgs)
        gens.append(Permutation(phi))
    G = PermGroup(gens, n)
    params = {"M": describe(M), "automorphisms": [[im.to_json() for im in imgs] for imgs in automorphisms]}
    return _tag(G, "semidirect_regular", params, None)


def power_automorphism(M: PermGroup, e: int) -> list:
    """Generator-image map x -> x^e (an automorphism when M is cyclic and gcd(e,|M|)=1)."""
    return [g**e for g in M.generators]
