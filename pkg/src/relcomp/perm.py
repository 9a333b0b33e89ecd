"""Permutations, permutation groups and deterministic stabilizer chains.

Groups act on the right: ``x^(pq) = (x^p)^q``.  A permutation is stored as
its image array, so ``p(x)`` is the image of ``x`` and ``p * q`` first applies
``p`` and then ``q``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import prod
from typing import Iterable, Optional, Sequence

from .errors import DegreeError, RelcompError


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as an image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {list(images)}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(inv, check=False)

    def __pow__(self, n: int) -> "Permutation":
        base = self if n >= 0 else ~self
        result = Permutation.identity(self.degree)
        for _ in range(abs(n)):
            result = result * base
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def apply(self, xs: Sequence[int]) -> tuple:
        """Entrywise image of a tuple of points."""
        return tuple(self.images[x] for x in xs)

    def order(self) -> int:
        n, p = 1, self
        while not p.is_identity():
            p = p * self
            n += 1
        return n

    def cycles(self) -> list:
        seen, out = set(), []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc, j = [i], self.images[i]
            seen.add(i)
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def to_json(self) -> list:
        return list(self.images)

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p * q``: the map ``x -> q(p(x))``."""
    if len(p.images) != len(q.images):
        raise DegreeError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation([qi[x] for x in p.images], check=False)


def _first_moved(g: Permutation) -> int:
    for i, x in enumerate(g.images):
        if i != x:
            return i
    raise ValueError("identity moves no point")


class _Level:
    __slots__ = ("point", "gens", "trans", "_inv")

    def __init__(self, point: int, identity: Permutation):
        self.point = point
        self.gens: list = []
        self.trans = {point: identity}
        self._inv = {point: identity}

    def add_gen(self, g: Permutation) -> None:
        self.gens.append(g)
        trans = self.trans
        new = []
        gi = g.images
        for x in list(trans):
            y = gi[x]
            if y not in trans:
                trans[y] = trans[x] * g
                new.append(y)
        i = 0
        while i < len(new):
            x = new[i]
            i += 1
            for h in self.gens:
                y = h.images[x]
                if y not in trans:
                    trans[y] = trans[x] * h
                    new.append(y)

    def inverse(self, x: int) -> Permutation:
        u = self._inv.get(x)
        if u is None:
            u = self._inv[x] = ~self.trans[x]
        return u


@dataclass
class StabilizerChain:
    """Base, transversals and strong generators of a permutation group.

    ``transversals[i][y]`` maps ``base[i]`` to ``y`` and fixes ``base[:i]``;
    ``strong_generators[i]`` generates the pointwise stabilizer of ``base[:i]``.
    """

    degree: int
    levels: list

    @property
    def base(self) -> list:
        return [lvl.point for lvl in self.levels]

    @property
    def transversals(self) -> list:
        return [lvl.trans for lvl in self.levels]

    @property
    def strong_generators(self) -> list:
        return [list(lvl.gens) for lvl in self.levels]

    def order(self, start: int = 0) -> int:
        return prod(len(lvl.trans) for lvl in self.levels[start:])

    def sift(self, g: Permutation, start: int = 0):
        """Strip ``g`` through the chain; returns (residue, level reached)."""
        for j in range(start, len(self.levels)):
            lvl = self.levels[j]
            x = g.images[lvl.point]
            if x not in lvl.trans:
                return g, j
            if x != lvl.point:
                g = g * lvl.inverse(x)
        return g, len(self.levels)

    def contains(self, g: Permutation) -> bool:
        h, j = self.sift(g)
        return j == len(self.levels) and h.is_identity()

    def tail(self, start: int) -> "StabilizerChain":
        return StabilizerChain(self.degree, self.levels[start:])


def schreier_sims(
    generators: Sequence[Permutation],
    degree: int,
    base_prefix: Sequence[int] = (),
    known_order: Optional[int] = None,
) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    When ``known_order`` is given the construction stops as soon as the
    transversal sizes multiply to it; the resulting chain is still valid.
    """
    ident = Permutation.identity(degree)
    base: list = []
    for b in base_prefix:
        if b not in base:
            base.append(b)
    gens: list = []
    seen = set()
    for g in generators:
        if not g.is_identity() and g not in seen:
            seen.add(g)
            gens.append(g)
    for g in gens:
        if all(g.images[b] == b for b in base):
            base.append(_first_moved(g))
    levels = [_Level(b, ident) for b in base]
    for i, lvl in enumerate(levels):
        fixed = base[:i]
        for g in gens:
            if all(g.images[b] == b for b in fixed):
                lvl.add_gen(g)
    chain = StabilizerChain(degree, levels)

    i = len(levels) - 1
    while i >= 0:
        if known_order is not None and chain.order() == known_order:
            break
        lvl = levels[i]
        added = False
        tested = set()
        for beta in list(lvl.trans):
            u = lvl.trans[beta]
            for s in list(lvl.gens):
                sg = u * s * lvl.inverse(s.images[beta])
                if sg in tested or sg.is_identity():
                    continue
                tested.add(sg)
                h, j = chain.sift(sg, i + 1)
                if j < len(levels) or not h.is_identity():
                    if j == len(levels):
                        levels.append(_Level(_first_moved(h), ident))
                    for lv in range(i + 1, j + 1):
                        levels[lv].add_gen(h)
                    i = j
                    added = True
                    break
            if added:
                break
        if not added:
            i -= 1
    if known_order is not None and chain.order() != known_order:
        raise RelcompError(
            f"stabilizer chain order {chain.order()} != known order {known_order}"
        )
    return chain


class PermGroup:
    """A permutation group given by generators, with cached stabilizer chains."""

    def __init__(
        self,
        generators: Iterable,
        degree: Optional[int] = None,
        *,
        order: Optional[int] = None,
    ):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if not gens:
            if degree is None:
                raise ValueError("a group needs at least one generator")
            gens = [Permutation.identity(degree)]
        degs = {g.degree for g in gens}
        if len(degs) != 1:
            raise DegreeError(f"generators of mixed degree: {sorted(degs)}")
        d = degs.pop()
        if degree is not None and degree != d:
            raise DegreeError(f"generators have degree {d}, expected {degree}")
        if d < 2:
            raise DegreeError(f"degree {d} groups are not supported (need >= 2 points)")
        nontrivial = [g for g in gens if not g.is_identity()]
        self.degree = d
        self.generators = nontrivial or [Permutation.identity(d)]
        self._known_order = order
        self._chains: dict = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={self.generators})"

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def chain(self, base_prefix: Sequence[int] = ()) -> StabilizerChain:
        key = tuple(dict.fromkeys(base_prefix))
        with self._lock:
            ch = self._chains.get(key)
            if ch is not None:
                return ch
            if key:
                default = self._chain_unlocked(())
                gens = [g for lvl in default.levels for g in lvl.gens] or self.generators
                ch = schreier_sims(gens, self.degree, key, known_order=default.order())
                if len(self._chains) > 4096:
                    self._chains = {(): default}
                self._chains[key] = ch
                return ch
            return self._chain_unlocked(())

    def _chain_unlocked(self, key) -> StabilizerChain:
        ch = self._chains.get(key)
        if ch is None:
            ch = schreier_sims(self.generators, self.degree, key, known_order=self._known_order)
            self._chains[key] = ch
        return ch

    def order(self) -> int:
        return self.chain().order()

    def contains(self, g: Permutation) -> bool:
        return g.degree == self.degree and self.chain().contains(g)

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "PermGroup":
        return cls([Permutation(g) for g in data["generators"]], data["degree"])


# -- operations -------------------------------------------------------------


def group_order(G: PermGroup) -> int:
    return G.order()


def orbit(G: PermGroup, x: int) -> set:
    if not 0 <= x < G.degree:
        raise ValueError(f"point {x} out of range for degree {G.degree}")
    seen = {x}
    queue = [x]
    for y in queue:
        for g in G.generators:
            z = g.images[y]
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


def orbits(G: PermGroup, points: Optional[Iterable[int]] = None) -> list:
    """Orbits meeting ``points`` (default: all), each sorted, listed by minimum."""
    if points is None:
        points = range(G.degree)
    done: set = set()
    out = []
    for x in sorted(points):
        if x in done:
            continue
        orb = orbit(G, x)
        done |= orb
        out.append(sorted(orb))
    return out


def is_transitive(G: PermGroup) -> bool:
    return len(orbit(G, 0)) == G.degree


@dataclass(frozen=True)
class BlockSystem:
    block_of: tuple
    block_count: int

    def blocks(self) -> list:
        out: dict = {}
        for x, b in enumerate(self.block_of):
            out.setdefault(b, []).append(x)
        return list(out.values())


def minimal_block_system(G: PermGroup, a: int, b: int) -> BlockSystem:
    """Finest G-invariant partition in which ``a`` and ``b`` share a block."""
    parent = list(range(G.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return None
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        return rx, ry

    queue = [(a, b)]
    union(a, b)
    while queue:
        x, y = queue.pop()
        for g in G.generators:
            u, v = find(g.images[x]), find(g.images[y])
            if u != v:
                union(u, v)
                queue.append((u, v))
    roots = [find(x) for x in range(G.degree)]
    ids: dict = {}
    block_of = tuple(ids.setdefault(r, len(ids)) for r in roots)
    return BlockSystem(block_of, len(ids))


def is_primitive(G: PermGroup) -> bool:
    if not is_transitive(G):
        return False
    return all(minimal_block_system(G, 0, b).block_count == 1 for b in range(1, G.degree))


def point_stabilizer(G: PermGroup, points: Sequence[int]) -> PermGroup:
    """Pointwise stabilizer of ``points``."""
    for p in points:
        if not 0 <= p < G.degree:
            raise ValueError(f"point {p} out of range for degree {G.degree}")
    key = tuple(dict.fromkeys(points))
    ch = G.chain(key)
    m = len(key)
    if m >= len(ch.levels):
        return PermGroup([], G.degree, order=1)
    tail = ch.tail(m)
    H = PermGroup(ch.levels[m].gens, G.degree, order=tail.order())
    H._chains[()] = tail
    return H


def are_conjugate_tuples(
    G: PermGroup, xs: Sequence[int], ys: Sequence[int]
) -> Optional[Permutation]:
    """Return ``g`` with ``xs^g == ys`` entrywise, or None if no such g exists.

    Works by transversal descent along a chain based at the entries of ``xs``.
    """
    if len(xs) != len(ys):
        raise ValueError(f"tuple length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    for i in range(n):
        for j in range(i + 1, n):
            if (xs[i] == xs[j]) != (ys[i] == ys[j]):
                return None
    first: dict = {}
    for i, x in enumerate(xs):
        first.setdefault(x, i)
    idx = sorted(first.values())
    xd = [xs[i] for i in idx]
    target = [ys[i] for i in idx]
    ch = G.chain(xd)
    g = G.identity
    for i, x in enumerate(xd):
        lvl = ch.levels[i]
        u = lvl.trans.get(target[i])
        if u is None:
            return None
        if target[i] != x:
            uinv = lvl.inverse(target[i])
            target = [uinv.images[v] for v in target]
            g = u * g
    assert g.apply(xs) == tuple(ys)
    return g


def elements(G: PermGroup, cap: int = 10**6) -> list:
    """All group elements in BFS discovery order from the identity."""
    order = G.order()
    if order > cap:
        raise RelcompError(f"group of order {order} exceeds element cap {cap}")
    ident = G.identity
    seen = {ident}
    out = [ident]
    gens = sorted(G.generators)
    for x in out:
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out
