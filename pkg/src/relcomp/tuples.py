"""Orbit labelling of injective k-tuples and k-equivalence fingerprints.

Injective k-tuples over ``{0..d-1}`` are ranked in lexicographic order
(a mixed-radix code with radices d, d-1, ..., d-k+1), so an orbit id, the
smallest rank in the orbit, is also the rank of the orbit's lex-least tuple.
"""

from __future__ import annotations

import hashlib
import json
import os
import struct
from dataclasses import dataclass
from itertools import combinations
from math import perm as falling
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded
from .perm import PermGroup, are_conjugate_tuples

DEFAULT_INDEX_BUDGET = 2 * 1024**3

CACHE_MAGIC = b"RCOI"
CACHE_VERSION = 1
_HEADER = struct.Struct("<4sIIII")


def _weights(degree: int, k: int) -> list:
    return [falling(degree - i - 1, k - i - 1) for i in range(k)]


def rank_tuple(xs: Sequence[int], degree: int) -> int:
    """Lexicographic rank of an injective tuple among all injective tuples of its length."""
    k = len(xs)
    r = 0
    for i, x in enumerate(xs):
        c = x - sum(1 for y in xs[:i] if y < x)
        r += c * falling(degree - i - 1, k - i - 1)
    return r


def unrank_tuple(r: int, degree: int, k: int) -> tuple:
    free = list(range(degree))
    out = []
    for i in range(k):
        w = falling(degree - i - 1, k - i - 1)
        c, r = divmod(r, w)
        out.append(free.pop(c))
    return tuple(out)


def _rank_array(tuples: np.ndarray, degree: int) -> np.ndarray:
    n, k = tuples.shape
    ranks = np.zeros(n, dtype=np.int64)
    for i, w in enumerate(_weights(degree, k)):
        c = tuples[:, i].astype(np.int64)
        for j in range(i):
            c -= tuples[:, j] < tuples[:, i]
        ranks += c * w
    return ranks


def index_bytes(degree: int, k: int, generators: int = 2) -> int:
    """Peak memory estimate for indexing injective k-tuples of a degree-d action.

    Per tuple: the tuple itself and ranking temporaries (4k + 32 bytes) plus
    one 32-bit image rank per generator.
    """
    return falling(degree, k) * (4 * k + 32 + 4 * generators)


def injective_tuples(degree: int, k: int, dtype=np.int16) -> np.ndarray:
    """All injective k-tuples as rows, in lexicographic (= rank) order."""
    rows = np.zeros((1, 0), dtype=dtype)
    for _ in range(k):
        free = np.ones((len(rows), degree), dtype=bool)
        free[np.arange(len(rows))[:, None], rows] = False
        r, c = np.nonzero(free)
        rows = np.hstack([rows[r], c[:, None].astype(dtype)])
    return rows


@dataclass
class OrbitIndex:
    """Orbit label of every injective k-tuple; label = smallest rank in the orbit."""

    k: int
    degree: int
    labels: np.ndarray
    orbit_count: int

    def rank(self, xs: Sequence[int]) -> int:
        return rank_tuple(xs, self.degree)

    def unrank(self, r: int) -> tuple:
        return unrank_tuple(r, self.degree, self.k)

    def label(self, xs: Sequence[int]) -> int:
        return int(self.labels[rank_tuple(xs, self.degree)])

    @property
    def tuple_count(self) -> int:
        return len(self.labels)

    def orbit_ids(self) -> list:
        return sorted(set(int(x) for x in np.unique(self.labels)))

    def representatives(self) -> list:
        return [self.unrank(r) for r in self.orbit_ids()]

    def orbit_sizes(self) -> dict:
        ids, counts = np.unique(self.labels, return_counts=True)
        return {int(i): int(c) for i, c in zip(ids, counts)}


def index_injective_k_tuples(
    G: PermGroup, k: int, budget_bytes: int = DEFAULT_INDEX_BUDGET
) -> OrbitIndex:
    """Label all injective k-tuples by G-orbit."""
    d = G.degree
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= degree, got k={k}, degree={d}")
    gens = [g for g in G.generators if not g.is_identity()]
    need = index_bytes(d, k, len(gens))
    if need > budget_bytes:
        raise BudgetExceeded(
            f"indexing {falling(d, k)} injective {k}-tuples needs ~{need} bytes "
            f"(budget {budget_bytes})",
            need,
            budget_bytes,
        )
    n = falling(d, k)
    dtype = np.int16 if d < 2**15 else np.int32
    tuples = injective_tuples(d, k, dtype)
    itype = np.int32 if n < 2**31 else np.int64
    images = []
    for g in gens:
        garr = np.asarray(g.images, dtype=dtype)
        images.append(_rank_array(garr[tuples], d).astype(itype))
    del tuples
    labels = _orbit_minima(n, images, itype)
    count = int(np.count_nonzero(labels == np.arange(n, dtype=itype)))
    return OrbitIndex(k, d, labels.astype(np.uint32), count)


def _orbit_minima(n: int, images: list, itype) -> np.ndarray:
    """Smallest element of each orbit, for a group given by permutations of range(n).

    Label propagation with pointer jumping.  Invariant: labels[x] lies in the
    orbit of x and never exceeds x.  At the fixpoint labels are constant along
    every generator edge, so each orbit carries its own minimum.  Because each
    image map is a bijection, the scatter step is a plain indexed assignment.
    """
    labels = np.arange(n, dtype=itype)
    changed = bool(images)
    while changed:
        before = labels.copy()
        for img in images:
            np.minimum(labels, labels[img], out=labels)
            labels[img] = np.minimum(labels[img], labels)
        while True:
            jumped = labels[labels]
            if np.array_equal(jumped, labels):
                break
            labels = jumped
        changed = not np.array_equal(before, labels)
    return labels


def fingerprint(idx: OrbitIndex, xs: Sequence[int]) -> tuple:
    """Orbit ids of all k-subtuples of ``xs`` over increasing index sets, lex order."""
    if len(set(xs)) != len(xs):
        raise ValueError("fingerprint needs a tuple with pairwise distinct entries")
    if len(xs) < idx.k:
        raise ValueError(f"tuple of length {len(xs)} is shorter than k={idx.k}")
    labels, d = idx.labels, idx.degree
    return tuple(int(labels[rank_tuple([xs[i] for i in I], d)]) for I in combinations(range(len(xs)), idx.k))


def k_equivalent(
    G: PermGroup,
    xs: Sequence[int],
    ys: Sequence[int],
    k: int,
    index: Optional[OrbitIndex] = None,
) -> bool:
    """Every k-subtuple of xs (increasing indices) is G-conjugate to the matching one of ys.

    Uses fingerprints when an index for this k is supplied and both tuples are
    injective, otherwise direct conjugacy tests.
    """
    if len(xs) != len(ys):
        raise ValueError(f"tuple length mismatch: {len(xs)} vs {len(ys)}")
    if k > len(xs):
        raise ValueError(f"k={k} exceeds tuple length {len(xs)}")
    injective = len(set(xs)) == len(xs) and len(set(ys)) == len(ys)
    if index is not None and index.k == k and injective:
        return fingerprint(index, xs) == fingerprint(index, ys)
    for I in combinations(range(len(xs)), k):
        if are_conjugate_tuples(G, [xs[i] for i in I], [ys[i] for i in I]) is None:
            return False
    return True


# -- disk cache -------------------------------------------------------------


def group_digest(G: PermGroup) -> str:
    blob = json.dumps(G.to_json(), separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def save_index(idx: OrbitIndex, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, idx.degree, idx.k, idx.orbit_count))
        fh.write(idx.labels.astype("<u4").tobytes())
    os.replace(tmp, path)


def load_index(path) -> OrbitIndex:
    data = Path(path).read_bytes()
    magic, version, degree, k, count = _HEADER.unpack_from(data)
    if magic != CACHE_MAGIC:
        raise ValueError(f"{path}: not an orbit index file")
    if version != CACHE_VERSION:
        raise ValueError(f"{path}: unsupported index version {version}")
    labels = np.frombuffer(data, dtype="<u4", offset=_HEADER.size).astype(np.uint32)
    if len(labels) != falling(degree, k):
        raise ValueError(f"{path}: truncated label array")
    return OrbitIndex(k, degree, labels, count)


def cached_index(
    G: PermGroup,
    k: int,
    cache_dir=None,
    budget_bytes: int = DEFAULT_INDEX_BUDGET,
) -> OrbitIndex:
    """index_injective_k_tuples with an optional on-disk cache."""
    if cache_dir is None:
        cache_dir = os.environ.get("RELCOMP_CACHE_DIR")
    if not cache_dir:
        return index_injective_k_tuples(G, k, budget_bytes)
    path = Path(cache_dir) / f"{group_digest(G)}-d{G.degree}-k{k}.orbidx"
    if path.exists():
        idx = load_index(path)
        if idx.degree == G.degree and idx.k == k:
            return idx
    idx = index_injective_k_tuples(G, k, budget_bytes)
    save_index(idx, path)
    return idx
