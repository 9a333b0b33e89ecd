"""Brute-force oracles, independent of stabilizer chains and orbit indexes.

Everything here enumerates group elements by plain closure and compares
tuples by their least image over the whole group.
"""

from itertools import combinations, permutations


def closure(gens, degree):
    """All elements as image tuples, by BFS over products with generators."""
    ident = tuple(range(degree))
    gens = [tuple(g.images) if hasattr(g, "images") else tuple(g) for g in gens]
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return queue


def canon(elts, xs):
    """Least image of a tuple under the group: a complete orbit invariant."""
    return min(tuple(g[x] for x in xs) for g in elts)


def conjugate(elts, xs, ys):
    ys = tuple(ys)
    return any(tuple(g[x] for x in xs) == ys for g in elts)


def k_equiv(elts, xs, ys, k, cache=None):
    cache = {} if cache is None else cache
    for I in combinations(range(len(xs)), k):
        a = tuple(xs[i] for i in I)
        b = tuple(ys[i] for i in I)
        ca = cache.get(a) or cache.setdefault(a, canon(elts, a))
        cb = cache.get(b) or cache.setdefault(b, canon(elts, b))
        if ca != cb:
            return False
    return True


def determines(elts, degree, k, n):
    """(holds, lex-least witness) for k-types vs injective n-types, by enumeration."""
    tuples = list(permutations(range(degree), n))
    sub = {}
    full = {}
    classes = {}
    for t in tuples:
        fp = []
        for I in combinations(range(n), k):
            s = tuple(t[i] for i in I)
            if s not in sub:
                sub[s] = canon(elts, s)
            fp.append(sub[s])
        c = full.get(t)
        if c is None:
            c = canon(elts, t)
            for g in elts:
                full[tuple(g[x] for x in t)] = c
        classes.setdefault(tuple(fp), {}).setdefault(c, []).append(t)
    best = None
    for orbs in classes.values():
        if len(orbs) < 2:
            continue
        for c, members in orbs.items():
            x = min(members)
            y = min(min(m) for c2, m in orbs.items() if c2 != c)
            if best is None or (x, y) < best:
                best = (x, y)
    return best is None, best


def relational_complexity(elts, degree):
    if len(elts) == 1:
        return 1
    for k in range(2, degree + 1):
        if all(determines(elts, degree, k, n)[0] for n in range(k + 1, degree + 1)):
            return k
    raise AssertionError


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def primitive(gens, degree):
    """Transitive, and no nontrivial proper partition is preserved by every generator."""
    gens = [tuple(g.images) for g in gens]
    reach = {0}
    queue = [0]
    for x in queue:
        for g in gens:
            if g[x] not in reach:
                reach.add(g[x])
                queue.append(g[x])
    if len(reach) != degree:
        return False
    for part in set_partitions(range(degree)):
        if len(part) in (1, degree):
            continue
        blocks = [frozenset(b) for b in part]
        bset = set(blocks)
        if all(frozenset(g[x] for x in b) in bset for g in gens for b in blocks):
            return False
    return True
