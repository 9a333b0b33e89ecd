"""Named instances used by the lemma checks, fixtures and tests."""

from __future__ import annotations

from .constructions import (
    conjugation_images,
    cyclic_regular,
    diagonal_type,
    natural_alternating,
    natural_symmetric,
    power_automorphism,
    _tag,
)
from .perm import Permutation, PermGroup

# F_9 = F_3[i] / (i^2 + 1); a + b i is stored as a + 3 b; the point 9 is infinity.
_INF = 9


def _f9(a: int, b: int) -> int:
    return a % 3 + 3 * (b % 3)


def _f9_parts(x: int):
    return x % 3, x // 3


def _f9_add(x: int, y: int) -> int:
    (a, b), (c, d) = _f9_parts(x), _f9_parts(y)
    return _f9(a + c, b + d)


def _f9_mul(x: int, y: int) -> int:
    (a, b), (c, d) = _f9_parts(x), _f9_parts(y)
    return _f9(a * c - b * d, a * d + b * c)


def _f9_inv(x: int) -> int:
    for y in range(1, 9):
        if _f9_mul(x, y) == 1:
            return y
    raise ZeroDivisionError("0 has no inverse in F_9")


def mobius(a: int, b: int, c: int, d: int) -> Permutation:
    """z -> (a z + b) / (c z + d) on the projective line over F_9."""
    images = []
    for z in range(10):
        if z == _INF:
            num, den = a, c
        else:
            num = _f9_add(_f9_mul(a, z), b)
            den = _f9_add(_f9_mul(c, z), d)
        images.append(_INF if den == 0 else _f9_mul(num, _f9_inv(den)))
    return Permutation(images)


def frobenius() -> Permutation:
    """z -> z^3 on the projective line over F_9."""
    return Permutation([_INF if z == _INF else _f9_mul(z, _f9_mul(z, z)) for z in range(10)])


ONE, I, MINUS_ONE = _f9(1, 0), _f9(0, 1), _f9(-1, 0)
OMEGA = _f9(1, 1)  # a primitive element: (1 + i)^4 = -1


def psl29() -> PermGroup:
    """PSL(2, 9), isomorphic to A6, acting on the 10 points of the projective line."""
    gens = [
        mobius(ONE, ONE, 0, ONE),
        mobius(ONE, I, 0, ONE),
        mobius(0, MINUS_ONE, ONE, 0),
        mobius(_f9_mul(OMEGA, OMEGA), 0, 0, ONE),
    ]
    G = PermGroup(gens, 10)
    return _tag(G, "explicit", G.to_json(), "A6")


def a5_involutions() -> list:
    """One involution per class of Aut(A5) = S5, as (name, generator-image map)."""
    A5 = natural_alternating(5)
    return [
        ("inner (0 1)(2 3)", conjugation_images(A5, Permutation.from_cycles(5, (0, 1), (2, 3)))),
        ("outer (0 1)", conjugation_images(A5, Permutation.from_cycles(5, (0, 1)))),
    ]


def a6_involutions() -> list:
    """One involution per class of Aut(A6) = PGammaL(2, 9), acting on PSL(2, 9).

    Aut(A6) has three involution classes: inner, the S6 coset (transpositions
    and triple transpositions are fused), and the PGL(2, 9) coset.  The M10
    coset contains none.
    """
    T = psl29()
    return [
        ("inner z -> -1/z", conjugation_images(T, mobius(0, MINUS_ONE, ONE, 0))),
        ("field z -> z^3", conjugation_images(T, frobenius())),
        ("diagonal z -> (1+i)/z", conjugation_images(T, mobius(0, OMEGA, ONE, 0))),
    ]


def diagonal_a5(top="symmetric", outer: bool = True) -> PermGroup:
    """A5^2 in diagonal action on 60 points, optionally with swap and an outer automorphism."""
    A5 = natural_alternating(5)
    autos = [conjugation_images(A5, Permutation.from_cycles(5, (0, 1)))] if outer else []
    return diagonal_type(A5, 2, top=top, outer=autos)


def semidirect_instances() -> list:
    """(name, M, automorphism list) triples for semidirect_regular."""
    C5, C7 = cyclic_regular(5), cyclic_regular(7)
    A4 = natural_alternating(4)
    S3 = natural_symmetric(3)
    A5 = natural_alternating(5)
    klein = PermGroup([Permutation.from_cycles(4, (0, 1), (2, 3)),
                       Permutation.from_cycles(4, (0, 2), (1, 3))], 4)
    rot = Permutation.from_cycles(4, (1, 2, 3))
    return [
        ("C5:C4", C5, [power_automorphism(C5, 2)]),
        ("C7:C6", C7, [power_automorphism(C7, 3)]),
        ("A4:C2", A4, [conjugation_images(A4, Permutation.from_cycles(4, (0, 1)))]),
        ("C5:C2", C5, [power_automorphism(C5, 4)]),
        ("C7:C3", C7, [power_automorphism(C7, 2)]),
        ("S3:Inn", S3, [conjugation_images(S3, Permutation.from_cycles(3, (0, 1, 2)))]),
        ("C2^2:C3", klein, [conjugation_images(klein, rot)]),
        ("A5:C2", A5, [conjugation_images(A5, Permutation.from_cycles(5, (0, 1)))]),
        ("C7", C7, []),
    ]
