"""Regenerate the packaged descriptor examples and verify-paper claim fixtures.

    python scripts/make_fixtures.py
"""

import json
from pathlib import Path

from relcomp import constructions as C
from relcomp import lemmas as L
from relcomp import zoo
from relcomp.perm import Permutation

DATA = Path(__file__).resolve().parents[1] / "src" / "relcomp" / "data"


def write(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def descriptors() -> dict:
    A5 = C.natural_alternating(5)
    return {
        "natural_symmetric": C.natural_symmetric(5),
        "natural_alternating": C.natural_alternating(6),
        "cyclic_regular": C.cyclic_regular(7),
        "affine_orthogonal": C.affine_orthogonal(C.QuadraticForm(3, 2, (1, 0, 1))),
        "petersen": C.petersen_group(),
        "diagonal": zoo.diagonal_a5(),
        "product": C.product_action(C.natural_symmetric(5), 2),
        "semidirect_regular": C.semidirect_regular(
            C.cyclic_regular(5), [C.power_automorphism(C.cyclic_regular(5), 2)]
        ),
        "explicit": C.cyclic_regular(4, allow_composite=True),
        "trivial": None,
        "twisted_wreath": None,
        "_a5": A5,
    }


def main() -> None:
    descs = descriptors()
    out_dir = DATA / "descriptors"
    for name, G in descs.items():
        if name.startswith("_") or G is None:
            continue
        write(out_dir / f"{name}.json", G.descriptor.to_json())
    write(out_dir / "trivial.json",
          {"family": "explicit", "params": {"degree": 3, "generators": [[0, 1, 2]]}})
    write(out_dir / "twisted_wreath.json",
          {"family": "twisted_wreath", "params": {"T": descs["_a5"].descriptor.to_json(), "k": 6}})

    claims = []

    def claim(cid, statement, check, expected, descriptor=None, **extra):
        c = {"claim": cid, "statement": statement, "check": check, "expected": expected}
        if descriptor is not None:
            c["descriptor"] = descriptor.to_json()
        c.update(extra)
        claims.append(c)

    for n in (3, 4, 5, 6):
        claim(f"rc-symmetric-{n}", f"S_{n} in its natural action is binary", "rc", 2,
              C.natural_symmetric(n).descriptor)
    for n in (4, 5, 6):
        claim(f"rc-alternating-{n}", f"A_{n} in its natural action has complexity {n - 1}", "rc", n - 1,
              C.natural_alternating(n).descriptor)
    claim("rc-petersen", "the Petersen graph group has relational complexity 3", "rc", 3,
          C.petersen_group().descriptor)
    for p in (5, 7, 11):
        claim(f"rc-cyclic-{p}", f"C_{p} acting regularly is binary", "rc", 2,
              C.cyclic_regular(p).descriptor)
    claim("rc-affine-orthogonal-3-2", "F_3^2 x| O(x^2+y^2) is binary", "rc", 2,
          descs["affine_orthogonal"].descriptor)
    claim("order-diagonal-a5", "A5^2.(2 x 2) in diagonal action has order 14400", "order", 14400,
          descs["diagonal"].descriptor)
    claim("primitive-diagonal-a5", "the diagonal A5 group is primitive", "primitive", True,
          descs["diagonal"].descriptor)
    claim("binary-diagonal-a5", "the diagonal A5 group is not binary", "binary", False,
          descs["diagonal"].descriptor)
    claim("monotonicity-petersen", "a Petersen witness lifts into Petersen wr S2", "lift", True,
          C.petersen_group().descriptor, params={"m": 2, "pad": 0})
    claim("product-witness-5-2", "the explicit 4-row matrices are 2-equivalent, not conjugate",
          "lemma", True, report=L.check_product_witness(5, 2).to_json())
    for name, M, autos in zoo.semidirect_instances()[:3]:
        rep = L.check_pair_criterion(M, autos)
        claim(f"pair-criterion-{name.replace(':', '-').lower()}",
              f"pair conjugacy criterion for {name}", "lemma", True, report=rep.to_json())
    for i, (name, alpha) in enumerate(zoo.a5_involutions()):
        rep = L.check_inverts_not_centralizes(C.natural_alternating(5), alpha)
        claim(f"inverts-a5-{i}", f"Aut(A5) involution {name} inverts a non-fixed element",
              "lemma", True, report=rep.to_json())
    for i, (name, alpha) in enumerate(zoo.a6_involutions()):
        rep = L.check_inverts_not_centralizes(zoo.psl29(), alpha)
        claim(f"inverts-a6-{i}", f"Aut(A6) involution {name} inverts a non-fixed element",
              "lemma", True, report=rep.to_json())
    A5 = C.natural_alternating(5)
    r = L.product_of_noncommuting_involutions(A5)
    claim("class-inverting-a5", "no inner automorphism of A5 inverts a whole class r^T",
          "lemma", True, report=L.search_class_inverting_automorphism(A5, r).to_json())
    claim("realizes-p-s5-wr-s2", "S5 wr S2 realizes P on pairs", "lemma", True,
          report=L.check_realizes_p_on_pairs(descs["product"]).to_json())

    cdir = DATA / "claims"
    for old in cdir.glob("*.json"):
        old.unlink()
    for c in claims:
        write(cdir / f"{c['claim']}.json", c)
    print(f"wrote {len(claims)} claims")


if __name__ == "__main__":
    main()
