import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from relcomp import constructions as C  # noqa: E402
from relcomp import zoo  # noqa: E402
from relcomp.perm import Permutation, PermGroup  # noqa: E402

ACCEPTANCE_KEY = pytest.StashKey[list]()


def small_zoo():
    """Named groups of degree <= 8 used by the brute-force comparisons."""
    out = {f"S{n}": C.natural_symmetric(n) for n in range(2, 9)}
    out.update({f"A{n}": C.natural_alternating(n) for n in range(3, 9)})
    out.update({f"C{p}": C.cyclic_regular(p) for p in (2, 3, 5, 7)})
    out.update({f"C{n}reg": C.cyclic_regular(n, allow_composite=True) for n in (4, 6, 8)})
    out["AGO(2,2)"] = C.affine_orthogonal(C.QuadraticForm(2, 2, (1, 1, 1)))
    out["AGO(1,3)"] = C.affine_orthogonal(C.QuadraticForm(3, 1, (1,)))
    out["AGO(1,5)"] = C.affine_orthogonal(C.QuadraticForm(5, 1, (1,)))
    out["AGO(1,7)"] = C.affine_orthogonal(C.QuadraticForm(7, 1, (1,)))
    out["S2wrS2"] = C.product_action(C.natural_symmetric(2), 2)
    for name, M, autos in zoo.semidirect_instances():
        G = C.semidirect_regular(M, autos)
        if G.degree <= 8:
            out[name] = G
    out["D4"] = PermGroup([Permutation.from_cycles(4, (0, 1, 2, 3)), Permutation.from_cycles(4, (1, 3))])
    out["S3wrS2imprim"] = PermGroup([
        Permutation.from_cycles(6, (0, 1)), Permutation.from_cycles(6, (0, 1, 2)),
        Permutation.from_cycles(6, (0, 3), (1, 4), (2, 5)),
    ])
    out["S2xS3"] = PermGroup([Permutation.from_cycles(5, (0, 1)), Permutation.from_cycles(5, (2, 3, 4))])
    out["S3on6"] = PermGroup([Permutation.from_cycles(6, (0, 1), (2, 4), (3, 5)),
                              Permutation.from_cycles(6, (0, 2, 3), (1, 4, 5))])
    out["trivial3"] = PermGroup([], 3)
    return out


@pytest.fixture(scope="session")
def zoo_groups():
    return small_zoo()


@pytest.fixture
def acceptance_log(request):
    """Append one summary line per acceptance criterion, shown at the end of the run."""
    return request.config.stash.setdefault(ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter):
    lines = terminalreporter.config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[0][2:])):
            terminalreporter.write_line(line)
