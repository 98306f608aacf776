import itertools
import random

import pytest

from qbw.braiding import (NotLeftNondegenerate, Solution, braid_check, braid_check_conditions, involutivity_check,
                          nondegeneracy_report, qcycle_check, qmagma_from_solution, solution_from_qmagma,
                          validate_qmagma)
from qbw.coalgebra import Coalgebra
from qbw.field import FieldSpec
from qbw.linalg import Matrix
from qbw.zoo import cyclic_group, flip, rack, symmetric_group

Q = FieldSpec.rationals()


def set_solution(n, table):
    """Linearise a map X x X -> X x X given as a dict on pairs."""
    c = Coalgebra.grouplike(Q, [f"e{i}" for i in range(n)])
    entries = {(u * n + v, a * n + b): 1 for (a, b), (u, v) in table.items()}
    return Solution(c, Matrix.from_entries(Q, n * n, n * n, entries))


def set_braid(n, table):
    for x, y, z in itertools.product(range(n), repeat=3):
        a, b = table[x, y]
        b, c = table[b, z]
        a, b = table[a, b]
        p, q = table[y, z]
        r, p = table[x, p]
        p, q = table[p, q]
        if (a, b, c) != (r, p, q):
            return False
    return True


def test_flip():
    s = flip(3)
    assert braid_check(s) and involutivity_check(s)
    q = qmagma_from_solution(s)
    assert validate_qmagma(q).ok
    assert q.p == Matrix.from_entries(Q, 3, 9, {(a, a * 3 + b): 1 for a in range(3) for b in range(3)}, (3,), (3, 3))


def test_conjugation_rack_agrees_with_set_oracle():
    G = symmetric_group(3)
    n = len(G.elements)
    table = {}
    for i, g in enumerate(G.elements):
        for j, h in enumerate(G.elements):
            table[i, j] = (j, G.index(G.mul(G.mul(G.inv(h), g), h)))
    assert set_braid(n, table)
    sol = set_solution(n, table)
    assert braid_check(sol)
    assert rack("conjugation:S3").s == sol.s


@pytest.mark.parametrize("seed", range(6))
def test_random_set_maps_against_oracle(seed):
    rng = random.Random(seed)
    n = 3
    pairs = list(itertools.product(range(n), repeat=2))
    image = pairs[:]
    rng.shuffle(image)
    table = dict(zip(pairs, image))
    sol = set_solution(n, table)
    assert braid_check(sol) == set_braid(n, table)
    q = qmagma_from_solution(sol)
    if isinstance(q, NotLeftNondegenerate):
        assert not sol.left_nondegenerate
        return
    assert all(braid_check_conditions(sol)) == braid_check(sol)
    assert qcycle_check(q, cross_check=True).ok == braid_check(sol)


@pytest.mark.parametrize("spec", ["cyclic:3", "trivial:2", "conjugation:S3"])
def test_solution_qmagma_roundtrip(spec):
    sol = rack(spec)
    q = qmagma_from_solution(sol)
    back = solution_from_qmagma(q)
    assert back == sol
    assert qmagma_from_solution(back) == q


def test_nondegeneracy_and_involutivity():
    assert nondegeneracy_report(rack("cyclic:4")).ok
    assert not involutivity_check(rack("conjugation:S3"))
    assert involutivity_check(rack("trivial:3"))


def test_degenerate_map_is_rejected():
    n = 2
    table = {(a, b): (0, 0) for a in range(n) for b in range(n)}
    sol = set_solution(n, table)
    assert not sol.left_nondegenerate
    assert isinstance(qmagma_from_solution(sol), NotLeftNondegenerate)


def test_cyclic_group_sanity():
    G = cyclic_group(5)
    assert G.abelian and G.order == 5
