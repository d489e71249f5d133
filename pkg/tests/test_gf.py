import json
import random

import pytest

from oracles import TowerOracle, power
from skewrank import gf
from skewrank.errors import (
    BadIntermediateError,
    DuplicateLambdaError,
    EvenCharacteristicError,
    NonPrimeError,
    ReducibleModulusError,
    TowerMismatchError,
    ZeroInputError,
    ZeroLambdaError,
)
from skewrank.gf import build_tower

TOWERS = [(2, 1, 3), (2, 2, 2), (3, 1, 2), (3, 2, 2), (5, 1, 3), (7, 1, 2), (2, 1, 1), (3, 2, 1)]


@pytest.fixture(params=TOWERS, ids=lambda x: "p{}e{}n{}".format(*x))
def tower(request):
    return build_tower(*request.param)


def test_default_moduli_are_pinned():
    assert build_tower(5, 1, 3).modulus == (3, 3, 0, 1)
    assert build_tower(5, 1, 1).modulus == (4, 1)  # y - 1
    assert build_tower(3, 2, 1).modulus_K == (2, 1, 1)


def test_mul_and_add_match_schoolbook(tower):
    o = TowerOracle(tower)
    rng = random.Random(1)
    elems = range(tower.order) if tower.order <= 64 else [rng.randrange(tower.order) for _ in range(60)]
    for a in elems:
        for b in elems:
            assert tower.mul(a, b) == o.mul(a, b)
            assert tower.add(a, b) == o.add(a, b)


def test_field_axioms_on_random_triples(tower):
    rng = random.Random(7)
    Q = tower.order
    for _ in range(1000):
        a, b, c = (rng.randrange(Q) for _ in range(3))
        assert tower.mul(tower.mul(a, b), c) == tower.mul(a, tower.mul(b, c))
        assert tower.add(tower.add(a, b), c) == tower.add(a, tower.add(b, c))
        assert tower.mul(a, tower.add(b, c)) == tower.add(tower.mul(a, b), tower.mul(a, c))
        if a:
            assert tower.mul(a, tower.inv(a)) == 1
        assert tower.add(a, tower.neg(a)) == 0


def test_frobenius_is_a_field_automorphism_fixing_exactly_k(tower):
    o = TowerOracle(tower)
    fixed = set()
    for a in range(tower.order):
        assert tower.frob(a, 1) == o.frob(a, 1)
        assert tower.frob(a, 0) == a
        assert tower.frob(a, tower.n) == a
        if tower.frob(a, 1) == a:
            fixed.add(a)
    assert fixed == set(range(tower.q))
    rng = random.Random(3)
    for _ in range(200):
        a, b = rng.randrange(tower.order), rng.randrange(tower.order)
        assert tower.frob(tower.mul(a, b)) == tower.mul(tower.frob(a), tower.frob(b))
        assert tower.frob(tower.add(a, b)) == tower.add(tower.frob(a), tower.frob(b))


def test_norm_and_trace_land_in_k(tower):
    o = TowerOracle(tower)
    for a in range(tower.order):
        N, T = tower.norm(a), tower.trace(a)
        assert N == o.norm(a) and T == o.trace(a)
        assert N < tower.q and T < tower.q
        assert N == power(o.L, a, (tower.order - 1) // (tower.q - 1)) if a else N == 0


def test_truncated_norm_cocycle(tower):
    rng = random.Random(5)
    for _ in range(100):
        a = rng.randrange(1, tower.order)
        i, j = rng.randrange(0, 2 * tower.n + 1), rng.randrange(0, 2 * tower.n + 1)
        lhs = tower.tnorm(a, i + j)
        rhs = tower.mul(tower.tnorm(a, i), tower.frob(tower.tnorm(a, j), i))
        assert lhs == rhs
        assert tower.tnorm(a, 0) == 1
        assert tower.tnorm(a, tower.n) == tower.norm(a)


def test_f125_pinned_values():
    t = build_tower(5, 1, 3)
    g = t.gamma
    o = TowerOracle(t)
    assert t.pow(g, 3) == t.add(t.mul(2, g), 2)  # γ^3 = -3γ - 3
    assert t.gamma_pow(31) == 2
    assert t.frob(g, 1) == power(o.L, g, 5)
    assert t.tnorm(g, 2) == t.gamma_pow(6)
    assert t.xi(g) == t.gamma_pow(4)
    assert [t.norm(i) for i in (1, 2, 3, 4)] == [1, 3, 2, 4]
    assert t.norm(0) == 0 and t.trace(0) == 0


def test_xi_is_one_exactly_on_k_and_has_norm_one(tower):
    for a in range(1, tower.order):
        x = tower.xi(a)
        assert tower.norm(x) == 1
        assert (x == 1) == (a < tower.q)
    with pytest.raises(ZeroInputError):
        tower.xi(0)


@pytest.mark.parametrize("spec", [(5, 1, 3), (3, 1, 3), (7, 1, 2)])
def test_hilbert90_preimage(spec):
    t = build_tower(*spec)
    assert t.hilbert90_preimage(1) == 1
    for a in range(1, t.order):
        x = t.hilbert90_preimage(a)
        if t.norm(a) == 1:
            assert t.xi(x) == a
        else:
            assert x is None
    with pytest.raises(ZeroInputError):
        t.hilbert90_preimage(0)


def test_hilbert90_gamma4_matches_scan():
    t = build_tower(5, 1, 3)
    target = t.gamma_pow(4)
    sols = {x for x in range(1, t.order) if t.xi(x) == target}
    assert t.hilbert90_preimage(target) in sols
    assert len(sols) == t.q - 1  # a coset of K*


def test_norm_representatives():
    t = build_tower(5, 1, 3)
    assert t.norm_representatives([1, 3, 2, 4]) == [1, 2, 3, 4]
    assert t.norm_representatives([1]) == [1]
    t9 = build_tower(3, 1, 2)
    reps = t9.norm_representatives([1, 2])
    scan = [next(a for a in range(1, 9) if t9.pow(a, 4) == lam) for lam in (1, 2)]
    assert reps == scan
    alt = t9.norm_representatives([1, 2], index=1)
    assert alt != reps and [t9.norm(a) for a in alt] == [1, 2]
    with pytest.raises(ZeroLambdaError):
        t.check_lambdas([0, 1])
    with pytest.raises(DuplicateLambdaError):
        t.check_lambdas([1, 1])


def test_squares_and_generated_subgroups():
    t5 = build_tower(5, 1, 3)
    assert t5.squares().elements == {1, 4}
    assert t5.is_square(1) and not t5.is_square(2)
    t9 = build_tower(3, 2, 1)
    g = t9.gamma
    assert t9.squares().elements == {t9.pow(g, 2 * i) for i in range(4)}
    assert t5.subgroup_generated([1]).elements == {1}
    assert t5.subgroup_generated([1, 2, 3, 4]).order == 4
    assert t5.subgroup_generated([1, 4]).elements == {1, 4}
    with pytest.raises(ZeroInputError):
        t5.subgroup_generated([0])
    t8 = build_tower(2, 3, 1)
    with pytest.raises(EvenCharacteristicError):
        t8.is_square(1)


def test_construction_errors():
    with pytest.raises(NonPrimeError):
        build_tower(4, 1, 2)
    with pytest.raises(ReducibleModulusError):
        build_tower(5, 1, 3, [1, 0, 0, 1])  # y^3 + 1 has the root -1
    with pytest.raises(BadIntermediateError):
        build_tower(5, 1, 3, intermediate=2)


def test_degenerate_tower_has_identity_theta():
    t = build_tower(5, 1, 1)
    assert t.order == t.q == 5
    assert all(t.frob(a, 1) == a for a in range(5))
    assert all(t.norm(a) == a for a in range(5))


def test_intermediate_field_of_mds_tower():
    t = build_tower(3, 2, 1, intermediate=2)
    E = t.subfield(t.field_degree("E"))
    assert sorted(E) == [0, 1, 2]


def test_tower_json_round_trip(tower):
    d = tower.to_dict()
    again = gf.Tower.from_dict(json.loads(json.dumps(d)))
    assert again.to_dict() == d
    assert again.mul(tower.order - 1, tower.order - 1) == tower.mul(tower.order - 1, tower.order - 1)


def test_elem_wrappers_and_tower_mixing():
    t = build_tower(5, 1, 3)
    g = t.elem(t.gamma)
    assert (g * g).value == t.gamma_pow(2)
    assert gf.norm(t.elem(2)).value == 3
    assert gf.frobenius(g, 3).value == g.value
    assert gf.truncated_norm(g, 2).value == t.gamma_pow(6)
    other = build_tower(3, 1, 2)
    with pytest.raises(TowerMismatchError):
        g + other.elem(1)
