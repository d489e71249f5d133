import random

import pytest

from oracles import rank_mod_p
from skewrank.codes import dual_code, subspace_code
from skewrank.errors import BadDimensionError, NormMismatchError, ShapeMismatchError
from skewrank.frameworks import (
    Basis,
    dual_basis,
    ev_basis,
    ev_basis_inverse,
    ext_basis,
    from_vector,
    hamming_weight,
    mat_form,
    matrix_weight,
    normal_basis,
    phi_alpha,
    power_basis,
    theta_adjoint,
    theta_eval,
    to_matrix,
    to_vector,
    vec_form,
    vector_weight,
)
from skewrank.gf import build_tower
from skewrank.sumrank import QuotientElem, make_context, weight


@pytest.fixture(params=[((5, 1, 3), (1, 2, 3, 4)), ((3, 1, 2), (1, 2)), ((2, 2, 2), (1, 2, 3)),
                        ((5, 1, 2), (1, 4))], ids=str)
def ctx(request):
    spec, lams = request.param
    return make_context(build_tower(*spec), lams)


def rand_elem(ctx, rng):
    return ctx.elem([rng.randrange(ctx.tower.order) for _ in range(ctx.N)])


def rand_basis(t, rng):
    while True:
        try:
            return Basis.of(t, [rng.randrange(1, t.order) for _ in range(t.n)])
        except BadDimensionError:
            pass


def test_weight_chain(ctx):
    t = ctx.tower
    rng = random.Random(40)
    for _ in range(40):
        F = rand_elem(ctx, rng)
        B = [rand_basis(t, rng) for _ in range(ctx.ell)]
        E = [rand_basis(t, rng) for _ in range(ctx.ell)]
        v = to_vector(F, bases=B)
        M = to_matrix(F, bases=B, ext_bases=E)
        assert weight(F) == vector_weight(t, v) == matrix_weight(t, M)
        assert from_vector(ctx, v, bases=B) == F


def test_ev_and_moore_inverse(ctx):
    t = ctx.tower
    rng = random.Random(41)
    B = rand_basis(t, rng)
    for _ in range(20):
        f = tuple(rng.randrange(t.order) for _ in range(t.n))
        vals = ev_basis(f, B)
        assert ev_basis_inverse(vals, B) == f


def test_ext_columns_are_coordinates(ctx):
    t = ctx.tower
    B = power_basis(t)
    v = list(range(1, t.n + 1))
    M = ext_basis(v, B)
    for j, x in enumerate(v):
        assert tuple(M[i][j] for i in range(t.n)) == tuple(t.coords(x))


def test_dual_and_normal_bases(ctx):
    t = ctx.tower
    rng = random.Random(42)
    for B in (power_basis(t), normal_basis(t), rand_basis(t, rng)):
        Bs = dual_basis(B)
        for i, a in enumerate(B):
            for j, b in enumerate(Bs):
                assert t.trace(t.mul(a, b)) == int(i == j)
    N = normal_basis(t)
    assert all(t.frob(N.elems[0], i) == N.elems[i] for i in range(t.n))


def test_theta_adjoint_is_trace_adjoint(ctx):
    t = ctx.tower
    rng = random.Random(43)
    for _ in range(20):
        f = [rng.randrange(t.order) for _ in range(t.n)]
        g = theta_adjoint(t, f)
        assert theta_adjoint(t, g) == tuple(f)
        a, b = rng.randrange(t.order), rng.randrange(t.order)
        assert t.trace(t.mul(theta_eval(t, f, a), b)) == t.trace(t.mul(a, theta_eval(t, g, b)))


def _k_subspace(ctx, rng, dim):
    polys = [QuotientElem(ctx, rand_elem(ctx, rng).rep) for _ in range(dim)]
    return subspace_code(ctx, polys, ctx.tower.e)


def test_duality_transport_to_vectors_and_matrices(ctx):
    """Polynomial duals map to vector duals (α → α^-1, B → B*) and on to matrix duals."""
    if not ctx.is_group:
        pytest.skip("needs Λ to be a group")
    t = ctx.tower
    rng = random.Random(44)
    inv = [t.inv(a) for a in ctx.alphas]
    for _ in range(6):
        C = _k_subspace(ctx, rng, rng.randrange(1, 5))
        D = dual_code(C)
        k_dim_total = ctx.N * t.n
        assert C.dimension_over(t.e) + D.dimension_over(t.e) == k_dim_total
        B = [rand_basis(t, rng) for _ in range(ctx.ell)]
        Bs = [dual_basis(b) for b in B]
        Cs = [to_vector(QuotientElem(ctx, b), inv, Bs) for b in C.restrict_scalars(t.e).basis]
        Ds = [to_vector(QuotientElem(ctx, b), None, B) for b in D.restrict_scalars(t.e).basis]
        for u in Ds:
            for v in Cs:
                assert vec_form(t, u, v) == 0
        # vector dual → matrix dual: Ext_B(C^⊥v) ⟂ Ext_{B*}(C)
        Du = [[ext_basis(blk, b) for blk, b in zip(u, B)] for u in Ds]
        Cv = [[ext_basis(blk, b) for blk, b in zip(v, Bs)] for v in Cs]
        for m1 in Du:
            for m2 in Cv:
                assert mat_form(t, m1, m2) == 0


def test_matrix_images_have_full_dimension(ctx):
    """Ext is injective, so a K-basis maps to independent matrix tuples."""
    t = ctx.tower
    rng = random.Random(45)
    C = _k_subspace(ctx, rng, 3).restrict_scalars(t.e)
    if t.e != 1:
        pytest.skip("rank check below is over the prime field")
    rows = [[x for m in to_matrix(QuotientElem(ctx, b)) for r in m for x in r] for b in C.basis]
    assert rank_mod_p(rows, t.p) == len(C.basis)


def test_shape_and_norm_validation():
    t = build_tower(5, 1, 3)
    ctx = make_context(t, [1, 2])
    F = ctx.one()
    with pytest.raises(NormMismatchError):
        phi_alpha(F, [1, 2])  # norms 1 and 3
    with pytest.raises(ShapeMismatchError):
        phi_alpha(F, [1])
    with pytest.raises(ShapeMismatchError):
        vec_form(t, [[1, 2, 3]], [[1, 2]])
    with pytest.raises(BadDimensionError):
        Basis.of(t, [1, 2, 3])


def test_hamming_weight_for_n_one():
    t = build_tower(7, 1, 1)
    ctx = make_context(t, [1, 2, 3])
    F = ctx.elem([3, 0, 5])
    v = to_vector(F)
    assert hamming_weight(v) == weight(F) == vector_weight(t, v)
