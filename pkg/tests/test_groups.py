"""Group enumeration, structure queries, and the power identity."""

import random

import pytest

from h1loc import (
    InputError,
    ModMatrix,
    ModulusContext,
    ModVector,
    ResourceLimitError,
    borel_check,
    close_group,
    closure_indices,
    eigen_data,
    element_order,
    embed_indices,
    fixed_submodule,
    group_from_json,
    group_to_json,
    power_identity_check,
    quotient_group,
    reduction_kernel,
    subgroup_from_indices,
)
from h1loc.constructions import borel_shared_generators, s3_generators

CTX25 = ModulusContext(5, 2)


def test_close_group_identity_only():
    g = close_group([[[1, 0], [0, 1]]], CTX25)
    assert len(g) == 1
    assert g.elements[0].mat == ModMatrix.identity(CTX25, 2)


def test_close_group_order_three():
    # Characteristic polynomial x^2 + x + 1 divides x^3 - 1 over any ring.
    g = close_group([[[1, -3], [1, -2]]], CTX25)
    assert len(g) == 3


def test_close_group_borel_shared_family():
    g = close_group(borel_shared_generators(5), CTX25)
    assert len(g) == 250


def test_close_group_rejects_singular_generator():
    with pytest.raises(InputError):
        close_group([[[5, 0], [0, 1]]], CTX25)


def test_close_group_cap():
    with pytest.raises(ResourceLimitError) as exc:
        close_group(borel_shared_generators(5), CTX25, cap=10)
    assert "10" in str(exc.value)


def test_closure_determinism():
    gens = s3_generators(5)
    a = close_group(gens, CTX25)
    b = close_group(gens, CTX25)
    assert [e.mat.entries for e in a.elements] == [e.mat.entries for e in b.elements]
    assert a.gen_words == b.gen_words


def test_element_orders():
    g = close_group([[[1, -3], [0, -1]]], CTX25)
    assert element_order(g.elements[0]) == 1
    assert element_order(ModMatrix.from_rows(CTX25, [[1, -3], [0, -1]])) == 2
    sigma = ModMatrix.from_rows(CTX25, [[6, 1], [10, 6]])
    assert element_order(sigma) == 25
    assert sigma.power(5) == ModMatrix.from_rows(CTX25, [[1, 5], [0, 1]])


def test_multiplication_table_consistency():
    g = close_group([[[1, -3], [1, -2]], [[1, -3], [0, -1]]], CTX25)
    table = g.multiplication_table()
    for i in range(len(g)):
        for j in range(len(g)):
            prod = g.elements[i].mat @ g.elements[j].mat
            assert g.elements[table[i][j]].mat == prod
        assert g.mult(i, g.inv(i)) == 0
        assert g.mult(g.inv(i), i) == 0


def test_lagrange_and_words():
    g = close_group(s3_generators(5), CTX25)
    assert len(g) == 150
    h = reduction_kernel(g)
    assert len(g) % len(h) == 0
    # Generator words reproduce the elements.
    for e, word in zip(g.elements, g.gen_words):
        acc = ModMatrix.identity(CTX25, 2)
        for j in word:
            acc = acc @ g.generators[j].mat
        assert acc == e.mat


def test_reduction_kernel_sizes():
    s3 = close_group(s3_generators(5), CTX25, label="s3")
    assert len(reduction_kernel(s3)) == 25
    from h1loc.constructions import cyclic_generators

    cyc = close_group(cyclic_generators(5), CTX25)
    assert len(reduction_kernel(cyc)) == 25


def test_reduction_kernel_normal():
    g = close_group(s3_generators(5), CTX25)
    assert g.is_normal_set(reduction_kernel(g))


def test_reduction_kernel_level_one_notice():
    ctx = ModulusContext(5, 1)
    g = close_group([[[2, 0], [0, 1]]], ctx)
    with pytest.warns(UserWarning):
        k = reduction_kernel(g)
    assert k == frozenset({0})


def test_quotient_s3():
    g = close_group(s3_generators(5), CTX25)
    q = quotient_group(g, reduction_kernel(g))
    assert len(q) == 6
    assert not q.is_abelian()


def test_quotient_by_whole_group_is_trivial():
    g = close_group([[[1, -3], [1, -2]]], CTX25)
    q = quotient_group(g, range(len(g)))
    assert len(q) == 1


def test_quotient_borel_shared():
    g = close_group(borel_shared_generators(5), CTX25)
    q = quotient_group(g, reduction_kernel(g))
    assert len(q) == 10


def test_quotient_rejects_non_normal():
    g = close_group(s3_generators(5), CTX25)
    sigma_idx = g.index_of([[1, -3], [0, -1]])
    sub = closure_indices(g, [sigma_idx])
    from h1loc import ContractError

    with pytest.raises(ContractError):
        quotient_group(g, sub)


def test_conjugation_stabilizes_kernel_family():
    g = close_group(s3_generators(5), CTX25)
    kernel = reduction_kernel(g)
    tau = g.index_of([[1, -3], [1, -2]])
    sigma = g.index_of([[1, -3], [0, -1]])
    assert g.conjugate_set(tau, kernel) == kernel
    assert g.conjugate_set(sigma, kernel) == kernel


def test_fixed_submodule_cases():
    from h1loc import full_basis

    assert fixed_submodule(CTX25, [ModMatrix.identity(CTX25, 2)]) == full_basis(CTX25, 2)
    d = ModMatrix.from_rows(CTX25, [[7, 0], [0, 1]])
    fixed = fixed_submodule(CTX25, [d])
    assert [r.coords for r in fixed.rows] == [(0, 1)]
    s3 = close_group(s3_generators(5), CTX25)
    assert fixed_submodule(CTX25, (e.mat for e in s3.elements)).is_zero()


def test_eigen_data_cases():
    split = eigen_data(ModMatrix.from_rows(CTX25, [[7, 0], [0, 1]]))
    assert sorted(split.eigenvalues) == [1, 2]
    assert not split.irreducible
    assert split.vectors_for(1) is not None

    tau = eigen_data(ModMatrix.from_rows(CTX25, [[1, -3], [1, -2]]))
    assert tau.irreducible and tau.eigenvalues == ()

    unipotent = eigen_data(ModMatrix.from_rows(CTX25, [[1, 1], [0, 1]]))
    assert unipotent.eigenvalues == (1, 1)
    vecs = unipotent.vectors_for(1)
    assert [r.coords for r in vecs.rows] == [(1, 0)]


def test_borel_check_cases():
    shared = close_group(borel_shared_generators(5), CTX25)
    v = borel_check(shared)
    assert v is not None and v.coords == (1, 0)

    s3 = close_group(s3_generators(5), CTX25)
    assert borel_check(s3) is None

    trivial = close_group([[[1, 0], [0, 1]]], CTX25)
    assert borel_check(trivial).coords == (1, 0)


def test_power_identity_specific_values():
    ctx = ModulusContext(5, 2)
    assert power_identity_check(0, 0, 0, 0, ctx)
    m = ModMatrix.from_rows(ctx, [[6, 11], [15, 21]])
    assert m.power(5) == ModMatrix.from_rows(ctx, [[1, 5], [0, 1]])
    assert power_identity_check(1, 2, 3, 4, ctx)
    ctx343 = ModulusContext(7, 3)
    rng = random.Random(3)
    a, b, c, d = (rng.randrange(343) for _ in range(4))
    assert power_identity_check(a, b, c, d, ctx343)
    m3 = ModMatrix.from_rows(ctx343, [[1 + 7 * a, 1 + 7 * b], [7 * c, 1 + 7 * d]])
    assert m3.power(49) == ModMatrix.from_rows(ctx343, [[1, 49], [0, 1]])


def test_power_identity_randomized_batches():
    rng = random.Random(0)
    for p in (5, 7, 11, 13):
        for n in (2, 3):
            ctx = ModulusContext(p, n)
            q = ctx.modulus
            for _ in range(200):
                assert power_identity_check(
                    rng.randrange(q), rng.randrange(q), rng.randrange(q), rng.randrange(q), ctx
                )


def test_power_identity_requires_depth():
    with pytest.raises(InputError):
        power_identity_check(0, 0, 0, 0, ModulusContext(5, 1))


def test_subgroup_reenumeration_and_embedding():
    g = close_group(borel_shared_generators(5), CTX25)
    kernel = reduction_kernel(g)
    sub = subgroup_from_indices(g, kernel, label="kernel")
    assert len(sub) == 25
    back = embed_indices(sub, g)
    assert frozenset(back) == kernel


def test_group_json_round_trip_with_negatives():
    data = {
        "p": 5,
        "n": 2,
        "generators": [[[1, -3], [1, -2]], [[1, -3], [0, -1]]],
        "label": "sample",
    }
    g = group_from_json(data)
    assert len(g) == 6
    assert g.label == "sample"
    out = group_to_json(g)
    assert out["generators"][0] == [[1, 22], [1, 23]]
    assert group_from_json(out).label == "sample"


def test_group_json_rejects_malformed():
    with pytest.raises(InputError):
        group_from_json({"p": 5, "n": 2, "generators": [[[1, 0]]]})
    with pytest.raises(InputError):
        group_from_json({"p": 6, "n": 1, "generators": [[[1, 0], [0, 1]]]})
    with pytest.raises(InputError):
        group_from_json({"p": 5, "n": 2, "generators": []})


def test_fixed_submodule_eigenvector_reading():
    # A diagonal whose top entry differs from 1 by a unit fixes one axis;
    # if the difference is divisible by p the torsion part survives too.
    ctx9 = ModulusContext(3, 2)
    unit_diff = fixed_submodule(ctx9, [ModMatrix.from_rows(ctx9, [[2, 0], [0, 1]])])
    assert [r.coords for r in unit_diff.rows] == [(0, 1)]
    p_diff = fixed_submodule(ctx9, [ModMatrix.from_rows(ctx9, [[4, 0], [0, 1]])])
    assert [r.coords for r in p_diff.rows] == [(3, 0), (0, 1)]


def test_vector_matrix_arithmetic():
    v = ModVector.make(CTX25, [3, 4])
    w = ModVector.make(CTX25, [30, -4])
    assert (v + w).coords == (8, 0)
    assert (v - w).coords == (23, 8)
    assert (-v).coords == (22, 21)
    assert v.scale(10).coords == (5, 15)
    m = ModMatrix.from_rows(CTX25, [[1, 2], [3, 4]])
    assert m.vec_mul(v).coords == (11, 0)
    assert (m @ m.inverse()) == ModMatrix.identity(CTX25, 2)
