"""The cocycle engine against brute force, examples, and its own axioms."""

import random

import pytest

from h1loc import (
    Cocycle,
    CocycleSystem,
    ContractError,
    GModule,
    ModulusContext,
    ModVector,
    close_group,
    coboundary_space,
    cocycle_from_coordinates,
    cocycle_space,
    cyclic_subgroup,
    equivariant_homs,
    full_module,
    h1,
    h1_loc,
    inflate_cocycle,
    inflation_restriction_check,
    is_coboundary,
    local_cocycle_space,
    quotient_group,
    reduction_kernel,
    restrict_cocycle,
    subgroup_from_indices,
    torsion_module,
    verify_cocycle,
)
from h1loc.constructions import (
    borel_shared_generators,
    borel_shared_witness,
    build_borel_disjoint_group,
    build_borel_shared_group,
    build_cyclic_quotient_group,
    build_s3_quotient_group,
    cyclic_generators,
    s3_generators,
)
from conftest import (
    brute_coboundary_tables,
    brute_cocycle_tables,
    brute_local_tables,
    engine_tables,
)

CTX25 = ModulusContext(5, 2)


def test_trivial_group_spaces():
    g = close_group([[[1, 0], [0, 1]]], CTX25)
    mod = full_module(CTX25)
    assert cocycle_space(g, mod).span_size() == 1
    assert coboundary_space(g, mod).span_size() == 1
    assert local_cocycle_space(g, mod).span_size() == 1
    assert h1(g, mod).order == 1


def test_minus_identity_coprime_vanishing():
    g = close_group([[[-1, 0], [0, -1]]], CTX25)
    mod = full_module(CTX25)
    z1 = cocycle_space(g, mod)
    b1 = coboundary_space(g, mod)
    assert z1.span_size() == 625
    assert b1 == z1
    assert h1(g, mod).order == 1
    assert h1_loc(g, mod).order == 1


def test_coprime_vanishing_diagonal():
    # diag(7, 1) has order 4 mod 25, coprime to |V| = 5^4.
    g = close_group([[[7, 0], [0, 1]]], CTX25)
    assert h1(g, full_module(CTX25)).order == 1
    # A full-order unit is no longer coprime and cohomology appears.
    g20 = close_group([[[2, 0], [0, 1]]], CTX25)
    assert len(g20) == 20
    assert h1(g20, full_module(CTX25)).order == 5
    # Still locally trivial: on a cyclic group every local class dies.
    assert h1_loc(g20, full_module(CTX25)).order == 1


def test_coboundary_space_cases():
    # A group acting trivially on the module has no nonzero coboundaries.
    ctx9 = ModulusContext(3, 2)
    unit = close_group([[[1, 3], [0, 1]]], ctx9)
    assert coboundary_space(unit, torsion_module(ctx9)).span_size() == 1

    # For a diagonal with both entries shifted by p, the coboundary space
    # has order |V| / |fixed| = p^2.
    h = close_group([[[1 + 5, 0], [0, 1 - 5]]], CTX25)
    assert coboundary_space(h, full_module(CTX25)).span_size() == 25


def test_nesting_of_spaces():
    for gens in (s3_generators(5), cyclic_generators(5), borel_shared_generators(5)):
        g = close_group(gens, CTX25)
        for mod in (full_module(CTX25), torsion_module(CTX25)):
            system = CocycleSystem(g, mod)
            z1, z1loc, b1 = system.z1(), system.z1_local(), system.b1()
            assert all(z1loc.contains(r) for r in b1.rows)
            assert all(z1.contains(r) for r in z1loc.rows)


def test_h1loc_divides_h1_and_is_p_power():
    for builder in (build_s3_quotient_group, build_cyclic_quotient_group, build_borel_shared_group):
        g = builder(5)
        mod = full_module(g.ctx)
        full = h1(g, mod)
        loc = h1_loc(g, mod)
        assert full.order % loc.order == 0
        for order in (full.order, loc.order):
            while order % 5 == 0:
                order //= 5
            assert order == 1


def test_brute_force_oracle_equivalence(oracle_instances):
    assert len(oracle_instances) >= 20
    for group, module in oracle_instances:
        tables = brute_cocycle_tables(group, module)
        assert engine_tables(group, module, cocycle_space(group, module)) == tables
        cobs = brute_coboundary_tables(group, module)
        assert engine_tables(group, module, coboundary_space(group, module)) == cobs
        local = brute_local_tables(group, module, tables)
        assert engine_tables(group, module, local_cocycle_space(group, module)) == local
        assert h1_loc(group, module).order == len(local) // len(cobs)


def test_class_independence_of_local_condition():
    rng = random.Random(42)
    for gens in (cyclic_generators(5), borel_shared_generators(5)):
        g = close_group(gens, CTX25)
        mod = full_module(CTX25)
        system = CocycleSystem(g, mod)
        local = system.z1_local()
        b1 = system.b1()
        local_vecs = [v for v in local.rows]
        b_vecs = [v for v in b1.rows]
        if not local_vecs or not b_vecs:
            continue
        for _ in range(100):
            lv = rng.choice(local_vecs).scale(rng.randrange(25))
            bv = rng.choice(b_vecs).scale(rng.randrange(25))
            c = system.expand((lv + bv).coords)
            assert system.is_local_table(c)


def test_local_iff_cyclic_restrictions_are_coboundaries():
    groups = [
        close_group(cyclic_generators(5), CTX25),
        build_borel_disjoint_group(5),
        close_group(s3_generators(5), CTX25),
    ]
    rng = random.Random(8)
    for g in groups:
        mod = full_module(CTX25)
        system = CocycleSystem(g, mod)
        z1_rows = system.z1().rows
        samples = [row.coords for row in z1_rows]
        for _ in range(6):
            mix = [0] * system.dim
            for row in z1_rows:
                c = rng.randrange(25)
                mix = [(a + c * b) % 25 for a, b in zip(mix, row.coords)]
            samples.append(tuple(mix))
        for coords in samples:
            c = system.expand(coords)
            by_elements = system.is_local_table(c)
            by_restriction = True
            for idx in range(len(g)):
                sub = cyclic_subgroup(g, idx)
                restricted = restrict_cocycle(c, sub)
                if is_coboundary(sub, full_module(CTX25), restricted) is None:
                    by_restriction = False
                    break
            assert by_elements == by_restriction


def test_is_coboundary_cases():
    g = close_group(cyclic_generators(5), CTX25)
    mod = full_module(CTX25)
    system = CocycleSystem(g, mod)
    zero = system.expand([0] * system.dim)
    m = is_coboundary(g, mod, zero)
    assert m is not None and m.coords == (0, 0)
    for row in coboundary_space(g, mod).rows:
        c = system.expand(row.coords)
        assert is_coboundary(g, mod, c) is not None


def test_restriction_of_coboundary_is_coboundary():
    g = build_borel_shared_group(5)
    mod = full_module(g.ctx)
    system = CocycleSystem(g, mod)
    b_row = coboundary_space(g, mod).rows[0]
    c = system.expand(b_row.coords)
    kernel = reduction_kernel(g)
    sub = subgroup_from_indices(g, kernel)
    restricted = restrict_cocycle(c, sub)
    assert is_coboundary(sub, full_module(sub.ctx), restricted) is not None


def test_restriction_to_identity_is_zero():
    g = build_borel_shared_group(5)
    w = borel_shared_witness(g).witness
    trivial = close_group([[[1, 0], [0, 1]]], g.ctx)
    restricted = restrict_cocycle(w, trivial)
    assert restricted.is_zero()


def test_inflation_cases():
    g = build_borel_shared_group(5)
    kernel = reduction_kernel(g)
    q = quotient_group(g, kernel)
    tor = GModule(g.ctx, "p_torsion")
    zero = Cocycle(q, tor, tuple((0, 0) for _ in range(len(q))))
    lifted = inflate_cocycle(q, zero)
    assert lifted.is_zero()

    bundle = borel_shared_witness(g)
    assert verify_cocycle(bundle.inflated)
    # Inflation then restriction to the kernel vanishes.
    sub = subgroup_from_indices(g, kernel)
    restricted = restrict_cocycle(bundle.inflated, sub)
    assert restricted.is_zero()


def test_inflated_class_lies_in_cocycle_space():
    g = build_borel_shared_group(5)
    bundle = borel_shared_witness(g)
    tor = torsion_module(g.ctx)
    system = CocycleSystem(g, tor)
    coords = ModVector(system.cctx, system.compress(bundle.inflated))
    assert system.z1().contains(coords)


def test_inflation_rejects_unfixed_values():
    # Values not fixed by the normal subgroup cannot be inflated.
    g = build_borel_shared_group(5)
    kernel = reduction_kernel(g)
    q = quotient_group(g, kernel)
    full = full_module(g.ctx)
    vals = [(0, 0)] * len(q)
    vals[1] = (1, 0)
    bad = Cocycle(q, full, tuple(vals))
    with pytest.raises(ContractError):
        inflate_cocycle(q, bad)


def test_quotient_h1_examples():
    s3 = build_s3_quotient_group(5)
    q = quotient_group(s3, reduction_kernel(s3))
    assert h1(q, GModule(s3.ctx, "p_torsion")).order == 1

    disjoint = build_borel_disjoint_group(5)
    qd = quotient_group(disjoint, reduction_kernel(disjoint))
    assert h1(qd, GModule(disjoint.ctx, "p_torsion")).order == 1


def test_h1_on_dihedral_quotient_of_shared_family():
    g = build_borel_shared_group(5)
    q = quotient_group(g, reduction_kernel(g))
    rep = h1(q, GModule(g.ctx, "p_torsion"))
    assert rep.order == 5


def test_equivariant_homs_trivial_action():
    # The kernel itself with inner conjugation: both actions are trivial,
    # so every linear map is equivariant and injective ones exist.
    ctx = CTX25
    g = close_group([[[1, 5], [0, 1]], [[6, 0], [0, 21]]], ctx)
    assert len(g) == 25
    hom = equivariant_homs(g, range(len(g)), torsion_module(ctx))
    assert hom.dimension == 4
    assert hom.injective_exists


def test_equivariant_homs_cyclic_family():
    g = build_cyclic_quotient_group(5)
    kernel = reduction_kernel(g)
    hom = equivariant_homs(g, kernel, torsion_module(g.ctx))
    h01 = g.index_of([[1, 5], [0, 1]])
    h10 = g.index_of([[6, 0], [0, 21]])
    found = any(
        hom.map_values(phi)[h01] == (1, 0) and hom.map_values(phi)[h10] == (0, 0)
        for phi in hom.enumerate_maps()
    )
    assert found


def test_equivariant_homs_s3_injective():
    g = build_s3_quotient_group(5)
    hom = equivariant_homs(g, reduction_kernel(g), torsion_module(g.ctx))
    assert hom.injective_exists


def test_equivariant_homs_rejects_non_elementary():
    g = close_group([[[1, 1], [0, 1]]], CTX25)  # order 25, cyclic
    from h1loc import InputError

    with pytest.raises(InputError):
        equivariant_homs(g, range(len(g)), torsion_module(CTX25))


def test_inflation_restriction_exactness_s3():
    g = build_s3_quotient_group(5)
    report = inflation_restriction_check(g)
    assert report.exact
    assert report.restriction_injective
    assert report.restriction_bijective_onto_invariants
    assert report.h1_quotient_order == 1
    assert report.h1_group_order == report.hom_space_order == 5


def test_witness_reports_on_nontrivial_families():
    for builder in (build_s3_quotient_group, build_cyclic_quotient_group):
        g = builder(5)
        mod = full_module(g.ctx)
        rep = h1_loc(g, mod)
        assert rep.order > 1
        assert rep.witness is not None
        system = CocycleSystem(g, mod)
        assert system.is_local_table(rep.witness)
        assert is_coboundary(g, mod, rep.witness) is None
        assert len(rep.classes()) == rep.order


def test_cocycle_from_coordinates_validates():
    g = close_group([[[2, 0], [0, 1]]], CTX25)
    mod = full_module(CTX25)
    space = cocycle_space(g, mod)
    for row in space.rows:
        c = cocycle_from_coordinates(g, mod, row.coords)
        assert verify_cocycle(c, full=True)
    # The norm constraint forces the second generator coordinate to be
    # divisible by p here, so (0, 1) is not a cocycle assignment.
    with pytest.raises(ContractError):
        cocycle_from_coordinates(g, mod, (0, 1))


def test_report_serialization_shape():
    g = build_cyclic_quotient_group(5)
    rep = h1_loc(g, full_module(g.ctx))
    data = rep.to_json()
    assert set(data) == {"group_label", "module", "order", "invariant_factors", "witness"}
    assert data["module"] == "V"
    assert data["order"] == rep.order
    assert isinstance(data["witness"], list) and len(data["witness"]) == len(g)


def test_module_labels_and_validation():
    from h1loc import parse_module, InputError

    assert parse_module(CTX25, "V").kind == "full"
    assert parse_module(CTX25, "V[p]").kind == "p_torsion"
    assert parse_module(CTX25, "V/V[p]").kind == "mod_p_quotient"
    with pytest.raises(InputError):
        parse_module(CTX25, "W")
    with pytest.raises(InputError):
        GModule(ModulusContext(5, 1), "mod_p_quotient")
