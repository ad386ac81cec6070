"""First cohomology of finite matrix groups acting on (Z/p^n)^2.

Computes the cocycle space Z^1, the coboundary space B^1, H^1 = Z^1/B^1,
the subspace of cocycles that are locally coboundaries at every group
element, and the resulting first local cohomology group, together with
restriction, inflation and equivariant-homomorphism utilities.

A cocycle is a map Z from the group to the module with
Z(ab) = Z(a) + a.Z(b); it is determined by its values on a generating
set.  The engine therefore works in the coordinate space of generator
values: a breadth-first walk of the Cayley graph expresses every
element's value as a linear function of the generator values, each
revisited element contributes a linear consistency constraint, and Z^1
is the kernel of the stacked constraints.  Local conditions add, for
every group element g, the linear equations that pin Z(g) inside the
image of g - Id.

Works uniformly for an enumerated matrix group and for a quotient by a
normal subgroup acting trivially on the module, so inflation has a
domain to live on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import ConsistencyError, ContractError, DimensionError, InputError
from .groups import FiniteMatrixGroup, QuotientGroup, close_group, subgroup_from_indices
from .zmod import (
    ModMatrix,
    ModulusContext,
    ModVector,
    SubmoduleBasis,
    _howell_raw,
    _kernel_raw,
    howell_from_rows,
    solve_linear,
)

GroupLike = Union[FiniteMatrixGroup, QuotientGroup]

FULL = "full"
TORSION = "p_torsion"
QUOTIENT = "mod_p_quotient"

_MODULE_LABELS = {FULL: "V", TORSION: "V[p]", QUOTIENT: "V/V[p]"}

# Above this size the all-pairs cocycle identity check is replaced by the
# per-Cayley-edge check, which implies it (induction on word length).
FULL_VERIFY_LIMIT = 600

# Caps for the enumeration-based cross check of the local cohomology order.
CLASS_ENUM_LIMIT = 10**5
CLASS_ENUM_WORK_LIMIT = 2 * 10**6


@dataclass(frozen=True)
class GModule:
    """One of the three coefficient modules: V, its p-torsion, or V/V[p].

    V = (Z/p^n)^2 with the natural matrix action.  The p-torsion V[p] and
    the quotient V/V[p] are carried in their own coordinates (over Z/p and
    Z/p^(n-1)), with the action given by reducing the acting matrix.
    """

    ctx: ModulusContext
    kind: str

    def __post_init__(self):
        if self.kind not in _MODULE_LABELS:
            raise InputError(f"unknown module kind {self.kind!r}")
        if self.kind == QUOTIENT and self.ctx.n < 2:
            raise InputError("V/V[p] is trivial for n = 1; refusing to build it")

    @property
    def label(self) -> str:
        return _MODULE_LABELS[self.kind]

    @property
    def coeff_ctx(self) -> ModulusContext:
        if self.kind == FULL:
            return self.ctx
        if self.kind == TORSION:
            return ModulusContext(self.ctx.p, 1)
        return ModulusContext(self.ctx.p, self.ctx.n - 1)

    @property
    def coeff_modulus(self) -> int:
        return self.coeff_ctx.modulus

    @property
    def size(self) -> int:
        return self.coeff_modulus**2

    def action_entries(self, mat: ModMatrix) -> tuple[int, int, int, int]:
        q = self.coeff_modulus
        a, b, c, d = mat.entries
        return (a % q, b % q, c % q, d % q)

    def torsion_embedding_scale(self) -> int:
        """Multiplier sending V[p] coordinates into V."""
        if self.kind != TORSION:
            raise ContractError("only the p-torsion module embeds by scaling")
        return self.ctx.p ** (self.ctx.n - 1)


def full_module(ctx: ModulusContext) -> GModule:
    return GModule(ctx, FULL)


def torsion_module(ctx: ModulusContext) -> GModule:
    return GModule(ctx, TORSION)


def quotient_module(ctx: ModulusContext) -> GModule:
    return GModule(ctx, QUOTIENT)


def parse_module(ctx: ModulusContext, label: str) -> GModule:
    for kind, lab in _MODULE_LABELS.items():
        if lab == label:
            return GModule(ctx, kind)
    raise InputError(f"unknown module label {label!r} (expected V, V[p] or V/V[p])")


# ---------------------------------------------------------------------------
# Group adapters.


def _group_ctx(group: GroupLike) -> ModulusContext:
    return group.ctx


def _gen_indices(group: GroupLike) -> list[int]:
    if isinstance(group, FiniteMatrixGroup):
        return group.distinct_generator_indices()
    return group.generator_cosets()


def _element_matrix(group: GroupLike, i: int) -> ModMatrix:
    if isinstance(group, FiniteMatrixGroup):
        return group.elements[i].mat
    return group.rep_matrix(i)


def _check_action_well_defined(group: GroupLike, module: GModule):
    if isinstance(group, QuotientGroup):
        q = module.coeff_modulus
        ident = (1 % q, 0, 0, 1 % q)
        for s in sorted(group.normal_indices):
            mat = group.parent.elements[s].mat
            if module.action_entries(mat) != ident:
                raise InputError(
                    "the normal subgroup does not act trivially on the module; "
                    "the quotient action is not defined"
                )


@dataclass(frozen=True)
class Cocycle:
    """A cocycle as its full value table, one module vector per element."""

    group: GroupLike
    module: GModule
    values: tuple[tuple[int, int], ...]

    def value(self, i: int) -> tuple[int, int]:
        return self.values[i]

    def __add__(self, other: "Cocycle") -> "Cocycle":
        self._align(other)
        q = self.module.coeff_modulus
        vals = tuple(
            ((a0 + b0) % q, (a1 + b1) % q) for (a0, a1), (b0, b1) in zip(self.values, other.values)
        )
        return Cocycle(self.group, self.module, vals)

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        self._align(other)
        q = self.module.coeff_modulus
        vals = tuple(
            ((a0 - b0) % q, (a1 - b1) % q) for (a0, a1), (b0, b1) in zip(self.values, other.values)
        )
        return Cocycle(self.group, self.module, vals)

    def scale(self, c: int) -> "Cocycle":
        q = self.module.coeff_modulus
        return Cocycle(self.group, self.module, tuple(((c * a) % q, (c * b) % q) for a, b in self.values))

    def is_zero(self) -> bool:
        return all(v == (0, 0) for v in self.values)

    def to_full_module(self) -> "Cocycle":
        """Push a p-torsion valued cocycle into V along the inclusion."""
        s = self.module.torsion_embedding_scale()
        target = full_module(self.module.ctx)
        q = target.coeff_modulus
        return Cocycle(self.group, target, tuple(((s * a) % q, (s * b) % q) for a, b in self.values))

    def value_table(self) -> list[list[int]]:
        return [list(v) for v in self.values]

    def _align(self, other: "Cocycle"):
        if self.group is not other.group or self.module != other.module:
            raise DimensionError("cocycles live on different groups or modules")


def verify_cocycle(c: Cocycle, full: Optional[bool] = None) -> bool:
    """Check the defining identity.

    full=True checks every pair (a, b); the default checks every Cayley
    edge (a, generator), which implies the all-pairs identity by induction
    on the word length of b, and checks all pairs outright on small groups.
    """
    group, module = c.group, c.module
    _check_action_well_defined(group, module)
    n = len(group)
    q = module.coeff_modulus
    acts = [module.action_entries(_element_matrix(group, i)) for i in range(n)]
    if c.values[0] != (0, 0):
        return False

    def ok(a: int, b: int) -> bool:
        ab = group.mult(a, b)
        va, vb, vab = c.values[a], c.values[b], c.values[ab]
        m = acts[a]
        return (
            vab[0] == (va[0] + m[0] * vb[0] + m[1] * vb[1]) % q
            and vab[1] == (va[1] + m[2] * vb[0] + m[3] * vb[1]) % q
        )

    if full is None:
        full = n <= FULL_VERIFY_LIMIT
    if full:
        return all(ok(a, b) for a in range(n) for b in range(n))
    gens = _gen_indices(group)
    return all(ok(a, g) for a in range(n) for g in gens)


# ---------------------------------------------------------------------------
# The generator-coordinate system.


class CocycleSystem:
    """Shared scaffolding for one (group, module) pair.

    Holds the breadth-first expression of every element's cocycle value as
    a linear map from generator values, the harvested consistency
    constraints, and lazily computed bases of Z^1, B^1 and the local
    cocycle space, all in the generator coordinate space (Z/q)^(2k).
    """

    def __init__(self, group: GroupLike, module: GModule):
        if _group_ctx(group) != module.ctx:
            raise DimensionError("module coefficients do not match the group ring")
        _check_action_well_defined(group, module)
        self.group = group
        self.module = module
        self.gens = _gen_indices(group)
        self.k = len(self.gens)
        self.dim = 2 * self.k
        self.q = module.coeff_modulus
        self.cctx = module.coeff_ctx
        n = len(group)
        self.acts = [module.action_entries(_element_matrix(group, i)) for i in range(n)]
        # L[i] is a 2 x dim matrix (pair of rows) with Z(element i) = L[i] u.
        self.L: list[Optional[tuple[list[int], list[int]]]] = [None] * n
        self.L[0] = ([0] * self.dim, [0] * self.dim)
        self.bfs_order = [0]
        self.bfs_edges: list[tuple[int, int, int]] = []  # (parent, gen slot, child)
        constraints: list[list[int]] = []
        q = self.q
        head = 0
        while head < len(self.bfs_order):
            x = self.bfs_order[head]
            head += 1
            lx = self.L[x]
            a, b, c, d = self.acts[x]
            for slot, g in enumerate(self.gens):
                y = group.mult(x, g)
                r0 = lx[0][:]
                r1 = lx[1][:]
                j0, j1 = 2 * slot, 2 * slot + 1
                r0[j0] = (r0[j0] + a) % q
                r0[j1] = (r0[j1] + b) % q
                r1[j0] = (r1[j0] + c) % q
                r1[j1] = (r1[j1] + d) % q
                if self.L[y] is None:
                    self.L[y] = (r0, r1)
                    self.bfs_order.append(y)
                    self.bfs_edges.append((x, slot, y))
                else:
                    ly = self.L[y]
                    c0 = [(u - v) % q for u, v in zip(ly[0], r0)]
                    c1 = [(u - v) % q for u, v in zip(ly[1], r1)]
                    if any(c0):
                        constraints.append(c0)
                    if any(c1):
                        constraints.append(c1)
        if head != n:
            raise ContractError("the listed generators do not generate the group")
        self.constraints = constraints
        self._z1: Optional[SubmoduleBasis] = None
        self._b1: Optional[SubmoduleBasis] = None
        self._z1loc: Optional[SubmoduleBasis] = None

    # -- spaces ------------------------------------------------------------

    def z1(self) -> SubmoduleBasis:
        if self._z1 is None:
            rows = _kernel_raw(self.constraints, self.dim, self.cctx) if self.dim else []
            self._z1 = SubmoduleBasis.from_raw(self.cctx, self.dim, rows)
            for r in self._z1.rows:
                c = self.expand(r.coords)
                if not verify_cocycle(c):
                    raise ConsistencyError("computed cocycle basis fails the cocycle identity")
        return self._z1

    def b1(self) -> SubmoduleBasis:
        if self._b1 is None:
            # The coboundary of m = e_col has value (rho(g) - Id) e_col at g.
            rows = []
            q = self.q
            for col in range(2):
                row = []
                for g in self.gens:
                    a, b, c, d = self.acts[g]
                    if col == 0:
                        row.extend(((a - 1) % q, c % q))
                    else:
                        row.extend((b % q, (d - 1) % q))
                rows.append(row)
            self._b1 = howell_from_rows(self.cctx, self.dim, rows)
            z1 = self.z1()
            if not all(z1.contains(r) for r in self._b1.rows):
                raise ConsistencyError("coboundaries must be cocycles")
        return self._b1

    def local_constraint_rows(self) -> list[list[int]]:
        rows: list[list[int]] = []
        q = self.q
        cctx = self.cctx
        for i in range(len(self.group)):
            a, b, c, d = self.acts[i]
            shifted = [[(a - 1) % q, b % q], [c % q, (d - 1) % q]]
            image_rows = _howell_raw([[shifted[0][0], shifted[1][0]], [shifted[0][1], shifted[1][1]]], 2, cctx)
            dual = _kernel_raw(image_rows, 2, cctx)
            li = self.L[i]
            for k0, k1 in dual:
                rows.append([(k0 * li[0][j] + k1 * li[1][j]) % q for j in range(self.dim)])
        return rows

    def z1_local(self) -> SubmoduleBasis:
        if self._z1loc is None:
            rows = self.constraints + self.local_constraint_rows()
            kern = _kernel_raw(rows, self.dim, self.cctx) if self.dim else []
            self._z1loc = SubmoduleBasis.from_raw(self.cctx, self.dim, kern)
            b1 = self.b1()
            if not all(self._z1loc.contains(r) for r in b1.rows):
                raise ConsistencyError("coboundaries satisfy the local conditions by definition")
        return self._z1loc

    # -- coordinates <-> tables --------------------------------------------

    def expand(self, coords: Sequence[int]) -> Cocycle:
        q = self.q
        u = [x % q for x in coords]
        vals: list[Optional[tuple[int, int]]] = [None] * len(self.group)
        vals[0] = (0, 0)
        for parent, slot, child in self.bfs_edges:
            a, b, c, d = self.acts[parent]
            g0, g1 = u[2 * slot], u[2 * slot + 1]
            v = vals[parent]
            vals[child] = ((v[0] + a * g0 + b * g1) % q, (v[1] + c * g0 + d * g1) % q)
        return Cocycle(self.group, self.module, tuple(vals))

    def compress(self, c: Cocycle) -> tuple[int, ...]:
        out = []
        for g in self.gens:
            out.extend(c.values[g])
        return tuple(out)

    def class_form(self, c: Cocycle) -> tuple[int, ...]:
        """Canonical coordinates of the class of c modulo coboundaries."""
        u = ModVector(self.cctx, self.compress(c))
        return self.b1().reduce(u).coords

    def is_local_table(self, c: Cocycle) -> bool:
        """Direct per-element test: every value lies in the image of g - Id."""
        q = self.q
        cctx = self.cctx
        for i in range(len(self.group)):
            a, b, c2, d = self.acts[i]
            mat = ModMatrix(cctx, 2, 2, ((a - 1) % q, b % q, c2 % q, (d - 1) % q))
            target = ModVector(cctx, c.values[i])
            if not solve_linear(mat, target).solvable:
                return False
        return True


@dataclass(frozen=True)
class H1Report:
    """Order, invariant factors and generating cocycles of H^1 or its local
    subgroup; for a non-trivial local computation the witness is a concrete
    local cocycle that is not a coboundary."""

    group_label: Optional[str]
    module_label: str
    order: int
    invariant_factors: tuple[int, ...]
    generator_cocycles: tuple[Cocycle, ...]
    zero_cocycle: Cocycle
    witness: Optional[Cocycle]

    def is_trivial(self) -> bool:
        return self.order == 1

    def classes(self) -> list[Cocycle]:
        """One representative per class, the zero class first."""
        reps = []
        ranges = [range(d) for d in self.invariant_factors]
        for combo in itertools.product(*ranges):
            c = self.zero_cocycle
            for coeff, gen in zip(combo, self.generator_cocycles):
                if coeff:
                    c = c + gen.scale(coeff)
            reps.append(c)
        return reps

    def to_json(self) -> dict:
        return {
            "group_label": self.group_label,
            "module": self.module_label,
            "order": self.order,
            "invariant_factors": list(self.invariant_factors),
            "witness": self.witness.value_table() if self.witness is not None else None,
        }


def _group_label(group: GroupLike) -> Optional[str]:
    if isinstance(group, FiniteMatrixGroup):
        return group.label
    lbl = group.parent.label
    return f"{lbl}/kernel" if lbl else None


def cocycle_space(group: GroupLike, module: GModule) -> SubmoduleBasis:
    """Basis of Z^1 in generator coordinates (values on the generators)."""
    return CocycleSystem(group, module).z1()


def coboundary_space(group: GroupLike, module: GModule) -> SubmoduleBasis:
    """Basis of B^1 = {g -> (g - 1) m} in generator coordinates."""
    return CocycleSystem(group, module).b1()


def local_cocycle_space(group: GroupLike, module: GModule) -> SubmoduleBasis:
    """Cocycles whose value at every element g lies in Im(g - Id)."""
    return CocycleSystem(group, module).z1_local()


def cocycle_from_coordinates(group: GroupLike, module: GModule, coords: Sequence[int]) -> Cocycle:
    system = CocycleSystem(group, module)
    c = system.expand(coords)
    if not verify_cocycle(c):
        raise ContractError("coordinates do not satisfy the cocycle constraints")
    return c


def _quotient_report(system: CocycleSystem, big: SubmoduleBasis, witness_wanted: bool) -> H1Report:
    from .zmod import quotient_structure

    structure = quotient_structure(big, system.b1())
    order = 1
    for d, _ in structure:
        order *= d
    gens = tuple(system.expand(vec.coords) for _, vec in structure)
    for c in gens:
        if not verify_cocycle(c):
            raise ConsistencyError("quotient generator fails the cocycle identity")
    orders = tuple(d for d, _ in structure)
    witness = None
    if witness_wanted and order > 1:
        witness = gens[0]
        if not system.is_local_table(witness):
            raise ConsistencyError("local cohomology witness fails the local conditions")
        if is_coboundary(system.group, system.module, witness) is not None:
            raise ConsistencyError("local cohomology witness is a coboundary")
    return H1Report(
        group_label=_group_label(system.group),
        module_label=system.module.label,
        order=order,
        invariant_factors=orders,
        generator_cocycles=gens,
        zero_cocycle=system.expand([0] * system.dim),
        witness=witness,
    )


def h1(group: GroupLike, module: GModule) -> H1Report:
    """H^1(G, M) as invariant factors plus generating cocycles."""
    system = CocycleSystem(group, module)
    return _quotient_report(system, system.z1(), witness_wanted=False)


def h1_loc(group: GroupLike, module: GModule, cross_check: bool = True) -> H1Report:
    """The first local cohomology group: local cocycles modulo coboundaries.

    When feasible the order is recomputed a second way, by enumerating the
    classes of H^1 and testing a representative of each against the local
    conditions element by element; a mismatch raises ConsistencyError.
    """
    system = CocycleSystem(group, module)
    report = _quotient_report(system, system.z1_local(), witness_wanted=True)
    if cross_check:
        full = _quotient_report(system, system.z1(), witness_wanted=False)
        work = full.order * len(group)
        if full.order <= CLASS_ENUM_LIMIT and work <= CLASS_ENUM_WORK_LIMIT:
            count = sum(1 for rep in full.classes() if system.is_local_table(rep))
            if count != report.order:
                raise ConsistencyError(
                    f"local class count {count} disagrees with the computed order {report.order}"
                )
    return report


def is_coboundary(group: GroupLike, module: GModule, c: Cocycle) -> Optional[ModVector]:
    """A module element m with c(g) = (g - 1) m for all g, or None.

    One linear solve over the generator stack decides it; the candidate is
    then re-checked against every element.
    """
    if c.group is not group:
        raise ContractError("cocycle does not live on the given group")
    _check_action_well_defined(group, module)
    gens = _gen_indices(group)
    cctx = module.coeff_ctx
    q = module.coeff_modulus
    if not gens:
        return ModVector(cctx, (0, 0))
    rows = []
    rhs = []
    for g in gens:
        a, b, cc, d = module.action_entries(_element_matrix(group, g))
        rows.append([(a - 1) % q, b % q])
        rows.append([cc % q, (d - 1) % q])
        rhs.extend(c.values[g])
    sol = solve_linear(ModMatrix.from_rows(cctx, rows), ModVector(cctx, tuple(rhs)))
    if not sol.solvable:
        return None
    m = sol.solution
    for i in range(len(group)):
        a, b, cc, d = module.action_entries(_element_matrix(group, i))
        got = (((a - 1) * m.coords[0] + b * m.coords[1]) % q, (cc * m.coords[0] + (d - 1) * m.coords[1]) % q)
        if got != c.values[i]:
            return None
    return m


def restrict_cocycle(c: Cocycle, sub: FiniteMatrixGroup) -> Cocycle:
    """Restriction along a subgroup whose elements all lie in c's group."""
    parent = c.group
    if not isinstance(parent, FiniteMatrixGroup) or not isinstance(sub, FiniteMatrixGroup):
        raise ContractError("restriction works between enumerated matrix groups")
    if sub.ctx != parent.ctx:
        raise DimensionError("subgroup has a different coefficient ring")
    module = GModule(sub.ctx, c.module.kind)
    vals = tuple(c.values[parent.index_of(e.mat)] for e in sub.elements)
    return Cocycle(sub, module, vals)


def cyclic_subgroup(g: FiniteMatrixGroup, index: int, label: Optional[str] = None) -> FiniteMatrixGroup:
    return close_group([g.elements[index].mat], g.ctx, label=label)


def inflate_cocycle(quotient: QuotientGroup, c: Cocycle) -> Cocycle:
    """Pull a cocycle on G/H back to G along the projection.

    Requires the values to be fixed by the normal subgroup (they are the
    values of the inflated cocycle on whole cosets).  The result is
    re-verified against the cocycle identity.
    """
    if c.group is not quotient:
        raise ContractError("cocycle does not live on the given quotient")
    parent = quotient.parent
    module = GModule(parent.ctx, c.module.kind)
    q = module.coeff_modulus
    for s in sorted(quotient.normal_indices):
        a, b, cc, d = module.action_entries(parent.elements[s].mat)
        for v0, v1 in set(c.values):
            if ((a * v0 + b * v1) % q, (cc * v0 + d * v1) % q) != (v0, v1):
                raise ContractError("cocycle values are not fixed by the normal subgroup")
    vals = tuple(c.values[quotient.coset_of(i)] for i in range(len(parent)))
    out = Cocycle(parent, module, vals)
    if not verify_cocycle(out):
        raise ContractError("inflated table fails the cocycle identity")
    return out


# ---------------------------------------------------------------------------
# Equivariant homomorphisms Hom_{F_p[G/H]}(H, V[p]).


@dataclass(frozen=True)
class HomSpace:
    """All F_p[G/H]-module maps from an elementary abelian normal subgroup
    into the p-torsion of V, as matrices against a fixed basis of H."""

    group: FiniteMatrixGroup
    subgroup_indices: tuple[int, ...]
    h_basis: tuple[int, ...]
    coordinates: dict
    basis_matrices: tuple[ModMatrix, ...]
    injective_exists: bool

    @property
    def dimension(self) -> int:
        return len(self.basis_matrices)

    def enumerate_maps(self):
        """Every hom in the space, as a matrix (columns follow h_basis)."""
        p = self.group.ctx.p
        ctx_p = ModulusContext(p, 1)
        dh = len(self.h_basis)
        for combo in itertools.product(range(p), repeat=self.dimension):
            acc = [[0] * dh, [0] * dh]
            for c, m in zip(combo, self.basis_matrices):
                if c:
                    for r in range(2):
                        for j in range(dh):
                            acc[r][j] = (acc[r][j] + c * m.entry(r, j)) % p
            yield ModMatrix.from_rows(ctx_p, acc)

    def map_values(self, phi: ModMatrix) -> dict:
        """The value of the hom phi on every subgroup element."""
        p = self.group.ctx.p
        out = {}
        for idx in self.subgroup_indices:
            coords = self.coordinates[idx]
            v0 = sum(phi.entry(0, j) * coords[j] for j in range(len(coords))) % p
            v1 = sum(phi.entry(1, j) * coords[j] for j in range(len(coords))) % p
            out[idx] = (v0, v1)
        return out


def _is_injective_mod_p(phi: ModMatrix) -> bool:
    p = phi.ctx.p
    cols = phi.transpose().row_lists()
    return len(_howell_raw(cols, phi.rows, phi.ctx)) == phi.cols


def equivariant_homs(g: FiniteMatrixGroup, subgroup_indices, target: Optional[GModule] = None) -> HomSpace:
    """Hom_{F_p[G/H]}(H, V[p]) for an elementary abelian normal H.

    H is written additively through a greedy F_p-basis; the quotient acts
    on H by conjugation and on V[p] by the reduced matrices.  Equivariance
    only needs to be imposed for the generators of g.
    """
    module = target if target is not None else torsion_module(g.ctx)
    if module.kind != TORSION:
        raise InputError("the hom space targets the p-torsion module")
    p = g.ctx.p
    ctx_p = ModulusContext(p, 1)
    sub = tuple(sorted(frozenset(subgroup_indices)))
    if not g.is_subgroup_set(sub):
        raise ContractError("subgroup indices are not closed")
    for a in sub:
        for b in sub:
            if g.mult(a, b) != g.mult(b, a):
                raise InputError("subgroup is not abelian")
    for a in sub:
        if a != 0:
            k, cur = 1, a
            while cur != 0:
                cur = g.mult(cur, a)
                k += 1
            if k != p:
                raise InputError("subgroup is not elementary abelian of exponent p")
    # Greedy basis in index order, then coordinates by full enumeration.
    basis: list[int] = []
    span = {0: ()}
    for idx in sub:
        if idx not in span:
            basis.append(idx)
            span = {}
            for combo in itertools.product(range(p), repeat=len(basis)):
                cur = 0
                for c, b in zip(combo, basis):
                    for _ in range(c):
                        cur = g.mult(cur, b)
                span[cur] = combo
    if len(span) != len(sub):
        raise InputError("subgroup enumeration and basis span disagree")
    dh = len(basis)
    # Conjugation matrices on H and reduced action on V[p] per generator.
    gens = g.distinct_generator_indices()
    conj = []
    acts = []
    for gi in gens:
        gj = g.inv(gi)
        cols = []
        for b in basis:
            im = g.mult(g.mult(gi, b), gj)
            if im not in span:
                raise ContractError("subgroup is not normalized by the generators")
            cols.append(span[im])
        conj.append(cols)  # cols[j] = coordinates of g b_j g^-1
        acts.append(module.action_entries(g.elements[gi].mat))
    # Unknowns: phi[r][j], r in {0,1}, j < dh; equations per generator:
    # sum_j phi[r][j] conj[j][-> coords] = act rows applied to phi columns.
    rows = []
    nvars = 2 * dh
    for cols, (a, b, c, d) in zip(conj, acts):
        for r in range(2):
            for j in range(dh):
                row = [0] * nvars
                for t in range(dh):
                    row[r * dh + t] = (row[r * dh + t] + cols[j][t]) % p
                if r == 0:
                    row[j] = (row[j] - a) % p
                    row[dh + j] = (row[dh + j] - b) % p
                else:
                    row[j] = (row[j] - c) % p
                    row[dh + j] = (row[dh + j] - d) % p
                rows.append(row)
    kern = _kernel_raw(rows, nvars, ctx_p) if nvars else []
    mats = tuple(
        ModMatrix.from_rows(ctx_p, [vec[:dh], vec[dh:]]) for vec in kern
    )
    space = HomSpace(
        group=g,
        subgroup_indices=sub,
        h_basis=tuple(basis),
        coordinates={idx: span[idx] for idx in sub},
        basis_matrices=mats,
        injective_exists=False,
    )
    injective = False
    if dh <= 2 and mats:
        injective = any(_is_injective_mod_p(phi) for phi in space.enumerate_maps())
    return HomSpace(
        group=space.group,
        subgroup_indices=space.subgroup_indices,
        h_basis=space.h_basis,
        coordinates=space.coordinates,
        basis_matrices=space.basis_matrices,
        injective_exists=injective,
    )


# ---------------------------------------------------------------------------
# Inflation-restriction bookkeeping.


@dataclass(frozen=True)
class InflationRestrictionReport:
    h1_group_order: int
    h1_quotient_order: int
    hom_space_order: int
    kernel_of_restriction: frozenset
    image_of_inflation: frozenset
    exact: bool
    restriction_injective: bool
    restriction_bijective_onto_invariants: bool


def inflation_restriction_check(g: FiniteMatrixGroup, module: Optional[GModule] = None) -> InflationRestrictionReport:
    """Exactness of inflation then restriction at H^1(G, V[p]).

    Uses the reduction kernel H: computes ker(res: H^1(G) -> H^1(H)) and
    im(inf: H^1(G/H) -> H^1(G)) class by class and compares them, and also
    checks whether restriction lands bijectively on the G/H-equivariant
    homomorphisms from H (which carries the invariants of H^1(H, V[p])).
    """
    from .errors import ResourceLimitError
    from .groups import quotient_group, reduction_kernel

    module = module if module is not None else torsion_module(g.ctx)
    h_idx = reduction_kernel(g)
    quo = quotient_group(g, h_idx)
    hsub = subgroup_from_indices(g, h_idx, label="reduction-kernel")
    system = CocycleSystem(g, module)
    rep_g = _quotient_report(system, system.z1(), witness_wanted=False)
    if rep_g.order > CLASS_ENUM_LIMIT:
        raise ResourceLimitError(f"H^1 of order {rep_g.order} is too large to enumerate classes")
    rep_q = h1(quo, GModule(quo.parent.ctx, module.kind))
    zero_form = system.class_form(system.expand([0] * system.dim))
    ker_res = set()
    for rep in rep_g.classes():
        restricted = restrict_cocycle(rep, hsub)
        if is_coboundary(hsub, GModule(hsub.ctx, module.kind), restricted) is not None:
            ker_res.add(system.class_form(rep))
    im_inf = set()
    for rep in rep_q.classes():
        inflated = inflate_cocycle(quo, rep)
        im_inf.add(system.class_form(inflated))
    hom = equivariant_homs(g, h_idx, torsion_module(g.ctx))
    hom_order = g.ctx.p**hom.dimension
    return InflationRestrictionReport(
        h1_group_order=rep_g.order,
        h1_quotient_order=rep_q.order,
        hom_space_order=hom_order,
        kernel_of_restriction=frozenset(ker_res),
        image_of_inflation=frozenset(im_inf),
        exact=frozenset(ker_res) == frozenset(im_inf),
        restriction_injective=frozenset(ker_res) == {zero_form},
        restriction_bijective_onto_invariants=(
            frozenset(ker_res) == {zero_form} and rep_g.order == hom_order
        ),
    )
