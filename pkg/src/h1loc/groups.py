"""Finite subgroups of GL_2(Z/p^n): enumeration and structural queries.

Groups are closed from generators with a breadth-first traversal whose
frontier order is fixed by the generator list, so element indices are
reproducible run to run.  Elements are stored as 4-tuples of reduced
entries; index 0 is always the identity.  Everything is immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import ContractError, InputError, ResourceLimitError
from .zmod import (
    ModMatrix,
    ModulusContext,
    ModVector,
    SubmoduleBasis,
    kernel_basis,
)

DEFAULT_GROUP_CAP = 10**6
_MULT_TABLE_LIMIT = 512

MatrixLike = Union[ModMatrix, Sequence[Sequence[int]]]


def _as_matrix(ctx: ModulusContext, m: MatrixLike) -> ModMatrix:
    if isinstance(m, ModMatrix):
        if m.ctx != ctx:
            raise InputError("generator has a different coefficient ring")
        return m
    return ModMatrix.from_rows(ctx, m)


def _mul4(x, y, q):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q)


@dataclass(frozen=True)
class GroupElement:
    """An invertible 2x2 matrix over Z/p^n with its index in its group."""

    ctx: ModulusContext
    mat: ModMatrix
    index: int

    def key(self) -> tuple[int, ...]:
        return self.mat.entries


class FiniteMatrixGroup:
    """A fully enumerated subgroup of GL_2(Z/p^n).

    Built through close_group; do not mutate after construction.
    """

    def __init__(self, ctx, gen_mats, keys, words, label):
        self.ctx = ctx
        self.label = label
        q = ctx.modulus
        self._q = q
        self._keys = keys
        self._index = {k: i for i, k in enumerate(keys)}
        self.gen_words = tuple(words)
        self.elements = tuple(
            GroupElement(ctx, ModMatrix(ctx, 2, 2, k), i) for i, k in enumerate(keys)
        )
        self.generators = tuple(self.elements[self._index[m.entries]] for m in gen_mats)
        inv = []
        p = ctx.p
        for k in keys:
            a, b, c, d = k
            det = (a * d - b * c) % q
            di = pow(det, -1, q)
            inv.append(self._index[((d * di) % q, (-b * di) % q, (-c * di) % q, (a * di) % q)])
        self._inv = tuple(inv)
        self._table = None

    def __len__(self) -> int:
        return len(self._keys)

    @property
    def size(self) -> int:
        return len(self._keys)

    def element(self, i: int) -> GroupElement:
        return self.elements[i]

    def index_of(self, m: MatrixLike) -> int:
        mat = _as_matrix(self.ctx, m)
        try:
            return self._index[mat.entries]
        except KeyError:
            raise InputError("matrix is not an element of this group") from None

    def __contains__(self, m) -> bool:
        try:
            self.index_of(m)
            return True
        except InputError:
            return False

    def mult(self, i: int, j: int) -> int:
        if self._table is not None:
            return self._table[i][j]
        return self._index[_mul4(self._keys[i], self._keys[j], self._q)]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def multiplication_table(self) -> tuple[tuple[int, ...], ...]:
        """Dense index-by-index table; materialized once, small groups only."""
        n = len(self)
        if n > _MULT_TABLE_LIMIT:
            raise ResourceLimitError(
                f"dense multiplication table capped at {_MULT_TABLE_LIMIT} elements (group has {n})"
            )
        if self._table is None:
            keys, q, index = self._keys, self._q, self._index
            self._table = tuple(
                tuple(index[_mul4(a, b, q)] for b in keys) for a in keys
            )
        return self._table

    def distinct_generator_indices(self) -> list[int]:
        """Indices of the listed generators, deduplicated, identity dropped."""
        out = []
        for g in self.generators:
            if g.index != 0 and g.index not in out:
                out.append(g.index)
        return out

    def conjugate_set(self, g_index: int, indices: Iterable[int]) -> frozenset[int]:
        gi = self.inv(g_index)
        return frozenset(self.mult(self.mult(g_index, s), gi) for s in indices)

    def is_subgroup_set(self, indices: Iterable[int]) -> bool:
        s = frozenset(indices)
        if 0 not in s:
            return False
        return all(self.mult(a, b) in s for a in s for b in s) and all(self.inv(a) in s for a in s)

    def is_normal_set(self, indices: Iterable[int]) -> bool:
        s = frozenset(indices)
        return all(self.conjugate_set(g, s) == s for g in self.distinct_generator_indices())


def close_group(
    gens: Sequence[MatrixLike],
    ctx: ModulusContext,
    cap: int = DEFAULT_GROUP_CAP,
    label: Optional[str] = None,
) -> FiniteMatrixGroup:
    """Enumerate the subgroup generated by gens.

    Breadth-first over right multiplication by the generators in their
    listed order; raises ResourceLimitError when the closure passes cap.
    """
    q = ctx.modulus
    mats = [_as_matrix(ctx, g) for g in gens]
    for m in mats:
        if m.rows != 2 or m.cols != 2:
            raise InputError("generators must be 2x2")
        if not m.is_invertible():
            raise InputError("generator determinant is not a unit: not invertible")
    ident = (1, 0, 0, 1)
    keys = [ident]
    index = {ident: 0}
    words: list[tuple[int, ...]] = [()]
    gen_keys = [m.entries for m in mats]
    i = 0
    while i < len(keys):
        base = keys[i]
        wbase = words[i]
        for j, gk in enumerate(gen_keys):
            prod = _mul4(base, gk, q)
            if prod not in index:
                if len(keys) >= cap:
                    raise ResourceLimitError(f"group closure exceeded the cap of {cap} elements")
                index[prod] = len(keys)
                keys.append(prod)
                words.append(wbase + (j,))
        i += 1
    return FiniteMatrixGroup(ctx, mats, keys, words, label)


def element_order(x: Union[GroupElement, ModMatrix]) -> int:
    """Least k >= 1 with x^k = Id."""
    mat = x.mat if isinstance(x, GroupElement) else x
    if not mat.is_invertible():
        raise InputError("order is defined for invertible matrices only")
    q = mat.ctx.modulus
    ident = (1, 0, 0, 1)
    cur = mat.entries
    k = 1
    bound = q * q * 4
    while cur != ident:
        cur = _mul4(cur, mat.entries, q)
        k += 1
        if k > bound:
            raise AssertionError("order computation did not terminate")
    return k


def reduction_kernel(g: FiniteMatrixGroup) -> frozenset[int]:
    """Elements congruent to the identity mod p (the kernel of reduction).

    Always a normal subgroup.  For n = 1 the reduction is the identity map,
    so the kernel is just {Id}; a notice is emitted since that is usually
    not what the caller wanted.
    """
    p = g.ctx.p
    if g.ctx.n == 1:
        warnings.warn("reduction mod p is trivial when n = 1; kernel is {Id}", stacklevel=2)
    out = frozenset(
        i for i, k in enumerate(g._keys) if (k[0] % p, k[1] % p, k[2] % p, k[3] % p) == (1, 0, 0, 1)
    )
    return out


class QuotientGroup:
    """G/S for a verified normal subgroup S, with its own index arithmetic.

    Coset 0 is always the coset of the identity.  Representatives are the
    least parent indices in each coset, so the structure is reproducible.
    """

    def __init__(self, parent: FiniteMatrixGroup, normal_indices: Iterable[int]):
        s = frozenset(normal_indices)
        if not parent.is_subgroup_set(s):
            raise ContractError("the given index set is not a subgroup")
        if not parent.is_normal_set(s):
            raise ContractError("the given subgroup is not normal")
        self.parent = parent
        self.normal_indices = s
        n = len(parent)
        coset_index = [-1] * n
        reps = []
        sorted_s = sorted(s)
        for i in range(n):
            if coset_index[i] >= 0:
                continue
            k = len(reps)
            reps.append(i)
            for t in sorted_s:
                coset_index[parent.mult(i, t)] = k
        self.reps = tuple(reps)
        self.coset_index = tuple(coset_index)
        m = len(reps)
        if m * len(s) != n:
            raise AssertionError("coset count times subgroup order must equal the group order")
        self._mult = tuple(
            tuple(coset_index[parent.mult(reps[a], reps[b])] for b in range(m)) for a in range(m)
        )
        self._inv = tuple(coset_index[parent.inv(reps[a])] for a in range(m))

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def size(self) -> int:
        return len(self.reps)

    @property
    def ctx(self) -> ModulusContext:
        return self.parent.ctx

    def mult(self, a: int, b: int) -> int:
        return self._mult[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def coset_of(self, parent_index: int) -> int:
        return self.coset_index[parent_index]

    def rep_matrix(self, a: int) -> ModMatrix:
        return self.parent.elements[self.reps[a]].mat

    def generator_cosets(self) -> list[int]:
        out = []
        for g in self.parent.generators:
            c = self.coset_index[g.index]
            if c != 0 and c not in out:
                out.append(c)
        return out

    def is_abelian(self) -> bool:
        m = len(self)
        return all(self._mult[a][b] == self._mult[b][a] for a in range(m) for b in range(m))

    def coset_order(self, a: int) -> int:
        k, cur = 1, a
        while cur != 0:
            cur = self.mult(cur, a)
            k += 1
        return k


def quotient_group(g: FiniteMatrixGroup, normal_indices: Iterable[int]) -> QuotientGroup:
    return QuotientGroup(g, normal_indices)


def closure_indices(g: FiniteMatrixGroup, gen_indices: Sequence[int]) -> frozenset[int]:
    """Subgroup of g generated by the given element indices."""
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for j in gen_indices:
                k = g.mult(i, j)
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return frozenset(seen)


def subgroup_from_indices(
    g: FiniteMatrixGroup, indices: Iterable[int], label: Optional[str] = None
) -> FiniteMatrixGroup:
    """Re-enumerate a subgroup (given as parent indices) as its own group.

    Generators are picked greedily from the elements in index order, which
    keeps the result deterministic and the generating set small.
    """
    target = frozenset(indices)
    if not g.is_subgroup_set(target):
        raise ContractError("index set is not closed under multiplication")
    gens: list[int] = []
    spanned = frozenset({0})
    for i in sorted(target):
        if i not in spanned:
            gens.append(i)
            spanned = closure_indices(g, gens)
    gen_mats = [g.elements[i].mat for i in gens] or [ModMatrix.identity(g.ctx, 2)]
    sub = close_group(gen_mats, g.ctx, label=label)
    if len(sub) != len(target):
        raise AssertionError("subgroup re-enumeration changed the element count")
    return sub


def embed_indices(sub: FiniteMatrixGroup, g: FiniteMatrixGroup) -> list[int]:
    """For each element of sub, its index inside g."""
    return [g.index_of(e.mat) for e in sub.elements]


def fixed_submodule(ctx: ModulusContext, xs: Iterable[Union[GroupElement, ModMatrix]]) -> SubmoduleBasis:
    """Howell basis of {v : x v = v for every x}; the full module for xs = {}."""
    rows = []
    ident = ModMatrix.identity(ctx, 2)
    for x in xs:
        mat = x.mat if isinstance(x, GroupElement) else x
        rows.extend((mat - ident).row_lists())
    if not rows:
        from .zmod import full_basis

        return full_basis(ctx, 2)
    return kernel_basis(ModMatrix.from_rows(ctx, rows))


@dataclass(frozen=True)
class EigenData:
    """Mod-p spectral data of a 2x2 matrix: roots of the characteristic
    polynomial over F_p with multiplicity, an irreducibility flag, and an
    eigenvector basis per split eigenvalue."""

    p: int
    eigenvalues: tuple[int, ...]
    irreducible: bool
    eigenvectors: tuple[tuple[int, SubmoduleBasis], ...]

    def vectors_for(self, eigenvalue: int) -> Optional[SubmoduleBasis]:
        for lam, basis in self.eigenvectors:
            if lam == eigenvalue:
                return basis
        return None


def eigen_data(x: Union[GroupElement, ModMatrix]) -> EigenData:
    mat = x.mat if isinstance(x, GroupElement) else x
    p = mat.ctx.p
    ctx_p = ModulusContext(p, 1)
    red = mat.reduce_to(ctx_p)
    a, b, c, d = red.entries
    tr = (a + d) % p
    det = (a * d - b * c) % p
    roots = [lam for lam in range(p) if (lam * lam - tr * lam + det) % p == 0]
    if not roots:
        return EigenData(p, (), True, ())
    if len(roots) == 1:
        eigenvalues: tuple[int, ...] = (roots[0], roots[0])
    else:
        eigenvalues = tuple(roots)
    pairs = []
    for lam in sorted(set(roots)):
        shifted = red - ModMatrix.identity(ctx_p, 2).scale(lam)
        pairs.append((lam, kernel_basis(shifted)))
    return EigenData(p, eigenvalues, False, tuple(pairs))


def line_representatives(p: int) -> list[tuple[int, int]]:
    """The p + 1 lines of F_p^2, e_1 first by convention."""
    return [(1, 0), (0, 1)] + [(1, t) for t in range(1, p)]


def borel_check(g: FiniteMatrixGroup) -> Optional[ModVector]:
    """A mod-p vector spanning a line stabilized by every element, if any.

    A common eigenvector mod p is exactly what membership in a Borel
    subgroup means here.  Checked on the generators; stabilizing a line is
    closed under products and inverses.
    """
    p = g.ctx.p
    ctx_p = ModulusContext(p, 1)
    gens = [g.elements[i].mat.reduce_to(ctx_p) for i in g.distinct_generator_indices()]
    for v0, v1 in line_representatives(p):
        ok = True
        for m in gens:
            a, b, c, d = m.entries
            w0 = (a * v0 + b * v1) % p
            w1 = (c * v0 + d * v1) % p
            if (w0 * v1 - w1 * v0) % p != 0:
                ok = False
                break
        if ok:
            return ModVector(ctx_p, (v0, v1))
    return None


def power_identity_check(a: int, b: int, c: int, d: int, ctx: ModulusContext) -> bool:
    """Whether [[1+ap, 1+bp], [cp, 1+dp]] ^ (p^(n-1)) = [[1, p^(n-1)], [0, 1]].

    The base point of the unipotent-power phenomenon behind the explicit
    witness cocycles: any matrix of this shape has the same p^(n-1)-th power.
    Requires n >= 2 (the shape is empty of content mod p).
    """
    if ctx.n < 2:
        raise InputError("the power identity needs n >= 2")
    p, q = ctx.p, ctx.modulus
    m = ModMatrix.from_rows(ctx, [[1 + a * p, 1 + b * p], [c * p, 1 + d * p]])
    expected = ModMatrix.from_rows(ctx, [[1, p ** (ctx.n - 1)], [0, 1]])
    return m.power(p ** (ctx.n - 1)) == expected


def reduce_group_mod_p(g: FiniteMatrixGroup, label: Optional[str] = None) -> FiniteMatrixGroup:
    """Close the images of the generators in GL_2(F_p)."""
    ctx_p = ModulusContext(g.ctx.p, 1)
    mats = [e.mat.reduce_to(ctx_p) for e in g.generators]
    return close_group(mats, ctx_p, label=label or (f"{g.label} mod p" if g.label else None))


def group_to_json(g: FiniteMatrixGroup) -> dict:
    return {
        "p": g.ctx.p,
        "n": g.ctx.n,
        "generators": [e.mat.row_lists() for e in g.generators],
        "label": g.label,
    }


def group_from_json(data: dict, cap: int = DEFAULT_GROUP_CAP) -> FiniteMatrixGroup:
    """Build a group from {"p":..., "n":..., "generators":[...], "label":...}.

    Entries may be negative; they are reduced modulo p^n on ingestion.
    """
    try:
        p = int(data["p"])
        n = int(data["n"])
        gens = data["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"group definition is missing or malformed: {exc}") from exc
    ctx = ModulusContext(p, n)
    if not isinstance(gens, list) or not gens:
        raise InputError("group definition needs a non-empty generator list")
    mats = []
    for gmat in gens:
        if not (
            isinstance(gmat, list)
            and len(gmat) == 2
            and all(isinstance(r, list) and len(r) == 2 for r in gmat)
        ):
            raise InputError("each generator must be a 2x2 integer matrix")
        mats.append(ModMatrix.from_rows(ctx, gmat))
    return close_group(mats, ctx, cap=cap, label=data.get("label"))
