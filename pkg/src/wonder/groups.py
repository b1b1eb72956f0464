"""Finite groups of invertible rational matrices.

Groups are fully enumerated by breadth-first closure of their generators and
indexed against a canonical element table; subgroups are index sets, so
subgroup equality, hashing and conjugation are cheap integer operations.
The multiplication table is built eagerly for small groups and filled on
demand (by exact matrix products) for larger ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .linalg import Matrix, Subspace, kernel, transform_subspace

DEFAULT_GROUP_CAP = 10_000
DEFAULT_SUBGROUP_ORDER_CAP = 400
_EAGER_TABLE_MAX_ORDER = 128


class CapExceeded(RuntimeError):
    """An enumeration grew past its configured cap."""


@dataclass(frozen=True)
class GroupElement:
    """One group element: its matrix and its stable index in the table."""

    matrix: Matrix
    index: int

    def __repr__(self) -> str:
        return f"GroupElement(#{self.index})"


class FiniteMatrixGroup:
    """A finite group of invertible d x d rational matrices.

    Identity comparison is used for the group object itself; elements and
    subgroups carry value semantics through their indices.
    """

    def __init__(self, dim: int, matrices: Sequence[Matrix]):
        self.dim = dim
        self.elements = tuple(GroupElement(m, i) for i, m in enumerate(matrices))
        self._index = {m.entries: i for i, m in enumerate(matrices)}
        if len(self._index) != len(matrices):
            raise ValueError("duplicate matrices in element table")
        ident = Matrix.identity(dim)
        self.identity_index = self._index[ident.entries]
        self._table: list[list[int | None]] | None = None
        self._lazy_products: dict[tuple[int, int], int] = {}
        self._inverses: list[int] | None = None
        if self.order() <= _EAGER_TABLE_MAX_ORDER:
            self._build_table()

    def order(self) -> int:
        return len(self.elements)

    def matrix(self, i: int) -> Matrix:
        return self.elements[i].matrix

    def _build_table(self) -> None:
        n = self.order()
        idx = self._index
        table = []
        for a in self.elements:
            row = []
            for b in self.elements:
                prod = a.matrix * b.matrix
                row.append(idx[prod.entries])
            table.append(row)
        self._table = table

    def product(self, i: int, j: int) -> int:
        if self._table is not None:
            return self._table[i][j]
        key = (i, j)
        hit = self._lazy_products.get(key)
        if hit is None:
            prod = self.matrix(i) * self.matrix(j)
            hit = self._index[prod.entries]
            self._lazy_products[key] = hit
        return hit

    def inverse(self, i: int) -> int:
        if self._inverses is None:
            inv = [0] * self.order()
            for g in self.elements:
                inv[g.index] = self._index[g.matrix.inverse().entries]
            self._inverses = inv
        return self._inverses[i]

    def element_order(self, i: int) -> int:
        k, cur = 1, i
        while cur != self.identity_index:
            cur = self.product(cur, i)
            k += 1
        return k

    def index_of(self, m: Matrix) -> int:
        return self._index[m.entries]

    def subgroup(self, indices: Iterable[int]) -> "Subgroup":
        return Subgroup(self, indices)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [self.identity_index])

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, range(self.order()))

    def close_indices(self, seed: Iterable[int]) -> tuple[int, ...]:
        """Subgroup closure of a set of element indices."""
        seed = set(seed)
        seed.add(self.identity_index)
        gens = sorted(seed)
        members = set(seed)
        frontier = list(seed)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.product(x, g)
                    if y not in members:
                        members.add(y)
                        new.append(y)
            frontier = new
        return tuple(sorted(members))

    def __repr__(self) -> str:
        return f"FiniteMatrixGroup(dim={self.dim}, order={self.order()})"


class Subgroup:
    """A subgroup of a FiniteMatrixGroup, stored as a sorted index tuple."""

    __slots__ = ("parent", "members", "_member_set", "_gens")

    def __init__(self, parent: FiniteMatrixGroup, members: Iterable[int]):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        self._member_set = frozenset(self.members)
        self._gens: tuple[int, ...] | None = None
        if parent.identity_index not in self._member_set:
            raise ValueError("subgroup must contain the identity")

    def order(self) -> int:
        return len(self.members)

    def __contains__(self, index: int) -> bool:
        return index in self._member_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order()} of {self.parent!r})"

    def is_trivial(self) -> bool:
        return self.members == (self.parent.identity_index,)

    def generators(self) -> tuple[int, ...]:
        """A small generating set, found greedily (cached)."""
        if self._gens is None:
            gens: list[int] = []
            have = {self.parent.identity_index}
            for m in self.members:
                if m not in have:
                    gens.append(m)
                    have = set(self.parent.close_indices(gens))
            self._gens = tuple(gens)
        return self._gens

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return other._member_set <= self._member_set


def close_generators(
    generators: Sequence[Matrix], cap: int = DEFAULT_GROUP_CAP, dim: int | None = None
) -> FiniteMatrixGroup:
    """Enumerate the group generated by the given invertible matrices.

    Breadth-first closure under products; raises CapExceeded once more than
    ``cap`` distinct elements appear (the group is too large or infinite).
    An empty generator list needs an explicit ``dim``.
    """
    if generators:
        dim = generators[0].rows
    elif dim is None:
        raise ValueError("empty generator list needs an explicit dimension")
    gens = []
    for g in generators:
        if g.rows != g.cols or g.rows != dim:
            raise ValueError("generators must be square matrices of equal size")
        if not g.is_invertible():
            raise ValueError("generator is not invertible")
        gens.append(g)
    ident = Matrix.identity(dim)
    seen: dict[tuple, Matrix] = {ident.entries: ident}
    ordered = [ident]
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y.entries not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(
                            f"group closure exceeded cap={cap}; group too large or infinite"
                        )
                    seen[y.entries] = y
                    ordered.append(y)
                    new.append(y)
        frontier = new
    group = FiniteMatrixGroup(dim, ordered)
    # Faithfulness self-check: distinct elements have distinct matrices.
    assert len({e.matrix.entries for e in group.elements}) == group.order()
    return group


def derived_subgroup(h: Subgroup) -> Subgroup:
    """The commutator subgroup [H, H].

    Computed as the normal closure in H of the commutators of a generating
    set; that equals the subgroup generated by all commutators, since H
    modulo the closure is abelian and every commutator lies in it.
    """
    g = h.parent
    gens = h.generators()
    if not gens:
        return g.trivial_subgroup()
    inv = g.inverse
    comms = set()
    for a in gens:
        for b in gens:
            c = g.product(g.product(a, b), g.product(inv(a), inv(b)))
            comms.add(c)
    comms.discard(g.identity_index)
    members = set(g.close_indices(comms))
    # Normal closure: conjugate by the generators of H until stable.
    while True:
        extra = set()
        for x in list(members):
            for a in gens:
                y = g.product(g.product(a, x), inv(a))
                if y not in members:
                    extra.add(y)
        if not extra:
            break
        members = set(g.close_indices(members | extra))
    return Subgroup(g, members)


def is_abelian(h: Subgroup) -> bool:
    g = h.parent
    ms = h.members
    for i, a in enumerate(ms):
        for b in ms[i + 1 :]:
            if g.product(a, b) != g.product(b, a):
                return False
    return True


def is_solvable(h: Subgroup) -> bool:
    """Iterate the derived series until stable; solvable iff it hits 1."""
    cur = h
    while True:
        nxt = derived_subgroup(cur)
        if nxt.order() == cur.order():
            return cur.is_trivial()
        cur = nxt


def derived_series(h: Subgroup) -> list[Subgroup]:
    series = [h]
    while True:
        nxt = derived_subgroup(series[-1])
        if nxt.order() == series[-1].order():
            return series
        series.append(nxt)


def fixed_space(h: Subgroup) -> Subspace:
    """The common fixed subspace of H: the kernel of all (g - 1) stacked.

    Any generating subset gives the same answer; the cached generators are
    used.
    """
    g = h.parent
    gens = h.generators()
    if not gens:
        return Subspace.full(g.dim)
    ident = Matrix.identity(g.dim)
    rows = []
    for i in gens:
        rows.extend((g.matrix(i) - ident).row_list())
    return kernel(Matrix.from_rows(rows, cols=g.dim))


def element_fixed_space(g: FiniteMatrixGroup, index: int) -> Subspace:
    """Fixed subspace of a single element, kernel(matrix - 1)."""
    return kernel(g.matrix(index) - Matrix.identity(g.dim))


def pointwise_stabilizer(group: FiniteMatrixGroup, s: Subspace) -> Subgroup:
    """Elements acting as the identity on S."""
    if s.ambient_dim != group.dim:
        raise ValueError("subspace ambient dimension does not match the group")
    rows = s.basis_rows()
    members = []
    for e in group.elements:
        if all(e.matrix.apply(r) == r for r in rows):
            members.append(e.index)
    return Subgroup(group, members)


def all_subgroups(
    group: FiniteMatrixGroup, order_cap: int = DEFAULT_SUBGROUP_ORDER_CAP
) -> list[Subgroup]:
    """Every subgroup, exactly once, sorted by (order, members).

    Brute force suitable for desk-scale groups: collect the cyclic
    subgroups, then close the family under pairwise join until it stops
    growing.
    """
    if group.order() > order_cap:
        raise CapExceeded(
            f"subgroup enumeration needs |G| <= {order_cap}, got {group.order()}"
        )
    cyclic = {group.close_indices([e.index]) for e in group.elements}
    family = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for a in frontier:
            for b in family:
                join = group.close_indices(set(a) | set(b))
                if join not in family and join not in new:
                    new.add(join)
        family |= new
        frontier = new
    subs = [Subgroup(group, m) for m in family]
    subs.sort(key=lambda s: (s.order(), s.members))
    return subs


def transform_subspace_by(group: FiniteMatrixGroup, index: int, s: Subspace) -> Subspace:
    return transform_subspace(group.matrix(index), s)
