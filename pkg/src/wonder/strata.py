"""Stratifications of a linear finite-group action.

Two stratifications of the representation space are built here, both as
intersection-closed families of linear subspaces ordered by containment:

* the stabilizer stratification, generated by the fixed subspaces
  kernel(g - 1) of the nontrivial group elements;
* the coarser family generated by the subvarieties attached to the
  nonabelian subgroups (the ones whose blowup drives abelianization).

For a nonabelian subgroup H the attached subspace is computed rationally:
the span of all one-dimensional complex H-summands equals Fixed([H, H])
(it is H-stable, H acts on it through the abelian quotient, and every
one-dimensional summand is [H, H]-trivial), so the common kernel of the
characters of those summands is exactly the subgroup of H acting as the
identity on Fixed([H, H]).  All kernels involved are rational forms of the
complex ones, hence the computed subspace agrees with its complex
definition.  This identity is exercised by the property tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .groups import (
    DEFAULT_SUBGROUP_ORDER_CAP,
    FiniteMatrixGroup,
    Subgroup,
    all_subgroups,
    close_generators,
    derived_subgroup,
    element_fixed_space,
    fixed_space,
    is_abelian,
    is_solvable,
    pointwise_stabilizer,
)
from .linalg import Matrix, Subspace, contains, intersect, matrix_from_lists


@dataclass(frozen=True)
class LinearGModel:
    """A finite group acting linearly on Q^n (the local chart of a G-variety)."""

    group: FiniteMatrixGroup
    ambient_dim: int
    name: str = "custom"

    def __post_init__(self):
        if self.group.dim != self.ambient_dim:
            raise ValueError("ambient dimension must match the group dimension")


class StratumLattice:
    """An intersection-closed family of proper subspaces with containment order.

    Elements are sorted canonically (dimension, then basis entries), the
    containment relation is precomputed, and each element carries its
    pointwise stabilizer when a group is attached.
    """

    def __init__(self, elements: Sequence[Subspace], group: FiniteMatrixGroup | None = None):
        self.elements = tuple(sorted(set(elements), key=lambda s: s.sort_key()))
        self.group = group
        self._index = {s: i for i, s in enumerate(self.elements)}
        n = len(self.elements)
        self.leq = tuple(
            tuple(contains(self.elements[j], self.elements[i]) for j in range(n))
            for i in range(n)
        )
        if group is not None:
            self.pointwise_stabs = tuple(
                pointwise_stabilizer(group, s) for s in self.elements
            )
        else:
            self.pointwise_stabs = ()
        self.minimum = None
        if self.elements:
            bottom = self.elements[0]
            for s in self.elements[1:]:
                bottom = intersect(bottom, s)
            self.minimum = self._index.get(bottom)

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, s: Subspace) -> int:
        return self._index[s]

    def __contains__(self, s: Subspace) -> bool:
        return s in self._index

    def members_containing(self, w: Subspace) -> list[int]:
        return [i for i, s in enumerate(self.elements) if contains(s, w)]

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Covering pairs (i, j) with element i immediately below element j."""
        n = len(self.elements)
        edges = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                if any(
                    k != i and k != j and self.leq[i][k] and self.leq[k][j]
                    for k in range(n)
                ):
                    continue
                edges.append((i, j))
        return edges

    def to_json(self) -> dict:
        data = {
            "element_count": len(self.elements),
            "elements": [
                {
                    "index": i,
                    "dim": s.dim,
                    "codim": s.codim,
                    "basis": s.basis.to_lists(),
                }
                for i, s in enumerate(self.elements)
            ],
            "containments": [
                [i, j]
                for i in range(len(self.elements))
                for j in range(len(self.elements))
                if i != j and self.leq[i][j]
            ],
            "hasse_edges": [list(e) for e in self.hasse_edges()],
            "minimum": self.minimum,
        }
        if self.pointwise_stabs:
            for entry, stab in zip(data["elements"], self.pointwise_stabs):
                entry["stabilizer_order"] = stab.order()
        return data

    def to_dot(self, title: str = "lattice") -> str:
        lines = [f'digraph "{title}" {{', "  rankdir=BT;", "  node [shape=box];"]
        for i, s in enumerate(self.elements):
            label = f"#{i} dim {s.dim}"
            if self.pointwise_stabs:
                label += f"\\n|stab|={self.pointwise_stabs[i].order()}"
            lines.append(f'  n{i} [label="{label}"];')
        for i, j in self.hasse_edges():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines)


def close_under_intersection(subspaces: Iterable[Subspace]) -> list[Subspace]:
    """Intersection closure of a family of subspaces."""
    family = list(dict.fromkeys(subspaces))
    seen = set(family)
    frontier = list(family)
    while frontier:
        new = []
        for a in frontier:
            for b in family:
                c = intersect(a, b)
                if c not in seen:
                    seen.add(c)
                    new.append(c)
        family.extend(new)
        frontier = new
    return sorted(seen, key=lambda s: s.sort_key())


def stabilizer_lattice(model: LinearGModel) -> StratumLattice:
    """Intersection closure of the fixed subspaces of the nontrivial elements."""
    g = model.group
    kernels = []
    for e in g.elements:
        if e.index == g.identity_index:
            continue
        k = element_fixed_space(g, e.index)
        if not k.is_full():
            kernels.append(k)
    return StratumLattice(close_under_intersection(kernels), group=g)


def lattice_from_subspaces(
    model: LinearGModel, subspaces: Iterable[Subspace], close: bool = True
) -> StratumLattice:
    """Build a lattice from explicit subspaces (closed under intersection)."""
    subs = list(subspaces)
    if any(s.is_full() for s in subs):
        raise ValueError("lattice members must be proper subspaces")
    if close:
        subs = close_under_intersection(subs)
    return StratumLattice(subs, group=model.group)


@dataclass(frozen=True)
class YWitness:
    """One subspace of the nonabelian-subgroup family, with its provenance.

    ``w_space`` is the common fixed space of the derived subgroup of
    ``witness_h`` (the span of the one-dimensional summands), ``h1`` the
    part of the subgroup acting trivially on it, and ``subspace`` the fixed
    space of ``h1``.
    """

    subspace: Subspace
    witness_h: Subgroup
    h1: Subgroup
    w_space: Subspace


def y_data_for(h: Subgroup) -> tuple[Subspace, Subgroup, Subspace]:
    """The (subspace, h1, w_space) triple attached to a subgroup.

    The result subspace equals the whole space exactly when h is abelian.
    """
    g = h.parent
    w = fixed_space(derived_subgroup(h))
    rows = w.basis_rows()
    h1_members = [
        i for i in h.members if all(g.matrix(i).apply(r) == r for r in rows)
    ]
    h1 = Subgroup(g, h1_members)
    return fixed_space(h1), h1, w


def y_family(
    model: LinearGModel, order_cap: int = DEFAULT_SUBGROUP_ORDER_CAP
) -> list[YWitness]:
    """One witness per distinct proper subspace over all nonabelian subgroups.

    Abelian subgroups contribute nothing; every emitted subspace has
    codimension at least 2.
    """
    witnesses: dict[Subspace, YWitness] = {}
    for h in all_subgroups(model.group, order_cap=order_cap):
        if is_abelian(h):
            continue
        y, h1, w = y_data_for(h)
        if y.is_full():
            continue
        if y not in witnesses:
            witnesses[y] = YWitness(subspace=y, witness_h=h, h1=h1, w_space=w)
    return sorted(witnesses.values(), key=lambda w: w.subspace.sort_key())


def y_lattice(family: Sequence[YWitness]) -> StratumLattice:
    """Intersection closure of the family subspaces (the closed strata)."""
    group = family[0].witness_h.parent if family else None
    subs = close_under_intersection(w.subspace for w in family)
    return StratumLattice(subs, group=group)


def family_subspaces(family: Sequence) -> list[Subspace]:
    """Accept YWitness lists or plain subspace lists."""
    return [w.subspace if isinstance(w, YWitness) else w for w in family]


def incidence_count(w: Subspace, family: Sequence) -> int:
    """How many family subspaces contain w."""
    return sum(1 for y in family_subspaces(family) if contains(y, w))


def nonsolvable_strata(lattice: StratumLattice) -> list[int]:
    """Indices of lattice elements whose pointwise stabilizer is not solvable."""
    if not lattice.pointwise_stabs:
        raise ValueError("lattice has no stabilizer data")
    return [
        i for i, stab in enumerate(lattice.pointwise_stabs) if not is_solvable(stab)
    ]


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix sending e_j to e_perm[j]."""
    n = len(perm)
    return Matrix(n, n, [1 if i == perm[j] else 0 for i in range(n) for j in range(n)])


def cycles_to_perm(n: int, *cycles: Sequence[int]) -> list[int]:
    perm = list(range(n))
    for cycle in cycles:
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            perm[a] = b
    return perm


def block_permutation_matrix(perm: Sequence[int], block_dim: int) -> Matrix:
    """Permutation of n blocks of size d, acting on Q^(n*d)."""
    n = len(perm)
    expanded = [0] * (n * block_dim)
    for j in range(n):
        for r in range(block_dim):
            expanded[j * block_dim + r] = perm[j] * block_dim + r
    return permutation_matrix(expanded)


# 2x2 rational matrices of the standard 2-dimensional representation of the
# symmetric group on three letters, in the basis (e1 - e2, e2 - e3).
_STD2_SWAP = [[-1, 1], [0, 1]]
_STD2_CYCLE = [[0, -1], [1, -1]]


def _block_diag(blocks: Sequence[Sequence[Sequence[int]]]) -> Matrix:
    size = sum(len(b) for b in blocks)
    rows = [[0] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                rows[offset + i][offset + j] = x
        offset += len(b)
    return matrix_from_lists(rows)


def _symmetric_generators(n: int, d: int) -> list[Matrix]:
    if n < 2:
        return []
    gens = [cycles_to_perm(n, (0, 1)), cycles_to_perm(n, tuple(range(n)))]
    return [block_permutation_matrix(p, d) for p in gens]


def _alternating_generators(n: int, d: int) -> list[Matrix]:
    if n < 3:
        return []
    if n % 2 == 1:
        gens = [cycles_to_perm(n, (0, 1, 2)), cycles_to_perm(n, tuple(range(n)))]
    else:
        gens = [cycles_to_perm(n, (0, 1, 2)), cycles_to_perm(n, tuple(range(1, n)))]
    return [block_permutation_matrix(p, d) for p in gens]


def _build_prod(params: dict) -> LinearGModel:
    n = int(params["n"])
    d = int(params["d"])
    alternating = bool(params.get("alternating", False))
    if n < 1 or d < 1:
        raise ValueError("prod preset needs n >= 1 and d >= 1")
    gens = _alternating_generators(n, d) if alternating else _symmetric_generators(n, d)
    group = close_generators(gens, dim=n * d)
    tag = f"prod({n},{d}" + (",alternating)" if alternating else ")")
    return LinearGModel(group=group, ambient_dim=n * d, name=tag)


def _build_s3_perm3(params: dict) -> LinearGModel:
    group = close_generators(
        [permutation_matrix(cycles_to_perm(3, (0, 1))), permutation_matrix(cycles_to_perm(3, (0, 1, 2)))]
    )
    return LinearGModel(group=group, ambient_dim=3, name="s3_perm3")


def _build_s3_std2(params: dict) -> LinearGModel:
    gens = [_block_diag([_STD2_SWAP, _STD2_SWAP]), _block_diag([_STD2_CYCLE, _STD2_CYCLE])]
    group = close_generators(gens)
    return LinearGModel(group=group, ambient_dim=4, name="s3_std2")


def _build_s4_perm4(params: dict) -> LinearGModel:
    group = close_generators(
        [permutation_matrix(cycles_to_perm(4, (0, 1))), permutation_matrix(cycles_to_perm(4, (0, 1, 2, 3)))]
    )
    return LinearGModel(group=group, ambient_dim=4, name="s4_perm4")


def _build_d4_plane(params: dict) -> LinearGModel:
    rot = matrix_from_lists([[0, -1], [1, 0]])
    flip = matrix_from_lists([[1, 0], [0, -1]])
    group = close_generators([rot, flip])
    return LinearGModel(group=group, ambient_dim=2, name="d4_plane")


def _build_q8_rat4(params: dict) -> LinearGModel:
    li = matrix_from_lists([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    lj = matrix_from_lists([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
    group = close_generators([li, lj])
    return LinearGModel(group=group, ambient_dim=4, name="q8_rat4")


def _build_a5_perm5(params: dict) -> LinearGModel:
    group = close_generators(
        [
            permutation_matrix(cycles_to_perm(5, (0, 1, 2))),
            permutation_matrix(cycles_to_perm(5, (0, 1, 2, 3, 4))),
        ]
    )
    return LinearGModel(group=group, ambient_dim=5, name="a5_perm5")


_PRESET_BUILDERS = {
    "s3_perm3": _build_s3_perm3,
    "s3_std2": _build_s3_std2,
    "s4_perm4": _build_s4_perm4,
    "d4_plane": _build_d4_plane,
    "q8_rat4": _build_q8_rat4,
    "a5_perm5": _build_a5_perm5,
    "prod": _build_prod,
}

PRESET_NAMES = tuple(sorted(_PRESET_BUILDERS))


def _parse_prod_shorthand(name: str) -> dict | None:
    # Accept "prod(3,2)" and "prod(5,1,alternating)" as names.
    if not (name.startswith("prod(") and name.endswith(")")):
        return None
    parts = [p.strip() for p in name[5:-1].split(",")]
    if len(parts) not in (2, 3):
        raise ValueError(f"malformed prod preset {name!r}")
    params = {"n": int(parts[0]), "d": int(parts[1])}
    if len(parts) == 3:
        if parts[2] != "alternating":
            raise ValueError(f"malformed prod preset {name!r}")
        params["alternating"] = True
    return params


def preset(name: str, params: dict | None = None) -> LinearGModel:
    """Build one of the named models; unknown names list the alternatives."""
    params = dict(params or {})
    shorthand = _parse_prod_shorthand(name)
    if shorthand is not None:
        shorthand.update(params)
        return _build_prod(shorthand)
    builder = _PRESET_BUILDERS.get(name)
    if builder is None:
        raise ValueError(
            f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)} "
            "(prod takes params n, d and optional alternating)"
        )
    return builder(params)
