"""Solvability, normal-subgroup lattice, radical, socle, and automorphism
transport to quotients and subgroups.

Normal subgroups are computed as the join-closure of the normal closures of
single conjugacy classes: every normal subgroup is a union of classes, hence
the join of the class closures it contains.  The lattice computation is
capped at |G| <= 1000.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .automorphisms import Automorphism
from .errors import CapExceededError, GroupBuildError, InvarianceError
from .groups import GroupTable, conjugacy_classes

LATTICE_CAP = 1000


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its sorted member indices."""

    parent: GroupTable
    members: tuple[int, ...]

    def __post_init__(self):
        mem = np.array(self.members, dtype=np.int64)
        if len(mem) == 0 or mem[0] != 0:
            raise GroupBuildError("subgroup must contain the identity (index 0)")
        inside = np.zeros(self.parent.n, dtype=bool)
        inside[mem] = True
        prods = self.parent.mul_many(np.repeat(mem, len(mem)), np.tile(mem, len(mem)))
        if not inside[prods].all():
            raise GroupBuildError("member set is not closed under multiplication")
        if not inside[self.parent.inv[mem]].all():
            raise GroupBuildError("member set is not closed under inversion")

    def __len__(self):
        return len(self.members)

    def member_mask(self) -> np.ndarray:
        mask = np.zeros(self.parent.n, dtype=bool)
        mask[list(self.members)] = True
        return mask

    def is_normal(self) -> bool:
        G = self.parent
        T = G.require_table()
        mem = np.array(self.members, dtype=np.int64)
        mask = self.member_mask()
        conj = T[T[:, mem], G.inv[:, None]]  # conj[g, m] = g m g^-1
        return bool(mask[conj].all())

    def is_characteristic(self, automorphisms) -> bool:
        """Invariance under every supplied automorphism."""
        mask = self.member_mask()
        mem = list(self.members)
        return all(mask[a.images[mem]].all() for a in automorphisms)

    def is_invariant_under(self, alpha: Automorphism) -> bool:
        mask = self.member_mask()
        return bool(mask[alpha.images[list(self.members)]].all())

    def __repr__(self):
        return f"Subgroup(order={len(self.members)} of {self.parent.name})"


def subgroup_closure(G: GroupTable, gens) -> Subgroup:
    """The subgroup generated by ``gens`` (inverses come for free in a
    finite group, so right-multiplication words from the identity suffice)."""
    T = G.require_table()
    mask = np.zeros(G.n, dtype=bool)
    mask[0] = True
    garr = np.unique(np.asarray([0] + [int(g) for g in gens], dtype=np.int64))
    frontier = np.array([0], dtype=np.int64)
    while len(frontier):
        prods = np.unique(T[frontier[:, None], garr[None, :]].ravel())
        new = prods[~mask[prods]]
        mask[new] = True
        frontier = new
    return Subgroup(G, tuple(int(x) for x in np.nonzero(mask)[0]))


def trivial_subgroup(G: GroupTable) -> Subgroup:
    return Subgroup(G, (0,))


def full_subgroup(G: GroupTable) -> Subgroup:
    return Subgroup(G, tuple(range(G.n)))


def derived_subgroup(G: GroupTable, H: Subgroup) -> Subgroup:
    """Subgroup generated by the commutators of H."""
    T = G.require_table()
    mem = np.array(H.members, dtype=np.int64)
    inv = G.inv
    x = np.repeat(mem, len(mem))
    y = np.tile(mem, len(mem))
    comm = T[T[inv[x], inv[y]], T[x, y]]
    return subgroup_closure(G, np.unique(comm))


def derived_series(G: GroupTable) -> list[Subgroup]:
    """G >= G' >= G'' >= ..., ending at the trivial subgroup or at the first
    repeated term (so a perfect group shows its order twice)."""
    series = [full_subgroup(G)]
    while True:
        nxt = derived_subgroup(G, series[-1])
        series.append(nxt)
        if len(nxt) == 1 or len(nxt) == len(series[-2]):
            return series


def is_solvable(G: GroupTable) -> bool:
    return len(derived_series(G)[-1]) == 1


def normal_subgroups(G: GroupTable) -> list[Subgroup]:
    """Every normal subgroup, as joins of conjugacy-class closures.
    Sorted by (order, members); includes the trivial and full subgroups."""
    if G.n > LATTICE_CAP:
        raise CapExceededError(
            f"normal-subgroup lattice capped at order {LATTICE_CAP}, got {G.n}"
        )
    class_closures = []
    seen_closures = set()
    for cls in conjugacy_classes(G):
        sub = subgroup_closure(G, cls)
        if sub.members not in seen_closures:
            seen_closures.add(sub.members)
            class_closures.append(sub)
    found = {(0,): trivial_subgroup(G)}
    frontier = [trivial_subgroup(G)]
    while frontier:
        nxt = []
        for base in frontier:
            for cc in class_closures:
                joined = subgroup_closure(G, set(base.members) | set(cc.members))
                if joined.members not in found:
                    found[joined.members] = joined
                    nxt.append(joined)
        frontier = nxt
    subs = sorted(found.values(), key=lambda s: (len(s), s.members))
    for s in subs:
        if not s.is_normal():
            raise GroupBuildError("class-closure join produced a non-normal subgroup")
    return subs


def solvable_radical(G: GroupTable) -> Subgroup:
    """The largest solvable normal subgroup; verified to contain every
    solvable member of the computed lattice."""
    solvables = [
        N for N in normal_subgroups(G) if is_solvable(subgroup_table(G, N)[0])
    ]
    radical = max(solvables, key=len)
    rad_set = set(radical.members)
    for N in solvables:
        if not set(N.members) <= rad_set:
            raise GroupBuildError("solvable radical is not unique-maximal")
    return radical


def socle(G: GroupTable) -> Subgroup:
    """Join of all minimal nontrivial normal subgroups."""
    subs = [N for N in normal_subgroups(G) if len(N) > 1]
    minimal = []
    for N in subs:
        nset = set(N.members)
        if not any(set(M.members) < nset for M in subs):
            minimal.append(N)
    gens: set[int] = set()
    for N in minimal:
        gens |= set(N.members)
    return subgroup_closure(G, gens) if gens else trivial_subgroup(G)


# ---------------------------------------------------------------------------
# quotients and restriction
# ---------------------------------------------------------------------------


def quotient(G: GroupTable, N: Subgroup) -> tuple[GroupTable, np.ndarray]:
    """(G/N, projection): cosets ordered by least member, so the coset of the
    identity comes first."""
    if not N.is_normal():
        raise GroupBuildError("can only quotient by a normal subgroup")
    T = G.require_table()
    mem = np.array(N.members, dtype=np.int64)
    proj = np.full(G.n, -1, dtype=np.int64)
    coset_reps = []
    for x in range(G.n):
        if proj[x] >= 0:
            continue
        coset = np.sort(T[x, mem])
        proj[coset] = len(coset_reps)
        coset_reps.append(int(coset[0]))
    m = len(coset_reps)
    reps_arr = np.array(coset_reps, dtype=np.int64)
    table = proj[T[reps_arr[:, None], reps_arr[None, :]]].astype(np.int32)
    inv = proj[G.inv[reps_arr]]
    quot = GroupTable(
        kind="quotient",
        name=f"{G.name}/N{len(N)}",
        reps=[("coset", r) for r in coset_reps],
        labels=[f"[{G.labels[r]}]" for r in coset_reps],
        mul_many_fn=lambda a, b: table[a, b],
        inv=inv,
        meta={"parent": G, "subgroup": N, "coset_reps": coset_reps},
        table=table,
    )
    # projection is a homomorphism (all pairs) with kernel exactly N
    if not np.array_equal(proj[T], table[proj[:, None], proj[None, :]]):
        raise GroupBuildError("quotient projection is not a homomorphism")
    if sorted(int(v) for v in np.nonzero(proj == 0)[0]) != list(N.members):
        raise GroupBuildError("projection kernel is not N")
    return quot, proj


def subgroup_table(G: GroupTable, N: Subgroup) -> tuple[GroupTable, np.ndarray]:
    """(N as its own GroupTable, member list): element i of the new table is
    members[i] in G; the identity stays at index 0."""
    mem = np.array(N.members, dtype=np.int64)
    local = {int(x): i for i, x in enumerate(mem)}
    prods = G.mul_many(np.repeat(mem, len(mem)), np.tile(mem, len(mem)))
    table = np.array([local[int(v)] for v in prods], dtype=np.int32).reshape(
        len(mem), len(mem)
    )
    inv = np.array([local[int(G.inv[x])] for x in mem], dtype=np.int32)
    sub = GroupTable(
        kind="subgroup",
        name=f"{G.name}|{len(N)}",
        reps=[G.reps[int(x)] for x in mem],
        labels=[G.labels[int(x)] for x in mem],
        mul_many_fn=lambda a, b: table[a, b],
        inv=inv,
        meta={"parent": G, "subgroup": N},
        table=table,
    )
    return sub, mem


def transport_aut(
    alpha: Automorphism,
    N: Subgroup,
    mode: str,
    target: tuple[GroupTable, np.ndarray] | None = None,
) -> Automorphism:
    """Transport alpha to G/N ('induce') or to N ('restrict').

    Requires only alpha(N) = N, which is weaker than N being characteristic
    but is all the transport needs.  ``target`` may carry a precomputed
    quotient(G, N) / subgroup_table(G, N) pair to avoid rebuilding it.
    """
    G = alpha.parent
    if not N.is_invariant_under(alpha):
        raise InvarianceError("subgroup is not invariant under the automorphism")
    if mode == "induce":
        quot, proj = target if target is not None else quotient(G, N)
        reps = quot.meta["coset_reps"]
        images = proj[alpha.images[reps]]
        return Automorphism(quot, images, provenance=f"induced:{alpha.provenance}")
    if mode == "restrict":
        sub, mem = target if target is not None else subgroup_table(G, N)
        local = {int(x): i for i, x in enumerate(mem)}
        images = np.array([local[int(alpha.images[x])] for x in mem], dtype=np.int32)
        return Automorphism(sub, images, provenance=f"restricted:{alpha.provenance}")
    raise ValueError(f"unknown transport mode {mode!r}")
