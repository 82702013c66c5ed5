"""Brute-force cross-checks used only by the test suite."""

from __future__ import annotations

from autmap.groups import GroupTable, element_order


def closure(G: GroupTable, gens: list[int]) -> set[int]:
    out = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def greedy_generators(G: GroupTable) -> list[int]:
    gens: list[int] = []
    have = {0}
    while len(have) < G.n:
        best, best_size = None, 0
        for x in range(G.n):
            if x in have:
                continue
            size = len(closure(G, gens + [x]))
            if size > best_size:
                best, best_size = x, size
                if size == G.n:
                    break
        gens.append(best)
        have = closure(G, gens)
    return gens


def _extend_hom(G: GroupTable, H: GroupTable, gens, images):
    """Grow the partial map <gens> -> H by closure; None on any conflict."""
    phi = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y = G.mul(x, g)
                fy = H.mul(phi[x], h)
                if y in phi:
                    if phi[y] != fy:
                        return None
                else:
                    phi[y] = fy
                    nxt.append(y)
        frontier = nxt
    return phi


def find_isomorphism(G: GroupTable, H: GroupTable):
    """First isomorphism G -> H found by generator-image backtracking,
    as an image list over G's indices; None if the groups are not isomorphic."""
    if G.n != H.n:
        return None
    gens = greedy_generators(G)
    orders = [element_order(G, g) for g in gens]
    cands = [
        [y for y in range(H.n) if element_order(H, y) == o] for o in orders
    ]

    def rec(k, chosen):
        if k == len(gens):
            phi = _extend_hom(G, H, gens, chosen)
            if phi and len(phi) == G.n and len(set(phi.values())) == G.n:
                return [phi[x] for x in range(G.n)]
            return None
        for y in cands[k]:
            got = rec(k + 1, chosen + [y])
            if got is not None:
                return got
        return None

    return rec(0, [])
