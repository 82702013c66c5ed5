"""Finite groups materialized as dense index tables.

Conventions shared by the whole package:
  * elements are dense indices 0..n-1 and index 0 is always the identity;
  * enumeration order is canonical: identity first, then ascending canonical
    representation (lexicographic image tuples for permutations, packed entry
    codes for matrices, pair order for products);
  * permutations compose right-to-left, (p*q)(x) = p(q(x)), matching the
    composition order used for automorphisms;
  * the full n x n multiplication table is materialized for n <= 4096; larger
    groups multiply on demand through vectorized arithmetic on the canonical
    representations.

Every constructed table is self-checked: two-sided identity and inverses,
associativity (exhaustive for n <= 256, on 10^5 seeded random triples above),
and the Latin-square property of materialized tables.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, GroupBuildError
from .fields import FieldElement, FieldParams, field_for, prime_power

ORDER_CAP = 10_000
MATERIALIZE_CAP = 4096
ASSOC_EXHAUSTIVE_CAP = 256
RANDOM_TRIPLES = 100_000
PERM_DEGREE_CAP = 8
MIN_PROJECTIVE_Q = 4


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0..m-1} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise GroupBuildError(f"not a permutation: {self.images}")


@dataclass(frozen=True)
class ProjectiveMatrix:
    """A PGL2 class representative, scaled so its first nonzero entry is 1."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement
    canonical: bool = True


def perm_label(images) -> str:
    """Cycle notation on 1-based points; the identity prints as 'id'."""
    m = len(images)
    seen = [False] * m
    cycles = []
    for start in range(m):
        if seen[start] or images[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = images[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = images[x]
        cycles.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(cycles) if cycles else "id"


def perm_parity(images) -> int:
    """0 for even, 1 for odd."""
    m = len(images)
    seen = [False] * m
    parity = 0
    for start in range(m):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = images[x]
            length += 1
        parity ^= (length - 1) & 1
    return parity


class GroupTable:
    """A fully constructed finite group on indices 0..n-1.

    Immutable after construction; all queries are pure.
    """

    def __init__(self, *, kind, name, reps, labels, mul_many_fn, inv, meta=None, table=None):
        self.kind = kind
        self.name = name
        self.reps = reps
        self.labels = labels
        self.n = len(reps)
        self.meta = meta or {}
        self._mul_many_fn = mul_many_fn
        if table is None and self.n <= MATERIALIZE_CAP:
            table = _materialize(self.n, mul_many_fn)
        self.table = table
        self.inv = np.asarray(inv, dtype=np.int32)
        _verify_group(self)

    # -- multiplication -----------------------------------------------------

    @property
    def is_materialized(self) -> bool:
        return self.table is not None

    def require_table(self) -> np.ndarray:
        if self.table is None:
            raise CapExceededError(
                f"{self.name}: order {self.n} exceeds the materialization cap "
                f"{MATERIALIZE_CAP}; this operation needs the full table"
            )
        return self.table

    def mul_many(self, a, b) -> np.ndarray:
        """Elementwise products of two index arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.table is not None:
            return self.table[a, b]
        return self._mul_many_fn(a, b)

    def mul(self, i: int, j: int) -> int:
        if self.table is not None:
            return int(self.table[i, j])
        return int(self._mul_many_fn(np.array([i]), np.array([j]))[0])

    def inverse(self, i: int) -> int:
        return int(self.inv[i])

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = int(self.inv[i]), -k
        r = 0
        x = i
        while k:
            if k & 1:
                r = self.mul(r, x)
            k >>= 1
            if k:
                x = self.mul(x, x)
        return r

    def power_vec(self, k: int) -> np.ndarray:
        """x^k for every element x, as one vector."""
        n = self.n
        if k == 0:
            return np.zeros(n, dtype=np.int32)
        cur = np.arange(n, dtype=np.int32) if k > 0 else self.inv.copy()
        k = abs(k)
        result = None
        while k:
            if k & 1:
                result = cur if result is None else np.asarray(self.mul_many(result, cur), np.int32)
            k >>= 1
            if k:
                cur = np.asarray(self.mul_many(cur, cur), np.int32)
        return result

    def __repr__(self):
        return f"GroupTable({self.name}, order={self.n})"


# ---------------------------------------------------------------------------
# construction core
# ---------------------------------------------------------------------------


def _materialize(n: int, mul_many_fn) -> np.ndarray:
    table = np.empty((n, n), dtype=np.int32)
    cols = np.arange(n, dtype=np.int64)
    block = max(1, 2_000_000 // max(n, 1))
    for start in range(0, n, block):
        rows = np.arange(start, min(start + block, n), dtype=np.int64)
        a = np.repeat(rows, n)
        b = np.tile(cols, len(rows))
        table[start : start + len(rows)] = mul_many_fn(a, b).reshape(len(rows), n)
    return table


def _verify_group(gt: GroupTable):
    n = gt.n
    idx = np.arange(n, dtype=np.int64)
    zero = np.zeros(n, dtype=np.int64)
    if not np.array_equal(gt.mul_many(zero, idx), idx) or not np.array_equal(
        gt.mul_many(idx, zero), idx
    ):
        raise GroupBuildError(f"{gt.name}: index 0 is not a two-sided identity")
    if np.any(gt.mul_many(idx, gt.inv)) or np.any(gt.mul_many(gt.inv, idx)):
        raise GroupBuildError(f"{gt.name}: inverse table is wrong")
    T = gt.table
    if T is not None and n <= ASSOC_EXHAUSTIVE_CAP:
        block = max(1, 2048 // max(n, 1) + 1)
        for start in range(0, n, block):
            rows = T[start : start + block]
            left = T[rows, :]  # left[x,y,z] = T[T[x,y], z]
            right = T[np.arange(start, start + len(rows))][:, T]  # T[x, T[y,z]]
            if not np.array_equal(left, right):
                raise GroupBuildError(f"{gt.name}: multiplication is not associative")
    else:
        rng = np.random.default_rng(0)
        x, y, z = rng.integers(0, n, size=(3, RANDOM_TRIPLES))
        if not np.array_equal(
            gt.mul_many(gt.mul_many(x, y), z), gt.mul_many(x, gt.mul_many(y, z))
        ):
            raise GroupBuildError(f"{gt.name}: multiplication is not associative")
    if T is not None:
        seen = np.zeros((n, n), dtype=bool)
        seen[np.arange(n)[:, None], T] = True
        rows_ok = seen.all()
        seen[:] = False
        seen[T, np.arange(n)[None, :]] = True
        if not (rows_ok and seen.all()):
            raise GroupBuildError(f"{gt.name}: table is not a Latin square")


def _check_order_cap(name: str, order: int):
    if order > ORDER_CAP:
        raise CapExceededError(
            f"{name}: predicted order {order} exceeds cap {ORDER_CAP}", predicted=order
        )


# ---------------------------------------------------------------------------
# atomic constructors
# ---------------------------------------------------------------------------


def build_cyclic(n: int) -> GroupTable:
    if n < 1:
        raise GroupBuildError(f"cyclic order must be >= 1, got {n}")
    _check_order_cap(f"C{n}", n)
    reps = list(range(n))

    def mul_many(a, b):
        return ((a + b) % n).astype(np.int32)

    inv = [(n - i) % n for i in range(n)]
    return GroupTable(
        kind="cyclic",
        name=f"C{n}",
        reps=reps,
        labels=[str(i) for i in reps],
        mul_many_fn=mul_many,
        inv=inv,
        meta={"n": n},
    )


def build_dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n: rotations r^k and reflections r^k s."""
    if n < 1:
        raise GroupBuildError(f"dihedral parameter must be >= 1, got {n}")
    _check_order_cap(f"D{n}", 2 * n)
    reps = [(r, s) for r in range(n) for s in range(2)]  # index = 2r + s

    def mul_many(a, b):
        r1, s1 = a // 2, a % 2
        r2, s2 = b // 2, b % 2
        r = np.where(s1 == 0, r1 + r2, r1 - r2) % n
        return (2 * r + (s1 ^ s2)).astype(np.int32)

    def lab(rep):
        r, s = rep
        if s == 0:
            return "e" if r == 0 else f"r{r}"
        return "s" if r == 0 else f"r{r}s"

    inv = [reps.index(((n - r) % n, 0)) if s == 0 else 2 * r + 1 for (r, s) in reps]
    return GroupTable(
        kind="dihedral",
        name=f"D{n}",
        reps=reps,
        labels=[lab(r) for r in reps],
        mul_many_fn=mul_many,
        inv=inv,
        meta={"n": n},
    )


_Q8_AXES = {(1, 2): (1, 3), (2, 1): (-1, 3), (2, 3): (1, 1), (3, 2): (-1, 1), (3, 1): (1, 2), (1, 3): (-1, 2)}


def _q8_mul(x, y):
    s1, a1 = x
    s2, a2 = y
    if a1 == 0:
        return (s1 * s2, a2)
    if a2 == 0:
        return (s1 * s2, a1)
    if a1 == a2:
        return (-s1 * s2, 0)
    e, a = _Q8_AXES[(a1, a2)]
    return (e * s1 * s2, a)


def build_quaternion8() -> GroupTable:
    """The order-8 quaternion group, by its explicit table."""
    reps = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    pos = {r: k for k, r in enumerate(reps)}
    table = np.array(
        [[pos[_q8_mul(x, y)] for y in reps] for x in reps], dtype=np.int32
    )

    def mul_many(a, b):
        return table[a, b]

    inv = [pos[(s, 0)] if a == 0 else pos[(-s, a)] for (s, a) in reps]
    return GroupTable(
        kind="quaternion8",
        name="Q8",
        reps=reps,
        labels=labels,
        mul_many_fn=mul_many,
        inv=inv,
        table=table,
    )


def _build_perm_group(kind: str, m: int) -> GroupTable:
    if not 1 <= m <= PERM_DEGREE_CAP:
        raise GroupBuildError(f"permutation degree must be in 1..{PERM_DEGREE_CAP}, got {m}")
    name = f"{'S' if kind == 'symmetric' else 'A'}{m}"
    order = math.factorial(m)
    if kind == "alternating" and m >= 2:
        order //= 2
    _check_order_cap(name, order)
    perms = [
        p for p in itertools.permutations(range(m)) if kind == "symmetric" or perm_parity(p) == 0
    ]
    # lexicographic order puts the identity first already
    arr = np.array(perms, dtype=np.int8)
    pows = (m ** np.arange(m)).astype(np.int64)
    codes = arr.astype(np.int64) @ pows
    lookup = np.full(m**m, -1, dtype=np.int32)
    lookup[codes] = np.arange(len(perms), dtype=np.int32)

    def mul_many(a, b):
        x = arr[a]
        y = arr[b]
        comp = x[np.arange(len(x))[:, None], y]  # (p*q)(t) = p(q(t))
        return lookup[comp.astype(np.int64) @ pows]

    inv_arr = np.argsort(arr, axis=1)
    inv = lookup[inv_arr.astype(np.int64) @ pows]
    return GroupTable(
        kind=kind,
        name=name,
        reps=[Permutation(p) for p in perms],
        labels=[perm_label(p) for p in perms],
        mul_many_fn=mul_many,
        inv=inv,
        meta={"degree": m, "perm_array": arr},
    )


def build_symmetric(m: int) -> GroupTable:
    return _build_perm_group("symmetric", m)


def build_alternating(m: int) -> GroupTable:
    return _build_perm_group("alternating", m)


# -- 2x2 matrix groups over GF(q) -------------------------------------------


def _all_matrix_codes(q: int):
    codes = np.arange(q**4, dtype=np.int64)
    d = codes % q
    c = (codes // q) % q
    b = (codes // q**2) % q
    a = codes // q**3
    return a, b, c, d


def _pack(a, b, c, d, q):
    return ((a * q + b) * q + c) * q + d


def _canonicalize_codes(a, b, c, d, F: FieldParams):
    """Scale each (a,b,c,d) so the first nonzero entry equals 1."""
    MUL, INV = F.mul_table.astype(np.int64), F.inv_table.astype(np.int64)
    lead = np.where(a != 0, a, np.where(b != 0, b, np.where(c != 0, c, d)))
    s = INV[lead]
    return MUL[a, s], MUL[b, s], MUL[c, s], MUL[d, s]


def _matrix_mul_codes(F: FieldParams):
    MUL = F.mul_table.astype(np.int64)
    ADD = F.add_table.astype(np.int64)

    def mul(m1, m2):
        a1, b1, c1, d1 = m1
        a2, b2, c2, d2 = m2
        return (
            ADD[MUL[a1, a2], MUL[b1, c2]],
            ADD[MUL[a1, b2], MUL[b1, d2]],
            ADD[MUL[c1, a2], MUL[d1, c2]],
            ADD[MUL[c1, b2], MUL[d1, d2]],
        )

    return mul


def projective_class_codes(q: int, psl2_only: bool) -> tuple[np.ndarray, ...]:
    """Canonical PGL2 (or PSL2) class representatives as four code arrays,
    sorted by ascending packed code."""
    F = field_for(q)
    MUL = F.mul_table.astype(np.int64)
    ADD = F.add_table.astype(np.int64)
    NEG = F.neg_table.astype(np.int64)
    a, b, c, d = _all_matrix_codes(q)
    det = ADD[MUL[a, d], NEG[MUL[b, c]]]
    keep = det != 0
    a, b, c, d = (x[keep] for x in (a, b, c, d))
    a, b, c, d = _canonicalize_codes(a, b, c, d, F)
    if psl2_only:
        det = ADD[MUL[a, d], NEG[MUL[b, c]]]
        keep = F.square_mask[det]
        a, b, c, d = a[keep], b[keep], c[keep], d[keep]
    packed = np.unique(_pack(a, b, c, d, q))
    d = packed % q
    c = (packed // q) % q
    b = (packed // q**2) % q
    a = packed // q**3
    return a, b, c, d


def _matrix_group(kind: str, q: int) -> GroupTable:
    F = field_for(q)
    if kind in ("PSL2", "PGL2") and q < MIN_PROJECTIVE_Q:
        raise GroupBuildError(f"{kind} requires q >= {MIN_PROJECTIVE_Q}, got {q}")
    if kind == "SL2":
        order = q * (q * q - 1)
    else:
        order = q * (q * q - 1)
        if kind == "PSL2":
            order //= math.gcd(2, q - 1)
    name = f"{kind}({q})"
    _check_order_cap(name, order)

    MUL = F.mul_table.astype(np.int64)
    ADD = F.add_table.astype(np.int64)
    NEG = F.neg_table.astype(np.int64)
    if kind == "SL2":
        a, b, c, d = _all_matrix_codes(q)
        det = ADD[MUL[a, d], NEG[MUL[b, c]]]
        keep = det == 1
        a, b, c, d = a[keep], b[keep], c[keep], d[keep]
        packed = _pack(a, b, c, d, q)
        order_idx = np.argsort(packed, kind="stable")
    else:
        a, b, c, d = projective_class_codes(q, psl2_only=kind == "PSL2")
        order_idx = np.arange(len(a))
    # identity first, remaining elements by ascending packed code
    id_code = _pack(np.int64(1), np.int64(0), np.int64(0), np.int64(1), q)
    packed_sorted = _pack(a, b, c, d, q)[order_idx]
    id_pos = int(np.nonzero(packed_sorted == id_code)[0][0])
    perm = np.concatenate(([id_pos], np.delete(np.arange(len(order_idx)), id_pos)))
    order_idx = order_idx[perm]
    A, B, C, D = (np.ascontiguousarray(x[order_idx]) for x in (a, b, c, d))
    if len(A) != order:
        raise GroupBuildError(f"{name}: enumerated {len(A)} elements, expected {order}")

    lookup = np.full(q**4, -1, dtype=np.int32)
    lookup[_pack(A, B, C, D, q)] = np.arange(order, dtype=np.int32)
    matmul = _matrix_mul_codes(F)
    projective = kind != "SL2"

    def mul_many(x, y):
        m = matmul((A[x], B[x], C[x], D[x]), (A[y], B[y], C[y], D[y]))
        if projective:
            m = _canonicalize_codes(*m, F)
        return lookup[_pack(*m, q)]

    # inverse of [a b; c d] is the adjugate [d -b; -c a] (up to scalars /
    # determinant 1), canonicalized for the projective kinds
    ia, ib, ic, id_ = D, NEG[B], NEG[C], A
    if projective:
        ia, ib, ic, id_ = _canonicalize_codes(ia, ib, ic, id_, F)
    inv = lookup[_pack(ia, ib, ic, id_, q)]

    def mat_rep(i):
        es = [F.from_code(int(x[i])) for x in (A, B, C, D)]
        if projective:
            return ProjectiveMatrix(*es)
        return tuple(es)

    def mat_label(i):
        ls = [F.label(F.from_code(int(x[i]))) for x in (A, B, C, D)]
        return f"[{ls[0]} {ls[1]}; {ls[2]} {ls[3]}]"

    return GroupTable(
        kind=kind,
        name=name,
        reps=[mat_rep(i) for i in range(order)],
        labels=[mat_label(i) for i in range(order)],
        mul_many_fn=mul_many,
        inv=inv,
        meta={"q": q, "field": F, "codes": (A, B, C, D), "code_lookup": lookup},
    )


def build_sl2(q: int) -> GroupTable:
    return _matrix_group("SL2", q)


def build_psl2(q: int) -> GroupTable:
    return _matrix_group("PSL2", q)


def build_pgl2(q: int) -> GroupTable:
    return _matrix_group("PGL2", q)


_ATOMIC_BUILDERS = {
    "C": build_cyclic,
    "D": build_dihedral,
    "Q8": lambda _=None: build_quaternion8(),
    "S": build_symmetric,
    "A": build_alternating,
    "SL2": build_sl2,
    "PSL2": build_psl2,
    "PGL2": build_pgl2,
}


def predicted_atomic_order(kind: str, param: int | None) -> int:
    """Symbolic order of an atomic group; validates the parameter."""
    if kind == "Q8":
        return 8
    if param is None:
        raise GroupBuildError(f"{kind} needs a parameter")
    if kind == "C":
        if param < 1:
            raise GroupBuildError(f"cyclic order must be >= 1, got {param}")
        return param
    if kind == "D":
        if param < 1:
            raise GroupBuildError(f"dihedral parameter must be >= 1, got {param}")
        return 2 * param
    if kind in ("S", "A"):
        if not 1 <= param <= PERM_DEGREE_CAP:
            raise GroupBuildError(
                f"permutation degree must be in 1..{PERM_DEGREE_CAP}, got {param}"
            )
        n = math.factorial(param)
        return n // 2 if kind == "A" and param >= 2 else n
    if kind in ("SL2", "PSL2", "PGL2"):
        p, _ = prime_power(param)  # raises for non prime powers
        if kind in ("PSL2", "PGL2") and param < MIN_PROJECTIVE_Q:
            raise GroupBuildError(f"{kind} requires q >= {MIN_PROJECTIVE_Q}, got {param}")
        n = param * (param * param - 1)
        return n // math.gcd(2, param - 1) if kind == "PSL2" else n
    raise GroupBuildError(f"unknown atomic group kind {kind!r}")


def build_atomic(kind: str, param: int | None = None) -> GroupTable:
    if kind not in _ATOMIC_BUILDERS:
        raise GroupBuildError(f"unknown atomic group kind {kind!r}")
    _check_order_cap(f"{kind}({param})", predicted_atomic_order(kind, param))
    if kind == "Q8":
        return _ATOMIC_BUILDERS[kind]()
    return _ATOMIC_BUILDERS[kind](param)


# ---------------------------------------------------------------------------
# products and derived groups
# ---------------------------------------------------------------------------


def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    """Componentwise product; element (i, j) gets index i*|H| + j."""
    n1, n2 = G.n, H.n
    name = f"{G.name} x {H.name}"
    _check_order_cap(name, n1 * n2)
    reps = [(G.reps[i], H.reps[j]) for i in range(n1) for j in range(n2)]
    labels = [f"({G.labels[i]},{H.labels[j]})" for i in range(n1) for j in range(n2)]

    table = None
    if n1 * n2 <= MATERIALIZE_CAP:
        T1 = G.require_table().astype(np.int64)
        T2 = H.require_table().astype(np.int64)
        table = (T1[:, None, :, None] * n2 + T2[None, :, None, :]).reshape(
            n1 * n2, n1 * n2
        ).astype(np.int32)

    def mul_many(x, y):
        x1, x2 = x // n2, x % n2
        y1, y2 = y // n2, y % n2
        return (
            np.asarray(G.mul_many(x1, y1), np.int64) * n2 + H.mul_many(x2, y2)
        ).astype(np.int32)

    inv = (G.inv.astype(np.int64)[:, None] * n2 + H.inv[None, :]).reshape(-1)
    return GroupTable(
        kind="product",
        name=name,
        reps=reps,
        labels=labels,
        mul_many_fn=mul_many,
        inv=inv,
        meta={"factors": (G, H)},
        table=table,
    )


# ---------------------------------------------------------------------------
# structural queries
# ---------------------------------------------------------------------------


def element_order(G: GroupTable, x: int) -> int:
    """Least k >= 1 with x^k = identity; always divides |G|."""
    k = 1
    y = x
    while y != 0:
        y = G.mul(y, x)
        k += 1
    if G.n % k != 0:
        raise RuntimeError(f"order {k} of element {x} does not divide {G.n}")
    return k


def element_orders_vec(G: GroupTable) -> np.ndarray:
    """Orders of all elements at once, via the divisors of |G|."""
    n = G.n
    orders = np.zeros(n, dtype=np.int64)
    for d in sorted(k for k in range(1, n + 1) if n % k == 0):
        hits = (G.power_vec(d) == 0) & (orders == 0)
        orders[hits] = d
        if orders.all():
            break
    return orders


def conjugacy_classes(G: GroupTable) -> list[list[int]]:
    """Disjoint conjugacy classes, each sorted, ordered by least member."""
    T = G.require_table()
    n = G.n
    unseen = np.ones(n, dtype=bool)
    classes = []
    for x in range(n):
        if not unseen[x]:
            continue
        orbit = np.unique(T[T[:, x], G.inv])
        unseen[orbit] = False
        classes.append([int(v) for v in orbit])
    return classes


def center(G: GroupTable) -> list[int]:
    T = G.require_table()
    return [int(i) for i in np.nonzero(np.all(T == T.T, axis=1))[0]]


def sylow2_profile(G: GroupTable) -> tuple[int, bool]:
    """(two_part, cyclic): the 2-part of |G|, and whether a Sylow 2-subgroup
    is cyclic (equivalently: some element has order two_part)."""
    n = G.n
    two_part = 1
    while n % 2 == 0:
        two_part *= 2
        n //= 2
    if two_part == 1:
        return 1, True  # trivial subgroup counts as cyclic
    full = G.power_vec(two_part) == 0
    half = G.power_vec(two_part // 2) == 0
    return two_part, bool(np.any(full & ~half))
