"""Constructive inverted-element witnesses.

Two families:

  * wreath-type automorphisms (a_1, ..., a_n) sigma of S^n (S nonabelian
    simple): find_inverted_witness produces a nontrivial tuple that the
    automorphism maps to its componentwise inverse, following the two
    cycle-parity constructions (even cycles use a nontrivial fixed point of
    the cycle composite; odd cycles scan the composite's inner coset for a
    member that inverts something nontrivial and fold that twist back into
    the last coordinate);

  * explicit order-2 elements of PSL2(q) inverted by a chosen representative
    of each outer coset: the unipotent [1 1; 0 1] in characteristic 2, the
    class of diag(-1, 1) as a power of diag(xi, 1)*frob^i when q = 1 mod 4,
    and the class of [0 1; -1 0] conjugated by the antidiagonal when
    q = 3 mod 4.

S^n is never materialized for tuples longer than the table cap allows;
everything runs componentwise on index tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .automorphisms import (
    Automorphism,
    conjugation_permutation,
    frobenius_permutation,
)
from .errors import GroupBuildError, TheoremViolationError
from .fields import field_for
from .groups import (
    MATERIALIZE_CAP,
    GroupTable,
    _canonicalize_codes,
    _matrix_mul_codes,
    _pack,
    build_psl2,
    direct_product,
    element_order,
)
from .structure import normal_subgroups

RANDOM_PAIR_TRIALS = 100_000
WITNESS_MAX_COPIES = 6

_simple_cache: dict[int, bool] = {}
_product_cache: dict[tuple[int, int], GroupTable] = {}
_inner_mat_cache: dict[int, np.ndarray] = {}


def _is_nonabelian_simple(S: GroupTable) -> bool:
    key = id(S)
    if key not in _simple_cache:
        T = S.require_table()
        if np.array_equal(T, T.T):
            _simple_cache[key] = False
        else:
            _simple_cache[key] = len(normal_subgroups(S)) == 2
    return _simple_cache[key]


def _materialized_power(S: GroupTable, n: int) -> GroupTable:
    key = (id(S), n)
    if key not in _product_cache:
        P = S
        for _ in range(n - 1):
            P = direct_product(P, S)
        _product_cache[key] = P
    return _product_cache[key]


def _inner_images_matrix(S: GroupTable) -> np.ndarray:
    """Row g = images of conjugation by g."""
    key = id(S)
    if key not in _inner_mat_cache:
        T = S.require_table()
        _inner_mat_cache[key] = T[T, S.inv[:, None]]
    return _inner_mat_cache[key]


@dataclass(frozen=True)
class WreathAut:
    """(a_1, ..., a_n) sigma acting on S^n: component i of the image is
    a_i applied to component sigma^-1(i) of the argument."""

    base: GroupTable
    n: int
    alphas: tuple[Automorphism, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or len(self.alphas) != self.n or len(self.sigma) != self.n:
            raise GroupBuildError("wreath automorphism needs n alphas and an n-point sigma")
        if sorted(self.sigma) != list(range(self.n)):
            raise GroupBuildError("sigma is not a permutation")
        for a in self.alphas:
            if a.parent is not self.base:
                raise GroupBuildError("alpha does not act on the base group")
        self._verify_automorphism()

    @property
    def sigma_inv(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, v in enumerate(self.sigma):
            inv[v] = i
        return tuple(inv)

    def apply(self, v: tuple[int, ...]) -> tuple[int, ...]:
        if len(v) != self.n:
            raise GroupBuildError(f"expected a {self.n}-tuple, got {len(v)}")
        si = self.sigma_inv
        return tuple(int(self.alphas[i].images[v[si[i]]]) for i in range(self.n))

    def apply_columns(self, V: np.ndarray) -> np.ndarray:
        """Apply to many tuples at once; V has shape (n, N)."""
        si = self.sigma_inv
        return np.stack([self.alphas[i].images[V[si[i]]] for i in range(self.n)])

    def _verify_automorphism(self):
        S = self.base
        if S.n**self.n <= MATERIALIZE_CAP:
            P = _materialized_power(S, self.n)
            radix = S.n ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
            idx = np.arange(P.n, dtype=np.int64)
            digits = np.stack([(idx // radix[i]) % S.n for i in range(self.n)])
            images = (self.apply_columns(digits).astype(np.int64).T @ radix).astype(np.int32)
            Automorphism(P, images, provenance="composed")  # exhaustive check
        else:
            rng = np.random.default_rng(0)
            U = rng.integers(0, S.n, size=(self.n, RANDOM_PAIR_TRIALS))
            V = rng.integers(0, S.n, size=(self.n, RANDOM_PAIR_TRIALS))
            UV = np.stack([S.mul_many(U[i], V[i]) for i in range(self.n)])
            lhs = self.apply_columns(UV)
            wU, wV = self.apply_columns(U), self.apply_columns(V)
            rhs = np.stack([S.mul_many(wU[i], wV[i]) for i in range(self.n)])
            if not np.array_equal(lhs, rhs):
                raise GroupBuildError("wreath map is not multiplicative (sampled)")


def wreath_apply(w: WreathAut, v: tuple[int, ...]) -> tuple[int, ...]:
    return w.apply(v)


@dataclass(frozen=True)
class InvertedWitness:
    """A nontrivial tuple mapped to its componentwise inverse by ``wreath``
    (the input automorphism, with any inner twist folded in)."""

    wreath: WreathAut
    vector: tuple[int, ...]
    cycle_used: tuple[int, ...]
    twisted_coord: int | None
    verified: bool = field(init=False, default=False)

    def __post_init__(self):
        S = self.wreath.base
        if all(x == 0 for x in self.vector):
            raise TheoremViolationError("witness tuple is trivial")
        image = self.wreath.apply(self.vector)
        expected = tuple(int(S.inv[x]) for x in self.vector)
        if image != expected:
            raise TheoremViolationError("witness tuple is not inverted by the map")
        object.__setattr__(self, "verified", True)


def _sigma_cycle(w: WreathAut) -> list[int]:
    """The sigma-cycle containing the least moved coordinate (the fixed
    cycle (0) when sigma is the identity)."""
    moved = [i for i in range(w.n) if w.sigma[i] != i]
    start = min(moved) if moved else 0
    cycle = [start]
    x = w.sigma[start]
    while x != start:
        cycle.append(x)
        x = w.sigma[x]
    return cycle


def find_inverted_witness(w: WreathAut) -> InvertedWitness:
    """A nontrivial element of S^n inverted by a member of w's inner coset.

    Even cycle length: the composite of the alphas along the cycle has a
    nontrivial fixed point (a fixed-point-free automorphism would make S
    solvable), and the fixed point propagates around the cycle with
    alternating inversion.  Odd cycle length: some member of the composite's
    coset modulo Inn(S) inverts a nontrivial element (S admits no 1-complete
    automorphism); the found twist is folded into the last cycle coordinate.
    """
    S = w.base
    if not _is_nonabelian_simple(S):
        raise GroupBuildError("witness construction needs a nonabelian simple base")
    if w.n > WITNESS_MAX_COPIES:
        raise GroupBuildError(f"witness construction capped at n <= {WITNESS_MAX_COPIES}")
    cycle = _sigma_cycle(w)
    k = len(cycle)
    gamma = np.arange(S.n, dtype=np.int32)
    for c in cycle:
        gamma = w.alphas[c].images[gamma]

    twisted_coord = None
    alphas = list(w.alphas)
    if k % 2 == 0:
        fixed = np.nonzero(gamma == np.arange(S.n))[0]
        fixed = fixed[fixed != 0]
        if len(fixed) == 0:
            raise TheoremViolationError(
                f"composite along an even cycle has no nontrivial fixed point on {S.name}"
            )
        s_k = int(fixed[0])
    else:
        inner = _inner_images_matrix(S)
        composed = gamma[inner]  # row g = gamma o (conjugation by g)
        inverts = composed[:, 1:] == S.inv[None, 1:]
        rows = np.nonzero(inverts.any(axis=1))[0]
        if len(rows) == 0:
            raise TheoremViolationError(
                f"no member of the composite's inner coset inverts anything on {S.name}"
            )
        g = int(rows[0])
        s_k = int(np.nonzero(inverts[g])[0][0]) + 1
        delta = composed[g]
        # fold the twist into the last cycle coordinate: beta_k = delta o
        # (beta_{k-1} ... beta_1)^-1, which lies in alpha_k Inn(S)
        prefix = np.arange(S.n, dtype=np.int32)
        for c in cycle[:-1]:
            prefix = alphas[c].images[prefix]
        prefix_inv = np.empty_like(prefix)
        prefix_inv[prefix] = np.arange(S.n, dtype=np.int32)
        twisted_coord = cycle[-1]
        beta_k = Automorphism(S, delta[prefix_inv], provenance="composed")
        shifted = alphas[twisted_coord].inverse().images[beta_k.images]
        if not (shifted == _inner_images_matrix(S)).all(axis=1).any():
            raise TheoremViolationError("folded twist is not an inner automorphism")
        alphas[twisted_coord] = beta_k

    vector = [0] * w.n
    vector[cycle[-1]] = s_k
    comp = np.arange(S.n, dtype=np.int32)
    for i, c in enumerate(cycle[:-1], start=1):
        comp = alphas[c].images[comp]
        val = int(comp[s_k])
        vector[c] = int(S.inv[val]) if i % 2 == 1 else val

    effective = (
        w if twisted_coord is None else WreathAut(S, w.n, tuple(alphas), w.sigma)
    )
    return InvertedWitness(
        wreath=effective,
        vector=tuple(vector),
        cycle_used=tuple(cycle),
        twisted_coord=twisted_coord,
    )


# ---------------------------------------------------------------------------
# PSL2(q) witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Psl2Witness:
    group: GroupTable
    q: int
    i: int
    variant: str
    element: int
    coset_rep: Automorphism
    exponent: int | None
    verified: bool


def _pair_power(F, start_mat, start_j, e):
    """e-th power of (matrix, frobenius index) under
    (N1, j1)(N2, j2) = (N1 * frob^j1(N2), j1 + j2), by iterated application."""
    matmul = _matrix_mul_codes(F)

    def frob_mat(m, j):
        return tuple(int(F._pow_code(int(x), F.p**j)) if j else int(x) for x in m)

    def mul_pair(x, y):
        m = matmul(
            tuple(np.int64(v) for v in x[0]),
            tuple(np.int64(v) for v in frob_mat(y[0], x[1])),
        )
        m = _canonicalize_codes(*m, F)
        return tuple(int(v) for v in m), (x[1] + y[1]) % F.f

    acc = ((1, 0, 0, 1), 0)
    for _ in range(e):
        acc = mul_pair(acc, (start_mat, start_j))
    return acc


def _psl2_element_index(G: GroupTable, codes: tuple[int, int, int, int]) -> int:
    F = G.meta["field"]
    canon = _canonicalize_codes(*(np.int64(x) for x in codes), F)
    idx = int(G.meta["code_lookup"][_pack(*canon, G.meta["q"])])
    if idx < 0:
        raise TheoremViolationError(f"matrix {codes} is not in {G.name}")
    return idx


def psl2_witness(q: int, i: int, variant: str, group: GroupTable | None = None) -> Psl2Witness:
    """An order-2 element of PSL2(q) inverted by the chosen representative of
    the coset indexed by (variant, i)."""
    G = group if group is not None else build_psl2(q)
    if G.kind != "PSL2" or G.meta["q"] != q:
        raise GroupBuildError("group argument must be PSL2(q) for the same q")
    F = field_for(q)
    if not 0 <= i < F.f:
        raise ValueError(f"field power index {i} out of range 0..{F.f - 1}")
    expected = "char2" if F.p == 2 else ("q1mod4" if q % 4 == 1 else "q3mod4")
    if variant != expected:
        raise ValueError(f"variant {variant!r} does not match q={q} (expected {expected!r})")

    exponent = None
    if variant == "char2":
        elem = _psl2_element_index(G, (1, 1, 0, 1))
        rep_images = frobenius_permutation(G, i)
        rep = Automorphism(G, rep_images, provenance=f"field({i})")
    elif variant == "q1mod4":
        xi = F.to_code(F.generator())
        if F.square_mask[xi]:
            raise TheoremViolationError(
                "generator of F_q^* is a square; diag(xi,1) would lie in PSL2"
            )
        dmat = (xi, 0, 0, 1)
        conj = conjugation_permutation(G, dmat)
        rep = Automorphism(G, conj[frobenius_permutation(G, i)], provenance="composed")
        g = math.gcd(F.f, i)
        exponent = (F.f // g) * (F.p**g - 1) // 2
        mat, j = _pair_power(F, dmat, i, exponent)
        if j != 0:
            raise TheoremViolationError("power of the coset representative kept a field part")
        elem = _psl2_element_index(G, mat)
        minus1 = _psl2_element_index(G, (F.to_code(F.scalar(-1)), 0, 0, 1))
        if elem != minus1:
            raise TheoremViolationError("computed power is not the class of diag(-1,1)")
        # cross-check against direct exponentiation of xi in the field
        if F.pow(F.generator(), (q - 1) // 2) != F.scalar(-1):
            raise TheoremViolationError("xi^((q-1)/2) != -1 in the field")
    else:  # q3mod4
        cmat = (0, 1, 1, 0)
        det_is_square = F.square_mask[F.to_code(F.scalar(-1))]
        if det_is_square:
            raise TheoremViolationError(
                "[0 1; 1 0] lies in PSL2 although q = 3 mod 4; -1 should be a non-square"
            )
        conj = conjugation_permutation(G, cmat)
        rep = Automorphism(G, conj[frobenius_permutation(G, i)], provenance="composed")
        elem = _psl2_element_index(G, (0, 1, F.to_code(F.scalar(-1)), 0))

    if element_order(G, elem) != 2:
        raise TheoremViolationError("witness element does not have order 2")
    verified = elem != 0 and int(rep.images[elem]) == int(G.inv[elem])
    return Psl2Witness(
        group=G,
        q=q,
        i=i,
        variant=variant,
        element=elem,
        coset_rep=rep,
        exponent=exponent,
        verified=verified,
    )
