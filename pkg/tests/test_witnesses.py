import numpy as np
import pytest

from autmap.automorphisms import compute_aut, identity_automorphism
from autmap.errors import GroupBuildError
from autmap.fields import field_for
from autmap.groups import build_alternating, build_psl2, build_symmetric
from autmap.witnesses import (
    InvertedWitness,
    WreathAut,
    find_inverted_witness,
    psl2_witness,
    wreath_apply,
)


@pytest.fixture(scope="module")
def a5():
    return build_alternating(5)


@pytest.fixture(scope="module")
def aut_a5(a5):
    return compute_aut(a5, "brute")


# ---------------------------------------------------------------------------
# wreath application
# ---------------------------------------------------------------------------


def test_wreath_identity_map(a5):
    ident = identity_automorphism(a5)
    w = WreathAut(a5, 3, (ident, ident, ident), (0, 1, 2))
    assert wreath_apply(w, (5, 9, 13)) == (5, 9, 13)


def test_wreath_swap_pattern(a5):
    ident = identity_automorphism(a5)
    w = WreathAut(a5, 2, (ident, ident), (1, 0))
    a = 17
    assert wreath_apply(w, (a, 0)) == (0, a)


def test_wreath_respects_products(a5, aut_a5):
    rng = np.random.default_rng(7)
    alphas = tuple(aut_a5.all[i] for i in rng.integers(0, len(aut_a5.all), size=2))
    w = WreathAut(a5, 2, alphas, (1, 0))
    for _ in range(50):
        u = tuple(int(x) for x in rng.integers(0, 60, size=2))
        v = tuple(int(x) for x in rng.integers(0, 60, size=2))
        uv = tuple(a5.mul(a, b) for a, b in zip(u, v))
        wu, wv = w.apply(u), w.apply(v)
        assert w.apply(uv) == tuple(a5.mul(a, b) for a, b in zip(wu, wv))


def test_wreath_validation(a5):
    ident = identity_automorphism(a5)
    with pytest.raises(GroupBuildError):
        WreathAut(a5, 2, (ident, ident), (0, 0))  # not a permutation
    other = build_symmetric(3)
    with pytest.raises(GroupBuildError):
        WreathAut(a5, 1, (identity_automorphism(other),), (0,))


# ---------------------------------------------------------------------------
# inverted witnesses for wreath automorphisms
# ---------------------------------------------------------------------------


def test_witness_even_cycle_identity_alphas(a5):
    ident = identity_automorphism(a5)
    w = WreathAut(a5, 2, (ident, ident), (1, 0))
    wit = find_inverted_witness(w)
    assert wit.verified
    assert wit.cycle_used == (0, 1)
    s = wit.vector[1]
    assert s != 0
    assert wit.vector[0] == a5.inverse(s)  # s_1 = id(s_2)^-1


def test_witness_single_coordinate_identity(a5):
    w = WreathAut(a5, 1, (identity_automorphism(a5),), (0,))
    wit = find_inverted_witness(w)
    assert wit.verified
    (t,) = wit.vector
    # the scan finds an involution: the identity coset member inverts it
    assert t != 0 and a5.inverse(t) == t


def test_witness_three_cycle_random_alphas(a5, aut_a5):
    rng = np.random.default_rng(3)
    alphas = tuple(aut_a5.all[i] for i in rng.integers(0, len(aut_a5.all), size=3))
    w = WreathAut(a5, 3, alphas, (1, 2, 0))
    wit = find_inverted_witness(w)
    assert wit.verified
    image = wit.wreath.apply(wit.vector)
    assert image == tuple(a5.inverse(x) for x in wit.vector)


def test_witness_mixed_cycle_types(a5, aut_a5):
    # sigma = (0 1)(2): cycle through the least moved coordinate is (0 1)
    ident = identity_automorphism(a5)
    w = WreathAut(a5, 3, (ident, ident, ident), (1, 0, 2))
    wit = find_inverted_witness(w)
    assert wit.cycle_used == (0, 1)
    assert wit.vector[2] == 0


@pytest.mark.parametrize("seed", range(12))
def test_witness_random_trials_a5(a5, aut_a5, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    alphas = tuple(aut_a5.all[i] for i in rng.integers(0, len(aut_a5.all), size=n))
    sigma = tuple(int(x) for x in rng.permutation(n))
    wit = find_inverted_witness(WreathAut(a5, n, alphas, sigma))
    assert wit.verified
    assert any(x != 0 for x in wit.vector)


def test_witness_twist_stays_in_coset(a5, aut_a5):
    # odd cycle with a non-identity alpha: the twisted coordinate still lies
    # in the original alpha's inner coset
    alpha = next(a for a in aut_a5.all if not a.is_identity())
    w = WreathAut(a5, 1, (alpha,), (0,))
    wit = find_inverted_witness(w)
    if wit.twisted_coord is not None:
        tw = wit.wreath.alphas[0]
        shift = alpha.inverse().compose(tw)
        inner_keys = {i.key for i in aut_a5.inner}
        assert shift.key in inner_keys


def test_witness_rejects_solvable_base():
    S3 = build_symmetric(3)
    with pytest.raises(GroupBuildError):
        find_inverted_witness(WreathAut(S3, 1, (identity_automorphism(S3),), (0,)))


# ---------------------------------------------------------------------------
# PSL2 witnesses
# ---------------------------------------------------------------------------


def test_psl2_witness_q5():
    wit = psl2_witness(5, 0, "q1mod4")
    assert wit.verified
    assert wit.exponent == 2  # (5-1)/2
    G = wit.group
    F = field_for(5)
    # the element is the class of diag(-1,1), canonically diag(1,-1)
    rep = G.reps[wit.element]
    assert (rep.a, rep.b, rep.c, rep.d) == (F.one, F.zero, F.zero, F.scalar(-1))


def test_psl2_witness_q7():
    wit = psl2_witness(7, 0, "q3mod4")
    assert wit.verified
    G = wit.group
    F = field_for(7)
    rep = G.reps[wit.element]
    # class of [0 1; -1 0]
    assert (rep.a, rep.b, rep.c, rep.d) == (F.zero, F.one, F.scalar(-1), F.zero)
    # inverted: the representative fixes the involution
    assert wit.coset_rep(wit.element) == wit.element


def test_psl2_witness_q4_char2():
    G = build_psl2(4)
    for i in range(2):
        wit = psl2_witness(4, i, "char2", group=G)
        assert wit.verified
        rep = G.reps[wit.element]
        F = field_for(4)
        assert (rep.a, rep.b, rep.c, rep.d) == (F.one, F.one, F.zero, F.one)


def test_psl2_witness_q9_both_indices():
    G = build_psl2(9)
    for i in range(2):
        wit = psl2_witness(9, i, "q1mod4", group=G)
        assert wit.verified
        assert wit.exponent == (4 if i == 0 else 2)


def test_psl2_witness_variant_validation():
    with pytest.raises(ValueError):
        psl2_witness(5, 0, "q3mod4")
    with pytest.raises(ValueError):
        psl2_witness(7, 1, "q3mod4")  # i out of range (f = 1)


def test_inverted_witness_rejects_trivial(a5):
    ident = identity_automorphism(a5)
    w = WreathAut(a5, 2, (ident, ident), (1, 0))
    from autmap.errors import TheoremViolationError

    with pytest.raises(TheoremViolationError):
        InvertedWitness(wreath=w, vector=(0, 0), cycle_used=(0, 1), twisted_coord=None)
