import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spreadec.matspace import Matrix, enumerate_vectors, identity, make_rng, matmul, random_matrix, subspace_distance
from spreadec.spread_code import (
    Gamma,
    OpCounter,
    all_gammas,
    code_size,
    encode,
    enumerate_codewords,
    gamma_of_vector,
    make_params,
    phi,
    phi_inv,
    phi_k,
    phi_k_inv,
)

EXAMPLE_ROWS = ((1, 0, 0, 1, 1, 0), (0, 1, 0, 0, 1, 1), (0, 0, 1, 1, 1, 1))


def elem(params, value):
    return params.ext.element(value)


def test_phi_k_examples(code232):
    p = code232
    alpha = p.tower.alpha
    assert phi_k(p, (1, 0, 0)) == elem(p, 1)
    assert phi_k(p, (1, 1, 0)) == elem(p, 1) + alpha
    for i in range(p.k):
        e = tuple(int(j == i) for j in range(p.k))
        assert phi_k(p, e) == alpha**i
        assert phi_k_inv(p, alpha**i) == e


@pytest.mark.parametrize("qkl", [(2, 3, 2), (3, 2, 2), (4, 2, 2), (2, 4, 2), (5, 2, 2)])
def test_row_power_identity_by_matrix_powers(qkl):
    p = make_params(*qkl)
    P, alpha = p.P, p.tower.alpha
    power = identity(p.field, p.k)
    for h in range(p.q**p.k):
        for i in range(1, p.k + 1):
            assert phi_k(p, power.rows[i - 1]) == alpha ** (h + i - 1)
        power = matmul(power, P)


@pytest.mark.parametrize("qkl", [(2, 3, 2), (3, 2, 2), (4, 2, 2), (2, 6, 1), (3, 3, 1), (2, 12, 1)])
def test_multiplication_by_p_is_multiplication_by_alpha(qkl):
    p = make_params(*qkl)
    P, alpha = p.P, p.tower.alpha
    F = p.field
    import itertools

    for u in itertools.product(range(F.order), repeat=p.k):
        uP = matmul(Matrix(F, (u,), p.k), P).rows[0]
        assert phi_k(p, uP) == phi_k(p, u) * alpha


def test_phi_worked_example(code232):
    p = code232
    alpha, beta = p.tower.alpha, p.tower.beta
    big = p.big
    lift = lambda a: big.element([a.value, 0])  # noqa: E731
    one = big.element(1)
    expected = one + lift(alpha) + beta + lift(alpha**2) * beta
    assert phi(p, (1, 1, 0, 1, 0, 1)) == expected
    assert phi(p, (1, 0, 0, 0, 0, 0)) == one


@pytest.mark.parametrize("qkl", [(2, 3, 2), (3, 2, 2), (4, 2, 2), (2, 2, 3)])
def test_phi_basis_images(qkl):
    p = make_params(*qkl)
    alpha, beta, big = p.tower.alpha, p.tower.beta, p.big
    for i in range(p.n):
        e = tuple(int(j == i) for j in range(p.n))
        a_pow = big.element([(alpha ** (i % p.k)).value] + [0] * (p.l - 1))
        assert phi(p, e) == a_pow * beta ** (i // p.k)


def test_phi_round_trip(code322):
    p = code322
    rng = make_rng(4)
    for _ in range(1000):
        v = random_matrix(p.field, 1, p.n, rng).rows[0]
        assert phi_inv(p, phi(p, v)) == v


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(2, 3, 2), (3, 2, 2), (4, 2, 2)]), st.data())
def test_phi_is_linear(qkl, data):
    p = make_params(*qkl)
    F = p.field
    vec = st.lists(st.integers(0, F.order - 1), min_size=p.n, max_size=p.n)
    u, v = data.draw(vec), data.draw(vec)
    c = data.draw(st.integers(0, F.order - 1))
    s = [F.add(a, b) for a, b in zip(u, v)]
    assert phi(p, s) == phi(p, u) + phi(p, v)
    cu = [F.mul(c, a) for a in u]
    c_big = p.big.element([c] + [0] * (p.l - 1)) if p.k == 1 else p.big.element([c, *([0] * (p.l - 1))])
    assert phi(p, cu) == c_big * phi(p, u)


def test_gamma_of_worked_example(code232):
    p = code232
    alpha = p.tower.alpha
    g = gamma_of_vector(p, (1, 1, 0, 1, 0, 1))
    assert g.elements(p) == (elem(p, 1), elem(p, 1) + alpha)
    assert gamma_of_vector(p, (1, 0, 0, 0, 0, 0)) == Gamma((1, 0))
    with pytest.raises(ValueError):
        gamma_of_vector(p, (0,) * 6)


def test_gamma_op_counts():
    p = make_params(2, 2, 4)
    c = OpCounter()
    gamma_of_vector(p, (0, 0, 1, 1, 0, 1, 1, 0), c)
    assert c.inversions == 1 and c.multiplications <= p.l
    c = OpCounter()
    gamma_of_vector(p, (1, 0, 1, 1, 1, 1, 1, 1), c)
    assert c.inversions == 1 and c.multiplications == p.l - 1


def test_encode_worked_example(code232):
    g = Gamma((1, (code232.ext.element(1) + code232.tower.alpha).value))
    cw = encode(code232, g)
    assert cw.space.basis == EXAMPLE_ROWS


@pytest.mark.parametrize("qkl", [(2, 3, 2), (3, 2, 3), (4, 2, 2)])
def test_encode_unit_gammas(qkl):
    p = make_params(*qkl)
    k, l = p.k, p.l
    first = encode(p, Gamma((1,) + (0,) * (l - 1))).space.basis
    last = encode(p, Gamma((0,) * (l - 1) + (1,))).space.basis
    eye = identity(p.field, k).rows
    assert first == tuple(r + (0,) * (k * (l - 1)) for r in eye)
    assert last == tuple((0,) * (k * (l - 1)) + r for r in eye)


def test_encode_rejects_unnormalized(code232):
    with pytest.raises(ValueError):
        Gamma((3, 1))
    with pytest.raises(ValueError):
        Gamma((0, 0))


def test_encode_rows_follow_alpha_powers(code322):
    p = code322
    alpha, big = p.tower.alpha, p.big
    for g in list(all_gammas(p))[:6]:
        line = big.element(g.coords)
        raw = [phi_inv(p, big.element([(alpha**i).value, 0]) * line) for i in range(p.k)]
        cw = encode(p, g)
        assert cw.space.basis == tuple(raw)  # already in RREF


@pytest.mark.parametrize("qkl,size", [((2, 3, 2), 9), ((2, 2, 2), 5), ((3, 2, 1), 1), ((2, 2, 3), 21)])
def test_code_sizes(qkl, size):
    p = make_params(*qkl)
    words = list(enumerate_codewords(p))
    assert len(words) == size == code_size(p)
    gammas = [w.gamma.coords for w in words]
    assert gammas == sorted(gammas) and len(set(gammas)) == size
    if qkl[2] == 1:
        assert words[0].space.basis == identity(p.field, p.k).rows


def test_pairwise_distance_table_222(code222):
    words = list(enumerate_codewords(code222))
    for a in words:
        for b in words:
            assert subspace_distance(a.space, b.space) == (0 if a is b else 4)


@pytest.mark.parametrize("qkl", [(2, 3, 2), (3, 2, 2), (4, 2, 2)])
def test_identifier_soundness_and_round_trip(qkl):
    p = make_params(*qkl)
    for cw in enumerate_codewords(p):
        for v in enumerate_vectors(cw.space):
            assert gamma_of_vector(p, v) == cw.gamma
        for row in cw.space.basis:
            assert encode(p, gamma_of_vector(p, row)) == cw
