import pytest

from spreadec.channel import (
    ChannelConfig,
    ChannelError,
    dim_stats,
    error_free_rows,
    parse_truth_log_line,
    transmit,
    truth_log_line,
)
from spreadec.matspace import Subspace, intersection_dim, make_rng, matmul, rank, subspace_distance
from spreadec.spread_code import Gamma, encode, make_params


@pytest.mark.parametrize("cfg", [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (3, 3)])
def test_dimensions_and_distance(code232, cfg):
    w = encode(code232, Gamma((1, 0)))
    rng = make_rng(7)
    rho, e = cfg
    for _ in range(30):
        r, truth = transmit(code232, w, ChannelConfig(rho, e), rng)
        assert r.dim == 3 - rho + e == truth.kprime
        assert intersection_dim(r, w.space) == 3 - rho
        assert subspace_distance(r, w.space) == rho + e
        assert dim_stats(truth, r) == (r.dim, e, rho)
        assert rank(truth.transfer) == truth.kprime
        assert truth.received_rows == matmul(truth.transfer, truth.kept.vstack(truth.error))
        assert Subspace.row_space(truth.received_rows) == r
        for row in truth.kept.rows:
            assert row in w.space


def test_error_free_rows_counts_zero_error_columns(code232):
    w = encode(code232, Gamma((0, 1)))
    rng = make_rng(3)
    for _ in range(50):
        r, truth = transmit(code232, w, ChannelConfig(1, 1), rng)
        clean = error_free_rows(truth)
        in_w = sum(1 for row in truth.received_rows.rows if row in w.space)
        # a row can be clean by accident only if its error part cancels, impossible since [W;E] has full rank
        assert clean == in_w


def test_invalid_configs(code232):
    w = encode(code232, Gamma((1, 0)))
    rng = make_rng(0)
    for cfg in [(-1, 0), (0, -1), (4, 0), (3, 0), (0, 4)]:
        with pytest.raises(ChannelError):
            transmit(code232, w, ChannelConfig(*cfg), rng)
    ChannelConfig(3, 1).check(code232)


def test_seeded_reproducibility(code322):
    w = encode(code322, Gamma((1, 2)))
    a = transmit(code322, w, ChannelConfig(1, 1), make_rng(42))
    b = transmit(code322, w, ChannelConfig(1, 1), make_rng(42))
    assert a == b


@pytest.mark.parametrize("qkl", [(2, 3, 2), (3, 2, 2), (4, 2, 2)])
def test_truth_log_round_trip(qkl):
    p = make_params(*qkl)
    w = encode(p, Gamma((1,) + (0,) * (p.l - 1)))
    rng = make_rng(9)
    for cfg in [ChannelConfig(0, 0), ChannelConfig(1, 1), ChannelConfig(p.k, 1)]:
        r, truth = transmit(p, w, cfg, rng)
        line = truth_log_line(17, cfg, r, truth)
        assert "\n" not in line
        seed, cfg2, r2, truth2 = parse_truth_log_line(line, p)
        assert (seed, cfg2, r2) == (17, cfg, r)
        assert truth2 == truth
