"""Operator channel: erasures, errors meeting the codeword trivially, uniform GL mixing."""

from __future__ import annotations

from dataclasses import dataclass

from spreadec.matspace import (
    Matrix,
    Rng,
    Subspace,
    matmul,
    random_full_rank,
    random_gl,
    random_matrix,
    rank,
)
from spreadec.spread_code import Codeword, SpreadParams

__all__ = [
    "ChannelConfig",
    "ChannelError",
    "Transmission",
    "dim_stats",
    "error_free_rows",
    "parse_truth_log_line",
    "transmit",
    "truth_log_line",
]


class ChannelError(ValueError):
    """Impossible channel configuration."""


@dataclass(frozen=True)
class ChannelConfig:
    erasures: int = 0
    errors: int = 0

    def check(self, params: SpreadParams) -> None:
        k, n = params.k, params.n
        if self.erasures < 0 or self.errors < 0:
            raise ChannelError("erasures and errors must be non-negative")
        if self.erasures > k:
            raise ChannelError(f"{self.erasures} erasures exceed k={k}")
        if k - self.erasures + self.errors < 1:
            raise ChannelError("received space would be zero")
        if self.errors > n - k:
            raise ChannelError(f"{self.errors} errors cannot meet a {k}-dim codeword trivially in F_q^{n}")


@dataclass(frozen=True)
class Transmission:
    """Truth record: kept codeword part, error basis, transfer matrix, raw received rows."""

    k: int
    kept: Matrix
    error: Matrix
    transfer: Matrix
    received_rows: Matrix

    @property
    def kprime(self) -> int:
        return self.transfer.nrows


def transmit(params: SpreadParams, w: Codeword, cfg: ChannelConfig, rng: Rng) -> tuple[Subspace, Transmission]:
    """Send ``w`` through the channel; returns ``rs(A [U_bar; E])`` and the truth record."""
    cfg.check(params)
    F, k, n = params.field, params.k, params.n
    wmat = w.space.matrix
    kept_dim = k - cfg.erasures
    # uniform subspace of W: random full-rank combination of its basis
    kept = matmul(random_full_rank(F, kept_dim, k, rng), wmat) if kept_dim else Matrix(F, (), n)
    while True:
        err = random_matrix(F, cfg.errors, n, rng)
        if rank(wmat.vstack(err)) == k + cfg.errors:
            break
    stacked = kept.vstack(err)
    kprime = stacked.nrows
    A = random_gl(F, kprime, rng)
    raw = matmul(A, stacked)
    received = Subspace.row_space(raw)
    return received, Transmission(k, kept, err, A, raw)


def dim_stats(truth: Transmission, received: Subspace | None = None) -> tuple[int, int, int]:
    """``(k', f, erasures)`` with ``f = dim E``, ``erasures = k - dim U_bar``, ``k' = f + k - erasures``."""
    f = truth.error.nrows
    erasures = truth.k - truth.kept.nrows
    kprime = received.dim if received is not None else truth.kprime
    return kprime, f, erasures


def error_free_rows(truth: Transmission) -> int:
    """Number of raw received rows with no error component (zero error columns of A)."""
    start = truth.kept.nrows
    return sum(1 for row in truth.transfer.rows if not any(row[start:]))


def truth_log_line(seed: int, cfg: ChannelConfig, received: Subspace, truth: Transmission) -> str:
    """``seed;erasures;errors;k;received;kept;error;transfer``, matrix rows joined by ``/``."""
    from spreadec.textio import format_matrix

    def flat(m: Matrix) -> str:
        return format_matrix(m).replace("\n", "/") if m.nrows else ""

    mats = (received.matrix, truth.kept, truth.error, truth.transfer)
    return ";".join([str(seed), str(cfg.erasures), str(cfg.errors), str(truth.k)] + [flat(m) for m in mats])


def parse_truth_log_line(line: str, params: SpreadParams) -> tuple[int, ChannelConfig, Subspace, Transmission]:
    from spreadec.textio import parse_matrix

    seed, rho, e, k, *mats = line.strip().split(";")
    F, n = params.field, params.n

    def read(text: str, ncols: int) -> Matrix:
        return parse_matrix(text.replace("/", "\n"), F, ncols) if text else Matrix(F, (), ncols)

    received = Subspace.row_space(read(mats[0], n))
    kept, err, A = read(mats[1], n), read(mats[2], n), read(mats[3], received.dim)
    truth = Transmission(int(k), kept, err, A, matmul(A, kept.vstack(err)))
    return int(seed), ChannelConfig(int(rho), int(e)), received, truth
