"""Closed forms and Monte Carlo checks for first-round termination under one error.

Model: one erasure and one error, so ``k' = k`` and the received rows are
``A [U_bar; e]`` with ``A`` uniform in GL_{k'}.  A received row is error-free
exactly when its entry in the last column of ``A`` is zero.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

from spreadec.channel import ChannelConfig, error_free_rows, transmit
from spreadec.decoder import decode_improved, threshold
from spreadec.field_tower import Field, prime_power, find_primitive_poly
from spreadec.matspace import make_rng
from spreadec.spread_code import SpreadParams, encode, all_gammas

__all__ = [
    "CSV_COLUMNS",
    "FirstRoundResult",
    "TableRow",
    "expected_error_free",
    "expected_error_free_by_sum",
    "field_tables",
    "gl_order",
    "gl_zero_column_count",
    "gl_zero_column_enumeration",
    "monte_carlo_first_round",
    "prob_enough_error_free",
    "prob_first_round",
    "prob_z_error_free",
    "sample_gl_batch",
    "simulate_error_free_counts",
    "table_rows",
    "threshold_claim_check",
    "write_csv",
]

CSV_COLUMNS = (
    "table",
    "q",
    "kprime",
    "closed_form_num",
    "closed_form_den",
    "closed_form_float",
    "mc_freq",
    "trials",
    "sigma",
    "pass",
)

# trials per independently seeded shard; fixed so results do not depend on --jobs
SHARD_TRIALS = 25_000


def gl_order(q: int, k: int) -> int:
    return math.prod(q**k - q**i for i in range(k))


def gl_zero_column_count(q: int, k: int, z: int) -> int:
    """Elements of GL_k(F_q) whose last column has exactly ``z`` zero entries."""
    if z == k:
        raise ValueError("an invertible matrix has no zero column")
    if not 0 <= z < k:
        raise ValueError(f"z must lie in 0..{k - 1}")
    return (q - 1) ** (k - z) * comb(k, z) * math.prod(q**k - q**i for i in range(1, k))


def prob_z_error_free(q: int, kprime: int, z: int) -> Fraction:
    """Probability that exactly ``z`` of the ``k'`` received rows avoid the single error."""
    if z == kprime:
        raise ValueError("at least one received row carries the error")
    if not 0 <= z < kprime:
        raise ValueError(f"z must lie in 0..{kprime - 1}")
    return Fraction((q - 1) ** (kprime - z) * comb(kprime, z), q**kprime - 1)


def expected_error_free(q: int, kprime: int) -> Fraction:
    """``k'(q^(k'-1) - 1) / (q^k' - 1)``."""
    if kprime < 1:
        raise ValueError("k' must be >= 1")
    return Fraction(kprime * (q ** (kprime - 1) - 1), q**kprime - 1)


def expected_error_free_by_sum(q: int, kprime: int) -> Fraction:
    return sum((z * prob_z_error_free(q, kprime, z) for z in range(kprime)), Fraction(0))


def prob_first_round(q: int, kprime: int) -> Fraction:
    """Closed form ``1 - (q-1)^k' (q^l - 1) / ((q-1)^l (q^k' - 1))``, ``l = ceil((k'+1)/2)``.

    Not equal to :func:`prob_enough_error_free` once ``k' >= 3``.
    """
    if kprime < 2:
        raise ValueError("k' must be >= 2")
    l = threshold(kprime)
    return 1 - Fraction((q - 1) ** kprime * (q**l - 1), (q - 1) ** l * (q**kprime - 1))


def prob_enough_error_free(q: int, kprime: int) -> Fraction:
    """Probability that at least ``ceil((k'+1)/2)`` received rows are error-free."""
    if kprime < 2:
        raise ValueError("k' must be >= 2")
    return sum((prob_z_error_free(q, kprime, z) for z in range(threshold(kprime), kprime)), Fraction(0))


def threshold_claim_check(q: int, max_kprime: int = 40) -> int:
    """Smallest ``k'`` in ``2..max_kprime`` with ``prob_first_round > 1/2``.

    Also asserts that ``k' = 2q - 1`` already exceeds one half.
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    assert prob_first_round(q, 2 * q - 1) > Fraction(1, 2), f"claim fails at q={q}"
    for kprime in range(2, max_kprime + 1):
        if prob_first_round(q, kprime) > Fraction(1, 2):
            return kprime
    raise AssertionError(f"no k' <= {max_kprime} exceeds one half for q={q}")


def gl_zero_column_enumeration(q: int, k: int) -> dict[int, int]:
    """Exhaustive count of GL_k(F_q) by zeros in the last column (oracle)."""
    F = _field_for(q)
    counts = {z: 0 for z in range(k + 1)}
    for entries in itertools.product(range(q), repeat=k * k):
        rows = [list(entries[i * k : (i + 1) * k]) for i in range(k)]
        if _is_invertible(F, rows):
            counts[sum(1 for r in rows if r[-1] == 0)] += 1
    return counts


def _is_invertible(F: Field, rows: list[list[int]]) -> bool:
    k = len(rows)
    work = [r[:] for r in rows]
    for col in range(k):
        piv = next((i for i in range(col, k) if work[i][col]), None)
        if piv is None:
            return False
        work[col], work[piv] = work[piv], work[col]
        inv = F.inv(work[col][col])
        for i in range(col + 1, k):
            c = F.mul(work[i][col], inv)
            if c:
                work[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(work[i], work[col])]
    return True


def _field_for(q: int) -> Field:
    p, m = prime_power(q)
    fp = Field(p)
    return fp if m == 1 else Field(fp, find_primitive_poly(fp, m))


# -- vectorized transfer-matrix sampling ---------------------------------------


@dataclass(frozen=True)
class _Tables:
    q: int
    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    inv: np.ndarray


def field_tables(q: int) -> _Tables:
    F = _field_for(q)
    r = range(q)
    add = np.array([[F.add(a, b) for b in r] for a in r], dtype=np.int64)
    sub = np.array([[F.sub(a, b) for b in r] for a in r], dtype=np.int64)
    mul = np.array([[F.mul(a, b) for b in r] for a in r], dtype=np.int64)
    inv = np.array([0] + [F.inv(a) for a in range(1, q)], dtype=np.int64)
    return _Tables(q, add, sub, mul, inv)


def _invertible_mask(m: np.ndarray, t: _Tables) -> np.ndarray:
    """Batched forward elimination; True where the matrix is invertible."""
    work = m.copy()
    count, k, _ = work.shape
    alive = np.ones(count, dtype=bool)
    idx = np.arange(count)
    for col in range(k):
        nz = work[:, col:, col] != 0
        has = nz.any(axis=1)
        alive &= has
        piv = col + np.argmax(nz, axis=1)
        top = work[idx, col].copy()
        work[idx, col] = work[idx, piv]
        work[idx, piv] = top
        lead_inv = t.inv[work[:, col, col]]
        for i in range(col + 1, k):
            factor = t.mul[work[:, i, col], lead_inv]
            work[:, i] = t.sub[work[:, i], t.mul[factor[:, None], work[:, col]]]
    return alive


def sample_gl_batch(t: _Tables, k: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` uniform elements of GL_k(F_q), by rejection, shape ``(count, k, k)``."""
    out = []
    have = 0
    while have < count:
        draw = rng.integers(0, t.q, size=(max(1024, 2 * (count - have)), k, k))
        ok = draw[_invertible_mask(draw, t)]
        out.append(ok)
        have += len(ok)
    return np.concatenate(out)[:count]


def _shard_counts(args: tuple[int, int, int, np.random.SeedSequence]) -> np.ndarray:
    q, kprime, trials, seed = args
    A = sample_gl_batch(field_tables(q), kprime, trials, np.random.default_rng(seed))
    # error sits in the last row of [U_bar; e], so row i is clean iff A[i, -1] == 0
    return (A[:, :, -1] == 0).sum(axis=1)


def _shards(trials: int, seed: int) -> list[tuple[int, np.random.SeedSequence]]:
    n = max(1, -(-trials // SHARD_TRIALS))
    seeds = np.random.SeedSequence(seed).spawn(n)
    sizes = [SHARD_TRIALS] * (n - 1) + [trials - SHARD_TRIALS * (n - 1)]
    return list(zip(sizes, seeds))


def simulate_error_free_counts(q: int, kprime: int, trials: int, seed: int, jobs: int = 1) -> np.ndarray:
    """Error-free received-row counts for ``trials`` uniform transfer matrices."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    work = [(q, kprime, size, s) for size, s in _shards(trials, seed)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_shard_counts, work))
    else:
        parts = [_shard_counts(w) for w in work]
    return np.concatenate(parts)


# -- full pipeline ---------------------------------------------------------------


@dataclass(frozen=True)
class FirstRoundResult:
    """Counts from the one-erasure, one-error pipeline.

    ``decoder_round1`` decodes from the rows as delivered; ``decoder_round1_rref``
    from the RREF basis with the leading-block filter.
    """

    trials: int
    decoder_round1: int
    decoder_round1_rref: int
    truth_enough_clean: int
    decoded_correctly: int
    implication_violations: int

    @property
    def decoder_freq(self) -> float:
        return self.decoder_round1 / self.trials

    @property
    def decoder_rref_freq(self) -> float:
        return self.decoder_round1_rref / self.trials

    @property
    def truth_freq(self) -> float:
        return self.truth_enough_clean / self.trials


def _first_round_shard(args: tuple[SpreadParams, int, np.random.SeedSequence]) -> tuple[int, ...]:
    params, trials, seed = args
    rng = make_rng(seed)
    gammas = list(all_gammas(params))
    cfg = ChannelConfig(erasures=1, errors=1)
    need = threshold(params.k)
    round1 = round1_rref = clean = correct = violations = 0
    for _ in range(trials):
        w = encode(params, gammas[int(rng.integers(len(gammas)))])
        received, truth = transmit(params, w, cfg, rng)
        raw = decode_improved(params, received, received_rows=truth.received_rows.rows)
        rref = decode_improved(params, received)
        enough = error_free_rows(truth) >= need
        first = raw.rounds_used == 1 and raw.decoded
        round1 += first
        round1_rref += rref.rounds_used == 1 and rref.decoded
        clean += enough
        correct += raw.codeword == w and rref.codeword == w
        violations += enough and not first
    return round1, round1_rref, clean, correct, violations


def monte_carlo_first_round(params: SpreadParams, trials: int, seed: int, jobs: int = 1) -> FirstRoundResult:
    """Transmit random codewords with one erasure and one error, then decode.

    Counts decoder first-round terminations and, separately, trials whose truth
    record has at least ``ceil((k'+1)/2)`` error-free received rows.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ChannelConfig(1, 1).check(params)
    work = [(params, size, s) for size, s in _shards(trials, seed)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_first_round_shard, work))
    else:
        parts = [_first_round_shard(w) for w in work]
    return FirstRoundResult(trials, *(sum(x) for x in zip(*parts)))


# -- tables --------------------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    table: str
    q: int
    kprime: int
    value: Fraction
    mc_freq: float | None = None
    trials: int | None = None
    sigma: float | None = None

    @property
    def passed(self) -> bool | None:
        if self.mc_freq is None:
            return None
        return abs(self.mc_freq - float(self.value)) <= 3 * self.sigma

    def as_dict(self) -> dict[str, object]:
        mc = self.mc_freq is not None
        return {
            "table": self.table,
            "q": self.q,
            "kprime": self.kprime,
            "closed_form_num": self.value.numerator,
            "closed_form_den": self.value.denominator,
            "closed_form_float": f"{float(self.value):.10f}",
            "mc_freq": f"{self.mc_freq:.10f}" if mc else "",
            "trials": self.trials if mc else "",
            "sigma": f"{self.sigma:.10f}" if mc else "",
            "pass": ("true" if self.passed else "false") if mc else "",
        }


def _thm10_row(q: int, kprime: int, trials: int | None, seed: int, jobs: int) -> TableRow:
    value = expected_error_free(q, kprime)
    if not trials:
        return TableRow("thm10", q, kprime, value)
    counts = simulate_error_free_counts(q, kprime, trials, seed, jobs)
    second = sum((z * z * prob_z_error_free(q, kprime, z) for z in range(kprime)), Fraction(0))
    sigma = math.sqrt(float(second - value**2) / trials)
    return TableRow("thm10", q, kprime, value, float(counts.mean()), trials, sigma)


def _cor12_row(q: int, kprime: int, trials: int | None, seed: int, jobs: int) -> TableRow:
    value = prob_first_round(q, kprime)
    if not trials:
        return TableRow("cor12", q, kprime, value)
    counts = simulate_error_free_counts(q, kprime, trials, seed, jobs)
    p = float(value)
    sigma = math.sqrt(p * (1 - p) / trials)
    return TableRow("cor12", q, kprime, value, float((counts >= threshold(kprime)).mean()), trials, sigma)


def table_rows(
    tables: Sequence[str] = ("thm10", "cor12"),
    qs: Iterable[int] = (2, 3, 4, 5),
    kprimes: Iterable[int] = range(2, 8),
    trials: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> list[TableRow]:
    """One row per (table, q, k'); Monte Carlo columns when ``trials`` is given.

    Each cell gets its own seed derived from ``seed``, q and k'.
    """
    makers = {"thm10": _thm10_row, "cor12": _cor12_row}
    rows = []
    qs, kprimes = list(qs), list(kprimes)
    for ti, name in enumerate(tables):
        for q in qs:
            for kp in kprimes:
                cell_seed = int(np.random.SeedSequence([seed, ti, q, kp]).generate_state(1)[0])
                rows.append(makers[name](q, kp, trials, cell_seed, jobs))
    return rows


def write_csv(rows: Sequence[TableRow], out: io.TextIOBase | None = None) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.as_dict())
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
