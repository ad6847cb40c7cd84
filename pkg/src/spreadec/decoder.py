"""Minimum-distance decoding of spread codes by identifier voting.

``decode_basic`` votes with every nonzero vector of the received space.
``decode_improved`` votes with normalized combinations of at most ``f_max + 1``
RREF basis vectors, after discarding basis vectors whose leading block rules
them out.  ``oracle_decode`` is the exhaustive nearest-codeword reference.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from spreadec.field_tower import Field
from spreadec.matspace import RowReducer, Subspace, enumerate_vectors, subspace_distance
from spreadec.spread_code import (
    Codeword,
    Gamma,
    OpCounter,
    SpreadParams,
    encode,
    enumerate_codewords,
    gamma_of_vector,
)

__all__ = [
    "DecodeReport",
    "DecoderConsistencyError",
    "cancellation_combine",
    "combination_bound",
    "decode_basic",
    "decode_improved",
    "default_f_max",
    "oracle_decode",
    "partition_by_leading_block",
    "threshold",
]


class DecoderConsistencyError(RuntimeError):
    """Two codewords within the correction radius: the code is not a spread."""


def threshold(kprime: int) -> int:
    """``ceil((k'+1)/2)`` independent voters needed to decode."""
    return kprime // 2 + 1


def default_f_max(kprime: int) -> int:
    return (kprime - 1) // 2


def combination_bound(q: int, kprime: int, f_max: int) -> int:
    """Number of normalized combinations of at most ``f_max + 1`` of ``k'`` vectors."""
    return sum(comb(kprime, z) * (q - 1) ** (z - 1) for z in range(1, f_max + 2))


@dataclass
class DecodeReport:
    codeword: Codeword | None
    rounds_used: int
    combinations_tested: int
    gamma_votes: dict[Gamma, int] = field(default_factory=dict)
    f_max: int | None = None
    f_max_exceeds_guarantee: bool = False
    discarded: tuple[tuple[int, ...], ...] = ()
    ops: OpCounter = field(default_factory=OpCounter)

    @property
    def decoded(self) -> bool:
        return self.codeword is not None

    @property
    def gamma(self) -> Gamma | None:
        return None if self.codeword is None else self.codeword.gamma

    def to_text(self, params: SpreadParams | None = None) -> str:
        from spreadec import textio

        lines = [f"outcome={'decoded' if self.decoded else 'not_decodable'}"]
        if self.codeword is not None and params is not None:
            lines.append(f"gamma={textio.format_gamma(params, self.codeword.gamma)}")
        elif self.codeword is not None:
            lines.append(f"gamma={','.join(map(str, self.codeword.gamma.coords))}")
        else:
            lines.append("gamma=")
        lines.append(f"rounds_used={self.rounds_used}")
        lines.append(f"combinations_tested={self.combinations_tested}")
        return "\n".join(lines)


class _Votes:
    """Per-identifier RREF accumulators; stops when one reaches the threshold."""

    def __init__(self, params: SpreadParams, need: int):
        self.params = params
        self.need = need
        self.acc: dict[Gamma, RowReducer] = {}
        self.ops = OpCounter()
        self.tested = 0
        self.winner: Gamma | None = None

    def vote(self, v: Sequence[int]) -> Gamma:
        g = gamma_of_vector(self.params, v, self.ops)
        self.tested += 1
        acc = self.acc.get(g)
        if acc is None:
            acc = self.acc[g] = RowReducer(self.params.field, self.params.n)
        if acc.add(v) and len(acc) >= self.need and self.winner is None:
            self.winner = g
        return g

    def counts(self) -> dict[Gamma, int]:
        return {g: len(a) for g, a in self.acc.items()}


def _check_received(params: SpreadParams, r: Subspace) -> None:
    if r.ambient_dim != params.n or r.field is not params.field:
        raise ValueError("received space does not live in the code's ambient space")
    if r.dim == 0:
        raise ValueError("cannot decode the zero space")


def decode_basic(params: SpreadParams, r: Subspace, cap: int | None = None) -> DecodeReport:
    """Vote with every nonzero vector of ``r``; decode if the top identifier has enough support."""
    _check_received(params, r)
    votes = _Votes(params, threshold(r.dim))
    for v in enumerate_vectors(r, cap):
        votes.vote(v)
    counts = votes.counts()
    # at most one identifier can reach the threshold, so ties below it fail
    best = max(counts, key=counts.__getitem__)
    cw = encode(params, best) if counts[best] >= votes.need else None
    return DecodeReport(cw, r.dim, votes.tested, counts, ops=votes.ops)


def partition_by_leading_block(params: SpreadParams, rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row indices grouped by the index of their first nonzero length-k block."""
    k = params.k
    parts: list[list[int]] = [[] for _ in range(params.l)]
    for i, row in enumerate(rows):
        j = next(j for j in range(params.l) if any(row[j * k : (j + 1) * k]))
        parts[j].append(i)
    return parts


def _combine(F: Field, coeffs: Sequence[int], vecs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    out = list(vecs[0]) if coeffs[0] == 1 else [F.mul(coeffs[0], x) for x in vecs[0]]
    for c, v in zip(coeffs[1:], vecs[1:]):
        out = [F.add(a, F.mul(c, b)) if b else a for a, b in zip(out, v)]
    return tuple(out)


def decode_improved(
    params: SpreadParams,
    r: Subspace,
    f_max: int | None = None,
    received_rows: Sequence[Sequence[int]] | None = None,
) -> DecodeReport:
    """Decode from normalized combinations of few RREF basis vectors.

    Round 1 scores every kept basis vector.  Round ``z`` then scores the
    combinations of ``z`` kept vectors with first coefficient 1 and the rest
    nonzero, skipping supports whose vectors all voted for one identifier, and
    stops at the first identifier with ``ceil((k'+1)/2)`` independent voters.

    ``received_rows`` substitutes the basis exactly as delivered (``A [U_bar; E]``)
    for the RREF basis; the leading-block filter needs RREF and is then skipped.
    """
    _check_received(params, r)
    F = params.field
    kprime = r.dim
    guaranteed = default_f_max(kprime)
    f_max = guaranteed if f_max is None else f_max
    if f_max < 0:
        raise ValueError("f_max must be >= 0")
    report = DecodeReport(None, 0, 0, f_max=f_max, f_max_exceeds_guarantee=f_max > guaranteed)

    if received_rows is not None:
        kept = [tuple(v) for v in received_rows]
        if len(kept) != kprime or Subspace.span(F, params.n, kept) != r:
            raise ValueError("received_rows must be a basis of the received space")
    else:
        basis = r.basis
        parts = partition_by_leading_block(params, basis)
        need_part = kprime // 2  # ceil((k'-1)/2)
        start = next((j for j, p in enumerate(parts) if len(p) >= need_part), None)
        if start is None:
            return report
        report.discarded = tuple(basis[i] for p in parts[:start] for i in p)
        kept = [basis[i] for p in parts[start:] for i in p]

    votes = _Votes(params, threshold(kprime))
    own = [votes.vote(v) for v in kept]
    report.rounds_used = 1
    nonzero = range(1, F.order)
    for z in range(2, min(f_max + 1, len(kept)) + 1):
        if votes.winner is not None:
            break
        report.rounds_used = z
        for support in itertools.combinations(range(len(kept)), z):
            if len({own[i] for i in support}) == 1:
                continue
            vecs = [kept[i] for i in support]
            for tail in itertools.product(nonzero, repeat=z - 1):
                votes.vote(_combine(F, (1,) + tail, vecs))
                if votes.winner is not None:
                    break
            if votes.winner is not None:
                break

    report.combinations_tested = votes.tested
    report.gamma_votes = votes.counts()
    report.ops = votes.ops
    if votes.winner is not None:
        report.codeword = encode(params, votes.winner)
    return report


def oracle_decode(params: SpreadParams, r: Subspace) -> tuple[Codeword, int] | None:
    """Nearest codeword by exhaustive search, or ``None`` beyond radius ``k-1``."""
    if r.ambient_dim != params.n:
        raise ValueError("received space does not live in the code's ambient space")
    t = params.t
    best: list[tuple[Codeword, int]] = []
    for cw in enumerate_codewords(params):
        d = subspace_distance(r, cw.space)
        if d <= t:
            best.append((cw, d))
    if len(best) > 1:
        raise DecoderConsistencyError(f"{len(best)} codewords within distance {t}")
    return best[0] if best else None


def cancellation_combine(
    field: Field, r_i: Sequence[int], r_h: Sequence[int], mu_i: int, mu_h: int
) -> tuple[int, ...]:
    """``r_i - mu_i mu_h^-1 r_h``: cancels an error carried with coefficients mu_i, mu_h."""
    if mu_h == 0:
        raise ValueError("mu_h must be nonzero")
    c = field.mul(mu_i, field.inv(mu_h))
    return tuple(field.sub(a, field.mul(c, b)) for a, b in zip(r_i, r_h))
