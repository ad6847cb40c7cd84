"""Spread codes in the extension-field representation.

A codeword is the F_q-preimage of the F_{q^k}-line ``F_{q^k} * sum_j gamma_j beta^j``
in F_{q^n}; ``gamma`` (normalized, first nonzero coordinate 1) names it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from spreadec.field_tower import FieldElement, FieldTower, build_tower
from spreadec.matspace import EnumerationCapError, Matrix, Subspace, companion_matrix, enum_cap

__all__ = [
    "all_gammas",
    "Codeword",
    "Gamma",
    "OpCounter",
    "SpreadParams",
    "code_size",
    "encode",
    "enumerate_codewords",
    "gamma_of_vector",
    "make_params",
    "phi",
    "phi_inv",
    "phi_k",
    "phi_k_inv",
]


@dataclass(frozen=True)
class SpreadParams:
    tower: FieldTower

    @property
    def field(self):
        """F_q, the field the subspaces live over."""
        return self.tower.fq

    @property
    def ext(self):
        """F_{q^k}, where all decoding arithmetic happens."""
        return self.tower.fqk

    @property
    def big(self):
        return self.tower.fqn

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def k(self) -> int:
        return self.tower.k

    @property
    def l(self) -> int:
        return self.tower.l

    @property
    def n(self) -> int:
        return self.tower.n

    @property
    def t(self) -> int:
        """Error-and-erasure correction capability ``floor((2k-1)/2) = k-1``."""
        return self.k - 1

    @property
    def P(self) -> Matrix:
        return companion_matrix(self.field, self.tower.spec.alpha_modulus)


def make_params(
    q: int,
    k: int,
    l: int,
    alpha_poly: Sequence[int] | None = None,
    beta_poly: Sequence[int] | None = None,
) -> SpreadParams:
    return SpreadParams(build_tower(q, k, l, alpha_poly, beta_poly))


def code_size(params: SpreadParams) -> int:
    return (params.q**params.n - 1) // (params.q**params.k - 1)


@dataclass(frozen=True)
class Gamma:
    """Codeword identifier: ``l`` encoded elements of F_{q^k}, first nonzero equal to 1."""

    coords: tuple[int, ...]

    def __post_init__(self):
        nz = next((c for c in self.coords if c), None)
        if nz is None:
            raise ValueError("gamma must not be all zero")
        if nz != 1:
            raise ValueError("gamma is not normalized (first nonzero coordinate must be 1)")

    def elements(self, params: SpreadParams) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(params.ext, c) for c in self.coords)

    @property
    def leading_block(self) -> int:
        return next(j for j, c in enumerate(self.coords) if c)


@dataclass(frozen=True)
class Codeword:
    gamma: Gamma
    space: Subspace


@dataclass
class OpCounter:
    """Tallies of F_{q^k} operations spent computing identifiers."""

    inversions: int = 0
    multiplications: int = 0


# -- the isomorphisms --------------------------------------------------------
#
# alpha is the class of x in F_q[x]/(p) and beta the class of y in F_{q^k}[y]/(p'),
# so sum u_i alpha^(i-1) is the element with polynomial-basis coordinates u,
# and likewise for beta.  Degree-1 steps use only alpha^0 / beta^0 = 1.


def phi_k(params: SpreadParams, u: Sequence[int]) -> FieldElement:
    """``(u_1..u_k) -> sum u_{i+1} alpha^i`` in F_{q^k}."""
    if len(u) != params.k:
        raise ValueError(f"expected a length-{params.k} vector")
    return FieldElement(params.ext, params.ext.from_digits(u))


def phi_k_inv(params: SpreadParams, a: FieldElement) -> tuple[int, ...]:
    return params.ext.digits(a.value)


def _blocks(params: SpreadParams, v: Sequence[int]) -> list[int]:
    """Encoded F_{q^k} value of each length-k block of ``v``."""
    k, ext = params.k, params.ext
    if len(v) != params.n:
        raise ValueError(f"expected a length-{params.n} vector")
    return [ext.from_digits(v[j * k : (j + 1) * k]) for j in range(params.l)]


def phi(params: SpreadParams, v: Sequence[int]) -> FieldElement:
    """``e_i -> alpha^((i-1) mod k) beta^floor((i-1)/k)``, extended linearly."""
    return FieldElement(params.big, params.big.from_digits(_blocks(params, v)))


def phi_inv(params: SpreadParams, a: FieldElement) -> tuple[int, ...]:
    ext = params.ext
    return tuple(itertools.chain.from_iterable(ext.digits(c) for c in params.big.digits(a.value)))


def gamma_of_vector(params: SpreadParams, v: Sequence[int], counter: OpCounter | None = None) -> Gamma:
    """Identifier of the unique codeword containing the nonzero vector ``v``.

    Divides every block by the first nonzero block: one inversion and at most
    ``l`` multiplications in F_{q^k}, no discrete logarithm.
    """
    ext = params.ext
    blocks = _blocks(params, v)
    s = next((j for j, b in enumerate(blocks) if b), None)
    if s is None:
        raise ValueError("the zero vector has no identifier")
    a = ext.inv(blocks[s])
    coords = [0] * s + [1]
    mults = 0
    for b in blocks[s + 1 :]:
        if b:
            coords.append(ext.mul(b, a))
            mults += 1
        else:
            coords.append(0)
    if counter is not None:
        counter.inversions += 1
        counter.multiplications += mults
    return Gamma(tuple(coords))


def encode(params: SpreadParams, g: Gamma) -> Codeword:
    """Codeword with identifier ``g``; row i is ``phi^-1(alpha^(i-1) sum g_j beta^j)``."""
    if len(g.coords) != params.l:
        raise ValueError(f"gamma must have {params.l} coordinates")
    ext = params.ext
    alpha = params.tower.alpha.value
    big = params.big
    line = big.from_digits(g.coords)
    rows = []
    scalar = 1
    for _ in range(params.k):
        # alpha^(i-1) lies in F_{q^k}, so it scales each beta-coordinate
        elem = big.from_digits([ext.mul(scalar, c) for c in big.digits(line)])
        rows.append(phi_inv(params, FieldElement(big, elem)))
        scalar = ext.mul(scalar, alpha)
    return Codeword(g, Subspace.span(params.field, params.n, rows))


def all_gammas(params: SpreadParams) -> Iterator[Gamma]:
    """Every normalized identifier, in lexicographic order."""
    Q, l = params.ext.order, params.l
    # lexicographic on coordinate tuples: later leading blocks come first
    for s in range(l - 1, -1, -1):
        for tail in itertools.product(range(Q), repeat=l - s - 1):
            yield Gamma((0,) * s + (1,) + tail)


def enumerate_codewords(params: SpreadParams, cap: int | None = None) -> Iterator[Codeword]:
    """All ``(q^n-1)/(q^k-1)`` codewords in lexicographic gamma order."""
    cap = enum_cap() if cap is None else cap
    size = code_size(params)
    if size > cap:
        raise EnumerationCapError(f"code size {size} exceeds enumeration cap {cap}")
    return (encode(params, g) for g in all_gammas(params))

