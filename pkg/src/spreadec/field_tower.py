"""Exact arithmetic in the tower F_p < F_q < F_{q^k} < F_{q^n}.

Every field encodes its elements as integers ``0 .. order-1``.  For an
extension field the integer is read in base ``|base field|``: digit ``i`` is
the (encoded) coefficient of ``x^i`` in the polynomial basis, constant term
least significant.  A prime field uses plain residues.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from sympy import factorint

__all__ = [
    "Field",
    "FieldElement",
    "FieldError",
    "FieldTower",
    "TowerSpec",
    "add",
    "build_tower",
    "element_order",
    "find_primitive_poly",
    "inv",
    "is_irreducible",
    "is_primitive",
    "mul",
    "power",
    "prime_power",
]

# Fields at or below this size get full add/mul tables unless told otherwise.
_TABLE_LIMIT = 64


class FieldError(ValueError):
    """Invalid field construction or arithmetic (zero inversion, level mismatch)."""


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q == p**m``; raise if not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        raise FieldError(f"{q} is not a prime power")
    ((p, m),) = factors.items()
    return int(p), int(m)


class Field:
    """A finite field, either prime (``base is None``) or a simple extension.

    ``modulus`` is the monic defining polynomial over ``base`` given as encoded
    base-field coefficients, constant term first.
    """

    def __init__(
        self,
        base: Field | int,
        modulus: Sequence[int] | None = None,
        name: str = "",
        tables: bool | None = None,
    ):
        if isinstance(base, int):
            p = base
            if p < 2 or len(factorint(p)) != 1 or factorint(p).get(p) != 1:
                raise FieldError(f"characteristic {p} is not prime")
            self.base: Field | None = None
            self.modulus: tuple[int, ...] | None = None
            self.degree = 1
            self.characteristic = p
            self.order = p
            self.name = name or f"F{p}"
        else:
            if modulus is None:
                raise FieldError("extension field needs a modulus")
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) < 2 or modulus[-1] != base.one:
                raise FieldError("modulus must be monic of degree >= 1")
            if any(not 0 <= c < base.order for c in modulus):
                raise FieldError("modulus coefficient outside the base field")
            self.base = base
            self.modulus = modulus
            self.degree = len(modulus) - 1
            self.characteristic = base.characteristic
            self.order = base.order**self.degree
            self.name = name or f"F{self.order}"
        self._add_tab: list[list[int]] | None = None
        self._mul_tab: list[list[int]] | None = None
        self._inv_tab: list[int] | None = None
        self._mul_cached = functools.lru_cache(maxsize=1 << 16)(self._mul_poly)
        self._tables = self.order <= _TABLE_LIMIT if tables is None else tables
        if self._tables:
            self._build_tables()

    # pickling drops the caches and rebuilds them
    def __reduce__(self):
        if self.base is None:
            return (Field, (self.characteristic, None, self.name, self._tables))
        return (Field, (self.base, self.modulus, self.name, self._tables))

    def __repr__(self) -> str:
        if self.base is None:
            return f"Field({self.name})"
        return f"Field({self.name} = {self.base.name}[x]/{self.modulus})"

    zero = 0
    one = 1

    @property
    def is_prime(self) -> bool:
        return self.base is None

    def prime_field_degree(self) -> int:
        """Degree over the prime subfield."""
        return 1 if self.base is None else self.degree * self.base.prime_field_degree()

    # -- encoding -----------------------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        """Coefficients of ``a`` over the base field, constant term first."""
        if self.base is None:
            return (a,)
        b = self.base.order
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, b)
            out.append(r)
        return tuple(out)

    def from_digits(self, coeffs: Sequence[int]) -> int:
        if self.base is None:
            (c,) = coeffs
            return c % self.order
        if len(coeffs) != self.degree:
            raise FieldError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        b = self.base.order
        value = 0
        for c in reversed(coeffs):
            if not 0 <= c < b:
                raise FieldError(f"coefficient {c} outside {self.base.name}")
            value = value * b + c
        return value

    def prime_digits(self, a: int) -> tuple[int, ...]:
        """Coefficients of ``a`` all the way down to residues mod p."""
        if self.base is None:
            return (a,)
        return tuple(itertools.chain.from_iterable(self.base.prime_digits(c) for c in self.digits(a)))

    def element(self, value: int | Sequence[int]) -> FieldElement:
        if not isinstance(value, int):
            value = self.from_digits(value)
        if not 0 <= value < self.order:
            raise FieldError(f"{value} is not an element of {self.name}")
        return FieldElement(self, value)

    def elements(self) -> Iterator[FieldElement]:
        return (FieldElement(self, a) for a in range(self.order))

    def generator(self) -> int:
        """The class of ``x`` modulo the defining polynomial (the root it adjoins)."""
        if self.base is None:
            raise FieldError("a prime field adjoins no root")
        if self.degree == 1:
            return self.base.neg(self.modulus[0])
        return self.base.order

    # -- arithmetic on encoded ints ------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_tab is not None:
            return self._add_tab[a][b]
        if self.base is None:
            return (a + b) % self.order
        return self.from_digits([self.base.add(x, y) for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.base is None:
            return -a % self.order
        return self.from_digits([self.base.neg(x) for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_tab is not None:
            return self._mul_tab[a][b]
        if self.base is None:
            return a * b % self.order
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        return self._mul_cached(a, b) if a <= b else self._mul_cached(b, a)

    def scale(self, c: int, a: int) -> int:
        """Multiply ``a`` by the base-field scalar ``c``."""
        if self.base is None:
            return self.mul(c, a)
        return self.from_digits([self.base.mul(c, x) for x in self.digits(a)])

    def _mul_poly(self, a: int, b: int) -> int:
        F = self.base
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = F.add(prod[i + j], F.mul(x, y))
        return self.from_digits(_reduce(F, prod, self.modulus))

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError(f"inversion of zero in {self.name}")
        if self._inv_tab is not None:
            return self._inv_tab[a]
        if self.base is None:
            return pow(a, -1, self.order)
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.base is None:
            return pow(a, e, self.order)
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.order - 1
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def order_of(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.order - 1
        e = n
        for r in _prime_factors(n):
            while e % r == 0 and self.pow(a, e // r) == 1:
                e //= r
        return e

    def _build_tables(self) -> None:
        q = self.order
        add_tab = [[0] * q for _ in range(q)]
        mul_tab = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(q):
                add_tab[a][b] = self.add(a, b)
                mul_tab[a][b] = self.mul(a, b)
        inv_tab = [0] * q
        for a in range(1, q):
            inv_tab[a] = next((b for b in range(1, q) if mul_tab[a][b] == 1), 0)
        self._add_tab, self._mul_tab, self._inv_tab = add_tab, mul_tab, inv_tab


@functools.lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    return tuple(sorted(int(r) for r in factorint(n)))


def _reduce(F: Field, prod: list[int], modulus: Sequence[int]) -> list[int]:
    """Remainder of ``prod`` modulo a monic polynomial over ``F`` (all constant-first)."""
    d = len(modulus) - 1
    prod = list(prod) + [0] * max(0, d - len(prod))
    for i in range(len(prod) - 1, d - 1, -1):
        c = prod[i]
        if c == 0:
            continue
        prod[i] = 0
        for j in range(d):
            if modulus[j]:
                prod[i - d + j] = F.sub(prod[i - d + j], F.mul(c, modulus[j]))
    return prod[:d]


@dataclass(frozen=True)
class FieldElement:
    """An element of one tower level; immutable."""

    field: Field
    value: int

    @property
    def level(self) -> str:
        return self.field.name

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        """Coefficients over the next lower tower level."""
        F = self.field
        if F.base is None:
            return (self,)
        return tuple(FieldElement(F.base, c) for c in F.digits(self.value))

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field is not self.field:
            raise FieldError(f"level mismatch: {self.level} vs {other.level}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __repr__(self) -> str:
        return f"{self.field.name}({self.value})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    return a**e


def element_order(a: FieldElement) -> int:
    """Smallest ``e >= 1`` with ``a**e == 1``."""
    return a.field.order_of(a.value)


# -- polynomials over a field ----------------------------------------------


def _poly_eval(F: Field, poly: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _poly_rem(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Remainder of ``a`` by the monic ``b``."""
    if len(a) < len(b):
        return list(a)
    return _reduce(F, list(a), b)


def _monic_polys(F: Field, degree: int) -> Iterator[tuple[int, ...]]:
    """Monic polynomials of a degree in ascending integer order of their lower coefficients."""
    B = F.order
    for value in range(B**degree):
        coeffs = []
        for _ in range(degree):
            value, r = divmod(value, B)
            coeffs.append(r)
        yield tuple(coeffs) + (1,)


@functools.lru_cache(maxsize=None)
def _irreducibles(F: Field, degree: int) -> tuple[tuple[int, ...], ...]:
    return tuple(f for f in _monic_polys(F, degree) if is_irreducible(F, f))


def is_irreducible(F: Field, poly: Sequence[int]) -> bool:
    """Irreducibility of a monic polynomial over ``F``.

    Degree <= 3: no roots.  Otherwise trial division by every monic irreducible
    of degree up to half.
    """
    d = len(poly) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if d <= 3:
        return all(_poly_eval(F, poly, x) != 0 for x in range(F.order))
    for e in range(1, d // 2 + 1):
        for g in _irreducibles(F, e):
            if not any(_poly_rem(F, poly, g)):
                return False
    return True


def is_primitive(F: Field, poly: Sequence[int]) -> bool:
    """Whether the root of the monic ``poly`` generates the multiplicative group of F[x]/(poly)."""
    if not is_irreducible(F, poly):
        return False
    ext = Field(F, poly, tables=False)
    root = ext.generator()
    if root == 0:
        return False
    return ext.order_of(root) == ext.order - 1


def find_primitive_poly(base: Field, degree: int) -> tuple[int, ...]:
    """Smallest primitive monic polynomial of ``degree`` over ``base``.

    Candidates are ordered by the integer ``c_0 + c_1 B + ... + c_{d-1} B^{d-1}``
    with ``B = |base|``; the coefficients returned are constant-term first.
    """
    if degree < 1:
        raise FieldError("degree must be >= 1")
    for f in _monic_polys(base, degree):
        if is_primitive(base, f):
            return f
    raise AssertionError("no primitive polynomial found")  # pragma: no cover


# -- the tower ---------------------------------------------------------------


@dataclass(frozen=True)
class TowerSpec:
    """Parameters and moduli of F_p < F_q < F_{q^k} < F_{q^n}.

    ``q_modulus`` is ``None`` when ``base_degree == 1``.  ``alpha_modulus`` is
    over F_q and ``beta_modulus`` over F_{q^k}, both constant term first.
    """

    p: int
    base_degree: int
    k: int
    l: int
    q_modulus: tuple[int, ...] | None
    alpha_modulus: tuple[int, ...]
    beta_modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.base_degree

    @property
    def n(self) -> int:
        """Dimension of F_{q^n} over F_q."""
        return self.k * self.l

    @property
    def prime_degree(self) -> int:
        """Degree of F_{q^n} over F_p."""
        return self.base_degree * self.k * self.l


class FieldTower:
    """Constructed fields of a :class:`TowerSpec` plus the primitive roots alpha, beta."""

    def __init__(self, spec: TowerSpec):
        self.spec = spec
        self.fp = Field(spec.p, name=f"F{spec.p}")
        if spec.base_degree == 1:
            if spec.q_modulus is not None:
                raise FieldError("q_modulus given for a prime base field")
            self.fq = self.fp
        else:
            _require_primitive(self.fp, spec.q_modulus, spec.base_degree, "q")
            self.fq = Field(self.fp, spec.q_modulus, name=f"F{spec.q}", tables=True)
        _require_primitive(self.fq, spec.alpha_modulus, spec.k, "alpha")
        self.fqk = Field(self.fq, spec.alpha_modulus, name=f"F{spec.q}^{spec.k}")
        _require_primitive(self.fqk, spec.beta_modulus, spec.l, "beta")
        self.fqn = Field(self.fqk, spec.beta_modulus, name=f"F{spec.q}^{spec.n}")

    def __reduce__(self):
        return (FieldTower, (self.spec,))

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def l(self) -> int:
        return self.spec.l

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def alpha(self) -> FieldElement:
        return FieldElement(self.fqk, self.fqk.generator())

    @property
    def beta(self) -> FieldElement:
        return FieldElement(self.fqn, self.fqn.generator())

    def levels(self) -> tuple[Field, ...]:
        fields = [self.fp] if self.fq is self.fp else [self.fp, self.fq]
        return tuple(fields + [self.fqk, self.fqn])


def _require_primitive(F: Field, poly: Sequence[int] | None, degree: int, label: str) -> None:
    if poly is None or len(poly) != degree + 1:
        raise FieldError(f"{label} modulus must have degree {degree}")
    if poly[-1] != 1:
        raise FieldError(f"{label} modulus must be monic")
    if not is_irreducible(F, poly):
        raise FieldError(f"{label} modulus {tuple(poly)} is reducible over {F.name}")
    if not is_primitive(F, poly):
        raise FieldError(f"{label} modulus {tuple(poly)} is not primitive over {F.name}")


def build_tower(
    q: int,
    k: int,
    l: int,
    alpha_poly: Sequence[int] | None = None,
    beta_poly: Sequence[int] | None = None,
) -> FieldTower:
    """Build the tower for ``q`` (a prime power), searching for any modulus not given."""
    if k < 1 or l < 1:
        raise FieldError("k and l must be positive")
    p, m = prime_power(q)
    fp = Field(p)
    q_mod = None
    fq = fp
    if m > 1:
        q_mod = find_primitive_poly(fp, m)
        fq = Field(fp, q_mod)
    if alpha_poly is None:
        alpha_poly = find_primitive_poly(fq, k)
    else:
        _require_primitive(fq, alpha_poly, k, "alpha")
    fqk = Field(fq, alpha_poly, tables=False)
    if beta_poly is None:
        beta_poly = find_primitive_poly(fqk, l)
    return FieldTower(TowerSpec(p, m, k, l, q_mod, tuple(alpha_poly), tuple(beta_poly)))
