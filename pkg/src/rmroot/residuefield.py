"""Explicit residue fields F_q, their characters, and Gauss sums.

Field construction is deterministic so that every worked value in the test
suite is reproducible:

* the modulus is the first monic irreducible polynomial of degree ``f``
  over F_p, enumerating the non-leading coefficient vectors
  ``(c_0, ..., c_{f-1})`` in base-p counter order (value ``sum c_i p^i``);
* the distinguished generator of F_q^x is the first field element, in the
  same coefficient enumeration, whose multiplicative order is q - 1.

Discrete logarithms come from a precomputed table, so construction is
capped at q <= 10**6.  Characters are indexed against the distinguished
generator: the character of index k maps ``g^j`` to ``zeta_{q-1}^(k*j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, lcm

from .cyclotomic import CyclotomicValue
from .errors import DeskScaleExceeded, EvenCharacteristic, ZeroArgument
from .numutil import factorize, is_prime

MAX_FIELD_ORDER = 10**6


@dataclass(frozen=True)
class PrimePower:
    """A prime power q = p**f identifying a residue field size."""

    p: int
    f: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.f < 1:
            raise ValueError(f"f must be positive, got {self.f}")

    @cached_property
    def q(self) -> int:
        return self.p**self.f


# -- polynomial arithmetic over F_p (little-endian coefficient tuples) ----


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_divmod(prod, mod, p)


def _poly_divmod(a: list[int], mod: list[int], p: int) -> list[int]:
    a = list(a)
    d = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j, mj in enumerate(mod):
                a[i - d + j] = (a[i - d + j] - c * mj) % p
    del a[d:]
    return _poly_trim(a)


def _poly_powmod(base: list[int], exp: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_divmod(base, mod, p)
    while exp:
        if exp & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        exp >>= 1
    return result


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    """Irreducibility over F_p via x^(p^f) = x and gcd checks at maximal subfields."""
    f = len(coeffs) - 1
    x = [0, 1]
    frob = _poly_powmod(x, p**f, coeffs, p)
    if _poly_trim([(u - v) % p for u, v in _pad(frob, x)]):
        return False
    for ell in factorize(f):
        frob = _poly_powmod(x, p ** (f // ell), coeffs, p)
        diff = _poly_trim([(u - v) % p for u, v in _pad(frob, x)])
        if not diff:
            return False
        if len(_poly_gcd(diff, coeffs, p)) > 1:
            return False
    return True


def _pad(a: list[int], b: list[int]) -> list[tuple[int, int]]:
    n = max(len(a), len(b))
    return list(zip(a + [0] * (n - len(a)), b + [0] * (n - len(b))))


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a = _poly_mod(a, b, p)
        a, b = b, a
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        if c:
            for j in range(len(b)):
                a[len(a) - len(b) + j] = (a[len(a) - len(b) + j] - c * b[j]) % p
        a.pop()
        _poly_trim(a)
        if not a:
            break
    return a


# -- the field itself ------------------------------------------------------


class FieldElement:
    """An element of a :class:`ResidueField`, as a coefficient tuple."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "ResidueField", coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field._add(self.coeffs, other.coeffs))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field._sub(self.coeffs, other.coeffs))

    def __neg__(self) -> "FieldElement":
        p = self.field.p
        return FieldElement(self.field, tuple((-c) % p for c in self.coeffs))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, self.field._mul(self.coeffs, other.coeffs))

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(self.field, self.field._pow(self.coeffs, exponent))

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.field.q - 2)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.pp, self.coeffs))

    def __repr__(self) -> str:
        return f"FieldElement({self.coeffs} in GF({self.field.q}))"


class ResidueField:
    """F_q with the deterministic modulus and generator described above."""

    def __init__(self, pp: PrimePower):
        if pp.q > MAX_FIELD_ORDER:
            raise DeskScaleExceeded(f"q = {pp.q} exceeds the table bound {MAX_FIELD_ORDER}")
        self.pp = pp
        self.p = pp.p
        self.f = pp.f
        self.q = pp.q
        self.modulus = self._find_modulus()
        # rows[i] = coefficients of x^(f+i) reduced mod the modulus
        self._reduction_rows = self._build_reduction_rows()
        self.generator = self._find_generator()

    # -- deterministic construction ------------------------------------

    def _find_modulus(self) -> tuple[int, ...]:
        p, f = self.p, self.f
        if f == 1:
            return (0, 1)
        for value in range(self.q):
            coeffs = self._digits(value) + [1]
            if _is_irreducible(coeffs, p):
                return tuple(coeffs)
        raise RuntimeError("no irreducible polynomial found")  # unreachable

    def _digits(self, value: int) -> list[int]:
        out = []
        for _ in range(self.f):
            out.append(value % self.p)
            value //= self.p
        return out

    def _build_reduction_rows(self) -> list[tuple[int, ...]]:
        p, f = self.p, self.f
        rows: list[tuple[int, ...]] = []
        # x^f = -(m_0 + m_1 x + ... + m_{f-1} x^{f-1})
        current = [(-c) % p for c in self.modulus[:f]]
        rows.append(tuple(current))
        for _ in range(f - 2):
            shifted = [0] + current[:-1]
            top = current[-1]
            if top:
                shifted = [(s + top * r) % p for s, r in zip(shifted, rows[0])]
            current = shifted
            rows.append(tuple(current))
        return rows

    def _find_generator(self) -> FieldElement:
        n = self.q - 1
        prime_divs = list(factorize(n)) if n > 1 else []
        for value in range(1, self.q):
            coeffs = tuple(self._digits(value))
            if all(self._pow(coeffs, n // ell) != self._one for ell in prime_divs):
                return FieldElement(self, coeffs)
        raise RuntimeError("no generator found")  # unreachable

    # -- raw coefficient arithmetic --------------------------------------

    @property
    def _one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.f - 1)

    def _add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, f = self.p, self.f
        if f == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:f]]
        for i, row in enumerate(self._reduction_rows):
            top = prod[f + i] % p
            if top:
                for j, rj in enumerate(row):
                    out[j] = (out[j] + top * rj) % p
        return tuple(out)

    def _pow(self, a: tuple[int, ...], exponent: int) -> tuple[int, ...]:
        result = self._one
        base = a
        while exponent:
            if exponent & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            exponent >>= 1
        return result

    # -- public element API ------------------------------------------------

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.f)

    def one(self) -> FieldElement:
        return FieldElement(self, self._one)

    def element(self, coeffs) -> FieldElement:
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) != self.f:
            raise ValueError(f"need {self.f} coefficients, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    def from_index(self, value: int) -> FieldElement:
        """The element whose coefficient vector is ``value`` in base p."""
        if not 0 <= value < self.q:
            raise ValueError(f"index {value} out of range for q={self.q}")
        return FieldElement(self, tuple(self._digits(value)))

    def elements(self):
        for value in range(self.q):
            yield self.from_index(value)

    def minus_one(self) -> FieldElement:
        return -self.one()

    # -- tables ---------------------------------------------------------

    @cached_property
    def _generator_powers(self) -> list[tuple[int, ...]]:
        powers = [self._one]
        g = self.generator.coeffs
        for _ in range(self.q - 2):
            powers.append(self._mul(powers[-1], g))
        return powers

    @cached_property
    def _dlog_table(self) -> dict[tuple[int, ...], int]:
        return {coeffs: j for j, coeffs in enumerate(self._generator_powers)}

    def dlog(self, x: FieldElement) -> int:
        """Discrete log base the distinguished generator; 0 is rejected."""
        if x.is_zero():
            raise ZeroArgument("discrete log of zero")
        return self._dlog_table[x.coeffs]

    @cached_property
    def _trace_basis(self) -> tuple[int, ...]:
        """Absolute traces of the power basis 1, x, ..., x^(f-1)."""
        out = []
        for i in range(self.f):
            b = self._pow((0, 1) + (0,) * (self.f - 2), i) if self.f > 1 else (1,)
            acc = b
            frob = b
            for _ in range(self.f - 1):
                frob = self._pow(frob, self.p)
                acc = self._add(acc, frob)
            if any(acc[1:]):
                raise RuntimeError("trace landed outside the prime field")  # unreachable
            out.append(acc[0])
        return tuple(out)

    @cached_property
    def _power_traces(self) -> list[int]:
        """Traces of g^j for j = 0 .. q-2, aligned with the dlog table."""
        basis = self._trace_basis
        p = self.p
        return [sum(c * t for c, t in zip(coeffs, basis)) % p for coeffs in self._generator_powers]

    # -- identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ResidueField) and self.pp == other.pp

    def __hash__(self) -> int:
        return hash(self.pp)

    def __repr__(self) -> str:
        return f"ResidueField(GF({self.q}), modulus={self.modulus}, generator={self.generator.coeffs})"


@lru_cache(maxsize=None)
def residue_field_new(pp: PrimePower) -> ResidueField:
    """Construct (and cache) the deterministic residue field for ``pp``."""
    return ResidueField(pp)


def trace_to_prime_field(x: FieldElement) -> int:
    """Absolute trace F_q -> F_p, as an integer in [0, p)."""
    field = x.field
    return sum(c * t for c, t in zip(x.coeffs, field._trace_basis)) % field.p


# -- multiplicative characters ---------------------------------------------


@dataclass(frozen=True)
class MultiplicativeCharacter:
    """The character of F_q^x sending the distinguished generator to zeta_{q-1}^index."""

    field: ResidueField
    index: int

    def __post_init__(self):
        n = self.field.q - 1
        object.__setattr__(self, "index", self.index % n if n else 0)

    @property
    def order(self) -> int:
        n = self.field.q - 1
        if n == 0 or self.index == 0:
            return 1
        return n // gcd(self.index, n)

    @property
    def is_trivial(self) -> bool:
        return self.index == 0

    def inverse(self) -> "MultiplicativeCharacter":
        return MultiplicativeCharacter(self.field, -self.index)

    def __call__(self, x: FieldElement) -> CyclotomicValue:
        return char_eval(self, x)


def char_eval(chi: MultiplicativeCharacter, x: FieldElement) -> CyclotomicValue:
    """chi(x) as an exact root of unity; evaluation at zero is an error."""
    if x.is_zero():
        raise ZeroArgument("character evaluated at zero")
    n = chi.field.q - 1
    return CyclotomicValue.root_of_unity(n, chi.index * chi.field.dlog(x))


def char_at_minus_one(chi: MultiplicativeCharacter) -> int:
    """chi(-1) in {+1, -1}; only defined away from characteristic 2.

    For a character of exact order e this equals (-1)^((q-1)/e).
    """
    if chi.field.p == 2:
        raise EvenCharacteristic("chi(-1) is a sign only for odd q")
    n = chi.field.q - 1
    return -1 if (chi.index * (n // 2)) % n else 1


def gauss_sum(chi: MultiplicativeCharacter) -> CyclotomicValue:
    """The Gauss sum sum_{x in F_q^x} chi(x) zeta_p^Tr(x), exactly.

    The result has order lcm(p, q-1); the trivial character gives -1.
    """
    field = chi.field
    p, n = field.p, field.q - 1
    m = lcm(p, n)
    zn = m // n  # zeta_{q-1} = zeta_m^zn
    zp = m // p  # zeta_p = zeta_m^zp
    acc: dict[int, int] = {}
    k = chi.index
    for j, tr in enumerate(field._power_traces):
        e = (zn * ((k * j) % n) + zp * tr) % m
        acc[e] = acc.get(e, 0) + 1
    return CyclotomicValue(m, acc)
