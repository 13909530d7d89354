"""Exact arithmetic with integer combinations of roots of unity.

A :class:`CyclotomicValue` stores ``sum_e c_e * zeta_m^e`` as a sparse
``exponent -> integer coefficient`` map.  Addition, multiplication and
conjugation are exact.  Deciding whether a value is zero, an integer, or a
sign reduces the value to the canonical power basis of ``Z[zeta_m]``:
write ``m = prod_i P_i`` with ``P_i`` prime powers, spread coefficients on
the product grid ``prod_i Z/P_i``, and eliminate the redundant top block of
each prime-power axis through the relation

    zeta_{s^a}^{(s-1)*s^(a-1) + u}  =  - sum_{k < s-1} zeta_{s^a}^{k*s^(a-1) + u}.

The reduced grid coordinates form a Z-basis, so the outcome is exact.  Only
when the order exceeds the dense-reduction budget does the code fall back
to complex floating point, and then every accept/reject decision uses the
pinned tolerance ``SIGN_TOL = 1e-9``.
"""

from __future__ import annotations

from math import gcd, lcm
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import DeskScaleExceeded, NonSignValue
from .numutil import factorize

# Largest order for which the dense canonical reduction is attempted.
CANONICAL_ORDER_LIMIT = 1 << 20
# Largest sparse-support product for which exact multiplication is attempted.
EXACT_MUL_OPS_LIMIT = 8_000_000
# Pinned tolerance for floating-point sign/zero decisions.
SIGN_TOL = 1e-9

_CoeffsLike = Union[Mapping[int, int], Iterable[tuple[int, int]], None]


def _grid_layout(order: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Prime-power axis sizes of Z/order and the per-axis CRT multipliers.

    An exponent e maps to axis coordinates ``(e * inv_i) % P_i`` where
    ``inv_i = (order/P_i)^(-1) mod P_i``; then ``zeta_order^e`` is the
    product over axes of ``zeta_{P_i}^{coord_i}``.
    """
    fac = factorize(order)
    shape = tuple(p**a for p, a in sorted(fac.items()))
    invs = tuple(pow(order // P, -1, P) for P in shape)
    return shape, invs


_GRID_CACHE: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}


class CyclotomicValue:
    """An exact integer combination of ``order``-th roots of unity."""

    __slots__ = ("order", "coeffs", "_canonical")

    def __init__(self, order: int, coeffs: _CoeffsLike = None):
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        self.order = int(order)
        acc: dict[int, int] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
            for e, c in items:
                c = int(c)
                if c == 0:
                    continue
                e = int(e) % self.order
                acc[e] = acc.get(e, 0) + c
        self.coeffs = {e: c for e, c in acc.items() if c != 0}
        self._canonical = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int = 1) -> "CyclotomicValue":
        return cls(order)

    @classmethod
    def integer(cls, c: int, order: int = 1) -> "CyclotomicValue":
        return cls(order, {0: c})

    @classmethod
    def root_of_unity(cls, order: int, exponent: int, coeff: int = 1) -> "CyclotomicValue":
        return cls(order, {exponent: coeff})

    # -- basic structure ----------------------------------------------

    @property
    def support(self) -> int:
        return len(self.coeffs)

    def _aligned(self, other: "CyclotomicValue") -> tuple[int, dict[int, int], dict[int, int]]:
        m = lcm(self.order, other.order)
        s1, s2 = m // self.order, m // other.order
        d1 = self.coeffs if s1 == 1 else {e * s1: c for e, c in self.coeffs.items()}
        d2 = other.coeffs if s2 == 1 else {e * s2: c for e, c in other.coeffs.items()}
        return m, d1, d2

    @staticmethod
    def _coerce(value: "CyclotomicValue | int") -> "CyclotomicValue":
        if isinstance(value, CyclotomicValue):
            return value
        return CyclotomicValue.integer(int(value))

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "CyclotomicValue | int") -> "CyclotomicValue":
        other = self._coerce(other)
        m, d1, d2 = self._aligned(other)
        out = dict(d1)
        for e, c in d2.items():
            out[e] = out.get(e, 0) + c
        return CyclotomicValue(m, out)

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicValue":
        return CyclotomicValue(self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "CyclotomicValue | int") -> "CyclotomicValue":
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> "CyclotomicValue":
        return self._coerce(other) - self

    def __mul__(self, other: "CyclotomicValue | int") -> "CyclotomicValue":
        if isinstance(other, int):
            return CyclotomicValue(self.order, {e: c * other for e, c in self.coeffs.items()})
        m, d1, d2 = self._aligned(other)
        if not d1 or not d2:
            return CyclotomicValue(m, {})
        ops = len(d1) * len(d2)
        if ops > EXACT_MUL_OPS_LIMIT:
            raise DeskScaleExceeded(
                f"exact product with {ops} coefficient pairs exceeds the "
                f"limit {EXACT_MUL_OPS_LIMIT}; evaluate numerically instead"
            )
        # Any output coefficient is a sum of at most min(|d1|, |d2|)
        # products, so this bounds the float64 accumulator error-free.
        peak = min(len(d1), len(d2))
        peak *= max(abs(c) for c in d1.values()) * max(abs(c) for c in d2.values())
        if ops <= 4096 or peak >= (1 << 52):
            out: dict[int, int] = {}
            for e1, c1 in d1.items():
                for e2, c2 in d2.items():
                    e = e1 + e2
                    if e >= m:
                        e -= m
                    out[e] = out.get(e, 0) + c1 * c2
            return CyclotomicValue(m, out)
        return self._mul_dense(m, d1, d2)

    __rmul__ = __mul__

    @staticmethod
    def _mul_dense(m: int, d1: dict[int, int], d2: dict[int, int]) -> "CyclotomicValue":
        """Exact sparse product accumulated on a dense length-m buffer.

        Coefficient products here stay far below 2**53, so float64
        accumulation via bincount is exact; the result is re-cast to int64.
        """
        if len(d1) > len(d2):
            d1, d2 = d2, d1
        e2 = np.fromiter(d2.keys(), np.int64, len(d2))
        c2 = np.fromiter(d2.values(), np.float64, len(d2))
        total = np.zeros(m, dtype=np.float64)
        block = max(1, (1 << 21) // max(len(d2), 1))
        items = list(d1.items())
        for start in range(0, len(items), block):
            chunk = items[start : start + block]
            e1 = np.array([e for e, _ in chunk], dtype=np.int64)
            c1 = np.array([c for _, c in chunk], dtype=np.float64)
            idx = (e1[:, None] + e2[None, :]) % m
            total += np.bincount(idx.ravel(), weights=(c1[:, None] * c2[None, :]).ravel(), minlength=m)
        coeffs = np.rint(total).astype(np.int64)
        nz = np.nonzero(coeffs)[0]
        return CyclotomicValue(m, {int(e): int(coeffs[e]) for e in nz})

    def conjugate(self) -> "CyclotomicValue":
        """Complex conjugate: sends ``zeta^e`` to ``zeta^(-e)``."""
        return CyclotomicValue(self.order, {(-e) % self.order: c for e, c in self.coeffs.items()})

    # -- numeric view ---------------------------------------------------

    def complex_value(self) -> complex:
        """Floating-point evaluation, deterministic for a fixed value."""
        if not self.coeffs:
            return 0j
        exps = np.array(sorted(self.coeffs), dtype=np.float64)
        cs = np.array([self.coeffs[int(e)] for e in exps], dtype=np.float64)
        return complex(np.sum(cs * np.exp(2j * np.pi * exps / self.order)))

    # -- canonical reduction --------------------------------------------

    def canonical_feasible(self) -> bool:
        return self.order <= CANONICAL_ORDER_LIMIT

    def _canonical_array(self) -> np.ndarray:
        """Coefficients on the canonical basis grid (cached)."""
        if self._canonical is not None:
            return self._canonical
        m = self.order
        layout = _GRID_CACHE.get(m)
        if layout is None:
            layout = _grid_layout(m)
            _GRID_CACHE[m] = layout
        shape, invs = layout
        flat = np.zeros(m, dtype=np.int64)
        if self.coeffs:
            exps = np.fromiter(self.coeffs.keys(), np.int64, len(self.coeffs))
            cs = np.fromiter(self.coeffs.values(), np.int64, len(self.coeffs))
            idx = np.zeros(len(exps), dtype=np.int64)
            stride = m
            for P, inv in zip(shape, invs):
                stride //= P
                idx += ((exps % P) * inv % P) * stride
            np.add.at(flat, idx, cs)
        grid = flat.reshape(shape)
        for axis, P in enumerate(shape):
            s = min(factorize(P))
            sub = P // s
            phi = P - sub
            view = np.moveaxis(grid, axis, -1)
            tail = view[..., phi:P]
            if np.any(tail):
                for k in range(s - 1):
                    view[..., k * sub : (k + 1) * sub] -= tail
                view[..., phi:P] = 0
        self._canonical = grid
        return grid

    def is_zero(self) -> bool:
        """Exact when the order permits dense reduction, else |.| < SIGN_TOL."""
        if not self.coeffs:
            return True
        if self.canonical_feasible():
            return not self._canonical_array().any()
        return abs(self.complex_value()) < SIGN_TOL

    def as_integer(self) -> int | None:
        """The exact rational integer this value equals, or None.

        None means "not an integer" when reduction is feasible and
        "undecided" otherwise.
        """
        if not self.coeffs:
            return 0
        if len(self.coeffs) == 1 and 0 in self.coeffs:
            return self.coeffs[0]
        if not self.canonical_feasible():
            return None
        grid = self._canonical_array()
        nz = np.count_nonzero(grid)
        if nz == 0:
            return 0
        head = int(grid.flat[0])
        if nz == 1 and head != 0:
            return head
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.as_integer() == other
        if not isinstance(other, CyclotomicValue):
            return NotImplemented
        m, d1, d2 = self._aligned(other)
        if d1 == d2:
            return True
        return (self - other).is_zero()

    __hash__ = None  # semantic equality with a mutable cache

    # -- sign extraction --------------------------------------------------

    def sign_value(self, tol: float = SIGN_TOL) -> int:
        """Return +1 or -1 if the value is that sign; raise NonSignValue."""
        return self.sign_of_ratio(1, tol=tol)

    def sign_of_ratio(self, divisor: int, tol: float = SIGN_TOL) -> int:
        """Sign s with ``self == s * divisor``, for positive ``divisor``.

        Exact via canonical reduction whenever feasible; otherwise the
        floating-point quotient must land within ``tol`` of +-1.
        """
        if divisor <= 0:
            raise ValueError(f"divisor must be positive, got {divisor}")
        if self.canonical_feasible():
            value = self.as_integer()
            if value == divisor:
                return 1
            if value == -divisor:
                return -1
            raise NonSignValue(f"{self!r} is not +-{divisor}")
        z = self.complex_value() / divisor
        if abs(z - 1) <= tol:
            return 1
        if abs(z + 1) <= tol:
            return -1
        raise NonSignValue(f"numeric value {z} is not within {tol} of +-1")

    # -- display ----------------------------------------------------------

    def __repr__(self) -> str:
        if not self.coeffs:
            return "CyclotomicValue(0)"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                term = f"{c}"
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                sign = "-" if c < 0 else ""
                power = f"zeta{self.order}" if e == 1 else f"zeta{self.order}^{e}"
                term = f"{sign}{mag}{power}"
                if c > 0 and parts:
                    term = f"+{term}"
            parts.append(term)
        body = " ".join(parts) if len(parts) > 1 else parts[0]
        return f"CyclotomicValue({body})"
