"""Local reduction data for real-multiplication varieties, plus validation.

A variety of dimension g with real multiplication by a totally real field
of degree g is described place by place: the residue size q = p**f and a
reduction class.  The validator enforces every arithmetic constraint that
the real multiplication forces on this data, so the closed-form sign
formulas are only evaluated on configurations that can actually occur:

* the tame inertia order e is prime to p, and phi(e) divides 2g;
* a wild part p**r forces p**(r-1)*(p-1) | 2g, and for odd g also
  p = 3 (mod 4);
* for odd g, e must be s**m, 2*s**m (s a prime = 3 mod 4, s != p) or 4;
* abelian Galois image forces e | q - 1; non-abelian image with abelian
  inertia forces e | q + 1 and an Artin conductor divisible by 2g;
* residue characteristic 2 is out of scope except for good reduction and,
  behind an explicit opt-in, split/non-split multiplicative reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .numutil import euler_phi, factorize
from .residuefield import PrimePower

__all__ = [
    "ToricSubtype",
    "Good",
    "PotentiallyGood",
    "PotentiallyToric",
    "ReductionClass",
    "PlaceData",
    "RmVarietyData",
    "ViolationCode",
    "Violation",
    "ValidationReport",
    "validate_place",
    "validate_variety",
    "euler_phi",
]


class ToricSubtype(str, Enum):
    SPLIT = "split"
    NONSPLIT = "nonsplit"
    ADDITIVE = "additive"


@dataclass(frozen=True)
class Good:
    """Good reduction: the local sign is +1 with no further data."""


@dataclass(frozen=True)
class PotentiallyGood:
    """Bad reduction acquiring good reduction over a finite extension.

    ``e`` is the order of the tame inertia image, ``p**r`` the wild part,
    and ``artin_conductor`` the conductor exponent of the full 2g-dimensional
    Galois representation (only consumed on the non-abelian route).
    """

    e: int
    r: int = 0
    galois_abelian: bool = True
    inertia_abelian: bool = True
    artin_conductor: int = 0

    def __post_init__(self):
        if self.e < 1:
            raise ValueError(f"tame order e must be positive, got {self.e}")
        if self.r < 0:
            raise ValueError(f"wild exponent r must be non-negative, got {self.r}")
        if self.artin_conductor < 0:
            raise ValueError(f"artin_conductor must be non-negative, got {self.artin_conductor}")


@dataclass(frozen=True)
class PotentiallyToric:
    """Bad reduction acquiring toric reduction: split, non-split, or additive."""

    subtype: ToricSubtype


ReductionClass = Good | PotentiallyGood | PotentiallyToric


@dataclass(frozen=True)
class PlaceData:
    """One finite place: a label, the residue size, and the reduction class."""

    label: str
    pp: PrimePower
    reduction: ReductionClass


@dataclass(frozen=True)
class RmVarietyData:
    """A dimension-g variety described by its finite and infinite places."""

    dimension: int
    places: tuple[PlaceData, ...]
    infinite_places: int = 0

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be positive, got {self.dimension}")
        if self.infinite_places < 0:
            raise ValueError("infinite_places must be non-negative")
        object.__setattr__(self, "places", tuple(self.places))


# -- validation --------------------------------------------------------------


class ViolationCode(str, Enum):
    E_DIVISIBLE_BY_P = "e_divisible_by_p"
    TAME_TOTIENT_2G = "tame_totient_2g"
    WILD_TOTIENT_2G = "wild_totient_2g"
    WILD_PRIME_MOD4 = "wild_prime_mod4"
    ODD_DIM_TAME_SHAPE = "odd_dim_tame_shape"
    E_NOT_DIVIDING_Q_MINUS_1 = "e_not_dividing_q_minus_1"
    E_NOT_DIVIDING_Q_PLUS_1 = "e_not_dividing_q_plus_1"
    CONDUCTOR_NOT_2G_MULTIPLE = "conductor_not_2g_multiple"
    NONABELIAN_INERTIA = "nonabelian_inertia_unsupported"
    INCONSISTENT_FLAGS = "inconsistent_abelian_flags"
    RESIDUE_CHAR_2 = "residue_characteristic_2"
    DUPLICATE_LABEL = "duplicate_label"
    # warning-only code
    P2_OUTSIDE_HYPOTHESES = "p2_multiplicative_outside_hypotheses"


@dataclass(frozen=True)
class Violation:
    code: ViolationCode
    place: str | None
    message: str

    def render(self) -> str:
        where = f"[{self.place}] " if self.place else ""
        return f"{where}{self.code.value}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    warnings: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[ViolationCode]:
        return {v.code for v in self.violations}

    def merged_with(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(
            self.violations + other.violations, self.warnings + other.warnings
        )

    def render_lines(self) -> list[str]:
        lines = [v.render() for v in self.violations]
        lines += [f"(warning) {w.render()}" for w in self.warnings]
        return lines


def _odd_dim_tame_shape_ok(e: int, p: int) -> bool:
    """For odd g, e must be s**m or 2*s**m (prime s = 3 mod 4, s != p) or 4."""
    if e in (1, 2, 4):
        return True
    t = e
    if t % 2 == 0:
        t //= 2
    if t % 2 == 0:
        return False
    fac = factorize(t)
    if len(fac) != 1:
        return False
    s = next(iter(fac))
    return s % 4 == 3 and s != p


def validate_place(
    place: PlaceData, g: int, *, allow_p2_multiplicative: bool = False
) -> ValidationReport:
    """Check one place against the dimension-g constraints listed above."""
    if g < 1:
        raise ValueError(f"dimension must be positive, got {g}")
    violations: list[Violation] = []
    warnings: list[Violation] = []

    def flag(code: ViolationCode, message: str):
        violations.append(Violation(code, place.label, message))

    p, q = place.pp.p, place.pp.q
    red = place.reduction

    if p == 2:
        allowed_toric = (
            isinstance(red, PotentiallyToric)
            and red.subtype in (ToricSubtype.SPLIT, ToricSubtype.NONSPLIT)
            and allow_p2_multiplicative
        )
        if isinstance(red, Good):
            pass
        elif allowed_toric:
            warnings.append(
                Violation(
                    ViolationCode.P2_OUTSIDE_HYPOTHESES,
                    place.label,
                    "p = 2 multiplicative reduction evaluated outside the proved hypotheses",
                )
            )
        else:
            flag(
                ViolationCode.RESIDUE_CHAR_2,
                "residue characteristic 2 is only supported for good reduction "
                "(or split/non-split multiplicative behind the explicit opt-in)",
            )
        return ValidationReport(tuple(violations), tuple(warnings))

    if isinstance(red, PotentiallyGood):
        e, r, a = red.e, red.r, red.artin_conductor
        if e % p == 0:
            flag(ViolationCode.E_DIVISIBLE_BY_P, f"tame order e={e} must be prime to p={p}")
        phi_e = euler_phi(e)
        if (2 * g) % phi_e:
            flag(
                ViolationCode.TAME_TOTIENT_2G,
                f"phi(e)={phi_e} does not divide 2g={2 * g}",
            )
        if r >= 1:
            phi_wild = p ** (r - 1) * (p - 1)
            if (2 * g) % phi_wild:
                flag(
                    ViolationCode.WILD_TOTIENT_2G,
                    f"p^(r-1)*(p-1)={phi_wild} does not divide 2g={2 * g}",
                )
            if g % 2 == 1 and p % 4 != 3:
                flag(
                    ViolationCode.WILD_PRIME_MOD4,
                    f"wild part with odd g={g} requires p = 3 (mod 4), got p={p}",
                )
        if g % 2 == 1 and not _odd_dim_tame_shape_ok(e, p):
            flag(
                ViolationCode.ODD_DIM_TAME_SHAPE,
                f"odd g={g} requires e in {{s^m, 2s^m, 4}} with prime s = 3 (mod 4), "
                f"s != p; got e={e}",
            )
        if red.galois_abelian and not red.inertia_abelian:
            flag(
                ViolationCode.INCONSISTENT_FLAGS,
                "abelian Galois image with non-abelian inertia is inconsistent",
            )
        elif red.galois_abelian:
            if (q - 1) % e:
                flag(
                    ViolationCode.E_NOT_DIVIDING_Q_MINUS_1,
                    f"abelian Galois image requires e={e} to divide q-1={q - 1}",
                )
        elif red.inertia_abelian:
            if (q + 1) % e:
                flag(
                    ViolationCode.E_NOT_DIVIDING_Q_PLUS_1,
                    f"non-abelian image with abelian inertia requires e={e} "
                    f"to divide q+1={q + 1}",
                )
            if a % (2 * g):
                flag(
                    ViolationCode.CONDUCTOR_NOT_2G_MULTIPLE,
                    f"artin_conductor={a} must be a multiple of 2g={2 * g}",
                )
        else:
            flag(
                ViolationCode.NONABELIAN_INERTIA,
                "non-abelian inertia is outside the supported cases",
            )

    return ValidationReport(tuple(violations), tuple(warnings))


def validate_variety(
    data: RmVarietyData, *, allow_p2_multiplicative: bool = False
) -> ValidationReport:
    """Validate every place and the cross-place label uniqueness."""
    report = ValidationReport()
    seen: set[str] = set()
    dups: list[Violation] = []
    for place in data.places:
        if place.label in seen:
            dups.append(
                Violation(
                    ViolationCode.DUPLICATE_LABEL,
                    place.label,
                    f"place label {place.label!r} occurs more than once",
                )
            )
        seen.add(place.label)
        report = report.merged_with(
            validate_place(place, data.dimension, allow_p2_multiplicative=allow_p2_multiplicative)
        )
    return report.merged_with(ValidationReport(tuple(dups)))
