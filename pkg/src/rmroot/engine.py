"""Closed-form local and global root numbers.

Per finite place the sign is computed one real-multiplication embedding at
a time (``w_iota``), and the full 2g-dimensional sign is ``w = w_iota**g``
because all g embeddings contribute the same sign:

* potentially good, abelian Galois image, e | q-1:
      w_iota = (-1)^((q-1)/e)
* potentially good, non-abelian image, abelian inertia, e | q+1, with a
  per-embedding conductor exponent a_iota (even, >= 2):
      w_iota = (-1)^(a_iota/2 + (q+1)/e)
* potentially toric: split -1, non-split +1, additive (-1)^((q-1)/2).

Each infinite place contributes (-1)^g (that is, -1 per embedding).  For
even g every local sign collapses to +1; the dispatcher still evaluates
the closed form and asserts the collapse rather than assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    DivisibilityViolation,
    EvenCharacteristic,
    OddConductor,
    UnsupportedCase,
    ValidationFailed,
)
from .places import (
    Good,
    PlaceData,
    PotentiallyGood,
    PotentiallyToric,
    RmVarietyData,
    ToricSubtype,
    ValidationReport,
    validate_place,
    validate_variety,
)

__all__ = [
    "CaseTag",
    "PlaceSign",
    "RootNumberReport",
    "sign_pot_good_abelian",
    "sign_pot_good_induced",
    "sign_toric",
    "sign_place",
    "sign_global",
]


class CaseTag(str, Enum):
    GOOD = "good"
    POT_GOOD_ABELIAN = "pot_good_abelian"
    POT_GOOD_INDUCED = "pot_good_induced"
    SPLIT_MULT = "split_mult"
    NONSPLIT_MULT = "nonsplit_mult"
    ADDITIVE_MULT = "additive_mult"
    EVEN_DIM_SHORTCUT = "even_dim_shortcut"


@dataclass(frozen=True)
class PlaceSign:
    """Local outcome: the full sign w and the per-embedding sign w_iota."""

    label: str
    w: int
    w_iota: int
    case_tag: CaseTag


@dataclass(frozen=True)
class RootNumberReport:
    """Global outcome with per-place breakdown and the validation evidence."""

    per_place: tuple[PlaceSign, ...]
    global_w: int
    global_w_iota: int
    validation: ValidationReport


def _parity_sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def sign_pot_good_abelian(q: int, e: int) -> int:
    """(-1)^((q-1)/e) for abelian Galois image with tame order e | q-1."""
    if q % 2 == 0:
        raise EvenCharacteristic(f"q={q} must be odd")
    if e < 1 or (q - 1) % e:
        raise DivisibilityViolation(f"e={e} must divide q-1={q - 1}")
    return _parity_sign((q - 1) // e)


def sign_pot_good_induced(q: int, e: int, a_iota: int) -> int:
    """(-1)^(a_iota/2 + (q+1)/e) for non-abelian image with abelian inertia.

    ``a_iota`` is the per-embedding conductor exponent: even and >= 2,
    since the two-dimensional induced piece is ramified.
    """
    if q % 2 == 0:
        raise EvenCharacteristic(f"q={q} must be odd")
    if e < 1 or (q + 1) % e:
        raise DivisibilityViolation(f"e={e} must divide q+1={q + 1}")
    if a_iota < 2 or a_iota % 2:
        raise OddConductor(f"a_iota={a_iota} must be a positive even integer")
    return _parity_sign(a_iota // 2 + (q + 1) // e)


def sign_toric(subtype: ToricSubtype, q: int, g: int) -> tuple[int, int]:
    """(w, w_iota) for potentially toric reduction.

    Split is -1 per embedding, non-split +1, and additive-becoming-toric
    (-1)^((q-1)/2) per embedding (odd q only).
    """
    if g < 1:
        raise ValueError(f"dimension must be positive, got {g}")
    if subtype == ToricSubtype.SPLIT:
        return _parity_sign(g), -1
    if subtype == ToricSubtype.NONSPLIT:
        return 1, 1
    if subtype == ToricSubtype.ADDITIVE:
        if q % 2 == 0:
            raise UnsupportedCase("additive toric reduction needs odd residue characteristic")
        w_iota = _parity_sign((q - 1) // 2)
        return w_iota**g, w_iota
    raise UnsupportedCase(f"unknown toric subtype {subtype!r}")


def sign_place(
    place: PlaceData, g: int, *, allow_p2_multiplicative: bool = False
) -> PlaceSign:
    """Local sign of one validated place; validation failure raises."""
    report = validate_place(place, g, allow_p2_multiplicative=allow_p2_multiplicative)
    if not report.ok:
        raise ValidationFailed(report, f"place {place.label!r} failed validation")

    red = place.reduction
    q = place.pp.q
    if isinstance(red, Good):
        w, w_iota, tag = 1, 1, CaseTag.GOOD
    elif isinstance(red, PotentiallyGood):
        if red.galois_abelian:
            w_iota = sign_pot_good_abelian(q, red.e)
            tag = CaseTag.POT_GOOD_ABELIAN
        else:
            a = red.artin_conductor
            if a % g:
                raise DivisibilityViolation(
                    f"artin_conductor={a} is not divisible by the dimension g={g}"
                )
            w_iota = sign_pot_good_induced(q, red.e, a // g)
            tag = CaseTag.POT_GOOD_INDUCED
            # Direct evaluation of the full 2g-dimensional exponent must
            # agree with the per-embedding power.
            assert _parity_sign(a // 2 + g * ((q + 1) // red.e)) == w_iota**g
        w = w_iota**g
    else:
        tag = {
            ToricSubtype.SPLIT: CaseTag.SPLIT_MULT,
            ToricSubtype.NONSPLIT: CaseTag.NONSPLIT_MULT,
            ToricSubtype.ADDITIVE: CaseTag.ADDITIVE_MULT,
        }[red.subtype]
        w, w_iota = sign_toric(red.subtype, q, g)

    if g % 2 == 0:
        if w != 1:
            raise RuntimeError(
                f"internal error: even dimension g={g} must force w=+1, got {w}"
            )
        if tag != CaseTag.GOOD:
            tag = CaseTag.EVEN_DIM_SHORTCUT
    return PlaceSign(place.label, w, w_iota, tag)


def sign_global(
    data: RmVarietyData, *, allow_p2_multiplicative: bool = False
) -> RootNumberReport:
    """Global root number: product of local signs times (-1)^g per infinite place."""
    report = validate_variety(data, allow_p2_multiplicative=allow_p2_multiplicative)
    if not report.ok:
        raise ValidationFailed(report, "variety data failed validation")
    g = data.dimension
    per_place = tuple(
        sign_place(place, g, allow_p2_multiplicative=allow_p2_multiplicative)
        for place in data.places
    )
    global_w = _parity_sign(g * data.infinite_places)
    global_w_iota = _parity_sign(data.infinite_places)
    for ps in per_place:
        global_w *= ps.w
        global_w_iota *= ps.w_iota
    if global_w != global_w_iota**g:
        raise RuntimeError("internal error: global sign is not the g-th power of w_iota")
    return RootNumberReport(per_place, global_w, global_w_iota, report)
