"""Acceptance gate: exhaustive oracle-vs-formula agreement at fixed scale.

Each test covers one acceptance criterion, asserts any stated time budget,
and prints a single [PASS] line (visible under ``pytest -s``).
"""

from __future__ import annotations

import random
import time

from rmroot.cyclotomic import CyclotomicValue
from rmroot.engine import sign_global, sign_place
from rmroot.jobs import parse_job
from rmroot.numutil import divisors, euler_phi, factorize, prime_powers_upto
from rmroot.oracle import (
    sweep_abelian,
    sweep_fq,
    sweep_gauss,
    sweep_induced,
    sweep_sp2,
)
from rmroot.places import (
    Good,
    PlaceData,
    PotentiallyGood,
    PotentiallyToric,
    RmVarietyData,
    ToricSubtype,
    ViolationCode,
    validate_place,
    validate_variety,
)
from rmroot.residuefield import (
    MultiplicativeCharacter,
    PrimePower,
    gauss_sum,
    residue_field_new,
)


def test_criterion_1_abelian_closed_form_vs_gauss_sums():
    # every nontrivial tame character over F_q, q = p or p^2, odd p <= 47
    start = time.perf_counter()
    result = sweep_abelian(pmax=47, degrees=(1, 2), exact_samples=8, seed=0)
    elapsed = time.perf_counter() - start
    assert result.ok, result.mismatches[:5]
    assert result.checked >= 10000
    assert elapsed < 30.0
    print(
        f"\n[PASS] criterion 1: abelian closed form == Gauss-sum pairs on "
        f"{result.checked} characters (p <= 47, f <= 2) in {elapsed:.2f}s < 30s"
    )


def test_criterion_2_induced_closed_form_and_sign_identity():
    start = time.perf_counter()
    induced = sweep_induced(qmax=13)
    fq = sweep_fq(qmax=13)
    elapsed = time.perf_counter() - start
    assert induced.ok, induced.mismatches[:5]
    assert fq.ok, fq.mismatches[:5]
    assert induced.checked == fq.checked == 3 + 5 + 7 + 11 + 13
    assert elapsed < 10.0
    print(
        f"\n[PASS] criterion 2: induced closed form == assembled sums and "
        f"tau(xi^-1)/q == xi at the order-2(q-1) element on "
        f"{induced.checked} characters (q <= 13) in {elapsed:.2f}s < 10s"
    )


def test_criterion_3_special_representation_vs_toric_formula():
    start = time.perf_counter()
    result = sweep_sp2(qmax=100)
    elapsed = time.perf_counter() - start
    assert result.ok, result.mismatches[:5]
    assert result.checked == 87  # 29 odd prime powers x 3 twist classes
    assert elapsed < 5.0
    print(
        f"\n[PASS] criterion 3: special-representation oracle == toric formula "
        f"on {result.checked} (q, twist) pairs (odd q <= 100) in {elapsed:.2f}s < 5s"
    )


def _even_dim_exhaustive_places(g: int):
    """Every admissible reduction class over every odd q <= 100."""
    for p, f, q in prime_powers_upto(100, odd_only=True):
        pp = PrimePower(p, f)
        candidates: list = [Good()]
        candidates += [PotentiallyToric(s) for s in ToricSubtype]
        candidates += [
            PotentiallyGood(e=e) for e in divisors(q - 1) if (2 * g) % euler_phi(e) == 0
        ]
        candidates += [
            PotentiallyGood(e=e, galois_abelian=False, inertia_abelian=True,
                            artin_conductor=2 * g)
            for e in divisors(q + 1)
            if (2 * g) % euler_phi(e) == 0
        ]
        for red in candidates:
            place = PlaceData(f"q{q}", pp, red)
            if validate_place(place, g).ok:
                yield place


def _random_valid_job(rng: random.Random, qs: list[int]) -> RmVarietyData:
    g = rng.choice((2, 4))
    places = []
    for i in range(rng.randint(1, 4)):
        q = rng.choice(qs)
        ((p, f),) = factorize(q).items()
        pp = PrimePower(p, f)
        kind = rng.randrange(4)
        if kind == 0:
            red: object = Good()
        elif kind == 1:
            red = PotentiallyToric(rng.choice(list(ToricSubtype)))
        elif kind == 2:
            es = [e for e in divisors(q - 1) if (2 * g) % euler_phi(e) == 0]
            red = PotentiallyGood(e=rng.choice(es))
        else:
            es = [e for e in divisors(q + 1) if (2 * g) % euler_phi(e) == 0]
            red = PotentiallyGood(
                e=rng.choice(es), galois_abelian=False, inertia_abelian=True,
                artin_conductor=2 * g * rng.randint(1, 3),
            )
        places.append(PlaceData(f"v{i}", pp, red))
    return RmVarietyData(g, tuple(places), infinite_places=rng.randint(0, 3))


def test_criterion_4_even_dimension_forces_plus_one():
    checked = 0
    for g in (2, 4):
        for place in _even_dim_exhaustive_places(g):
            assert sign_place(place, g).w == 1, (g, place)
            checked += 1
    assert checked > 500

    rng = random.Random(20260814)
    qs = [q for _, _, q in prime_powers_upto(200, odd_only=True)]
    for _ in range(100):
        data = _random_valid_job(rng, qs)
        report = sign_global(data)
        assert report.global_w == 1, data
        assert all(ps.w == 1 for ps in report.per_place)
    print(
        f"\n[PASS] criterion 4: every sign is +1 in even dimension -- "
        f"{checked} exhaustive places (g in {{2, 4}}, odd q <= 100) "
        f"plus 100 seeded random jobs"
    )


INVALID_JOBS: list[tuple[dict, ViolationCode]] = [
    (
        {"dimension": 1, "places": [
            {"label": "v", "p": 5, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 4, "r": 1}}]},
        ViolationCode.WILD_TOTIENT_2G,
    ),
    (
        {"dimension": 1, "places": [
            {"label": "v", "p": 5, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 4, "r": 1}}]},
        ViolationCode.WILD_PRIME_MOD4,
    ),
    (
        {"dimension": 2, "places": [
            {"label": "v", "p": 3, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 1, "r": 3}}]},
        ViolationCode.WILD_TOTIENT_2G,
    ),
    (
        {"dimension": 1, "places": [
            {"label": "v", "p": 17, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 8}}]},
        ViolationCode.ODD_DIM_TAME_SHAPE,
    ),
    (
        {"dimension": 2, "places": [
            {"label": "v", "p": 23, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 11}}]},
        ViolationCode.TAME_TOTIENT_2G,
    ),
    (
        {"dimension": 1, "places": [
            {"label": "v", "p": 7, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 4}}]},
        ViolationCode.E_NOT_DIVIDING_Q_MINUS_1,
    ),
    (
        {"dimension": 1, "places": [
            {"label": "v", "p": 7, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 3,
                           "galois_abelian": False, "inertia_abelian": True,
                           "artin_conductor": 2}}]},
        ViolationCode.E_NOT_DIVIDING_Q_PLUS_1,
    ),
    (
        {"dimension": 1, "places": [
            {"label": "v", "p": 5, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 3,
                           "galois_abelian": False, "inertia_abelian": True,
                           "artin_conductor": 3}}]},
        ViolationCode.CONDUCTOR_NOT_2G_MULTIPLE,
    ),
    (
        {"dimension": 1, "places": [
            {"label": "v", "p": 3, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 3}}]},
        ViolationCode.E_DIVISIBLE_BY_P,
    ),
    (
        {"dimension": 1, "places": [
            {"label": "v", "p": 7, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 2,
                           "galois_abelian": False, "inertia_abelian": False}}]},
        ViolationCode.NONABELIAN_INERTIA,
    ),
    (
        {"dimension": 1, "places": [
            {"label": "v", "p": 7, "f": 1,
             "reduction": {"kind": "potentially_good", "e": 2,
                           "galois_abelian": True, "inertia_abelian": False}}]},
        ViolationCode.INCONSISTENT_FLAGS,
    ),
    (
        {"dimension": 1, "places": [
            {"label": "v", "p": 2, "f": 1,
             "reduction": {"kind": "potentially_toric", "subtype": "additive"}}]},
        ViolationCode.RESIDUE_CHAR_2,
    ),
    (
        {"dimension": 1, "places": [
            {"label": "v", "p": 2, "f": 2,
             "reduction": {"kind": "potentially_good", "e": 3}}]},
        ViolationCode.RESIDUE_CHAR_2,
    ),
    (
        {"dimension": 2, "places": [
            {"label": "twin", "p": 5, "f": 1, "reduction": {"kind": "good"}},
            {"label": "twin", "p": 7, "f": 1, "reduction": {"kind": "good"}}]},
        ViolationCode.DUPLICATE_LABEL,
    ),
]


def test_criterion_5_invalid_configurations_are_rejected():
    assert len(INVALID_JOBS) >= 12
    for obj, expected in INVALID_JOBS:
        data = parse_job(obj)
        report = validate_variety(data)
        assert not report.ok, obj
        assert expected in report.codes(), (obj, expected, report.codes())
    print(
        f"\n[PASS] criterion 5: {len(INVALID_JOBS)} invalid configurations "
        f"each rejected with the expected violation code"
    )


def test_criterion_6_exact_gauss_sum_identities():
    start = time.perf_counter()
    result = sweep_gauss(qmax=121)
    elapsed = time.perf_counter() - start
    assert result.ok, result.mismatches[:5]
    assert result.checked > 2500
    print(
        f"\n[PASS] criterion 6: |tau|^2 = q and tau(chi)tau(chi^-1) = chi(-1)q "
        f"hold exactly for {result.checked} identities over all q <= 121 "
        f"(characteristic 2 included) in {elapsed:.2f}s"
    )


def test_criterion_7_golden_gauss_sum_value():
    field = residue_field_new(PrimePower(3, 2))
    # deterministic construction is part of the pinned value
    assert field.modulus == (1, 0, 1)  # x^2 + 1
    assert field.generator.coeffs == (1, 1)  # x + 1
    tau = gauss_sum(MultiplicativeCharacter(field, 4))
    golden = CyclotomicValue(3, {0: 2, 1: -1, 2: -1})  # 2 - zeta_3 - zeta_3^2
    assert tau == golden
    assert tau.as_integer() == 3
    assert abs(tau.complex_value() - 3) < 1e-12
    print(
        "\n[PASS] criterion 7: quadratic Gauss sum over GF(9) equals the "
        "pinned exact value 2 - zeta_3 - zeta_3^2 = 3"
    )
