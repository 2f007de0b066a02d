"""Maneuver-math tests against independently coded oracles.

The oracle functions below were written and evaluated before the
implementation existed; the frozen constants in this file came from
them.  The Hohmann oracle deliberately uses vis-viva algebra rather
than the implementation's closed form, so agreement is numerical
evidence, not tautology.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adrsim.errors import DegenerateGeometryError, DomainError
from adrsim.orbital import (
    Burn,
    BurnLabel,
    Constants,
    DEFAULT_CONSTANTS,
    OrbitalElements,
    TransferConfig,
    circular_velocity,
    coelliptic_sequence,
    hohmann,
    orbital_period,
    phasing_wait,
    plane_angle,
    plane_change_dv,
)

MU = 3.986004418e14
R700 = 7.078137e6
R800 = 7.178137e6
TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------- oracles


def oracle_circular_velocity(radius: float) -> float:
    return math.sqrt(MU / radius)


def oracle_period(semi_major_axis: float) -> float:
    return TWO_PI * math.sqrt(semi_major_axis**3 / MU)


def oracle_hohmann(r1: float, r2: float) -> tuple[float, float, float]:
    """Vis-viva form: speeds on the transfer ellipse at both apsides."""
    a_t = 0.5 * (r1 + r2)
    v1 = math.sqrt(MU / r1)
    v2 = math.sqrt(MU / r2)
    v_depart = math.sqrt(MU * (2.0 / r1 - 1.0 / a_t))
    v_arrive = math.sqrt(MU * (2.0 / r2 - 1.0 / a_t))
    return abs(v_depart - v1), abs(v2 - v_arrive), math.pi * math.sqrt(a_t**3 / MU)


def oracle_plane_change(speed: float, angle: float) -> float:
    return 2.0 * speed * math.sin(angle / 2.0)


def oracle_lead_angle(r_i: float, r_t: float) -> float:
    return math.pi * (1.0 - math.sqrt(((r_i + r_t) / (2.0 * r_t)) ** 3))


def propagation_oracle_first_alignment(
    chaser_u: float, target_u: float, r_i: float, r_t: float, tolerance: float
) -> int:
    """Step both anomalies forward at 1 s until within ``tolerance``.

    Returns the first whole second at which the chaser-to-target phase
    is within ``tolerance`` radians of the required lead angle.
    """
    n_i = math.sqrt(MU / r_i**3)
    n_t = math.sqrt(MU / r_t**3)
    lead = oracle_lead_angle(r_i, r_t)
    t = 0
    while True:
        phase = (target_u + n_t * t) - (chaser_u + n_i * t)
        misalignment = (phase - lead + math.pi) % TWO_PI - math.pi
        if abs(misalignment) <= tolerance:
            return t
        t += 1


# Frozen oracle evaluations (computed before the implementation).
CV_700 = 7504.286490416995
PERIOD_700 = 5926.379071134441
PERIOD_800 = 6052.413549492112
HOHMANN_700_800 = (26.27324931424937, 26.181262374209837, 2994.6429009207104)
PLANE_CHANGE_7500_001 = 74.99968750039062
PLANE_BURN_HALF_DEG_700 = 65.48704583806946
SEQUENCE_700_800_DV = 56.935755607189094


# ------------------------------------------------------- circular_velocity


class TestCircularVelocity:
    def test_frozen_oracle_value(self):
        assert circular_velocity(R700) == CV_700

    def test_radius_equal_mu_gives_unit_speed(self):
        assert circular_velocity(MU) == 1.0

    def test_surface_radius_rejected(self):
        with pytest.raises(DomainError):
            circular_velocity(DEFAULT_CONSTANTS.earth_radius)

    def test_random_band_against_oracle(self):
        rng = np.random.Generator(np.random.PCG64(1))
        for radius in rng.uniform(R700, R800, size=200):
            assert circular_velocity(radius) == pytest.approx(
                oracle_circular_velocity(radius), rel=1e-9
            )


# ---------------------------------------------------------- orbital_period


class TestOrbitalPeriod:
    def test_frozen_oracle_values(self):
        assert orbital_period(R700) == PERIOD_700
        assert orbital_period(R800) == PERIOD_800

    def test_unit_cancellation(self):
        # a^3 = mu needs a tiny body radius to be a legal orbit.
        tiny_body = Constants(mu=MU, earth_radius=1.0)
        a = MU ** (1.0 / 3.0)
        assert orbital_period(a, tiny_body) == pytest.approx(TWO_PI, rel=1e-12)

    def test_kepler_scaling(self):
        assert orbital_period(2.0 * R700) == pytest.approx(
            2.0**1.5 * orbital_period(R700), rel=1e-12
        )

    def test_non_physical_input_rejected(self):
        with pytest.raises(DomainError):
            orbital_period(0.0)


# ------------------------------------------------------------------ hohmann


class TestHohmann:
    def test_frozen_oracle_values(self):
        dv1, dv2, t = hohmann(R700, R800)
        assert dv1 == pytest.approx(HOHMANN_700_800[0], rel=1e-9)
        assert dv2 == pytest.approx(HOHMANN_700_800[1], rel=1e-9)
        assert t == pytest.approx(HOHMANN_700_800[2], rel=1e-9)

    def test_degenerate_transfer(self):
        dv1, dv2, t = hohmann(R700, R700)
        assert dv1 == 0.0
        assert dv2 == 0.0
        assert t == math.pi * math.sqrt(R700**3 / MU)

    def test_swap_symmetry_on_the_example(self):
        up = hohmann(R700, R800)
        down = hohmann(R800, R700)
        assert up[0] + up[1] == pytest.approx(down[0] + down[1], rel=1e-12)
        assert up[2] == down[2]

    @given(
        st.floats(min_value=R700, max_value=R800),
        st.floats(min_value=R700, max_value=R800),
    )
    @settings(max_examples=200)
    def test_swap_symmetry_property(self, r1, r2):
        a = hohmann(r1, r2)
        b = hohmann(r2, r1)
        assert a[0] + a[1] == pytest.approx(b[0] + b[1], rel=1e-12)
        assert a[2] == pytest.approx(b[2], rel=1e-12)

    def test_non_physical_radii_rejected(self):
        with pytest.raises(DomainError):
            hohmann(-1.0, R800)
        with pytest.raises(DomainError):
            hohmann(R700, 1e3)


# ---------------------------------------------------------- plane_change_dv


class TestPlaneChange:
    def test_zero_angle(self):
        assert plane_change_dv(7500.0, 0.0) == 0.0

    def test_sixty_degrees_costs_full_speed(self):
        assert plane_change_dv(7400.0, math.pi / 3.0) == pytest.approx(7400.0, rel=1e-15)

    def test_frozen_oracle_value(self):
        assert plane_change_dv(7500.0, 0.01) == PLANE_CHANGE_7500_001

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            plane_change_dv(-1.0, 0.1)
        with pytest.raises(DomainError):
            plane_change_dv(7500.0, math.pi + 0.01)


# -------------------------------------------------------------- plane_angle


class TestPlaneAngle:
    def test_same_plane(self):
        a = OrbitalElements(R700, inclination=1.0, raan=2.0)
        assert plane_angle(a, a) == 0.0

    def test_orthogonal_polar_planes(self):
        a = OrbitalElements(R700, inclination=math.pi / 2.0, raan=0.0)
        b = OrbitalElements(R700, inclination=math.pi / 2.0, raan=math.pi / 2.0)
        assert plane_angle(a, b) == pytest.approx(math.pi / 2.0, rel=1e-12)

    def test_reduces_to_inclination_difference_at_equal_raan(self):
        a = OrbitalElements(R700, inclination=math.radians(96.0), raan=0.5)
        b = OrbitalElements(R700, inclination=math.radians(96.5), raan=0.5)
        assert plane_angle(a, b) == pytest.approx(math.radians(0.5), rel=1e-9)

    @given(
        st.floats(min_value=0.0, max_value=math.pi),
        st.floats(min_value=0.0, max_value=math.pi),
        st.floats(min_value=0.0, max_value=TWO_PI, exclude_max=True),
        st.floats(min_value=0.0, max_value=TWO_PI, exclude_max=True),
    )
    @settings(max_examples=200)
    def test_symmetry(self, i_a, i_b, raan_a, raan_b):
        a = OrbitalElements(R700, inclination=i_a, raan=raan_a)
        b = OrbitalElements(R700, inclination=i_b, raan=raan_b)
        assert plane_angle(a, b) == plane_angle(b, a)
        assert 0.0 <= plane_angle(a, b) <= math.pi


# ------------------------------------------------------------- phasing_wait


def synodic_period(r_a: float, r_b: float) -> float:
    n_a = math.sqrt(MU / r_a**3)
    n_b = math.sqrt(MU / r_b**3)
    return TWO_PI / abs(n_a - n_b)


class TestPhasingWait:
    def test_already_aligned_returns_zero(self):
        r_i = 7.153137e6
        lead = oracle_lead_angle(r_i, R800) % TWO_PI
        chaser = OrbitalElements(r_i)
        target = OrbitalElements(R800, true_anomaly=lead)
        assert phasing_wait(chaser, target, r_i) == 0.0

    def test_half_synodic_deficit_from_below(self):
        r_i = 7.153137e6
        lead = oracle_lead_angle(r_i, R800)
        chaser = OrbitalElements(r_i)
        target = OrbitalElements(R800, true_anomaly=(lead + math.pi) % TWO_PI)
        wait = phasing_wait(chaser, target, r_i)
        assert wait == pytest.approx(synodic_period(r_i, R800) / 2.0, rel=1e-12)

    def test_half_synodic_deficit_from_above(self):
        # Chaser drifting slower than the target (co-elliptic above it).
        r_i = R800
        lead = oracle_lead_angle(r_i, R700)
        chaser = OrbitalElements(r_i)
        target = OrbitalElements(R700, true_anomaly=(lead + math.pi) % TWO_PI)
        wait = phasing_wait(chaser, target, r_i)
        assert wait == pytest.approx(synodic_period(r_i, R700) / 2.0, rel=1e-12)

    def test_identical_mean_motion_degenerate(self):
        chaser = OrbitalElements(R700)
        target = OrbitalElements(R800)
        with pytest.raises(DegenerateGeometryError):
            phasing_wait(chaser, target, R800)

    def test_max_wait_caps_the_result(self):
        r_i = 7.153137e6
        lead = oracle_lead_angle(r_i, R800)
        chaser = OrbitalElements(r_i)
        target = OrbitalElements(R800, true_anomaly=(lead + math.pi) % TWO_PI)
        assert phasing_wait(chaser, target, r_i, max_wait=100.0) == 100.0

    def test_always_within_one_synodic_period(self):
        rng = np.random.Generator(np.random.PCG64(2))
        for _ in range(300):
            r_t = rng.uniform(R700 + 20e3, R800)
            r_i = r_t - rng.uniform(10e3, 60e3)
            chaser = OrbitalElements(r_i, true_anomaly=rng.uniform(0.0, TWO_PI))
            target = OrbitalElements(r_t, true_anomaly=rng.uniform(0.0, TWO_PI))
            wait = phasing_wait(chaser, target, r_i)
            assert 0.0 <= wait < synodic_period(r_i, r_t)

    def test_against_step_propagation_oracle(self):
        """A few geometries here; the 200-case sweep runs in acceptance."""
        rng = np.random.Generator(np.random.PCG64(3))
        tolerance = 1e-4
        for _ in range(5):
            r_t = rng.uniform(R700 + 30e3, R800)
            r_i = r_t - rng.uniform(20e3, 60e3)
            chaser_u = rng.uniform(0.0, TWO_PI)
            target_u = rng.uniform(0.0, TWO_PI)
            chaser = OrbitalElements(r_i, true_anomaly=chaser_u)
            target = OrbitalElements(r_t, true_anomaly=target_u)
            wait = phasing_wait(chaser, target, r_i)
            first_hit = propagation_oracle_first_alignment(
                chaser_u, target_u, r_i, r_t, tolerance
            )
            delta_n = abs(
                math.sqrt(MU / r_i**3) - math.sqrt(MU / r_t**3)
            )
            # The oracle stops as soon as it enters the tolerance window,
            # up to tolerance/delta_n seconds before exact closure.
            assert first_hit <= wait + 1.0
            assert wait - first_hit <= tolerance / delta_n + 1.0


# ------------------------------------------------------ coelliptic_sequence


class TestCoellipticSequence:
    def test_same_orbit_degenerates_to_terminal_legs(self):
        chaser = OrbitalElements(R700, inclination=1.0)
        plan = coelliptic_sequence(chaser, chaser)
        assert [b.label for b in plan.burns] == [
            BurnLabel.SAFETY_ELLIPSE,
            BurnLabel.STATION_KEEP,
        ]
        assert plan.total_delta_v == TransferConfig().safety_ellipse_dv

    def test_coplanar_700_to_800_against_composed_oracle(self):
        chaser = OrbitalElements(R700)
        target = OrbitalElements(R800)
        plan = coelliptic_sequence(chaser, target)
        assert plan.total_delta_v == pytest.approx(SEQUENCE_700_800_DV, rel=1e-9)
        r_i = R700 + 0.75 * (R800 - R700)
        first = oracle_hohmann(R700, r_i)
        final = oracle_hohmann(r_i, R800 - 1000.0)
        expected = first[0] + first[1] + final[0] + final[1] + 5.0
        assert plan.total_delta_v == pytest.approx(expected, rel=1e-9)
        assert [b.label for b in plan.burns] == [
            BurnLabel.RAISE_TO_COELLIPTIC,
            BurnLabel.CIRCULARIZE,
            BurnLabel.PHASING_WAIT,
            BurnLabel.FINAL_HOHMANN,
            BurnLabel.CIRCULARIZE,
            BurnLabel.SAFETY_ELLIPSE,
            BurnLabel.STATION_KEEP,
        ]

    def test_plane_burn_prepended_and_priced_at_chaser_speed(self):
        chaser = OrbitalElements(R700, inclination=math.radians(96.0))
        target = OrbitalElements(R800, inclination=math.radians(96.5))
        plan = coelliptic_sequence(chaser, target)
        assert plan.burns[0].label is BurnLabel.PLANE_CHANGE
        assert plan.burns[0].delta_v == pytest.approx(PLANE_BURN_HALF_DEG_700, rel=1e-9)

    def test_terminal_offset_sits_on_the_approach_side(self):
        cfg = TransferConfig()
        up = coelliptic_sequence(OrbitalElements(R700), OrbitalElements(R800), cfg)
        down = coelliptic_sequence(OrbitalElements(R800), OrbitalElements(R700), cfg)
        r_i_up = R700 + cfg.first_leg_fraction * (R800 - R700)
        r_i_down = R800 + cfg.first_leg_fraction * (R700 - R800)
        expected_up = oracle_hohmann(r_i_up, R800 - cfg.terminal_offset)
        expected_down = oracle_hohmann(r_i_down, R700 + cfg.terminal_offset)
        up_final = [b for b in up.burns if b.label is BurnLabel.FINAL_HOHMANN][0]
        down_final = [b for b in down.burns if b.label is BurnLabel.FINAL_HOHMANN][0]
        assert up_final.delta_v == pytest.approx(expected_up[0], rel=1e-9)
        assert down_final.delta_v == pytest.approx(expected_down[0], rel=1e-9)

    def test_phasing_leg_capped_at_three_target_periods(self):
        rng = np.random.Generator(np.random.PCG64(4))
        cfg = TransferConfig()
        for _ in range(50):
            r_c = rng.uniform(R700, R800)
            r_t = rng.uniform(R700, R800)
            if abs(r_t - r_c) < 1e3:
                continue
            chaser = OrbitalElements(r_c, true_anomaly=rng.uniform(0.0, TWO_PI))
            target = OrbitalElements(r_t, true_anomaly=rng.uniform(0.0, TWO_PI))
            plan = coelliptic_sequence(chaser, target, cfg)
            wait = [b for b in plan.burns if b.label is BurnLabel.PHASING_WAIT][0]
            assert wait.leg_duration <= cfg.max_phasing_periods * orbital_period(r_t)

    def test_totals_are_sums_over_burns(self):
        plan = coelliptic_sequence(OrbitalElements(R700), OrbitalElements(R800))
        assert plan.total_delta_v == sum(b.delta_v for b in plan.burns)
        assert plan.total_duration == sum(b.leg_duration for b in plan.burns)

    def test_never_cheaper_than_direct_hohmann_when_coplanar(self):
        rng = np.random.Generator(np.random.PCG64(5))
        for _ in range(1000):
            r_c = rng.uniform(R700, R800)
            r_t = rng.uniform(R700, R800)
            chaser = OrbitalElements(r_c)
            target = OrbitalElements(r_t)
            plan = coelliptic_sequence(chaser, target)
            dv1, dv2, _ = hohmann(r_c, r_t)
            assert plan.total_delta_v >= dv1 + dv2 - 1e-9

    def test_deterministic_across_repeated_calls(self):
        chaser = OrbitalElements(R700, inclination=1.2, true_anomaly=0.3)
        target = OrbitalElements(R800, inclination=1.21, true_anomaly=4.0)
        first = coelliptic_sequence(chaser, target)
        second = coelliptic_sequence(chaser, target)
        assert first == second


# --------------------------------------------------------------- validation


class TestValidation:
    def test_orbital_elements_bounds(self):
        with pytest.raises(DomainError):
            OrbitalElements(1e3)
        with pytest.raises(DomainError):
            OrbitalElements(R700, eccentricity=1.0)
        with pytest.raises(DomainError):
            OrbitalElements(R700, inclination=3.5)
        with pytest.raises(DomainError):
            OrbitalElements(R700, raan=TWO_PI)
        with pytest.raises(DomainError):
            OrbitalElements(R700, true_anomaly=-0.1)

    def test_transfer_config_bounds(self):
        with pytest.raises(DomainError):
            TransferConfig(first_leg_fraction=1.0)
        with pytest.raises(DomainError):
            TransferConfig(terminal_offset=0.0)
        with pytest.raises(DomainError):
            TransferConfig(safety_ellipse_dv=-1.0)
        with pytest.raises(DomainError):
            TransferConfig(max_phasing_periods=0.0)

    def test_burn_rejects_negative_values(self):
        with pytest.raises(DomainError):
            Burn(-1.0, 0.0, BurnLabel.CIRCULARIZE)
        with pytest.raises(DomainError):
            Burn(0.0, -1.0, BurnLabel.CIRCULARIZE)

    def test_constants_must_be_positive(self):
        with pytest.raises(DomainError):
            Constants(mu=0.0)
        with pytest.raises(DomainError):
            Constants(earth_radius=-1.0)
