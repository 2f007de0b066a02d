"""Circular-orbit maneuver math for multi-target rendezvous costing.

Pure functions over immutable inputs: circular-orbit kinematics, Hohmann
transfers, plane changes, co-elliptic phasing, and the composite
transfer sequence used to price every debris visit.  All angles are in
radians internally; degrees appear only at configuration and report
boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DegenerateGeometryError, DomainError

__all__ = [
    "Constants",
    "DEFAULT_CONSTANTS",
    "OrbitalElements",
    "BurnLabel",
    "Burn",
    "TransferPlan",
    "TransferConfig",
    "circular_velocity",
    "orbital_period",
    "hohmann",
    "plane_change_dv",
    "plane_angle",
    "phasing_wait",
    "coelliptic_sequence",
]

_TWO_PI = 2.0 * math.pi

# Plane changes below this angle cost nothing measurable at LEO speeds
# and are dropped from transfer plans.
_PLANE_ANGLE_FLOOR = 1e-6

# Radial gaps below one micron are treated as "same circular orbit";
# the Hohmann and phasing legs degenerate to no-ops there.
_SAME_RADIUS_EPS = 1e-6


@dataclass(frozen=True)
class Constants:
    """Gravitational environment of the simulation.

    Attributes:
        mu: Gravitational parameter of the central body, m^3/s^2.
        earth_radius: Equatorial radius of the central body, m.
    """

    mu: float = 3.986004418e14
    earth_radius: float = 6.378137e6

    def __post_init__(self) -> None:
        if self.mu <= 0.0:
            raise DomainError(f"mu must be positive, got {self.mu}")
        if self.earth_radius <= 0.0:
            raise DomainError(f"earth_radius must be positive, got {self.earth_radius}")


DEFAULT_CONSTANTS = Constants()


@dataclass(frozen=True)
class OrbitalElements:
    """Keplerian elements of a closed orbit.

    Attributes:
        semi_major_axis: m, strictly above the central-body radius.
        eccentricity: dimensionless, in [0, 1).
        inclination: rad, in [0, pi].
        raan: right ascension of the ascending node, rad, in [0, 2*pi).
        arg_periapsis: rad, in [0, 2*pi).
        true_anomaly: rad, in [0, 2*pi).
    """

    semi_major_axis: float
    eccentricity: float = 0.0
    inclination: float = 0.0
    raan: float = 0.0
    arg_periapsis: float = 0.0
    true_anomaly: float = 0.0

    def __post_init__(self) -> None:
        if not self.semi_major_axis > DEFAULT_CONSTANTS.earth_radius:
            raise DomainError(
                f"semi_major_axis must exceed the body radius "
                f"{DEFAULT_CONSTANTS.earth_radius} m, got {self.semi_major_axis}"
            )
        if not 0.0 <= self.eccentricity < 1.0:
            raise DomainError(f"eccentricity must be in [0, 1), got {self.eccentricity}")
        if not 0.0 <= self.inclination <= math.pi:
            raise DomainError(f"inclination must be in [0, pi], got {self.inclination}")
        for name in ("raan", "arg_periapsis", "true_anomaly"):
            value = getattr(self, name)
            if not 0.0 <= value < _TWO_PI:
                raise DomainError(f"{name} must be in [0, 2*pi), got {value}")

    @property
    def argument_of_latitude(self) -> float:
        """In-plane angular position (arg_periapsis + true_anomaly), wrapped."""
        return (self.arg_periapsis + self.true_anomaly) % _TWO_PI


class BurnLabel(Enum):
    """Role of a burn or coast leg within a transfer plan."""

    PLANE_CHANGE = "PlaneChange"
    RAISE_TO_COELLIPTIC = "RaiseToCoelliptic"
    CIRCULARIZE = "Circularize"
    PHASING_WAIT = "PhasingWait"
    FINAL_HOHMANN = "FinalHohmann"
    SAFETY_ELLIPSE = "SafetyEllipse"
    STATION_KEEP = "StationKeep"


@dataclass(frozen=True)
class Burn:
    """One impulsive burn plus the coast leg it initiates.

    Attributes:
        delta_v: impulse magnitude, m/s, non-negative.
        leg_duration: coast time until the next event, s, non-negative.
        label: role of this leg in the sequence.
    """

    delta_v: float
    leg_duration: float
    label: BurnLabel

    def __post_init__(self) -> None:
        if self.delta_v < 0.0:
            raise DomainError(f"delta_v must be non-negative, got {self.delta_v}")
        if self.leg_duration < 0.0:
            raise DomainError(f"leg_duration must be non-negative, got {self.leg_duration}")


@dataclass(frozen=True)
class TransferPlan:
    """Ordered burn list with total cost of a rendezvous sequence.

    ``total_delta_v`` and ``total_duration`` are exact sums over the
    burn list; they are stored for convenience and re-checked in tests.
    """

    burns: tuple[Burn, ...]
    total_delta_v: float
    total_duration: float
    target_index: int | None = None


@dataclass(frozen=True)
class TransferConfig:
    """Shape parameters of the co-elliptic rendezvous sequence.

    Attributes:
        first_leg_fraction: fraction of the radial gap covered by the
            first Hohmann pair (the rest is closed after phasing).
        terminal_offset: radial miss distance of the final Hohmann leg,
            m, placed on the chaser's approach side.
        safety_ellipse_dv: fixed cost proxy of the terminal safety
            ellipse, m/s.
        safety_ellipse_periods: safety-ellipse duration in target
            orbital periods.
        station_keep_periods: servicing station-keep duration in target
            orbital periods (zero delta-v).
        max_phasing_periods: cap on the phasing wait, in target orbital
            periods.  Keeps a single unlucky phase geometry from
            stalling an episode for a large fraction of the mission
            clock while remaining generous next to the transfer legs.
    """

    first_leg_fraction: float = 0.75
    terminal_offset: float = 1000.0
    safety_ellipse_dv: float = 5.0
    safety_ellipse_periods: float = 1.0
    station_keep_periods: float = 1.0
    max_phasing_periods: float = 3.0

    def __post_init__(self) -> None:
        if not 0.0 < self.first_leg_fraction < 1.0:
            raise DomainError(
                f"first_leg_fraction must be in (0, 1), got {self.first_leg_fraction}"
            )
        if self.terminal_offset <= 0.0:
            raise DomainError(f"terminal_offset must be positive, got {self.terminal_offset}")
        if self.safety_ellipse_dv < 0.0:
            raise DomainError(
                f"safety_ellipse_dv must be non-negative, got {self.safety_ellipse_dv}"
            )
        if self.safety_ellipse_periods < 0.0 or self.station_keep_periods < 0.0:
            raise DomainError("safety/station-keep periods must be non-negative")
        if self.max_phasing_periods <= 0.0:
            raise DomainError(
                f"max_phasing_periods must be positive, got {self.max_phasing_periods}"
            )


def _check_radius(radius: float, constants: Constants, what: str) -> None:
    if not radius > constants.earth_radius:
        raise DomainError(
            f"{what} must exceed the body radius {constants.earth_radius} m, got {radius}"
        )


def circular_velocity(radius: float, constants: Constants = DEFAULT_CONSTANTS) -> float:
    """Speed of a circular orbit at ``radius``.

    Args:
        radius: orbit radius, m, above the body surface.
        constants: gravitational environment.

    Returns:
        sqrt(mu / radius), m/s.

    Raises:
        DomainError: if radius is at or below the body surface.
    """
    _check_radius(radius, constants, "radius")
    return math.sqrt(constants.mu / radius)


def orbital_period(semi_major_axis: float, constants: Constants = DEFAULT_CONSTANTS) -> float:
    """Keplerian period 2*pi*sqrt(a^3/mu) of an orbit, s."""
    _check_radius(semi_major_axis, constants, "semi_major_axis")
    return _TWO_PI * math.sqrt(semi_major_axis**3 / constants.mu)


def hohmann(
    r1: float, r2: float, constants: Constants = DEFAULT_CONSTANTS
) -> tuple[float, float, float]:
    """Two-impulse transfer between coplanar circular orbits.

    Args:
        r1: departure radius, m.
        r2: arrival radius, m.
        constants: gravitational environment.

    Returns:
        (dv1, dv2, transfer_time): departure and arrival impulse
        magnitudes in m/s and the half-ellipse coast time in s.  The
        total dv and the time are symmetric in (r1, r2).

    Raises:
        DomainError: on radii at or below the body surface.
    """
    _check_radius(r1, constants, "r1")
    _check_radius(r2, constants, "r2")
    mu = constants.mu
    ratio = 2.0 * r2 / (r1 + r2)
    dv1 = abs(math.sqrt(mu / r1) * (math.sqrt(ratio) - 1.0))
    dv2 = abs(math.sqrt(mu / r2) * (1.0 - math.sqrt(2.0 * r1 / (r1 + r2))))
    transfer_time = math.pi * math.sqrt(((r1 + r2) / 2.0) ** 3 / mu)
    return dv1, dv2, transfer_time


def plane_change_dv(speed: float, angle: float) -> float:
    """Impulse 2*v*sin(angle/2) to rotate a velocity vector by ``angle``.

    Raises:
        DomainError: on negative speed or angle outside [0, pi].
    """
    if speed < 0.0:
        raise DomainError(f"speed must be non-negative, got {speed}")
    if not 0.0 <= angle <= math.pi:
        raise DomainError(f"angle must be in [0, pi], got {angle}")
    return 2.0 * speed * math.sin(angle / 2.0)


def plane_angle(a: OrbitalElements, b: OrbitalElements) -> float:
    """Angle between the orbit normals of two element sets.

    Combines the inclination and RAAN differences through the spherical
    law of cosines:

        cos(theta) = cos(i_a) cos(i_b) + sin(i_a) sin(i_b) cos(raan_a - raan_b)

    Returns:
        Separation angle in [0, pi].
    """
    cos_theta = math.cos(a.inclination) * math.cos(b.inclination) + math.sin(
        a.inclination
    ) * math.sin(b.inclination) * math.cos(a.raan - b.raan)
    return math.acos(max(-1.0, min(1.0, cos_theta)))


def _lead_angle(coelliptic_radius: float, target_radius: float) -> float:
    """Target lead angle at the final-leg departure.

    Standard rendezvous phasing: during the half-ellipse from the
    co-elliptic radius to the target radius the chaser sweeps pi while
    the target sweeps n_t * t_transfer, so the burn must start when the
    target leads by pi * (1 - sqrt(((r_i + r_t) / (2 r_t))^3)).  The
    value is negative when approaching from above (the target must lag).
    """
    return math.pi * (1.0 - math.sqrt(((coelliptic_radius + target_radius) / (2.0 * target_radius)) ** 3))


def phasing_wait(
    chaser: OrbitalElements,
    target: OrbitalElements,
    coelliptic_radius: float,
    max_wait: float | None = None,
    constants: Constants = DEFAULT_CONSTANTS,
) -> float:
    """Coast time on the co-elliptic orbit until the final leg can start.

    Both orbits are treated as circular at their semi-major axes.  The
    chaser sits on the co-elliptic orbit at its current argument of
    latitude and drifts relative to the target at the difference of mean
    motions; the wait is the smallest non-negative time at which the
    phase angle between them equals the lead angle required by the final
    Hohmann leg.

    Args:
        chaser: chaser elements (angular position taken from them).
        target: target elements.
        coelliptic_radius: radius of the drift orbit, m; must differ
            from the target radius.
        max_wait: optional cap, s.  When given, the returned wait is
            min(closure time, max_wait).
        constants: gravitational environment.

    Returns:
        Wait time in seconds, in [0, synodic period).

    Raises:
        DegenerateGeometryError: if the relative mean motion is
            numerically zero (unbounded synodic period).
        DomainError: on non-physical radii.
    """
    _check_radius(coelliptic_radius, constants, "coelliptic_radius")
    r_t = target.semi_major_axis
    n_co = math.sqrt(constants.mu / coelliptic_radius**3)
    n_t = math.sqrt(constants.mu / r_t**3)
    delta_n = n_co - n_t
    if delta_n == 0.0:
        raise DegenerateGeometryError(
            f"co-elliptic radius {coelliptic_radius} m and target radius {r_t} m "
            "have identical mean motion; phasing wait is unbounded"
        )
    # Current phase of the target ahead of the chaser, and the phase the
    # final leg requires; the drift closes (phi - lead) at rate delta_n.
    phi = (target.argument_of_latitude - chaser.argument_of_latitude) % _TWO_PI
    deficit = (phi - _lead_angle(coelliptic_radius, r_t)) % _TWO_PI
    if delta_n > 0.0:
        wait = deficit / delta_n
    else:
        wait = (_TWO_PI - deficit) % _TWO_PI / -delta_n
    if max_wait is not None:
        wait = min(wait, max_wait)
    return wait


def coelliptic_sequence(
    chaser: OrbitalElements,
    target: OrbitalElements,
    cfg: TransferConfig = TransferConfig(),
    target_index: int | None = None,
    constants: Constants = DEFAULT_CONSTANTS,
) -> TransferPlan:
    """Full rendezvous sequence from the chaser's orbit to the target's.

    The plan contains, in order: a combined plane-change burn at the
    chaser's circular speed (when the plane separation exceeds 1e-6
    rad); a Hohmann pair to the co-elliptic radius covering
    ``first_leg_fraction`` of the radial gap; a phasing coast on that
    orbit, capped at ``max_phasing_periods`` target periods; a Hohmann
    pair to the target radius offset by ``terminal_offset`` on the
    approach side (below when ascending, above when descending); a
    safety-ellipse burn of ``safety_ellipse_dv``; and a zero-dv
    station-keep leg.  When chaser and target radii coincide the
    Hohmann and phasing legs degenerate away and only the safety
    ellipse and station keep remain.

    Args:
        chaser: current chaser elements.
        target: target elements.
        cfg: sequence shape parameters.
        target_index: optional debris index recorded on the plan.
        constants: gravitational environment.

    Returns:
        TransferPlan whose totals are the exact sums over its burns.
    """
    r_c = chaser.semi_major_axis
    r_t = target.semi_major_axis
    _check_radius(r_c, constants, "chaser radius")
    _check_radius(r_t, constants, "target radius")

    burns: list[Burn] = []

    theta = plane_angle(chaser, target)
    if theta > _PLANE_ANGLE_FLOOR:
        dv_plane = plane_change_dv(circular_velocity(r_c, constants), theta)
        burns.append(Burn(dv_plane, 0.0, BurnLabel.PLANE_CHANGE))

    target_period = orbital_period(r_t, constants)
    gap = r_t - r_c
    r_i = r_c + cfg.first_leg_fraction * gap
    if abs(gap) > _SAME_RADIUS_EPS and r_i != r_t:
        dv1, dv2, t1 = hohmann(r_c, r_i, constants)
        burns.append(Burn(dv1, t1, BurnLabel.RAISE_TO_COELLIPTIC))
        burns.append(Burn(dv2, 0.0, BurnLabel.CIRCULARIZE))

        wait = phasing_wait(
            chaser,
            target,
            r_i,
            max_wait=cfg.max_phasing_periods * target_period,
            constants=constants,
        )
        burns.append(Burn(0.0, wait, BurnLabel.PHASING_WAIT))

        # Terminal point sits on the approach side of the target.
        r_final = r_t - cfg.terminal_offset if gap > 0.0 else r_t + cfg.terminal_offset
        dv3, dv4, t2 = hohmann(r_i, r_final, constants)
        burns.append(Burn(dv3, t2, BurnLabel.FINAL_HOHMANN))
        burns.append(Burn(dv4, 0.0, BurnLabel.CIRCULARIZE))

    burns.append(
        Burn(
            cfg.safety_ellipse_dv,
            cfg.safety_ellipse_periods * target_period,
            BurnLabel.SAFETY_ELLIPSE,
        )
    )
    burns.append(Burn(0.0, cfg.station_keep_periods * target_period, BurnLabel.STATION_KEEP))

    return TransferPlan(
        burns=tuple(burns),
        total_delta_v=sum(b.delta_v for b in burns),
        total_duration=sum(b.leg_duration for b in burns),
        target_index=target_index,
    )
