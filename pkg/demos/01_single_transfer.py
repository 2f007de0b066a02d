"""Plan one rendezvous transfer and print its burn ledger.

The transfer sequence is the workhorse of the whole simulator: a plane
change if the orbits are tilted against each other, a Hohmann pair to a
co-elliptic drift orbit, a phasing coast, the final Hohmann pair to a
safe standoff below the target, and the inspection overhead.
"""

import math

from adrsim import OrbitalElements, TransferConfig, coelliptic_sequence

EARTH_RADIUS = 6.378137e6


def main() -> None:
    chaser = OrbitalElements(
        semi_major_axis=EARTH_RADIUS + 700e3,
        inclination=math.radians(96.0),
    )
    target = OrbitalElements(
        semi_major_axis=EARTH_RADIUS + 780e3,
        inclination=math.radians(96.4),
        raan=math.radians(0.3),
        true_anomaly=2.1,
    )

    plan = coelliptic_sequence(chaser, target, TransferConfig())

    print("burn ledger (700 km -> 780 km, 0.4 deg tilt):")
    for burn in plan.burns:
        print(
            f"  {burn.label.value:<18} dv {burn.delta_v:8.2f} m/s   "
            f"leg {burn.leg_duration / 3600.0:6.2f} h"
        )
    print(f"total: {plan.total_delta_v:.2f} m/s over {plan.total_duration / 3600.0:.2f} h")


if __name__ == "__main__":
    main()
