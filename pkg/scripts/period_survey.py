#!/usr/bin/env python3
"""Survey Gaussian periods across small fields.

For every order L dividing r - 1 in a sweep of towers, print the exact
period values (rational where possible), which closed form applies, and
whether the closed form reproduces the oracle.
"""

import argparse

from cyclotome.cyclotomy import (
    applicable_closed_form,
    gaussian_periods,
    gaussian_periods_closed_form,
)
from cyclotome.gf import build_field, is_prime


def survey(r_max: int) -> None:
    print(f"{'r':>7} {'L':>4}  {'closed form':<14} {'match':<6} values")
    for p in range(2, r_max + 1):
        if not is_prime(p):
            continue
        r, k = p, 1
        while r <= r_max:
            tw = build_field(p, 1, k)
            for L in range(2, min(r - 1, 24) + 1):
                if (r - 1) % L:
                    continue
                exact = gaussian_periods(tw, L)
                variant = applicable_closed_form(tw, L)
                if variant is None:
                    tag, match = "-", "-"
                else:
                    closed, _ = gaussian_periods_closed_form(variant, tw, L)
                    tag = variant
                    match = "yes" if closed.values == exact.values else "NO"
                vals = ", ".join(
                    str(v.rational_value()) if v.is_rational() else "irr"
                    for v in exact.values[:8])
                if L > 8:
                    vals += ", ..."
                print(f"{r:>7} {L:>4}  {tag:<14} {match:<6} {vals}")
            r *= p
            k += 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-max", type=int, default=128)
    survey(ap.parse_args().r_max)
