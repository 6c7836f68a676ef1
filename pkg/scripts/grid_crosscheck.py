#!/usr/bin/env python3
"""Three-way method agreement sweep with timings.

Enumerates a family of valid code specs over small fields, computes the
weight distribution by all three routes, and reports agreement plus the
time each route took.  A quick way to eyeball both correctness and the
relative cost of the methods.
"""

import argparse
import time
from math import gcd

from cyclotome.codes import CodeSpec, derive_params, validate_assumptions
from cyclotome.gf import build_field
from cyclotome.weights import classify, wd_closed, wd_naive, wd_tsum

TOWERS = [(3, 1, 2), (3, 1, 3), (5, 1, 2), (7, 1, 2), (2, 2, 2), (2, 3, 2),
          (11, 1, 2), (13, 1, 2), (5, 1, 3), (3, 1, 4)]


def sweep(max_inputs: int) -> int:
    failures = 0
    print(f"{'spec':<42} {'case':<22} {'naive':>7} {'tsum':>7} "
          f"{'closed':>7}  agree")
    for (p, s, m) in TOWERS:
        tower = build_field(p, s, m)
        r = tower.r
        for e in [e for e in range(2, 11) if (r - 1) % e == 0]:
            for t in sorted({2, e}):
                if not 2 <= t <= e or r ** t > max_inputs:
                    continue
                for a in (1, 2, 3):
                    spec = CodeSpec(p, s, m, e, t, a,
                                    tuple(range(t)) if t < e
                                    else tuple(range(e)))
                    derived = derive_params(tower, spec)
                    report = validate_assumptions(tower, spec, derived)
                    if not report.all_hold:
                        continue
                    cl = classify(tower, spec, derived, report)
                    if not cl.supported:
                        continue
                    times = {}
                    t0 = time.time()
                    na = wd_naive(tower, derived, cap=max_inputs)
                    times["naive"] = time.time() - t0
                    t0 = time.time()
                    ts = wd_tsum(tower, derived, cap=max_inputs)
                    times["tsum"] = time.time() - t0
                    t0 = time.time()
                    clo = wd_closed(tower, spec, derived, cl)
                    times["closed"] = time.time() - t0
                    ok = na.entries == ts.entries == clo.entries
                    failures += not ok
                    label = (f"p={p} s={s} m={m} e={e} t={t} a={a}")
                    case = cl.tag + (f"/{cl.period_source}"
                                     if cl.period_source else "")
                    print(f"{label:<42} {case:<22} "
                          f"{times['naive']:>6.2f}s {times['tsum']:>6.2f}s "
                          f"{times['closed']:>6.2f}s  "
                          f"{'yes' if ok else 'NO'}")
    print("all agree" if failures == 0 else f"{failures} DISAGREEMENTS")
    return failures


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-inputs", type=int, default=10 ** 6)
    raise SystemExit(1 if sweep(ap.parse_args().max_inputs) else 0)
