#!/usr/bin/env python3
"""Sweep rule weights on the weighted-rule triangle and compare engines.

For each epsilon the three rules get weights 1-e1, 1-e2, 1-e3 and the
scenario is fused with every engine.  The table shows how the point
estimates, the refined-frame Dempster intervals, and the constrained hybrid
intervals drift apart as the rules lose certainty.
"""

import argparse

from hyperbelief import (
    AtomFrame,
    DstAxes,
    Frame,
    Model,
    Scenario,
    WeightedRule,
    run_scenario,
)

FRAME = Frame(("p", "b", "f", "nf"))
P, B, F, NF = (FRAME.singleton(name) for name in FRAME.names)
MODEL = Model.from_constraints(FRAME, [(2, 3)])
AXES = DstAxes(
    AtomFrame((("f", "nf"), ("b", "b'"), ("p", "p'"))),
    {"f": (0, 0), "nf": (0, 1), "b": (1, 0), "p": (2, 0)},
)


def scenario(e1: float, e2: float, e3: float) -> Scenario:
    return Scenario(
        frame=FRAME,
        model=MODEL,
        rules=(
            WeightedRule(P, NF, 1 - e1),
            WeightedRule(B, F, 1 - e2),
            WeightedRule(P, B, 1 - e3),
        ),
        observations=(P & B,),
        queries=(F, NF),
        engines=("bayes", "dst", "dsm"),
        dst_axes=AXES,
    )


def sweep_points(args) -> list[tuple[float, float]]:
    diagonal = [(t, t) for t in args.grid]
    if args.inversions:
        diagonal += [(0.01, 0.001), (0.001, 0.01)]
    return diagonal


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--grid",
        type=float,
        nargs="+",
        default=[0.001, 0.01, 0.05, 0.1, 0.2, 0.3],
        help="values used for e1 = e2",
    )
    parser.add_argument("--eps3", type=float, default=0.1, help="weakness of the chain rule")
    parser.add_argument(
        "--no-inversions",
        dest="inversions",
        action="store_false",
        help="skip the asymmetric (0.01, 0.001) rows",
    )
    args = parser.parse_args()

    header = (
        f"{'e1':>7} {'e2':>7} | {'bayes fly':>10} {'bayes not':>10} |"
        f" {'dst Bel(f)':>10} {'dst Pl(f)':>10} {'conflict':>8} |"
        f" {'dsm Bel(f)':>10} {'dsm Pl(f)':>10} {'conflict':>8}"
    )
    print(header)
    print("-" * len(header))
    for e1, e2 in sweep_points(args):
        report = run_scenario(scenario(e1, e2, args.eps3))
        bayes = report.engine("bayes")
        dst = report.engine("dst")
        dsm = report.engine("dsm")
        fly = bayes.estimates.p_fly if bayes.estimates else float("nan")
        not_fly = bayes.estimates.p_not_fly if bayes.estimates else float("nan")
        dst_f = dst.queries[0]
        dsm_f = dsm.queries[0]
        print(
            f"{e1:>7.3g} {e2:>7.3g} | {float(fly):>10.6f} {float(not_fly):>10.6f} |"
            f" {dst_f.bel:>10.6f} {dst_f.pl:>10.6f} {dst.conflict_mass:>8.4f} |"
            f" {dsm_f.bel:>10.6f} {dsm_f.pl:>10.6f} {dsm.conflict_mass:>8.4f}"
        )


if __name__ == "__main__":
    main()
