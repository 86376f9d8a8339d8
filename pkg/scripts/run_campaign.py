"""Randomized oracle campaign with a summary of instance sizes and comparison counts."""

import argparse
import json
import math
import time
from dataclasses import asdict, fields

from otfsm.harmony import ComparisonCounter
from otfsm.optimize import label_nodes
from otfsm.oracle import InstanceConfig, check_equivalence, random_instance
from otfsm.product import product_all


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-n", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    for f in fields(InstanceConfig):
        parser.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    parser.add_argument("--json", action="store_true", help="emit a machine-readable summary")
    args = parser.parse_args()
    config = InstanceConfig(**{f.name: getattr(args, f.name) for f in fields(InstanceConfig)})

    start = time.perf_counter()
    failures, sizes, ratios = [], [], []
    for i in range(args.n):
        inst = random_instance(args.seed + i, config)
        report = check_equivalence(inst.gen, inst.constraints, inst.max_len, inst.seed)
        if not report.match:
            failures.append(report.to_dict())
        sizes.append(len(report.oracle_candidates))
        surface = product_all([inst.gen, *inst.constraints])
        counter = ComparisonCounter()
        label_nodes(surface, counter)
        if surface.arcs:
            ratios.append(counter.count / (len(surface.arcs) * (1 + math.log2(surface.num_states + 1))))
    summary = {
        "config": asdict(config),
        "instances": args.n,
        "seed": args.seed,
        "matches": args.n - len(failures),
        "max_optima": max(sizes),
        "max_comparisons_per_arc_log": round(max(ratios), 4),
        "elapsed_seconds": round(time.perf_counter() - start, 3),
        "failures": failures[:5],
    }
    if args.json:
        print(json.dumps(summary, indent=2))
    else:
        for key, value in summary.items():
            if key != "failures":
                print(f"{key}: {value}")
        for f in summary["failures"]:
            print("mismatch:", f)
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
