"""Syllabify al-qalamu under ONS >> FILL and print each stage of the derivation."""

import argparse

from otfsm import build_fill, build_gen_syllabification, build_ons, enumerate_language
from otfsm.oracle import score
from otfsm.optimize import trace_derivation


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--segments", default="a l q a l a m u")
    parser.add_argument("--vowels", default="a,u")
    parser.add_argument("--show", type=int, default=8, help="candidates to list with their marks")
    args = parser.parse_args()

    gen = build_gen_syllabification(args.segments.split(), args.vowels.split(","))
    constraints = [build_ons(gen.alphabet), build_fill(gen.alphabet)]
    candidates = enumerate_language(gen, gen.num_states).strings
    print(f"GEN: {gen.num_states} states, {len(gen.arcs)} arcs, {len(candidates)} candidates")

    ranked = sorted((score(c, constraints) for c in candidates), key=lambda r: r.vector, reverse=True)
    for rec in ranked[: args.show]:
        print(f"  {rec.vector}  {' '.join(rec.candidate)}")

    trace = trace_derivation(gen, constraints)
    for name, m in (("surface", trace.surface), ("pruned", trace.pruned), ("result", trace.result)):
        print(f"{name:>8}: {m.num_states} states, {len(m.arcs)} arcs")
    print(f"harmony at the final state: {trace.harmony}")
    print(f"comparisons: {trace.annotation.comparisons}")
    for cand in enumerate_language(trace.result, gen.num_states).strings:
        print("optimum:", " ".join(cand))


if __name__ == "__main__":
    main()
