"""Search seeded random graphs for the two minimum-dominating-set counterexamples
and write the first hit for each property as an edge-list fixture."""

import argparse
from pathlib import Path

from domatic.combinatorics import gamma_brute, search_prop2_witnesses, three_partitions
from domatic.graph import write_graph

HEADER = {
    "a": "prop_a: some minimum dominating set is not a block of any three-way dominating partition",
    "b": "prop_b: every block of every three-way dominating partition is larger than gamma",
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start-seed", type=int, default=0)
    ap.add_argument("--max-candidates", type=int, default=20000)
    ap.add_argument("--out-dir", default=str(Path(__file__).resolve().parent.parent / "tests" / "fixtures"))
    args = ap.parse_args()

    found = search_prop2_witnesses(args.start_seed, args.max_candidates)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for key in ("a", "b"):
        if key not in found:
            print(f"prop_{key}: no witness among {args.max_candidates} candidates")
            continue
        seed, g = found[key]
        gamma, _ = gamma_brute(g)
        comments = [HEADER[key], f"candidate seed={seed} gamma={gamma} partitions={len(three_partitions(g))}"]
        path = out / f"prop2_{key}.col"
        path.write_text(write_graph(g, comments))
        print(f"prop_{key}: seed {seed}, n={g.n}, m={g.num_edges} -> {path}")


if __name__ == "__main__":
    main()
