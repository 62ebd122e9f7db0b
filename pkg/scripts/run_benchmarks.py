"""Run every shipped benchmark config and write CSV reports plus branching traces."""

import argparse
from pathlib import Path

from domatic.bench import BenchConfig, emit_report, run_suite, write_traces

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("configs", nargs="*", default=sorted(str(p) for p in (ROOT / "configs").glob("*.json")))
    ap.add_argument("--out-dir", default=str(ROOT / "results"))
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for cfg_path in args.configs:
        cfg = BenchConfig.from_json(Path(cfg_path).read_text())
        records = run_suite(cfg, keep_traces=True)
        stem = Path(cfg_path).stem
        (out / f"{stem}.csv").write_text(emit_report(records, "csv"))
        (out / f"{stem}_traces.json").write_text(write_traces(records))
        worst = max((r.base for r in records if r.algorithm == "branching"), default=float("nan"))
        print(f"{stem}: {len(records)} records, worst branching base {worst:.4f}")


if __name__ == "__main__":
    main()
