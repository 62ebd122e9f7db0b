"""Solver sweeps over graph families, with CSV/JSON reports.

Config document (JSON)::

    {
      "families": [
        {"name": "cycle", "sizes": [3, 4, 5]},
        {"name": "cycle", "min_size": 3, "max_size": 12},
        {"name": "random", "n": [18], "max_degree": 3, "seeds": [1, 2, 3]},
        {"name": "regular", "n": [12, 16], "degree": 3, "seeds": [0, 1]}
      ],
      "algorithms": ["branching", "brute_force"],
      "timeout": 60,
      "workers": 1,
      "rand_c": 3.0
    }

``path`` and ``complete`` take sizes like ``cycle``.  Instances are expanded
in config order (family, then size, then seed) and each instance produces
one record per algorithm, in the order the algorithms are listed.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

from .combinatorics import SolverRefusal
from .graph import Graph, generate
from .solvers import (
    SolveOutcome,
    SolveTimeout,
    solve_auto,
    solve_bounded_det,
    solve_bounded_rand,
    solve_branching,
    solve_brute_force,
    solve_dp,
    solve_max_deg2,
)
from .state import ContractViolation

DEFAULT_TIMEOUT = 60.0

SIZED_FAMILIES = ("cycle", "path", "complete")
SEEDED_FAMILIES = ("random", "regular")
ALGORITHMS = ("branching", "brute_force", "dp", "max_deg2", "bounded_det", "bounded_rand", "auto")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    family: str
    n: int
    param: int | None  # max degree for "random", degree for "regular"
    seed: int | None

    def build(self) -> Graph:
        if self.family in SIZED_FAMILIES:
            return generate(self.family, k=self.n)
        if self.family == "random":
            return generate("random", n=self.n, max_degree=self.param, seed=self.seed)
        return generate("regular", n=self.n, degree=self.param, seed=self.seed)


@dataclass
class BenchRecord:
    family: str
    n: int
    max_degree: int
    seed: int | None
    algorithm: str
    verdict: str
    nodes: int
    assigns: int
    elapsed_ms: float
    base: float
    # search traces are kept for inspection but never emitted in reports
    trace: dict | None = field(default=None, compare=False, repr=False)


FIELDS = [f.name for f in fields(BenchRecord) if f.name != "trace"]


@dataclass
class BenchConfig:
    instances: list[Instance]
    algorithms: list[str]
    timeout: float = DEFAULT_TIMEOUT
    workers: int = 1
    rand_c: float = 3.0

    @classmethod
    def from_dict(cls, doc: dict) -> BenchConfig:
        algos = list(doc.get("algorithms", []))
        for a in algos:
            if a not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {a!r}")
        timeout = float(doc.get("timeout", DEFAULT_TIMEOUT))
        if timeout <= 0:
            raise ConfigError("timeout must be positive")
        workers = int(doc.get("workers", 1))
        if workers < 1:
            raise ConfigError("workers must be >= 1")
        instances = []
        for fam in doc.get("families", []):
            instances.extend(_expand_family(fam))
        return cls(instances, algos, timeout, workers, float(doc.get("rand_c", 3.0)))

    @classmethod
    def from_json(cls, text: str) -> BenchConfig:
        return cls.from_dict(json.loads(text))


def _as_list(x) -> list[int]:
    return [int(v) for v in (x if isinstance(x, list) else [x])]


def _expand_family(fam: dict) -> list[Instance]:
    name = fam.get("name")
    if name in SIZED_FAMILIES:
        if "sizes" in fam:
            sizes = _as_list(fam["sizes"])
        elif "min_size" in fam and "max_size" in fam:
            sizes = list(range(int(fam["min_size"]), int(fam["max_size"]) + 1))
        else:
            raise ConfigError(f"family {name!r} needs 'sizes' or 'min_size'/'max_size'")
        return [Instance(name, k, None, None) for k in sizes]
    if name in SEEDED_FAMILIES:
        key = "max_degree" if name == "random" else "degree"
        try:
            ns = _as_list(fam["n"])
            param = int(fam[key])
            seeds = _as_list(fam["seeds"])
        except KeyError as e:
            raise ConfigError(f"family {name!r} is missing {e.args[0]!r}") from None
        return [Instance(name, n, param, s) for n in ns for s in seeds]
    raise ConfigError(f"unknown family {name!r}")


def _run_algorithm(name: str, g: Graph, deadline: float, seed: int | None, rand_c: float) -> SolveOutcome:
    if name == "branching":
        return solve_branching(g, deadline)
    if name == "brute_force":
        return solve_brute_force(g, deadline)
    if name == "dp":
        return solve_dp(g, deadline)
    if name == "max_deg2":
        return solve_max_deg2(g)
    if name == "bounded_det":
        return solve_bounded_det(g, deadline)
    if name == "bounded_rand":
        return solve_bounded_rand(g, rand_c, seed or 0, deadline=deadline)
    return solve_auto(g, deadline)


def _base(nodes: int, n: int) -> float:
    return nodes ** (1 / n) if n > 0 and nodes > 0 else 1.0


def run_one(inst: Instance, algorithm: str, timeout: float, rand_c: float = 3.0) -> BenchRecord:
    g = inst.build()
    t0 = time.perf_counter()
    trace = None
    try:
        out = _run_algorithm(algorithm, g, time.monotonic() + timeout, inst.seed, rand_c)
        verdict, stats = out.verdict.value, out.stats
        if algorithm == "branching":
            trace = {"maxgap": stats.maxgap_trace, "surplus": stats.surplus_trace}
    except SolveTimeout as exc:
        verdict, stats = "timeout", exc.stats
    except (ContractViolation, SolverRefusal):
        verdict, stats = "error", None
    elapsed_ms = (time.perf_counter() - t0) * 1000
    nodes = max(stats.nodes, 1) if stats else 1
    return BenchRecord(
        family=inst.family,
        n=g.n,
        max_degree=g.max_degree(),
        seed=inst.seed,
        algorithm=algorithm,
        verdict=verdict,
        nodes=nodes,
        assigns=stats.assigns if stats else 0,
        elapsed_ms=round(elapsed_ms, 3),
        base=_base(nodes, g.n),
        trace=trace,
    )


def _run_task(task: tuple) -> BenchRecord:
    return run_one(*task)


def run_suite(config: BenchConfig | dict, keep_traces: bool = False) -> list[BenchRecord]:
    if isinstance(config, dict):
        config = BenchConfig.from_dict(config)
    tasks = [(inst, algo, config.timeout, config.rand_c) for inst in config.instances for algo in config.algorithms]
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_run_task, tasks))
    else:
        records = [_run_task(t) for t in tasks]
    if not keep_traces:
        for r in records:
            r.trace = None
    return records


# ---------------------------------------------------------------------------
# reports

def emit_report(records: list[BenchRecord], fmt: str = "csv") -> str:
    if fmt == "json":
        return json.dumps([{k: asdict(r)[k] for k in FIELDS} for r in records], indent=1) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown report format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIELDS)
    for r in records:
        writer.writerow([_cell(getattr(r, k)) for k in FIELDS])
    return buf.getvalue()


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_report(text: str, fmt: str = "csv") -> list[BenchRecord]:
    if fmt == "json":
        return [BenchRecord(**row) for row in json.loads(text)]
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        out.append(BenchRecord(
            family=row["family"],
            n=int(row["n"]),
            max_degree=int(row["max_degree"]),
            seed=int(row["seed"]) if row["seed"] else None,
            algorithm=row["algorithm"],
            verdict=row["verdict"],
            nodes=int(row["nodes"]),
            assigns=int(row["assigns"]),
            elapsed_ms=float(row["elapsed_ms"]),
            base=float(row["base"]),
        ))
    return out


def write_traces(records: list[BenchRecord]) -> str:
    """JSON document of the search traces kept on ``records``."""
    rows = [
        {"family": r.family, "n": r.n, "seed": r.seed, "algorithm": r.algorithm, **r.trace}
        for r in records
        if r.trace is not None
    ]
    return json.dumps(rows) + "\n"
