"""Command line entry point: ``linkcensus <command> ...``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .graphs import TheoremViolation, census
from .harness import SampleConfig, find_witnesses, run_sweep, verify_fixtures
from .io import ParseError, dumps, load_embedding, save_embedding
from .matroid import all_circuits, circuit_geometry_correspondence, verify_weak_elimination
from .sphere import crossing_set, project

log = logging.getLogger("linkcensus")


def _seed(args) -> int:
    env = os.environ.get("LINKCENSUS_SEED")
    return int(env) if env else args.seed


def _table(report) -> str:
    lines = [f"{'triangle':>8}  {'quadrilateral':>13}  lk  type"]
    for e in report.entries:
        quad = "".join(map(str, e.quadrilateral))
        kind = e.link_type.value if e.link_type else "?"
        lines.append(f"{e.label:>8}  {quad:>13}  {e.linking_number:>2}  {kind}")
    lines.append(
        f"nontrivial={report.nontrivial_count} total_linking={report.total_linking} "
        f"torus24={report.torus24_count}"
    )
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    emb = load_embedding(args.file)
    rep = census(emb)
    if isinstance(rep, TheoremViolation):
        sys.stdout.write(dumps(rep.to_json()))
        return 1
    sys.stdout.write(_table(rep) if args.format == "table" else dumps(rep.to_json()))
    return 0


def cmd_project(args) -> int:
    emb = load_embedding(args.file)
    imm = project(emb, args.center)
    data = imm.to_json()
    data["crossings"] = [c.to_json() for c in crossing_set(imm, emb)]
    sys.stdout.write(dumps(data))
    return 0


def cmd_matroid(args) -> int:
    emb = load_embedding(args.file)
    circuits = all_circuits(emb)
    corr = circuit_geometry_correspondence(emb, circuits)
    c3 = verify_weak_elimination(circuits)
    data = {
        "circuits": [c.to_json() for c in circuits],
        "correspondence": corr.to_json(),
        "weak_elimination": c3.to_json(limit=args.witness_limit),
    }
    sys.stdout.write(dumps(data))
    return 0 if corr.ok and c3.ok else 1


def cmd_sweep(args) -> int:
    cfg = SampleConfig(_seed(args), args.count, args.bound, args.max_rejects)
    stats = run_sweep(cfg, jobs=args.jobs)
    text = dumps(stats.to_json())
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if stats.violations:
        log.error("%d violations found", len(stats.violations))
        return 1
    return 0


def cmd_witness(args) -> int:
    targets = {int(t) for t in args.targets.split(",") if t.strip()}
    cfg = SampleConfig(_seed(args), 1, args.bound)
    found = find_witnesses(targets, cfg, args.budget)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for n, ef in found.items():
        path = out / f"witness_{n}.json"
        save_embedding(ef, path)
        print(f"{n}: {path} ({ef.name})")
    return 0


def cmd_fixtures(args) -> int:
    results = verify_fixtures()
    bad = 0
    for name, err in results.items():
        print(f"{name}: {'ok' if err is None else 'FAIL ' + err}")
        bad += err is not None
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="linkcensus", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="link census of an embedding file")
    a.add_argument("file")
    a.add_argument("--format", choices=("json", "table"), default="json")
    a.set_defaults(func=cmd_analyze)

    a = sub.add_parser("project", help="spherical projection and crossings")
    a.add_argument("file")
    a.add_argument("--center", type=int, default=7)
    a.set_defaults(func=cmd_project)

    a = sub.add_parser("matroid", help="circuits, correspondence and weak elimination")
    a.add_argument("file")
    a.add_argument("--witness-limit", type=int, default=20)
    a.set_defaults(func=cmd_matroid)

    a = sub.add_parser("sweep", help="random invariant sweep")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--count", type=int, default=10_000)
    a.add_argument("--bound", type=int, default=1000)
    a.add_argument("--max-rejects", type=int, default=1000)
    a.add_argument("--jobs", type=int, default=1)
    a.add_argument("--out")
    a.set_defaults(func=cmd_sweep)

    a = sub.add_parser("witness", help="write an embedding for each link count")
    a.add_argument("--targets", default="1,2,3,4,5")
    a.add_argument("--budget", type=int, default=2000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--bound", type=int, default=1000)
    a.add_argument("--out-dir", default=".")
    a.set_defaults(func=cmd_witness)

    a = sub.add_parser("fixtures", help="check the bundled reference embeddings")
    a.add_argument("--verify", action="store_true", default=True)
    a.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
