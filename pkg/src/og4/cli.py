"""Command-line front end: ``og4 construct | verify | table2``.

Exit codes:
    0  success (all checks pass)
    1  checks ran but at least one failed
    2  inadmissible parameters
    3  budget exceeded (a certificate bundle is written where possible)
    4  malformed input file
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import constructions as C
from . import verify as V
from .graph import (
    DEFAULT_COSET_BOUND,
    DEFAULT_VERTEX_BUDGET,
    BudgetExceeded,
    Graph,
    env_budget,
    export,
)
from .permgroup import Permutation

SCHEMA = 1

EXIT_OK, EXIT_FAIL, EXIT_PARAMS, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3, 4

EXTENSIONS = {"edge_list": "edges", "graph6": "g6", "dot_oriented": "dot"}


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    params: dict = field(default_factory=dict)
    vertex_budget: int = DEFAULT_VERTEX_BUDGET
    coset_index_bound: int = DEFAULT_COSET_BOUND
    order_bound: int = V.DEFAULT_ORDER_BOUND
    out: Path | None = None
    export: str | None = None

    def __post_init__(self):
        for name in ("vertex_budget", "coset_index_bound", "order_bound"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _params(args) -> dict:
    return {k: getattr(args, k) for k in ("p", "n") if getattr(args, k, None) is not None}


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        family=getattr(args, "family", None),
        params=_params(args),
        vertex_budget=args.vertex_budget or env_budget("vertices", DEFAULT_VERTEX_BUDGET),
        coset_index_bound=args.coset_bound or env_budget("cosets", DEFAULT_COSET_BOUND),
        order_bound=args.order_bound or env_budget("order", V.DEFAULT_ORDER_BOUND),
        out=Path(args.out) if getattr(args, "out", None) else None,
        export=getattr(args, "export", None),
    )


def _stem(fid: str, params: dict) -> str:
    return fid + "".join(f"_{k}{v}" for k, v in sorted(params.items()))


def _write(path: Path, data: bytes | str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(data, str):
        data = data.encode()
    path.write_bytes(data)


def certificate_bundle(inst: C.FamilyInstance) -> dict:
    d = inst.data
    return {
        "schema": SCHEMA,
        "construction": inst.family_id,
        "parameters": inst.params,
        "tier": "certificate",
        "description": inst.description,
        "expected": {"case": inst.expected[0], "k": inst.expected[1]},
        "T": f"PSL(2,{d.p}) on the projective line, infinity = {d.p}",
        "k": d.k,
        "degree": d.degree,
        "block_degree": d.block_degree,
        "generators": {"a": d.pair.a.images, "b": d.pair.b.images},
        "phi": d.phi.images,
        "y": d.y.images,
        "V": [v.images for v in d.V.generators],
        "H": [x.images for x in d.H.generators],
        "printed": d.printed,
        "order_H": d.H.order(),
    }


# ---------------------------------------------------------------------------
# construct


def cmd_construct(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    inst = C.build_family(cfg.family, cfg.params)
    fid = inst.family_id
    stem = _stem(fid, inst.params)
    out = cfg.out
    if inst.tier == "certificate":
        path = (out or Path(stem)).with_suffix(".certificate.json")
        _write(path, dumps(certificate_bundle(inst)))
        if cfg.export:
            print(f"{fid}: graph far beyond the vertex budget; certificate bundle written to {path}",
                  file=sys.stderr)
            return EXIT_BUDGET
        print(f"{fid}: certificate bundle written to {path}", file=stdout)
        return EXIT_OK
    graph = inst.pair.graph
    meta = {
        "schema": SCHEMA,
        "construction": fid,
        "parameters": inst.params,
        "vertex_count": graph.n,
        "valency": graph.valency(),
    }
    fmt = cfg.export or "edge_list"
    orientation = None
    if fmt == "dot_oriented":
        orientation = V.check_oriented(inst.pair).arcs()
    gpath = (out or Path(stem)).with_suffix("." + EXTENSIONS[fmt])
    _write(gpath, export(graph, fmt, orientation))
    _write(gpath.with_suffix(".json"), dumps(meta))
    print(f"{fid}: {graph.n} vertices, valency {graph.valency()}, written to {gpath}", file=stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def load_input(path: Path) -> V.OrientedPair:
    """Read ``{"vertices": n, "edges": [[u, v], ...], "generators": [[images], ...]}``."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from None
    if not isinstance(raw, dict):
        raise InputError("input must be a JSON object")
    try:
        n = int(raw["vertices"])
        edges = [(int(u), int(v)) for u, v in raw["edges"]]
        gens = [Permutation(np.array(g, dtype=np.intp)) for g in raw["generators"]]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed input: {e}") from None
    if n <= 0 or not gens:
        raise InputError("need a positive vertex count and at least one generator")
    if any(not (0 <= u < n and 0 <= v < n) for u, v in edges):
        raise InputError("edge endpoint out of range")
    if any(g.degree != n for g in gens):
        raise InputError("generator degree differs from the vertex count")
    graph = Graph.from_edges(n, edges)
    try:
        return V.OrientedPair(graph, gens, name=Path(path).stem)
    except (V.VerifyError, ValueError) as e:
        raise InputError(str(e)) from None


def verify_pair(pair: V.OrientedPair, order_bound: int) -> C.VerificationReport:
    """Generic check list for a pair read from a file."""
    rep = C.VerificationReport(pair.name or "input", {}, "explicit")
    g = pair.graph
    rep.add("valency_4", g.valency() == 4, {"vertices": g.n})
    rep.add("connected", g.is_connected())
    if g.valency() != 4 or not g.is_connected():
        return rep
    o = V.check_oriented(pair)
    rep.add("oriented", o.is_in_OG4, {"arc_orbits": o.arc_orbit_count, "vertex_transitive": o.vertex_transitive})
    if not o.is_in_OG4:
        return rep
    rep.add("stabilizer_orbits_2+2", sorted(map(len, o.vertex_stabilizer_orbits)) == [2, 2],
            {"orbits": o.vertex_stabilizer_orbits})
    sa = V.s_arc_report(pair, o)
    rep.add("s_arcs_regular", sa.regular, {"s": sa.s, "|G|": pair.order()})
    rep.add("stabilizer_chain_2^i", sa.chain_is_two_power, {"chain": sa.stabilizer_chain})
    minimal = V.minimal_normal_subgroups(pair.group, order_bound)
    bt = V.basic_type(pair, order_bound, minimal)
    rep.add("basic", bt.type != "not-basic", bt.minimal_normal)
    rep.result = {"basic_type": bt.type, "order": pair.order(), "vertices": g.n, "s": sa.s}
    if bt.type == "biquasiprimitive":
        sc = V.classify_socle_case(pair, order_bound, minimal)
        rep.result.update({"case": sc.case, "k": sc.k, "T": sc.T})
    return rep


def _summary(report: dict, stdout) -> None:
    res = report.get("result", {})
    status = "PASS" if report.get("passed") else "FAIL"
    print(f"{report.get('construction')} {report.get('params')} [{report.get('tier')}] {status}", file=stdout)
    for c in report.get("checks", []):
        print(f"  {c['status']:>4}  {c['name']}", file=stdout)
    if "case" in res:
        print(f"  case ({res['case']}, {res['k']})", file=stdout)


def cmd_verify(cfg: RunConfig, input_path: str | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    if input_path:
        pair = load_input(Path(input_path))
        rep = verify_pair(pair, cfg.order_bound)
    else:
        inst = C.build_family(cfg.family, cfg.params)
        rep = C.verify_instance(inst, cfg.order_bound)
    report = {"schema": SCHEMA, **rep.to_json()}
    if cfg.out:
        _write(cfg.out, dumps(report))
    _summary(report, stdout)
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# table2


def load_params_file(path: str) -> dict[str, list[dict]]:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from None
    if not isinstance(raw, dict):
        raise InputError("params file must map family ids to lists of parameter objects")
    out = {}
    for fid, rows in raw.items():
        rows = rows if isinstance(rows, list) else [rows]
        out[str(fid).upper()] = [r if isinstance(r, dict) else {"value": r} for r in rows]
    return out


def group_rows(instances: list[dict]) -> list[dict]:
    """One row per family; a row is verified when every instance of it is."""
    rows: dict[str, dict] = {}
    for inst in instances:
        fid = inst["construction"]
        row = rows.setdefault(fid, {"construction": fid, "expected": inst["expected"], "instances": []})
        row["instances"].append(inst)
    for row in rows.values():
        insts = row["instances"]
        row["passed"] = all(i["passed"] for i in insts)
        cases = {(i["result"]["case"], i["result"]["k"]) for i in insts if "case" in (i.get("result") or {})}
        row["computed"] = [list(c) for c in sorted(cases)]
    return list(rows.values())


def format_matrix(rows: list[dict]) -> str:
    head = ("family", "params", "tier", "expected", "computed", "status")
    table = [head]
    for r in rows:
        insts = r["instances"]
        params = "; ".join(",".join(f"{k}={v}" for k, v in sorted(i["params"].items())) for i in insts)
        tiers = sorted({i.get("tier") or "-" for i in insts})
        comp = " ".join(f"({c},{k})" for c, k in r["computed"]) or "-"
        exp = "({},{})".format(*r["expected"])
        if r["passed"]:
            status = "verified"
        elif any(i.get("error") for i in insts):
            status = "error"
        else:
            status = "FAILED"
        table.append((r["construction"], params, "/".join(tiers), exp, comp, status))
    widths = [max(len(str(row[i])) for row in table) for i in range(len(head))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip() for row in table]
    lines.insert(1, "  ".join("-" * w for w in widths))
    ok = sum(r["passed"] for r in rows)
    n_inst = sum(len(r["instances"]) for r in rows)
    lines.append(f"{ok}/{len(rows)} rows verified ({n_inst} instances)")
    for r in rows:
        for i in r["instances"]:
            if i.get("error"):
                lines.append(f"  {i['construction']} {i['params']}: {i['error']}")
            failed = [c["name"] for c in i.get("checks", []) if c["status"] == "fail"]
            if failed:
                lines.append(f"  {i['construction']} {i['params']}: failed {', '.join(failed)}")
    return "\n".join(lines) + "\n"


def cmd_table2(cfg: RunConfig, params_file: str | None = None, families: str | None = None,
               jobs: int = 1, stdout=None) -> int:
    stdout = stdout or sys.stdout
    params = load_params_file(params_file) if params_file else dict(C.DEFAULT_PARAMS)
    if families:
        wanted = [f.strip().upper() for f in families.split(",") if f.strip()]
        params = {f: params.get(f, C.DEFAULT_PARAMS.get(f, [{}])) for f in wanted}
    rows = group_rows(C.table2_sweep(params, jobs=jobs, order_bound=cfg.order_bound))
    report = {
        "schema": SCHEMA,
        "rows": rows,
        "verified": sum(r["passed"] for r in rows),
        "total": len(rows),
    }
    if cfg.out:
        _write(cfg.out, dumps(report))
    stdout.write(format_matrix(rows))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="og4",
        description="Build and verify basic biquasiprimitive oriented 4-valent graph families.",
        epilog="exit codes: 0 pass, 1 checks failed, 2 inadmissible parameters, "
               "3 budget exceeded, 4 malformed input. "
               "Budgets default from OG4_BUDGET_VERTICES, OG4_BUDGET_COSETS, OG4_BUDGET_ORDER.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vertex-budget", type=int, default=None)
    common.add_argument("--coset-bound", type=int, default=None)
    common.add_argument("--order-bound", type=int, default=None,
                        help="largest group order for brute-force normal subgroup work")
    sub = parser.add_subparsers(dest="command", required=True)

    def family_args(p, required=True):
        p.add_argument("family", nargs=None if required else "?", help=", ".join(C.FAMILIES))
        p.add_argument("--p", type=int)
        p.add_argument("--n", type=int)

    c = sub.add_parser("construct", parents=[common], help="build an instance and write it out")
    family_args(c)
    c.add_argument("--export", choices=sorted(EXTENSIONS))
    c.add_argument("--out", help="output path stem")

    v = sub.add_parser("verify", parents=[common], help="run the full check list")
    family_args(v, required=False)
    v.add_argument("--input", help="JSON file with vertices, edges and generators")
    v.add_argument("--out", help="write the JSON report here")

    t = sub.add_parser("table2", parents=[common], help="sweep all families")
    t.add_argument("--params-file")
    t.add_argument("--families", help="comma separated family ids")
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("--out", help="write the JSON report here")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        # builders (and worker processes) read budgets from the environment
        os.environ["OG4_BUDGET_VERTICES"] = str(cfg.vertex_budget)
        os.environ["OG4_BUDGET_COSETS"] = str(cfg.coset_index_bound)
        if args.command == "construct":
            return cmd_construct(cfg)
        if args.command == "verify":
            if not args.input and not args.family:
                print("verify needs a family or --input", file=sys.stderr)
                return EXIT_PARAMS
            return cmd_verify(cfg, args.input)
        return cmd_table2(cfg, args.params_file, args.families, max(1, args.jobs))
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except C.InadmissibleParameters as e:
        print(f"inadmissible parameters: {e}", file=sys.stderr)
        return EXIT_PARAMS
    except (BudgetExceeded, V.OrderBoundExceeded) as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
