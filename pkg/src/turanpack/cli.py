"""Command line front end.

One subcommand per task; results print as one JSON record per line
(tables also render to CSV, construct also to bare graph6). Identical
command plus seed gives byte-identical output: timing fields stay null
unless --timing is passed, dict keys are sorted, and every sweep emits in
a canonical order.

Exit codes: 0 success, 2 precondition violation or malformed input,
3 size-guard refusal, 4 internal soundness alarm.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from dataclasses import dataclass
from typing import Any

from ._version import __version__
from .codec import parse_graph_text, to_graph6
from .constructions import build_family, build_ref, claim_holds
from .errors import PreconditionError, SizeGuardError, SoundnessAlarm
from .formulas import REGIME_HUB_JOIN, FormulaQuery, binom2, dispatch_formula
from .graphs import Graph, VertexSet
from .oracle import exhaustive_ex_sizes
from .packing import (EquitableColoring, PackingWitness,
                      equitable_coloring, equitable_coloring_exact,
                      find_clique_packing, find_disjoint_independent_sets,
                      verify_equitable_coloring, verify_witness)
from .probes import probe_dichotomy, probe_value_sweep
from .records import (ResultRecord, certificate_payload, coloring_payload,
                      graph_payload, stamp, vertex_set_payload,
                      witness_payload)
from .shifting import StructureCertificate, resolve, verify_certificate

ENV_GUARD = "TURANPACK_GUARD_N"
DEFAULT_SEED = 0

CLOSED_FORM_NOTE = (
    "value is the hub-join count 3+3(n-3)+t(n-3,p-1); the variant closed "
    "form 3+3(n-1)+t(n-3,p-1) overstates it by exactly 6")

TABLE_COLUMNS = ("pattern", "n", "p", "value", "regime", "construction",
                 "note", "verified")


@dataclass
class Settings:
    seed: int
    guard_n: int | None
    budget: int | None
    fmt: str
    verify: bool
    timing: bool


# -- parameter plumbing --------------------------------------------------------


def _coerce(raw: str) -> Any:
    if re.fullmatch(r"-?\d+", raw):
        return int(raw)
    return raw


def parse_kv(tokens: list[str]) -> dict[str, Any]:
    params: dict[str, Any] = {}
    for tok in tokens:
        key, sep, raw = tok.partition("=")
        if not sep or not key:
            raise PreconditionError(f"expected key=value, got {tok!r}")
        params[key] = _coerce(raw)
    return params


def parse_span(value: Any, name: str) -> list[int]:
    """A single integer or an inclusive a:b range."""
    if isinstance(value, int):
        return [value]
    m = re.fullmatch(r"(-?\d+):(-?\d+)", str(value))
    if not m:
        raise PreconditionError(f"{name} must be an integer or a:b range, got {value!r}")
    return list(range(int(m.group(1)), int(m.group(2)) + 1))


def load_config(path: str) -> dict[str, Any]:
    config: dict[str, Any] = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, raw = line.partition("=")
            if not sep:
                raise PreconditionError(f"config line must be key=value: {line!r}")
            config[key.strip()] = _coerce(raw.strip())
    return config


def resolve_settings(args: argparse.Namespace) -> Settings:
    config = load_config(args.config) if args.config else {}

    def pick(*values):
        for value in values:
            if value is not None:
                return value
        return None

    env_guard = os.environ.get(ENV_GUARD)
    if env_guard is not None:
        try:
            env_guard = int(env_guard)
        except ValueError:
            raise PreconditionError(f"{ENV_GUARD} must be an integer, got {env_guard!r}")
    return Settings(
        seed=pick(args.seed, config.get("seed"), DEFAULT_SEED),
        guard_n=pick(args.guard_n, env_guard, config.get("guard_n")),
        budget=pick(args.budget, config.get("budget")),
        fmt=pick(args.format, config.get("format"), "json"),
        verify=args.verify,
        timing=args.timing,
    )


def read_graph(args: argparse.Namespace) -> Graph:
    if not args.input:
        raise PreconditionError("this command needs --input <path|->")
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as handle:
            text = handle.read()
    return parse_graph_text(text)


def emit(record: ResultRecord, settings: Settings, started: float) -> None:
    if settings.timing:
        stamp(record, started)
    print(record.to_json_line())


def _ref_dict(ref) -> dict | None:
    if ref is None:
        return None
    return {"family": ref.family, "parameters": dict(ref.params),
            "complemented": ref.complemented}


def _query_from(pattern: str, params: dict[str, Any]) -> FormulaQuery:
    extra = set(params) - {"n", "p", "q", "k"}
    if extra:
        raise PreconditionError(f"unknown parameters: {', '.join(sorted(extra))}")
    return FormulaQuery(pattern, n=params.get("n"), p=params.get("p"),
                        q=params.get("q"), k=params.get("k"))


# -- subcommands ---------------------------------------------------------------


def cmd_formula(args, settings: Settings, started: float) -> int:
    if not args.tokens:
        raise PreconditionError("usage: formula <pattern> key=value ...")
    pattern = args.tokens[0]
    params = parse_kv(args.tokens[1:])
    value = dispatch_formula(_query_from(pattern, params))
    record = ResultRecord(
        command="formula",
        parameters={"pattern": pattern, **params},
        outcome="value",
        payload={"value": value.value, "regime": value.regime,
                 "construction": _ref_dict(value.construction)},
    )
    emit(record, settings, started)
    return 0


def _table_rows(pattern: str, params: dict[str, Any],
                settings: Settings) -> list[dict[str, Any]]:
    if pattern == "kKp-tight":
        raise PreconditionError(
            "kKp-tight fixes n = k*p; use the formula subcommand")
    n_span = parse_span(params.get("n"), "n") if "n" in params else [None]
    p_span = parse_span(params.get("p"), "p") if "p" in params else [None]
    fixed = {key: params[key] for key in ("k", "q") if key in params}
    rows = []
    for p in p_span:
        for n in n_span:
            value = dispatch_formula(_query_from(pattern, {
                **fixed,
                **({"n": n} if n is not None else {}),
                **({"p": p} if p is not None else {}),
            }))
            note = ""
            if pattern == "4Kp" and value.regime == REGIME_HUB_JOIN:
                note = CLOSED_FORM_NOTE
            verified = ""
            if settings.verify and value.construction is not None:
                built, desc = build_ref(value.construction)
                if binom2(built.n) - built.edge_count() != value.value:
                    raise SoundnessAlarm(
                        f"complement edge count of {desc.family} disagrees "
                        f"with the formula value at n={n}, p={p}")
                if claim_holds(built, desc, guard_n=settings.guard_n) is False:
                    raise SoundnessAlarm(
                        f"construction {desc.family} fails its freeness "
                        f"claim at n={n}, p={p}")
                verified = "yes"
            rows.append({
                "pattern": pattern,
                "n": "" if n is None else n,
                "p": "" if p is None else p,
                "value": value.value,
                "regime": value.regime,
                "construction": value.construction.family if value.construction else "",
                "note": note,
                "verified": verified,
            })
    return rows


def cmd_table(args, settings: Settings, started: float) -> int:
    if not args.tokens:
        raise PreconditionError("usage: table <pattern> n=a:b p=c[:d] ...")
    pattern = args.tokens[0]
    params = parse_kv(args.tokens[1:])
    rows = _table_rows(pattern, params, settings)
    if settings.fmt == "csv":
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=TABLE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(out.getvalue())
        return 0
    if settings.fmt != "json":
        raise PreconditionError("table renders as json or csv")
    record = ResultRecord(
        command="table",
        parameters={"pattern": pattern, **params},
        outcome="value",
        payload={"rows": rows},
    )
    emit(record, settings, started)
    return 0


def cmd_construct(args, settings: Settings, started: float) -> int:
    if not args.tokens:
        raise PreconditionError("usage: construct <family> key=value ...")
    family = args.tokens[0]
    params = parse_kv(args.tokens[1:])
    g, desc = build_family(family, params)
    text = to_graph6(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    if settings.fmt == "graph6":
        print(text)
        return 0
    if settings.fmt != "json":
        raise PreconditionError("construct renders as json or graph6")
    payload = {
        **graph_payload(g),
        "descriptor": {
            "family": desc.family,
            "parameters": desc.parameters,
            "expected_edges": desc.expected_edges,
            "claim": list(desc.claim) if desc.claim else None,
            "claim_side": desc.claim_side,
        },
    }
    if settings.verify:
        payload["claim_verified"] = claim_holds(g, desc, guard_n=settings.guard_n)
    record = ResultRecord(
        command="construct",
        parameters={"family": family, **params},
        outcome="value",
        payload=payload,
    )
    emit(record, settings, started)
    return 0


def cmd_resolve(args, settings: Settings, started: float) -> int:
    params = parse_kv(args.tokens)
    if "p" not in params:
        raise PreconditionError("resolve needs p=<int>")
    g = read_graph(args)
    outcome = resolve(g, params["p"], budget=settings.budget,
                      guard_n=settings.guard_n)
    # resolve re-verifies both outcome kinds before returning.
    parameters = {"p": params["p"], "graph6": to_graph6(g)}
    if isinstance(outcome, PackingWitness):
        record = ResultRecord("resolve", parameters, "witness",
                              witness_payload(outcome))
    else:
        record = ResultRecord("resolve", parameters, "certificate",
                              certificate_payload(outcome))
    emit(record, settings, started)
    return 0


def cmd_pack(args, settings: Settings, started: float) -> int:
    params = parse_kv(args.tokens)
    missing = [key for key in ("k", "p") if key not in params]
    if missing:
        raise PreconditionError(f"pack needs {', '.join(missing)}=<int>")
    mode = params.get("mode", "independent")
    if mode not in ("independent", "clique"):
        raise PreconditionError("mode must be independent or clique")
    g = read_graph(args)
    k, p = params["k"], params["p"]
    if mode == "independent":
        witness = find_disjoint_independent_sets(g, k, p, guard_n=settings.guard_n)
    else:
        witness = find_clique_packing(g, k, p, guard_n=settings.guard_n)
    parameters = {"k": k, "p": p, "mode": mode, "graph6": to_graph6(g)}
    if witness is None:
        record = ResultRecord("pack", parameters, "none", {})
    else:
        report = verify_witness(g, witness, k, p, mode)
        if not report.ok:
            raise SoundnessAlarm(f"pack witness failed verification: {report.violation}")
        record = ResultRecord("pack", parameters, "witness", witness_payload(witness))
    emit(record, settings, started)
    return 0


def _verify_one(obj: dict[str, Any]) -> tuple[bool | None, str]:
    command = obj.get("command")
    outcome = obj.get("outcome")
    parameters = obj.get("parameters", {})
    payload = obj.get("payload", {})
    if outcome == "witness" and command in ("pack", "resolve"):
        g = parse_graph_text(parameters["graph6"])
        sets = tuple(VertexSet.from_members(g.n, members)
                     for members in payload["sets"])
        witness = PackingWitness(sets)
        k = parameters.get("k", len(sets))
        p = parameters.get("p")
        mode = parameters.get("mode", "independent")
        report = verify_witness(g, witness, k, p, mode)
        return report.ok, report.violation or "witness checks out"
    if outcome == "certificate" and command == "resolve":
        g = parse_graph_text(parameters["graph6"])
        cert = StructureCertificate(
            cliques=tuple(VertexSet.from_members(g.n, members)
                          for members in payload["cliques"]),
            isolated=VertexSet.from_members(g.n, payload["isolated"]),
            s=payload["s"],
            edges=payload["edges"],
            max_degree=payload["max_degree"],
        )
        report = verify_certificate(g, cert, parameters["p"])
        return report.ok, report.violation or "certificate checks out"
    if outcome == "witness" and command == "color":
        g = parse_graph_text(parameters["graph6"])
        coloring = EquitableColoring(tuple(
            VertexSet.from_members(g.n, members)
            for members in payload["classes"]))
        report = verify_equitable_coloring(g, coloring)
        return report.ok, report.violation or "coloring checks out"
    if command == "construct" and outcome == "value":
        family = parameters["family"]
        params = {key: value for key, value in parameters.items() if key != "family"}
        g, desc = build_family(family, params)
        if to_graph6(g) != payload["graph6"]:
            return False, "rebuilt graph differs from recorded graph6"
        if g.edge_count() != payload["edges"]:
            return False, "recorded edge count is wrong"
        return True, "construction rebuilt identically"
    return None, "record carries no verifiable payload"


def cmd_verify(args, settings: Settings, started: float) -> int:
    if not args.record:
        raise PreconditionError("verify needs --record <path|->")
    if args.record == "-":
        text = sys.stdin.read()
    else:
        with open(args.record, encoding="utf-8") as handle:
            text = handle.read()
    failures = 0
    for index, line in enumerate(s for s in text.splitlines() if s.strip()):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise PreconditionError(f"record line {index} is not JSON: {exc}")
        verified, detail = _verify_one(obj)
        if verified is False:
            failures += 1
        record = ResultRecord(
            command="verify",
            parameters={"line": index, "source_command": obj.get("command")},
            outcome="value",
            payload={"verified": verified, "detail": detail},
        )
        emit(record, settings, started)
    return 2 if failures else 0


def pattern_sizes(pattern: str, params: dict[str, Any]) -> tuple[int, ...]:
    compact = re.fullmatch(r"(\d*)K(\d+)", pattern)
    if compact:
        count = int(compact.group(1)) if compact.group(1) else 1
        return (int(compact.group(2)),) * count
    if pattern == "Kp":
        return (params["p"],)
    if pattern == "kK2":
        return (2,) * params["k"]
    if pattern in ("2Kp", "3Kp", "4Kp"):
        return (params["p"],) * int(pattern[0])
    if pattern == "kKp-tight":
        if params.get("n") != params["k"] * params["p"]:
            raise PreconditionError("kKp-tight needs n = k*p")
        return (params["p"],) * params["k"]
    if pattern == "KpKq":
        if not params["q"] > params["p"]:
            raise PreconditionError("KpKq needs q > p")
        return (params["p"], params["q"])
    if pattern == "f3":
        raise PreconditionError(
            "f3 is a minimum-edge quantity; the exhaustive oracle only "
            "maximizes edges of pattern-free hosts")
    raise PreconditionError(f"unknown pattern {pattern!r}")


def cmd_oracle(args, settings: Settings, started: float) -> int:
    if not args.tokens:
        raise PreconditionError("usage: oracle <pattern> n=<int> [k=..] [p=..] [q=..]")
    pattern = args.tokens[0]
    params = parse_kv(args.tokens[1:])
    if "n" not in params:
        raise PreconditionError("oracle needs n=<int>")
    try:
        sizes = pattern_sizes(pattern, params)
    except KeyError as exc:
        raise PreconditionError(f"pattern {pattern} needs parameter {exc.args[0]}")
    value, extremal = exhaustive_ex_sizes(params["n"], sizes,
                                          guard=settings.guard_n)
    record = ResultRecord(
        command="oracle",
        parameters={"pattern": pattern, **params},
        outcome="value",
        payload={"value": value, "sizes": list(sizes),
                 "extremal": graph_payload(extremal)},
    )
    emit(record, settings, started)
    return 0


def cmd_probe(args, settings: Settings, started: float) -> int:
    if not args.tokens:
        raise PreconditionError("usage: probe <5.1|5.2> k=<int> p=<int> ...")
    which = args.tokens[0]
    params = parse_kv(args.tokens[1:])
    missing = [key for key in ("k", "p") if key not in params]
    if missing:
        raise PreconditionError(f"probe needs {', '.join(missing)}=<int>")
    if which == "5.1":
        report = probe_dichotomy(params["k"], params["p"],
                                 trials=params.get("trials", 200),
                                 seed=settings.seed,
                                 guard_n=settings.guard_n)
        payload = {
            "k": report.k, "p": report.p, "trials": report.trials,
            "witnessed": report.witnessed, "rigid": report.rigid,
            "skipped": report.skipped,
            "counterexample": report.counterexample,
            "counterexample_params": report.counterexample_params,
            "message": ("counterexample found" if report.counterexample
                        else f"no counterexample in {report.trials} trials"),
        }
        outcome = "counterexample" if report.counterexample else "none"
        record = ResultRecord("probe", {"which": which, **params}, outcome,
                              payload, seed=settings.seed)
    elif which == "5.2":
        report = probe_value_sweep(params["k"], params["p"],
                                   window=params.get("window"),
                                   guard_n=settings.guard_n)
        rows = [{
            "n": row.n, "branch": row.branch, "value": row.value,
            "construction": row.construction,
            "construction_edges": row.construction_edges,
            "pattern_free": row.pattern_free,
        } for row in report.rows]
        payload = {
            "k": report.k, "p": report.p, "rows": rows,
            "boundary_consistent": report.boundary_consistent,
            "matches_four_block_values": report.matches_four_block_values,
            "message": ("all rows consistent" if report.consistent
                        else "inconsistent row found"),
        }
        outcome = "none" if report.consistent else "counterexample"
        record = ResultRecord("probe", {"which": which, **params}, outcome, payload)
    else:
        raise PreconditionError(f"unknown probe {which!r}; use 5.1 or 5.2")
    emit(record, settings, started)
    return 0


def cmd_color(args, settings: Settings, started: float) -> int:
    params = parse_kv(args.tokens)
    if "classes" not in params:
        raise PreconditionError("color needs classes=<int>")
    g = read_graph(args)
    classes = params["classes"]
    parameters = {"classes": classes, "graph6": to_graph6(g)}
    if params.get("exact"):
        parameters["exact"] = 1
        result = equitable_coloring_exact(g, classes, guard_n=settings.guard_n)
        if result.coloring is not None:
            record = ResultRecord("color", parameters, "witness",
                                  coloring_payload(result.coloring))
        elif result.certificate is not None:
            a, b = result.certificate
            record = ResultRecord("color", parameters, "certificate", {
                "biclique": [vertex_set_payload(a), vertex_set_payload(b)],
                "r": classes,
            })
        else:
            record = ResultRecord("color", parameters, "none", {})
    else:
        coloring = equitable_coloring(g, classes)
        record = ResultRecord("color", parameters, "witness",
                              coloring_payload(coloring))
    emit(record, settings, started)
    return 0


HANDLERS = {
    "formula": cmd_formula,
    "table": cmd_table,
    "construct": cmd_construct,
    "resolve": cmd_resolve,
    "pack": cmd_pack,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "probe": cmd_probe,
    "color": cmd_color,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turanpack",
        description="Extremal values, constructions and searches for "
                    "disjoint-clique patterns.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="graph file (graph6 or edge list), - for stdin")
    common.add_argument("--output", help="also write the built graph6 to this path")
    common.add_argument("--format", choices=["json", "csv", "graph6"])
    common.add_argument("--seed", type=int)
    common.add_argument("--verify", action="store_true",
                        help="re-check constructions via exact packing search")
    common.add_argument("--guard-n", type=int, dest="guard_n")
    common.add_argument("--budget", type=int)
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--timing", action="store_true",
                        help="fill timestamp/runtime (breaks byte determinism)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in HANDLERS:
        cmd = sub.add_parser(name, parents=[common])
        if name == "verify":
            cmd.add_argument("--record", help="result-record file to re-verify, - for stdin")
        cmd.add_argument("tokens", nargs="*")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    started = time.monotonic()
    try:
        settings = resolve_settings(args)
        return HANDLERS[args.command](args, settings, started)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeGuardError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return 3
    except SoundnessAlarm as exc:
        print(f"soundness alarm: {exc}", file=sys.stderr)
        return 4
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
