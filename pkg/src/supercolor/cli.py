"""Command-line front end: machine JSON on stdout, diagnostics on stderr.

Exit codes: 0 success / property holds, 1 property violated or coloring
absent, 2 input or parse error, 3 resource cap exceeded.  Identical argv,
files and seeds produce byte-identical stdout; timing never goes to stdout.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from typing import Sequence

from .core import (
    GenerationError,
    InputError,
    ResourceLimitError,
    SetFn,
    check_capacity,
    check_intersecting_family,
    check_supermodular,
    delta,
    dump_json,
    instance_payload,
    load_instance,
    require_valid,
)
from . import bunch, encode, gen, oracle, pi as pi_mod
from .matching import common_transversal
from .oracle import DEFAULT_CAPS, SearchCaps


@dataclass(frozen=True)
class RunReport:
    command: str
    digest: str
    results: dict
    timing: float
    seed: int | None = None

    def to_payload(self) -> dict:
        # timing is diagnostic only; keeping it out of the payload keeps
        # repeated runs byte-identical
        payload = {"command": self.command, "digest": self.digest, "results": self.results}
        if self.seed is not None:
            payload["seed"] = self.seed
        return payload


def instance_digest(g1: SetFn, g2: SetFn) -> str:
    canon = {
        "elements": list(g1.ground.names),
        "g1": sorted((list(g1.ground.names_of(m)), v) for m, v in g1.entries),
        "g2": sorted((list(g2.ground.names_of(m)), v) for m, v in g2.entries),
    }
    blob = json.dumps(canon, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def caps_from_env(env=os.environ) -> SearchCaps:
    raw = env.get("SUPERCOLOR_CAPS")
    if not raw:
        return DEFAULT_CAPS
    k_search = DEFAULT_CAPS.k_search_elements
    list_budget = DEFAULT_CAPS.list_budget
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, num = part.partition("=")
        key = key.strip()
        num = num.strip()
        if not num.isdigit():
            raise InputError(f"bad SUPERCOLOR_CAPS entry {part!r}")
        if key == "k_search":
            k_search = int(num)
        elif key == "list_budget":
            list_budget = int(num)
        else:
            raise InputError(f"unknown SUPERCOLOR_CAPS key {key!r}")
    return SearchCaps(k_search_elements=k_search, list_budget=list_budget)


def _sets_payload(sets) -> list:
    return [list(x.names) for x in sets]


def _report_payload(report) -> dict:
    return report.to_dict()


# -- subcommand handlers ------------------------------------------------------

def _cmd_check(args, caps) -> tuple[int, dict]:
    g1, g2 = load_instance(args.file)
    results = {}
    all_ok = True
    for key, g in (("g1", g1), ("g2", g2)):
        family = check_intersecting_family(g)
        if family.ok:
            supermodular = _report_payload(check_supermodular(g))
        else:
            supermodular = {"ok": False, "skipped": "family not intersecting-closed"}
        capacity = check_capacity(g)
        results[key] = {
            "family": _report_payload(family),
            "supermodular": supermodular,
            "capacity": _report_payload(capacity),
        }
        all_ok = all_ok and family.ok and supermodular.get("ok", False) and capacity.ok
    payload = {
        "command": "check",
        "digest": instance_digest(g1, g2),
        "ok": all_ok,
        "results": results,
    }
    return (0 if all_ok else 1), payload


def _pick_side(g1, g2, side: int):
    if side not in (1, 2):
        raise InputError(f"--side must be 1 or 2, got {side}")
    return g1 if side == 1 else g2


def _cmd_analyze(args, caps) -> tuple[int, dict]:
    g1, g2 = load_instance(args.file)
    g = _pick_side(g1, g2, args.side)
    require_valid(g)
    eff = bunch.effective_family(g)
    partition = bunch.bunch_partition(g)
    part_values = [
        {"part": list(p.names), "value": g.value(p) if p in g else None}
        for p in partition.parts
    ]
    payload = {
        "command": "analyze",
        "digest": instance_digest(g1, g2),
        "side": args.side,
        "effective_family": _sets_payload(eff),
        "partition": _sets_payload(partition.parts),
        "d": bunch.d_function(g),
        "part_values": part_values,
    }
    return 0, payload


def _parse_names(raw: str) -> list[str]:
    return [piece.strip() for piece in raw.split(",") if piece.strip()]


def _cmd_reduce(args, caps) -> tuple[int, dict]:
    g1, g2 = load_instance(args.file)
    k = g1.ground.subset(_parse_names(args.k))
    red1 = bunch.reduce(g1, k)
    red2 = bunch.reduce(g2, k)
    payload = instance_payload(red1.reduced, red2.reduced)
    payload["attainers"] = {
        key: {",".join(x.names): list(z.names) for x, z in sorted(res.attainers.items(), key=lambda kv: kv[0].mask)}
        for key, res in (("g1", red1), ("g2", red2))
    }
    payload["removed"] = list(k.names)
    return 0, payload


def _cmd_transversal(args, caps) -> tuple[int, dict]:
    g1, g2 = load_instance(args.file)
    result = common_transversal(g1, g2)
    payload = {
        "command": "transversal",
        "digest": instance_digest(g1, g2),
        "k": list(result.k.names),
        "case": result.case_tag,
    }
    return 0, payload


def _cmd_pi(args, caps) -> tuple[int, dict]:
    g1, g2 = load_instance(args.file)
    d1 = bunch.d_function(g1)
    d2 = bunch.d_function(g2)
    f_map = {name: max(d1[name], d2[name]) for name in g1.ground.names}
    span = delta(g1, g2)
    if args.method == "keylemma":
        pair, trace = pi_mod.construct_pi_traced(g1, g2, check=False)
    else:
        pair, trace = pi_mod.schrijver_pi(g1, g2, caps), []
    conditions = pi_mod.verify_conditions(g1, g2, pair)
    if args.method == "keylemma":
        ok = conditions.all_ok
    else:
        # the split pair only promises (ii) plus (i) against the global span
        ok = conditions.ii_ok and all(
            pair.pi1[u] + pair.pi2[u] - 1 <= span for u in g1.ground.names
        )
    payload = {
        "command": "pi",
        "digest": instance_digest(g1, g2),
        "method": args.method,
        "pi1": pair.pi1,
        "pi2": pair.pi2,
        "f": f_map,
        "delta": span,
        "conditions": conditions.to_dict(),
        "trace": trace,
        "ok": ok,
    }
    return (0 if ok else 1), payload


def _load_lists(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise InputError("lists file must map element names to color lists")
    return {name: list(colors) for name, colors in doc.items()}


def _cmd_color(args, caps) -> tuple[int, dict]:
    g1, g2 = load_instance(args.file)
    if (args.lists is None) == (args.k is None):
        raise InputError("exactly one of --lists or --k is required")
    if args.lists is not None:
        coloring = oracle.find_list_coloring(g1, g2, _load_lists(args.lists), caps)
    else:
        coloring = oracle.find_k_coloring(g1, g2, args.k, caps)
    payload = {
        "command": "color",
        "digest": instance_digest(g1, g2),
        "found": coloring is not None,
        "coloring": coloring,
    }
    return (0 if coloring is not None else 1), payload


def _cmd_verify(args, caps) -> tuple[int, dict]:
    g1, g2 = load_instance(args.file)
    report = oracle.verify_main_theorem(
        g1, g2, trials=args.trials, sigma_size=args.sigma, seed=args.seed, caps=caps
    )
    payload = {
        "command": "verify",
        "digest": instance_digest(g1, g2),
        "seed": args.seed,
        "trials": args.trials,
        "sigma": args.sigma if args.sigma is not None else delta(g1, g2) + 2,
        "ok": report.ok,
        "violations": _report_payload(report)["violations"],
    }
    return (0 if report.ok else 1), payload


def _cmd_encode(args, caps) -> tuple[int, dict]:
    graph = encode.load_graph(args.file)
    g1, g2 = encode.encode_bipartite(graph)
    return 0, instance_payload(g1, g2)


def _cmd_gen(args, caps) -> tuple[int, dict]:
    cfg = gen.GenConfig(seed=args.seed, n_elements=args.n, strategy=args.strategy)
    g1, g2 = gen.gen_instance(cfg)
    payload = instance_payload(g1, g2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dump_json(payload))
    return 0, payload


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="supercolor")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate an instance file")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("analyze", help="effective family, partition and d-map")
    p.add_argument("file")
    p.add_argument("--side", type=int, default=1)
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("reduce", help="reduce both functions by a removal set")
    p.add_argument("file")
    p.add_argument("--k", required=True, help="comma-separated element names")
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("transversal", help="common partial transversal of both partitions")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_transversal)

    p = sub.add_parser("pi", help="construct the auxiliary pair")
    p.add_argument("file")
    p.add_argument("--method", choices=("keylemma", "schrijver"), default="keylemma")
    p.set_defaults(handler=_cmd_pi)

    p = sub.add_parser("color", help="search for a dominating coloring")
    p.add_argument("file")
    p.add_argument("--lists", help="JSON file mapping elements to color lists")
    p.add_argument("--k", type=int, help="search over colors 1..k instead of lists")
    p.set_defaults(handler=_cmd_color)

    p = sub.add_parser("verify", help="random tight-list trials must all color")
    p.add_argument("file")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--sigma", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("encode-bipartite", help="encode a bipartite multigraph")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_encode)

    p = sub.add_parser("gen", help="generate a random valid instance")
    p.add_argument("--strategy", choices=gen.STRATEGIES, default="closure")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(handler=_cmd_gen)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    started = time.monotonic()
    try:
        caps = caps_from_env()
        code, payload = args.handler(args, caps)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ResourceLimitError, GenerationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    sys.stdout.write(dump_json(payload))
    print(f"{args.command} finished in {time.monotonic() - started:.3f}s", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


# -- batch verification --------------------------------------------------------

def batch_verify(
    configs: Sequence[gen.GenConfig],
    list_trials: int = 3,
    seed: int | None = None,
    caps: SearchCaps = DEFAULT_CAPS,
    out=None,
) -> RunReport:
    """Generate every configured instance and run the full battery on it:
    auxiliary-pair conditions, random tight-list colorability, and the minimum
    color count against the value bound.  Failures carry a replayable config
    and the serialized instance."""
    started = time.monotonic()
    checks = {
        "pi_conditions": {"pass": 0, "fail": 0},
        "main_theorem": {"pass": 0, "fail": 0},
        "min_k_equals_delta": {"pass": 0, "fail": 0},
    }
    failures = []
    for cfg in configs:
        g1, g2 = gen.gen_instance(cfg)
        pair = pi_mod.construct_pi(g1, g2, check=False)
        conditions = pi_mod.verify_conditions(g1, g2, pair)
        theorem = oracle.verify_main_theorem(
            g1, g2, trials=list_trials, seed=cfg.seed, caps=caps
        )
        threshold_ok = oracle.min_k(g1, g2, caps) == delta(g1, g2)
        for key, ok in (
            ("pi_conditions", conditions.all_ok),
            ("main_theorem", theorem.ok),
            ("min_k_equals_delta", threshold_ok),
        ):
            checks[key]["pass" if ok else "fail"] += 1
        if not (conditions.all_ok and theorem.ok and threshold_ok):
            failures.append(
                {
                    "config": asdict(cfg),
                    "digest": instance_digest(g1, g2),
                    "instance": instance_payload(g1, g2),
                    "pi_conditions": conditions.to_dict(),
                    "main_theorem": _report_payload(theorem),
                    "min_k_equals_delta": threshold_ok,
                }
            )
    failures.sort(key=lambda f: f["digest"])
    results = {"instances": len(configs), "checks": checks, "failures": failures}
    blob = json.dumps([asdict(c) for c in configs], sort_keys=True, separators=(",", ":"))
    report = RunReport(
        command="batch-verify",
        digest=hashlib.sha256(blob.encode()).hexdigest(),
        results=results,
        timing=time.monotonic() - started,
        seed=seed,
    )
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(dump_json(report.to_payload()))
    return report
