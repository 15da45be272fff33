"""Command-line entry point: one JSON line per input graph.

Exit codes: 0 success, 1 a checked property failed, 2 input or parse
error, 3 a resource cap was exceeded. With several graphs the largest
code wins.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Optional, Sequence

from .divisibility import (
    DIVISIBLE_CAP,
    DIVISION_CAP,
    PerfectDivision,
    check_failing_subgraph,
    classify_minimal,
    find_perfect_division,
    is_perfectly_divisible,
    is_perfectly_weight_divisible_bounded,
    verify_division,
)
from .equivalence import check_equivalence
from .errors import CapExceeded, Graph6Error, PerfdivError, WeightError
from .graph import HOMOGENEOUS_CAP, MAX_VERTICES, bits, find_homogeneous_sets, mask_of, substitute
from .graph6 import emit_graph6, parse_graph6
from .search import (
    SEARCH_CAP,
    Certificate,
    check_certificate,
    check_weights,
    chromatic_number,
    is_perfect,
    max_clique_weight,
    ones,
)

OK, VIOLATION, INPUT_ERROR, CAP_ERROR = 0, 1, 2, 3

COMMANDS = (
    "omega",
    "chi",
    "is-perfect",
    "hom-sets",
    "substitute",
    "divide",
    "check-divisible",
    "check-equivalence",
    "find-minimal",
    "verify",
)

# (default, maximum) vertex caps per command
CAPS = {
    "omega": (SEARCH_CAP, MAX_VERTICES),
    "chi": (SEARCH_CAP, MAX_VERTICES),
    "is-perfect": (SEARCH_CAP, MAX_VERTICES),
    "hom-sets": (HOMOGENEOUS_CAP, 24),
    "substitute": (MAX_VERTICES, MAX_VERTICES),
    "divide": (DIVISION_CAP, 20),
    "check-divisible": (DIVISIBLE_CAP, 16),
    "check-equivalence": (8, 12),
    "find-minimal": (DIVISIBLE_CAP, 16),
    "verify": (DIVISIBLE_CAP, 16),
}


@dataclass
class RunConfig:
    command: str
    input: Optional[str] = None
    output: Optional[str] = None
    seed: int = 0
    wmax: int = 1
    samples: int = 0
    cap_n: Optional[int] = None
    jobs: int = 1
    weights: Optional[tuple[int, ...]] = None
    unit_steps: bool = False
    vertex: Optional[int] = None
    with_graph: Optional[str] = None
    timing: bool = False
    words: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.wmax < 1:
            raise ValueError("--wmax must be at least 1")
        if self.samples < 0:
            raise ValueError("--samples must be non-negative")
        if self.jobs < 1:
            raise ValueError("--jobs must be at least 1")
        default, maximum = CAPS[self.command]
        if self.cap_n is None:
            self.cap_n = default
        elif not 0 <= self.cap_n <= maximum:
            raise ValueError(f"--cap-n for {self.command} must lie in 0..{maximum}")


def _split_line(line: str) -> tuple[str, Optional[tuple[int, ...]]]:
    """A stream line is a graph6 word optionally followed by a JSON weight list."""
    parts = line.split(None, 1)
    if len(parts) == 1:
        return parts[0], None
    extra = json.loads(parts[1])
    if not isinstance(extra, list):
        raise WeightError("sidecar weights must be a JSON list")
    return parts[0], tuple(extra)


def _cert(cert: Optional[Certificate]) -> Optional[dict]:
    return None if cert is None else cert.to_json()


def _check_cap(g, cfg: RunConfig, what: str) -> None:
    if g.n > cfg.cap_n:
        raise CapExceeded(what, g.n, cfg.cap_n)


def _weights_for(g, cfg: RunConfig, sidecar) -> tuple[int, ...]:
    h = sidecar if sidecar is not None else cfg.weights
    return ones(g.n) if h is None else check_weights(h, g.n)


def _process(cfg: RunConfig, line: str) -> tuple[int, dict]:
    started = time.perf_counter()
    record: dict = {}
    try:
        if cfg.command == "verify":
            code, record = _verify(cfg, line)
        else:
            word, sidecar = _split_line(line)
            record = {"graph6": word}
            g = parse_graph6(word)
            record["n"] = g.n
            record["command"] = cfg.command
            code = _dispatch(cfg, g, sidecar, record)
    except CapExceeded as exc:
        code = CAP_ERROR
        record.setdefault("command", cfg.command)
        record["error"] = str(exc)
    except (PerfdivError, ValueError, KeyError, TypeError) as exc:
        code = INPUT_ERROR
        record.setdefault("graph6", line.strip())
        record.setdefault("command", cfg.command)
        record["error"] = str(exc)
    if cfg.timing:
        record["millis"] = round((time.perf_counter() - started) * 1000, 3)
    return code, record


def _dispatch(cfg: RunConfig, g, sidecar, record: dict) -> int:
    cmd = cfg.command
    if cmd == "omega":
        _check_cap(g, cfg, cmd)
        h = _weights_for(g, cfg, sidecar)
        w, cert = max_clique_weight(g, h, cap=cfg.cap_n)
        record["result"] = {"weight": w, "weights": list(h)}
        record["certificate"] = _cert(cert)
        return OK
    if cmd == "chi":
        _check_cap(g, cfg, cmd)
        k, cert = chromatic_number(g, cap=cfg.cap_n)
        record["result"] = {"chi": k}
        record["certificate"] = _cert(cert)
        return OK
    if cmd == "is-perfect":
        _check_cap(g, cfg, cmd)
        perfect, cert = is_perfect(g, cap=cfg.cap_n)
        record["result"] = {"perfect": perfect}
        if cert is not None:
            record["certificate"] = _cert(cert)
        return OK
    if cmd == "hom-sets":
        sets = find_homogeneous_sets(g, cap=cfg.cap_n)
        record["result"] = {"sets": [bits(s) for s in sets]}
        return OK
    if cmd == "substitute":
        if cfg.vertex is None or cfg.with_graph is None:
            raise ValueError("substitute needs --vertex and --with")
        try:
            inner = parse_graph6(cfg.with_graph)
        except Graph6Error as exc:
            raise type(exc)(f"--with {cfg.with_graph!r}: {exc}") from exc
        out, rec = substitute(g, cfg.vertex, inner)
        record["result"] = {
            "graph6": emit_graph6(out),
            "inserted": bits(rec.inserted),
            "carry": {str(k): v for k, v in sorted(rec.carry.items())},
        }
        return OK
    if cmd == "divide":
        h = _weights_for(g, cfg, sidecar)
        d = find_perfect_division(g, h, cap=cfg.cap_n)
        if d is None:
            record["result"] = None
            record["certificate"] = {"kind": "failing_subgraph", "payload": bits(g.full), "weights": list(h)}
            record["violation"] = "no perfect division"
            return VIOLATION
        record["result"] = d.to_json()
        record["certificate"] = {"kind": "division", **d.to_json(), "weights": list(h)}
        return OK
    if cmd == "check-divisible":
        _check_cap(g, cfg, cmd)
        if cfg.wmax > 1:
            mode = "sampled" if cfg.samples else "exhaustive"
            verdict = is_perfectly_weight_divisible_bounded(
                g, cfg.wmax, mode, seed=cfg.seed, samples=cfg.samples, cap=cfg.cap_n
            )
        else:
            verdict = is_perfectly_divisible(g, _weights_for(g, cfg, sidecar), cap=cfg.cap_n)
        record["result"] = {"divisible": verdict.divisible}
        if not verdict.divisible:
            record["certificate"] = {
                "kind": "failing_subgraph",
                "payload": bits(verdict.witness),
                "weights": list(verdict.weights),
            }
            record["violation"] = "not perfectly divisible"
            return VIOLATION
        return OK
    if cmd == "check-equivalence":
        _check_cap(g, cfg, cmd)
        mode = "sampled" if cfg.samples else "exhaustive"
        rep = check_equivalence(
            g, cfg.wmax, mode, seed=cfg.seed, samples=cfg.samples, unit_steps=cfg.unit_steps
        )
        record["result"] = rep.summary()
        if rep.violations:
            record["violation"] = rep.violations
            return VIOLATION
        return OK
    if cmd == "find-minimal":
        rec = classify_minimal(g, cap=cfg.cap_n)
        record["result"] = rec.to_json()
        if rec.hom_sets_empty is False:
            record["violation"] = "minimal non-divisible graph with a homogeneous set"
            return VIOLATION
        return OK
    raise ValueError(f"unhandled command {cmd}")


def _verify(cfg: RunConfig, line: str) -> tuple[int, dict]:
    """Re-check the certificate carried by one output record of another command."""
    data = json.loads(line)
    word = data["graph6"]
    g = parse_graph6(word)
    record = {"graph6": word, "n": g.n, "command": "verify"}
    cert = data.get("certificate")
    result = data.get("result") or {}
    if cert is None:
        record["result"] = {"valid": True, "kind": None}
        return OK, record
    kind = cert["kind"]
    if kind in ("clique", "coloring", "odd_hole", "odd_antihole"):
        _check_cap(g, cfg, "verify")
        valid = check_certificate(g, Certificate(kind, tuple(cert["payload"])))
        if valid and kind == "clique":
            h = check_weights(result.get("weights", ones(g.n)), g.n)
            valid = sum(h[v] for v in cert["payload"]) == result.get("weight") == max_clique_weight(g, h)[0]
        if valid and kind == "coloring":
            valid = len(set(cert["payload"])) == result.get("chi") == chromatic_number(g)[0]
    elif kind == "division":
        h = check_weights(cert["weights"], g.n)
        d = PerfectDivision(mask_of(cert["A"]), mask_of(cert["B"]))
        valid = verify_division(g, h, g.full, d)
    elif kind == "failing_subgraph":
        _check_cap(g, cfg, "verify")
        h = check_weights(cert["weights"], g.n)
        valid = check_failing_subgraph(g, h, mask_of(cert["payload"]))
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")
    record["result"] = {"valid": valid, "kind": kind}
    return (OK if valid else VIOLATION), record


def _worker(args):
    cfg, line = args
    return _process(cfg, line)


def _dump(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"))


def run(cfg: RunConfig) -> int:
    if cfg.words:
        lines = list(cfg.words)
    elif cfg.input and cfg.input != "-":
        with open(cfg.input, encoding="ascii") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    else:
        lines = [ln.strip() for ln in sys.stdin if ln.strip()]
    if cfg.command != "verify":
        lines = [ln[len(">>graph6<<"):] if ln.startswith(">>graph6<<") else ln for ln in lines]

    out = open(cfg.output, "w", encoding="ascii") if cfg.output else sys.stdout
    worst = OK
    summary = None
    try:
        if cfg.jobs > 1 and len(lines) > 1:
            with Pool(cfg.jobs) as pool:
                results = pool.imap(_worker, [(cfg, ln) for ln in lines], chunksize=4)
                worst, summary = _emit(cfg, results, out)
        else:
            worst, summary = _emit(cfg, (_process(cfg, ln) for ln in lines), out)
        if summary is not None:
            out.write(_dump({"summary": summary}) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return worst


def _emit(cfg: RunConfig, results, out) -> tuple[int, Optional[dict]]:
    worst = OK
    hits = scanned = skipped = non_divisible = violations = 0
    for code, record in results:
        worst = max(worst, code)
        out.write(_dump(record) + "\n")
        if cfg.command == "find-minimal":
            if code == CAP_ERROR:
                skipped += 1
            elif "result" in record:
                scanned += 1
                res = record["result"]
                non_divisible += not res["divisible"]
                if "hom_sets_empty" in res:
                    hits += 1
                    violations += not res["hom_sets_empty"]
    if cfg.command != "find-minimal":
        return worst, None
    # Skipped graphs are logged inline; they do not fail the scan.
    if worst == CAP_ERROR:
        worst = VIOLATION if violations else OK
    return worst, {
        "scanned": scanned,
        "skipped": skipped,
        "non_divisible": non_divisible,
        "minimal_hits": hits,
        "homogeneous_set_violations": violations,
        "vacuous": hits == 0,
    }


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad weight list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perfdiv", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("graphs", nargs="*", help="graph6 words (default: read lines from --input or stdin)")
    p.add_argument("--input", "-i", help="graph6 stream, one graph per line ('-' for stdin)")
    p.add_argument("--output", "-o", help="write JSON lines here instead of stdout")
    p.add_argument("--weights", type=_parse_weights, help="comma-separated vertex weights")
    p.add_argument("--wmax", type=int, default=1, help="largest weight value to test")
    p.add_argument("--samples", type=int, default=0, help="seeded weight samples per graph (0 = exhaustive)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap-n", type=int, dest="cap_n", help="vertex cap for the chosen command")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--unit-steps", action="store_true", help="lower weights one unit at a time")
    p.add_argument("--vertex", type=int, help="vertex to substitute (substitute)")
    p.add_argument("--with", dest="with_graph", help="graph6 word of the graph to insert (substitute)")
    p.add_argument("--timing", action="store_true", help="add a 'millis' field to each record")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        cfg = RunConfig(
            command=args.command,
            input=args.input,
            output=args.output,
            seed=args.seed,
            wmax=args.wmax,
            samples=args.samples,
            cap_n=args.cap_n,
            jobs=args.jobs,
            weights=args.weights,
            unit_steps=args.unit_steps,
            vertex=args.vertex,
            with_graph=args.with_graph,
            timing=args.timing,
            words=args.graphs,
        )
    except ValueError as exc:
        print(f"perfdiv: {exc}", file=sys.stderr)
        return INPUT_ERROR
    try:
        return run(cfg)
    except OSError as exc:
        print(f"perfdiv: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
