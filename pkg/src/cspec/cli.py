"""Command-line front end.

Exit codes: 0 success or Verified, 1 usage or input error, 2 a Refuted claim,
3 a capability limit (retry with ``--force`` or rely on family mode).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from . import verify as V
from .digraph import (
    SCAN_LIMIT,
    Digraph,
    format_edge_list,
    from_arc_list,
    is_strongly_connected,
    read_edge_list,
)
from .errors import CapabilityError, CSpecError, InputError
from .families import FAMILIES, FamilyDescriptor, classify_scd3, make_descriptor, recognize_family
from .radius import CHAR_POLY_LIMIT, certify_comparison, char_poly, spectral_radius
from .spectrum import complementarity_spectrum, spectrum_cardinality_class

EXIT_OK, EXIT_USAGE, EXIT_REFUTED, EXIT_CAPABILITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which means Refuted here
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    fmt: str
    threads: int
    seed: int | None
    force: bool


def _emit_json(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _parse_params(items: Sequence[str]) -> dict:
    """``key=value`` pairs; values are ints, comma lists of ints, or ``x:y`` chord lists."""
    params: dict = {}
    for item in items:
        if "=" not in item:
            raise InputError(f"parameter {item!r} is not of the form key=value")
        key, val = item.split("=", 1)
        key = key.strip().replace("-", "_")
        try:
            if key == "chords":
                params[key] = [[int(p) for p in c.split(":")] for c in val.split(",") if c]
            elif key in ("sizes", "cycle_sizes"):
                params["cycle_sizes"] = [int(p) for p in val.split(",")]
            else:
                params[key] = int(val)
        except ValueError:
            raise InputError(f"parameter {item!r} has a non-integer value") from None
    return params


def _descriptor(args) -> FamilyDescriptor:
    params = _parse_params(args.params or [])
    n = params.pop("n", None) if args.n is None else args.n
    return make_descriptor(args.family, n=n, **params)


def _load(path: str) -> Digraph:
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _cmd_spectrum(args, cfg: RunConfig, out: TextIO) -> int:
    d = _load(args.edgelist)
    spec = complementarity_spectrum(d, limit=None if cfg.force else SCAN_LIMIT)
    if cfg.fmt == "json":
        _emit_json(spec.to_json(), out)
    else:
        out.write(f"{spec}\n")
        for e in spec.elements:
            w = ",".join(str(v + 1) for v in e.witness)
            r = e.radius
            out.write(f"  {r.approx:.12g}\t{r.defining_poly}\t{r.isolating}\twitness {{{w}}}\n")
    return EXIT_OK


def _classify(d: Digraph) -> dict:
    sc = is_strongly_connected(d)
    cls = spectrum_cardinality_class(d)
    info = {"n": d.n, "m": d.m, "strongly_connected": sc, "class": cls.value, "family": None}
    if sc and cls.value == "Three3":
        if d.n <= SCAN_LIMIT:
            f = classify_scd3(d, check_membership=True)
        else:
            rec = recognize_family(d)
            f = rec.descriptor if rec else None
        info["family"] = f.to_json() if f else None
        info["label"] = f"SCD3: {f}"
    elif sc:
        info["label"] = {"Acyclic1": "SCD1: single vertex", "CyclesOnly2": "SCD2: cycle"}.get(
            cls.value, "strongly connected with at least 4 complementarity eigenvalues")
    else:
        info["label"] = f"not strongly connected; |Pi| class {cls.value}"
    return info


def _cmd_classify(args, cfg: RunConfig, out: TextIO) -> int:
    info = _classify(_load(args.edgelist))
    if cfg.fmt == "json":
        _emit_json(info, out)
    else:
        out.write(info["label"] + "\n")
    return EXIT_OK


def _cmd_build(args, cfg: RunConfig, out: TextIO) -> int:
    f = _descriptor(args)
    text = format_edge_list(f.build())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        if cfg.fmt == "json":
            _emit_json(f.to_json(), out)
    elif cfg.fmt == "json":
        _emit_json({"descriptor": f.to_json(), "edge_list": text}, out)
    else:
        out.write(text)
    return EXIT_OK


def _cmd_charpoly(args, cfg: RunConfig, out: TextIO) -> int:
    if args.family:
        p = _descriptor(args).char_poly()
    elif args.edgelist:
        p = char_poly(_load(args.edgelist), max_n=None if cfg.force else CHAR_POLY_LIMIT)
    else:
        raise UsageError("charpoly needs an edge-list file or --family")
    if cfg.fmt == "json":
        _emit_json({"poly": p.to_json(), "text": str(p)}, out)
    else:
        out.write(f"{p}\n")
    return EXIT_OK


def _cmd_compare(args, cfg: RunConfig, out: TextIO) -> int:
    max_n = None if cfg.force else CHAR_POLY_LIMIT
    a = spectral_radius(_load(args.left), max_n=max_n)
    b = spectral_radius(_load(args.right), max_n=max_n)
    cert = certify_comparison(a, b)
    if cfg.fmt == "json":
        _emit_json(cert.to_json(), out)
    else:
        out.write(f"{cert.order.value}\n")
        out.write(f"  left:  {cert.left}\n  right: {cert.right}\n")
        if cert.common_factor is not None:
            out.write(f"  common factor {cert.common_factor} has a root in {cert.overlap}\n")
    return EXIT_OK


def _triple(text: str | None) -> tuple[int, int, int] | None:
    if text is None:
        return None
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"triple {text!r} must be three comma-separated integers") from None
    if len(vals) != 3:
        raise InputError(f"triple {text!r} must have three entries")
    return vals


def _verify_kwargs(args, cfg: RunConfig) -> dict:
    return {
        "n": args.n, "n_min": args.n_min, "n_max": args.n_max, "extra": args.extra,
        "r": args.r, "s": args.s, "s_max": args.s_max, "k_max": args.k_max,
        "t1": _triple(args.t1), "t2": _triple(args.t2),
        "workers": cfg.threads, "full": args.full or None,
    }


def _write_reports(reports: list, cfg: RunConfig, args, out: TextIO) -> None:
    if cfg.fmt == "json":
        data = [r.to_json(include_timing=args.timing, include_certificates=args.certificates) for r in reports]
        _emit_json(data[0] if len(data) == 1 and args.claim != "all" else data, out)
    elif cfg.fmt == "csv":
        out.write(V.summary_csv(reports, include_timing=args.timing))
    else:
        for r in reports:
            tail = f" ({r.reason})" if r.reason else ""
            timing = f" [{r.elapsed:.2f}s]" if args.timing else ""
            out.write(f"{r.claim_id}: {r.status.value}{tail} {r.detail}{timing}\n".replace("  ", " "))


def _cmd_verify(args, cfg: RunConfig, out: TextIO) -> int:
    if args.claim == "all":
        overrides = {}
        if args.n_max is not None:
            overrides["theta-dcs"] = {"n_max": args.n_max}
        if args.full:
            sys.stderr.write("warning: the full type5 range (n <= 200) takes several minutes\n")
        reports = V.run_all(workers=cfg.threads, full=args.full, **overrides)
    else:
        if args.claim not in V.CLAIMS:
            raise UsageError(f"unknown claim {args.claim!r}; known: all, {', '.join(V.CLAIMS)}")
        if args.full:
            sys.stderr.write("warning: the full type5 range (n <= 200) takes several minutes\n")
        reports = [V.run_claim(args.claim, **_verify_kwargs(args, cfg))]
    _write_reports(reports, cfg, args, out)
    return EXIT_REFUTED if any(r.status is V.Status.REFUTED for r in reports) else EXIT_OK


def _cmd_check(args, cfg: RunConfig, out: TextIO) -> int:
    try:
        with open(args.report, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot load report {args.report}: {exc}") from None
    reports = data if isinstance(data, list) else [data]
    bad = 0
    for rep in reports:
        problems = V.check_report(rep)
        status = "sound" if not problems else f"{len(problems)} problem(s)"
        out.write(f"{rep.get('claim_id')}: {rep.get('status')} certificates {status}\n")
        for p in problems[:10]:
            out.write(f"  {p}\n")
        bad += bool(problems)
    return EXIT_REFUTED if bad else EXIT_OK


def _cmd_random(args, cfg: RunConfig, out: TextIO) -> int:
    rng = random.Random(cfg.seed)
    n = args.n
    if n is None or n < 1:
        raise UsageError("random needs --n >= 1")
    for _ in range(10_000):
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < args.p]
        d = from_arc_list(n, arcs)
        if not args.strong or is_strongly_connected(d):
            out.write(format_edge_list(d))
            return EXIT_OK
    raise CapabilityError("no strongly connected sample found; raise --p")


def _common_options(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global options; suppressed defaults keep values given before the subcommand
    def default(v):
        return argparse.SUPPRESS if suppress else v

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=default("text"), help="output format")
    common.add_argument("--threads", type=int, default=default(None),
                        help="worker processes (default: CSPEC_THREADS or available parallelism)")
    common.add_argument("--seed", type=int, default=default(None), help="seed for randomized commands")
    common.add_argument("--force", action="store_true", default=default(False), help="lift size limits (may be slow)")
    return common


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cspec", description="Complementarity spectra of digraphs and exact Perron-root algebra.",
                parents=[_common_options(False)])
    common = _common_options(True)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("spectrum", parents=[common], help="complementarity spectrum of an edge-list digraph")
    s.add_argument("edgelist")

    s = sub.add_parser("classify", parents=[common], help="SCD class and family descriptor")
    s.add_argument("edgelist")

    def family_args(sp, required: bool) -> None:
        sp.add_argument("--family", choices=FAMILIES, required=required)
        sp.add_argument("--params", nargs="*", metavar="KEY=VALUE",
                        help="e.g. r=3 s=5 | a=0 b=2 c=1 | i=4 j=8 | chords=3:2,5:4 | sizes=6,6,8")
        sp.add_argument("-n", "--n", type=int, default=None, help="vertex count (types 3, 4, 5)")

    s = sub.add_parser("build", parents=[common], help="edge list of a family member")
    family_args(s, True)
    s.add_argument("-o", "--output", default=None)

    s = sub.add_parser("charpoly", parents=[common], help="exact characteristic polynomial")
    s.add_argument("edgelist", nargs="?")
    family_args(s, False)

    s = sub.add_parser("compare", parents=[common], help="exact comparison of spectral radii")
    s.add_argument("left")
    s.add_argument("right")

    s = sub.add_parser("verify", parents=[common], help="run a claim (or 'all')")
    s.add_argument("claim", help="claim id or 'all': " + ", ".join(V.CLAIMS))
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--n-min", type=int, default=None)
    s.add_argument("--n-max", type=int, default=None)
    s.add_argument("--extra", type=int, default=None, help="j for counterexample-type4")
    s.add_argument("--r", type=int, default=None)
    s.add_argument("--s", type=int, default=None)
    s.add_argument("--s-max", type=int, default=None)
    s.add_argument("--k-max", type=int, default=None)
    s.add_argument("--t1", default=None, help="r,s,t")
    s.add_argument("--t2", default=None, help="r,s,t")
    s.add_argument("--full", action="store_true", help="type5-distinct over the full range n <= 200")
    s.add_argument("--certificates", action="store_true", help="include certificates in JSON output")
    s.add_argument("--timing", action="store_true", help="include wall-clock timings")

    s = sub.add_parser("check", parents=[common], help="re-validate the certificates of a JSON report")
    s.add_argument("report")

    s = sub.add_parser("random", parents=[common], help="random digraph edge list (use --seed)")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--p", type=float, default=0.3)
    s.add_argument("--strong", action="store_true", help="resample until strongly connected")
    return p


COMMANDS = {
    "spectrum": _cmd_spectrum,
    "classify": _cmd_classify,
    "build": _cmd_build,
    "charpoly": _cmd_charpoly,
    "compare": _cmd_compare,
    "verify": _cmd_verify,
    "check": _cmd_check,
    "random": _cmd_random,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_help(err)
            return EXIT_USAGE
        threads = args.threads if args.threads is not None else V.default_workers()
        if threads < 1:
            raise UsageError("--threads must be at least 1")
        cfg = RunConfig(args.command, args.format, threads, args.seed, args.force)
        return COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except CapabilityError as exc:
        err.write(f"capability limit: {exc} (retry with --force, or use family mode for SCD3 members)\n")
        return EXIT_CAPABILITY
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except CSpecError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE


def main() -> None:
    sys.exit(run())
