"""Command-line front end.

One operation per invocation; expansions travel between commands as
interchange JSON through files or pipes (``-`` is stdin/stdout).

Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import platform
import sys
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import __version__
from .derham import DeRhamRing, phi_realize, unit_root_realize
from .eisenstein import eisenstein_q, nearly_eisenstein
from .errors import SiegelqError
from .interchange import read_expansion, serialize
from .nearcalc import SymRing, contract_expansion, det_form, maass_delta, shimura_D
from .padic import congruence_check, dp_operator, padic_realize, theta_op
from .qseries import default_threads, integrality_gate, qexp_add, qexp_mul
from .tmatrix import HalfIntegralMatrix, enumerate_psd
from .weights import dim_gl, dim_sp

log = logging.getLogger("siegelq")

COMMANDS = ("eis", "ladder", "delta", "D", "contract", "theta", "dp", "mul", "add", "phi", "realize",
            "congr", "gate", "enum-T", "dim", "validate")


class UsageError(Exception):
    """Invalid command line; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    genus: int | None = None
    level: int | None = None
    trace_bound: int | None = None
    h: int | None = None
    s: int | None = None
    kappa: tuple[int, ...] | None = None
    p: int | None = None
    m: int | None = None
    e: int | None = None
    order: tuple[int, ...] | None = None
    group: str | None = None
    form: str | None = None
    coefficients: tuple[int, int] = (1, 1)
    inputs: tuple[str, ...] = ()
    output: str = "-"
    threads: int = 1
    strict: bool = True
    log_path: str | None = None
    extra: dict = field(default_factory=dict)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", default="-", help="output file ('-' for stdout)")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: $SIEGELQ_THREADS or 1)")
    common.add_argument("--log", dest="log_path", default=None, help="write a JSON run record here")
    common.add_argument("--lenient", action="store_true", help="ignore unknown fields in input files")

    parser = _Parser(prog="siegelq", description="Exact q-expansion arithmetic for Siegel modular forms.")
    parser.add_argument("--version", action="version", version=f"siegelq {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, help_, inputs=0):
        p = sub.add_parser(name, help=help_, parents=[common])
        if inputs == 1:
            p.add_argument("input", nargs="?", default="-", help="input expansion ('-' for stdin)")
        elif inputs == 2:
            p.add_argument("input", nargs=2, metavar="INPUT")
        return p

    p = add("eis", "normalized holomorphic Eisenstein series")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--prec", type=int, default=20)

    p = add("ladder", "nearly holomorphic Eisenstein series via the Maass-Shimura ladder")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--prec", type=int, default=20)

    p = add("delta", "Maass-Shimura operator delta_h", 1)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--order", type=_int_list, default=None, help="row application order, e.g. 0,1")

    p = add("D", "Shimura operator D_h (symmetric-square valued)", 1)
    p.add_argument("--weight", type=int, required=True)

    p = add("contract", "contract symmetric-form coefficients against a fixed form", 1)
    p.add_argument("--form", choices=("det",), default="det")

    add("theta", "theta operator a(T) -> det(T/N) a(T)", 1)

    p = add("dp", "the operator D_p^e", 1)
    p.add_argument("--e", type=int, default=1)

    add("mul", "product of two expansions", 2)

    p = add("add", "linear combination c1*A + c2*B", 2)
    p.add_argument("--c1", type=int, default=1)
    p.add_argument("--c2", type=int, default=1)

    add("phi", "Hodge projection of a de Rham expansion", 1)
    add("realize", "p-adic realization (r -> 0, or unit-root splitting for de Rham input)", 1)

    p = add("congr", "congruence modulo p^m", 2)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=1)

    p = add("gate", "p-integrality gate", 1)
    p.add_argument("--p", type=int, required=True)

    p = add("enum-T", "enumerate PSD half-integral matrices by trace")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--max-trace", type=int, required=True)

    p = add("dim", "dimension of an irreducible GL_g or Sp_2g representation")
    p.add_argument("--group", choices=("gl", "sp"), required=True)
    p.add_argument("--kappa", type=_int_list, required=True, help="dominant weight, e.g. 2,0")

    add("validate", "check an interchange file and summarize it", 1)
    return parser


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Parse and validate a command line; raises :class:`UsageError`."""
    ns = _build_parser().parse_args(list(argv))
    threads = ns.threads if ns.threads is not None else default_threads()
    if threads < 1:
        raise UsageError("--threads must be at least 1")
    cfg = RunConfig(command=ns.command, output=ns.output, threads=threads,
                    strict=not ns.lenient, log_path=ns.log_path)
    if hasattr(ns, "input"):
        cfg.inputs = tuple(ns.input) if isinstance(ns.input, list) else (ns.input,)
    c = ns.command
    if c in ("eis", "ladder"):
        if ns.genus != 1:
            raise UsageError("--genus: only genus 1 series are generated; load higher-genus tables with validate")
        if ns.prec < 0:
            raise UsageError("--prec must be nonnegative")
        cfg.genus, cfg.level, cfg.trace_bound, cfg.h = 1, 1, ns.prec, ns.weight
        if c == "eis":
            if ns.weight < 4 or ns.weight % 2:
                raise UsageError("--weight: weight must be even ≥ 4")
        else:
            if ns.s > 0:
                raise UsageError("--s must be a nonpositive integer")
            start = ns.weight + 2 * ns.s
            if start < 4 or start % 2:
                raise UsageError("--weight/--s: h + 2s must be even ≥ 4")
            cfg.s = ns.s
    elif c in ("delta", "D"):
        cfg.h = ns.weight
        if c == "delta" and ns.order is not None:
            cfg.order = ns.order
    elif c == "contract":
        cfg.form = ns.form
    elif c == "dp":
        if ns.e < 1:
            raise UsageError("--e must be a positive integer")
        cfg.e = ns.e
    elif c == "add":
        cfg.coefficients = (ns.c1, ns.c2)
    elif c in ("congr", "gate"):
        if not _is_prime(ns.p):
            raise UsageError(f"--p: {ns.p} is not prime")
        cfg.p = ns.p
        if c == "congr":
            if ns.m < 1:
                raise UsageError("--m must be a positive integer")
            cfg.m = ns.m
    elif c == "enum-T":
        if ns.genus < 1 or ns.max_trace < 0:
            raise UsageError("--genus must be positive and --max-trace nonnegative")
        cfg.genus, cfg.trace_bound = ns.genus, ns.max_trace
    elif c == "dim":
        if not ns.kappa:
            raise UsageError("--kappa must not be empty")
        if any(a < b for a, b in zip(ns.kappa, ns.kappa[1:])):
            raise UsageError(f"--kappa: {','.join(map(str, ns.kappa))} is not dominant (must be non-increasing)")
        if ns.group == "sp" and ns.kappa[-1] < 0:
            raise UsageError("--kappa: symplectic weights must be nonnegative")
        cfg.group, cfg.kappa, cfg.genus = ns.group, ns.kappa, len(ns.kappa)
    return cfg


def _gate_json(result, p: int | None = None) -> str:
    doc = {"ok": bool(result)}
    if not result:
        doc["witness"] = _witness_json(result.witness)
    if p is not None:
        doc["p"] = p
    return json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n"


def _witness_json(w):
    if isinstance(w, HalfIntegralMatrix):
        return {"S": w.doubled_rows()}
    if isinstance(w, tuple):
        return [_witness_json(x) for x in w]
    if w is None or isinstance(w, (int, str)):
        return w
    return str(w)


def execute(cfg: RunConfig) -> tuple[str, int]:
    """Run a validated configuration; returns ``(output text, exit code)``."""
    c = cfg.command
    inputs = [read_expansion(path, strict=cfg.strict) for path in cfg.inputs]

    if c == "eis":
        return serialize(eisenstein_q(cfg.h, cfg.trace_bound)), 0
    if c == "ladder":
        return serialize(nearly_eisenstein(cfg.h, cfg.s, cfg.trace_bound)), 0
    if c == "delta":
        return serialize(maass_delta(inputs[0], cfg.h, cfg.order)), 0
    if c == "D":
        return serialize(shimura_D(inputs[0], cfg.h)), 0
    if c == "contract":
        F = inputs[0]
        if not isinstance(F.ring, SymRing):
            raise SiegelqError(f"contract needs symmetric-form coefficients, not {F.ring}")
        return serialize(contract_expansion(F, det_form(F.genus))), 0
    if c == "theta":
        return serialize(theta_op(inputs[0])), 0
    if c == "dp":
        return serialize(dp_operator(inputs[0], cfg.e)), 0
    if c == "mul":
        return serialize(qexp_mul(inputs[0], inputs[1], threads=cfg.threads)), 0
    if c == "add":
        return serialize(qexp_add(inputs[0], inputs[1], *cfg.coefficients)), 0
    if c == "phi":
        return serialize(phi_realize(inputs[0])), 0
    if c == "realize":
        F = inputs[0]
        out = unit_root_realize(F) if isinstance(F.ring, DeRhamRing) else padic_realize(F)
        return serialize(out), 0
    if c == "congr":
        res = congruence_check(inputs[0], inputs[1], cfg.p, cfg.m)
        return _gate_json(res), 0 if res else 1
    if c == "gate":
        res = integrality_gate(inputs[0], cfg.p)
        return _gate_json(res, cfg.p), 0 if res else 1
    if c == "enum-T":
        mats = enumerate_psd(cfg.genus, cfg.trace_bound)
        return "".join(json.dumps(T.doubled_rows()) + "\n" for T in mats), 0
    if c == "dim":
        fn = dim_gl if cfg.group == "gl" else dim_sp
        return f"{fn(cfg.kappa)}\n", 0
    if c == "validate":
        F = inputs[0]
        summary = {"genus": F.genus, "level": F.level, "trace_bound": F.trace_bound,
                   "ring": F.ring.to_json(), "terms": len(F)}
        return json.dumps(summary, sort_keys=True) + "\n", 0
    raise UsageError(f"unknown command {c!r}")


def _write(text: str, path: str):
    data = text.encode("utf-8")
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _write_log(cfg: RunConfig, text: str, code: int):
    record = {
        "siegelq": __version__,
        "python": platform.python_version(),
        "config": {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(cfg).items() if k != "log_path"},
        "exit_code": code,
        "output_sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
    }
    with open(cfg.log_path, "w", encoding="utf-8") as fh:
        json.dump(record, fh, sort_keys=True, indent=2)
        fh.write("\n")


def run(cfg: RunConfig) -> int:
    text, code = execute(cfg)
    _write(text, cfg.output)
    if cfg.log_path:
        _write_log(cfg, text, code)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    logging.basicConfig(level=os.environ.get("SIEGELQ_LOGLEVEL", "WARNING"), stream=sys.stderr,
                        format="siegelq: %(levelname)s: %(message)s")
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"siegelq: usage error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(cfg)
    except UsageError as exc:
        print(f"siegelq: usage error: {exc}", file=sys.stderr)
        return 2
    except (SiegelqError, ValueError, TypeError, KeyError, ArithmeticError, OSError) as exc:
        log.debug("command failed", exc_info=True)
        print(f"siegelq: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
