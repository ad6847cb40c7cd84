"""``spreadec`` command line.

Exit codes: 0 success, 1 not decodable (``decode``) or failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from spreadec import textio
from spreadec.channel import ChannelConfig, ChannelError, transmit, truth_log_line
from spreadec.decoder import decode_basic, decode_improved
from spreadec.field_tower import FieldError, prime_power
from spreadec.matspace import EnumerationCapError, Subspace, make_rng
from spreadec.spread_code import SpreadParams, all_gammas, code_size, encode, make_params
from spreadec.stats_harness import gl_zero_column_count, gl_zero_column_enumeration, table_rows, write_csv


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    q: int = 2
    k: int = 3
    l: int = 2
    alpha_poly: tuple[int, ...] | None = None
    beta_poly: tuple[int, ...] | None = None
    seed: int = 0
    trials: int = 100
    erasures: int = 0
    errors: int = 0
    basic: bool = False
    mc: bool = False
    jobs: int = 1
    out: Path | None = None
    extra: dict = field(default_factory=dict)

    def check(self) -> None:
        if self.k < 1 or self.l < 1:
            raise UsageError("k and l must be positive")
        try:
            _, _ = prime_power(self.q)
        except FieldError as exc:
            raise UsageError(str(exc)) from exc
        if self.q > 256:
            raise UsageError("q must be at most 256")
        if self.k * self.l * math.log2(self.q) > 64:
            raise UsageError("q^(k*l) must not exceed 2^64")
        if self.basic and self.k * self.l * math.log2(self.q) > 12:
            raise UsageError("--basic enumerates the received space; needs q^(k*l) <= 2^12")
        if self.trials < 0 or self.jobs < 1:
            raise UsageError("trials must be >= 0 and jobs >= 1")

    def params(self) -> SpreadParams:
        self.check()
        try:
            return make_params(self.q, self.k, self.l, self.alpha_poly, self.beta_poly)
        except FieldError as exc:
            raise UsageError(str(exc)) from exc


def _poly(text: str) -> tuple[int, ...]:
    try:
        return textio.parse_poly(text)
    except textio.ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _build_parser() -> argparse.ArgumentParser:
    code = argparse.ArgumentParser(add_help=False)
    code.add_argument("--q", type=int, default=2, help="field size (prime power)")
    code.add_argument("--k", type=int, default=3, help="codeword dimension")
    code.add_argument("--l", type=int, default=2, help="n / k")
    code.add_argument("--alpha-poly", type=_poly, help="primitive modulus of F_{q^k} over F_q, constant first")
    code.add_argument("--beta-poly", type=_poly, help="primitive modulus of F_{q^n} over F_{q^k}, constant first")

    run = argparse.ArgumentParser(add_help=False)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--trials", type=int, default=100)
    run.add_argument("--jobs", type=int, default=1)
    run.add_argument("--out", type=Path, help="write CSV here instead of stdout")

    parser = argparse.ArgumentParser(prog="spreadec", description="Spread codes over extension fields.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("code-info", parents=[code], help="summarize a spread code")

    p = sub.add_parser("encode", parents=[code], help="codeword matrix for an identifier")
    p.add_argument("gamma", help="identifier, e.g. '1,0,0;1,1,0'")

    p = sub.add_parser("decode", parents=[code], help="decode a received matrix")
    p.add_argument("matrix", help="matrix file ('-' for stdin)")
    p.add_argument("--basic", action="store_true", help="enumerate the whole received space")

    p = sub.add_parser("simulate", parents=[code, run], help="channel + decoder, one CSV row per trial")
    p.add_argument("--erasures", type=int, default=0)
    p.add_argument("--errors", type=int, default=0)
    p.add_argument("--basic", action="store_true")
    p.add_argument("--log", type=Path, help="write truth records here")

    p = sub.add_parser("tables", parents=[run], help="closed forms (and Monte Carlo) for the first-round tables")
    p.add_argument("--mc", action="store_true", help="add Monte Carlo columns")
    p.add_argument("--qs", type=_poly, default=(2, 3, 4, 5), help="comma-separated q values")
    p.add_argument("--kprimes", type=_poly, default=tuple(range(2, 8)), help="comma-separated k' values")
    p.add_argument("--table", choices=("thm10", "cor12", "both"), default="both")

    p = sub.add_parser("verify-lemma8", help="GL last-column zero counts against enumeration")
    p.add_argument("--cases", default="2:2,2:3,3:2", help="comma-separated q:k pairs")
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    known = {f for f in RunConfig.__dataclass_fields__}
    values = {k.replace("-", "_"): v for k, v in vars(ns).items()}
    cfg = RunConfig(**{k: v for k, v in values.items() if k in known})
    cfg.extra = {k: v for k, v in values.items() if k not in known}
    return cfg


def _open_out(path: Path | None) -> TextIO:
    return open(path, "w", newline="") if path else sys.stdout


def cmd_code_info(cfg: RunConfig, out: TextIO) -> int:
    params = cfg.params()
    spec = params.tower.spec
    lines = [
        f"q={params.q} k={params.k} l={params.l} n={params.n}",
        f"codewords={code_size(params)}",
        f"min_distance={2 * params.k}",
        f"t={params.t}",
        f"alpha_poly={textio.format_poly(spec.alpha_modulus)}",
        f"beta_poly={textio.format_poly(spec.beta_modulus)}",
    ]
    if spec.q_modulus is not None:
        lines.append(f"q_poly={textio.format_poly(spec.q_modulus)}")
    print("\n".join(lines), file=out)
    return 0


def cmd_encode(cfg: RunConfig, out: TextIO) -> int:
    params = cfg.params()
    try:
        g = textio.parse_gamma(params, cfg.extra["gamma"])
    except textio.ParseError as exc:
        raise UsageError(str(exc)) from exc
    print(textio.format_matrix(encode(params, g).space, block=params.k), file=out)
    return 0


def cmd_decode(cfg: RunConfig, out: TextIO) -> int:
    params = cfg.params()
    src = cfg.extra["matrix"]
    try:
        text = sys.stdin.read() if src == "-" else Path(src).read_text()
        m = textio.parse_matrix(text, params.field, params.n)
    except (OSError, textio.ParseError, ValueError) as exc:
        raise UsageError(f"cannot read matrix: {exc}") from exc
    r = Subspace.row_space(m)
    if r.dim == 0:
        raise UsageError("received matrix has rank 0")
    try:
        report = decode_basic(params, r) if cfg.basic else decode_improved(params, r)
    except EnumerationCapError as exc:
        raise UsageError(str(exc)) from exc
    print(report.to_text(params), file=out)
    if report.codeword is not None:
        print("codeword=", file=out)
        print(textio.format_matrix(report.codeword.space, block=params.k), file=out)
        return 0
    return 1


SIM_COLUMNS = ("trial", "seed", "erasures", "errors", "kprime", "decoded_correctly", "rounds_used", "combinations_tested")


def _trial_seeds(seed: int, trials: int) -> list[int]:
    return [int(s.generate_state(1, np.uint64)[0]) for s in np.random.SeedSequence(seed).spawn(trials)]


def _simulate_chunk(args) -> list[tuple[dict, str]]:
    params, cfg_ch, basic, seeds, start = args
    gammas = list(all_gammas(params))
    out = []
    for i, s in enumerate(seeds, start):
        rng = make_rng(s)
        w = encode(params, gammas[int(rng.integers(len(gammas)))])
        received, truth = transmit(params, w, cfg_ch, rng)
        report = decode_basic(params, received) if basic else decode_improved(params, received)
        row = {
            "trial": i,
            "seed": s,
            "erasures": cfg_ch.erasures,
            "errors": cfg_ch.errors,
            "kprime": received.dim,
            "decoded_correctly": int(report.codeword == w),
            "rounds_used": report.rounds_used,
            "combinations_tested": report.combinations_tested,
        }
        out.append((row, truth_log_line(s, cfg_ch, received, truth)))
    return out


def cmd_simulate(cfg: RunConfig, out: TextIO) -> int:
    params = cfg.params()
    cfg_ch = ChannelConfig(cfg.erasures, cfg.errors)
    try:
        cfg_ch.check(params)
    except ChannelError as exc:
        raise UsageError(str(exc)) from exc
    seeds = _trial_seeds(cfg.seed, cfg.trials)
    chunk = 250
    work = [(params, cfg_ch, cfg.basic, seeds[i : i + chunk], i) for i in range(0, len(seeds), chunk)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = [r for part in pool.map(_simulate_chunk, work) for r in part]
    else:
        results = [r for w in work for r in _simulate_chunk(w)]
    writer = csv.DictWriter(out, fieldnames=SIM_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row, _ in results:
        writer.writerow(row)
    log = cfg.extra.get("log")
    if log:
        Path(log).write_text("".join(line + "\n" for _, line in results))
    return 0


def cmd_tables(cfg: RunConfig, out: TextIO) -> int:
    which = cfg.extra["table"]
    tables = ("thm10", "cor12") if which == "both" else (which,)
    if cfg.mc and cfg.trials < 1:
        raise UsageError("--mc needs --trials >= 1")
    rows = table_rows(
        tables,
        qs=cfg.extra["qs"],
        kprimes=cfg.extra["kprimes"],
        trials=cfg.trials if cfg.mc else None,
        seed=cfg.seed,
        jobs=cfg.jobs,
    )
    write_csv(rows, out)
    return 0


def cmd_verify_lemma8(cfg: RunConfig, out: TextIO) -> int:
    try:
        cases = [tuple(int(x) for x in c.split(":")) for c in cfg.extra["cases"].split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --cases: {exc}") from exc
    ok = True
    print("q,k,z,formula,enumerated,match", file=out)
    for q, k in cases:
        counts = gl_zero_column_enumeration(q, k)
        for z in range(k):
            f = gl_zero_column_count(q, k, z)
            ok &= f == counts[z]
            print(f"{q},{k},{z},{f},{counts[z]},{str(f == counts[z]).lower()}", file=out)
        ok &= counts[k] == 0
    return 0 if ok else 1


COMMANDS = {
    "code-info": cmd_code_info,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "simulate": cmd_simulate,
    "tables": cmd_tables,
    "verify-lemma8": cmd_verify_lemma8,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    cfg = _config(ns)
    out = _open_out(cfg.out)
    try:
        return COMMANDS[cfg.subcommand](cfg, out)
    except UsageError as exc:
        print(f"spreadec: error: {exc}", file=sys.stderr)
        return 2
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
