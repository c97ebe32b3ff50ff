"""Command-line front end.

    tropscheme tropicalize --gens "T1 + T2 + 1"
    tropscheme sample --gens "T1 + T2 + 1" --box 0:4 --step 1/4 --format csv
    tropscheme bend --gens "T1 + T2 + 1"
    tropscheme analytify-a1 --r 1/2
    tropscheme verify --seed 0

Set ``TROP_LOG`` (e.g. ``DEBUG``) for log output on stderr.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import berkovich as bk
from . import verify
from .blueprint import apply_idem, apply_pos, base_change_to_T, monomial_blueprint
from .entail import check_derivation, compose, derive_bend_pair
from .poly import PolynomialSyntaxError, Signature, parse_polynomial
from .scalar import Valuation, format_rational, parse_rational
from .trop import (
    bend_relations,
    bend_vs_trop_points,
    grid_points,
    trop_point_member,
    write_csv,
    write_plot_data,
    write_point_cloud_json,
)

log = logging.getLogger("tropscheme")

COMMANDS = ("tropicalize", "sample", "bend", "analytify-a1", "verify")
FORMATS = ("json", "csv", "plot")


@dataclass
class JobConfig:
    command: str
    generators: list = field(default_factory=list)
    valuation: Valuation = field(default_factory=Valuation.trivial)
    sig: Signature = field(default_factory=lambda: Signature(2))
    box: list = field(default_factory=list)
    step: Fraction = Fraction(1, 4)
    fmt: str = "json"
    out: str | None = None
    depth: int = 6
    seed: int = 0
    precision: int = 6
    log_coords: bool = False
    radius: Fraction = Fraction(1, 2)
    fs: list = field(default_factory=list)
    suites: list = field(default_factory=list)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.depth < 1:
            raise ValueError("depth must be at least 1")
        if self.precision < 0:
            raise ValueError("precision must be nonnegative")
        if self.command in ("tropicalize", "sample", "bend") and not self.generators:
            raise ValueError(f"{self.command} needs --gens")

    def polynomials(self):
        return [parse_polynomial(g, self.sig) for g in self.generators]

    def grid_box(self):
        if not self.box:
            return [(Fraction(0), Fraction(4), self.step)] * self.sig.num_vars
        if len(self.box) == 1:
            return self.box * self.sig.num_vars
        if len(self.box) != self.sig.num_vars:
            raise ValueError(f"--box has {len(self.box)} axes for {self.sig.num_vars} variables")
        return self.box


def _parse_box(text: str, step: Fraction) -> list:
    axes = []
    for part in text.split(","):
        bits = part.split(":")
        if len(bits) not in (2, 3):
            raise ValueError(f"box axis {part!r} must be lo:hi or lo:hi:step")
        lo, hi = parse_rational(bits[0]), parse_rational(bits[1])
        st = parse_rational(bits[2]) if len(bits) == 3 else step
        if lo < 0 or hi < lo:
            raise ValueError(f"box axis {part!r} must satisfy 0 <= lo <= hi")
        if st <= 0:
            raise ValueError("step must be positive")
        axes.append((lo, hi, st))
    return axes


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gens", action="append", default=[],
                        help="generator polynomial(s); repeat the flag or separate with ';'")
    common.add_argument("--valuation", default="trivial", help="trivial | padic:<p>")
    common.add_argument("--vars", type=int, default=2, help="number of variables (default 2)")
    common.add_argument("--laurent", action="store_true", help="allow negative exponents")
    common.add_argument("--box", default=None, help="lo:hi[:step] per axis, comma separated; one axis applies to all")
    common.add_argument("--step", default="1/4", help="grid step (default 1/4)")
    common.add_argument("--depth", type=int, default=6, help="search depth (default 6)")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--format", dest="fmt", default="json", choices=FORMATS)
    common.add_argument("--precision", type=int, default=6, help="decimal digits for plot data")
    common.add_argument("--out", default=None, help="output path (default stdout)")

    ap = argparse.ArgumentParser(prog="tropscheme", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("tropicalize", parents=[common], help="write the tropicalized presentation as JSON")
    sp = sub.add_parser("sample", parents=[common], help="sample T-points of the tropicalization on a grid")
    sp.add_argument("--log-coords", action="store_true", help="plot data in log10 coordinates")
    sub.add_parser("bend", parents=[common], help="bend relations with checked derivations")
    an = sub.add_parser("analytify-a1", parents=[common], help="restriction of A^1 seminorms to the line")
    an.add_argument("--r", default="1/2", help="radius for f-adic and infinity-adic norms")
    an.add_argument("--f", action="append", default=[], help="irreducible monic f in T (repeatable)")
    vp = sub.add_parser("verify", parents=[common], help="run the property suites")
    vp.add_argument("--suites", default="", help="comma-separated suite numbers (default all)")
    return ap


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    step = parse_rational(ns.step)
    gens = [g.strip() for chunk in ns.gens for g in chunk.split(";") if g.strip()]
    return JobConfig(
        command=ns.command,
        generators=gens,
        valuation=Valuation.parse(ns.valuation),
        sig=Signature(ns.vars, ns.laurent),
        box=_parse_box(ns.box, step) if ns.box else [],
        step=step,
        fmt=ns.fmt,
        out=ns.out,
        depth=ns.depth,
        seed=ns.seed,
        precision=ns.precision,
        log_coords=getattr(ns, "log_coords", False),
        radius=parse_rational(getattr(ns, "r", "1/2")),
        fs=list(getattr(ns, "f", [])),
        suites=[s for s in getattr(ns, "suites", "").split(",") if s],
    )


def _presentation(cfg: JobConfig):
    return base_change_to_T(monomial_blueprint(cfg.polynomials(), cfg.sig, cfg.valuation))


def cmd_tropicalize(cfg: JobConfig) -> str:
    BT = _presentation(cfg)
    log.info("%d relations", len(BT.relations))
    print(f"{len(BT.relations)} relations", file=sys.stderr)
    return BT.dumps() + "\n"


def cmd_sample(cfg: JobConfig) -> str:
    BT = _presentation(cfg)
    box = cfg.grid_box()
    rows = [(x, trop_point_member(BT, x)) for x in grid_points(box)]
    # canonical order, independent of how the grid was traversed
    rows.sort(key=lambda r: r[0])
    members = [x for x, ok in rows if ok]
    print(f"{len(members)} of {len(rows)} grid points", file=sys.stderr)
    if cfg.fmt == "csv":
        return write_csv(rows, cfg.sig.num_vars)
    if cfg.fmt == "plot":
        return write_plot_data(members, cfg.precision, cfg.log_coords)
    meta = {
        "generators": cfg.generators,
        "valuation": str(cfg.valuation),
        "box": [[format_rational(v) for v in ax] for ax in box],
        "count": len(members),
        "relative_to_generators": len(cfg.generators) > 1,
    }
    return write_point_cloud_json(members, meta)


def cmd_bend(cfg: JobConfig) -> str:
    gens = cfg.polynomials()
    B = apply_pos(apply_idem(_presentation(cfg)))
    rels = bend_relations(gens, cfg.valuation)
    classes = []
    npairs = 0
    for g, p in enumerate(gens):
        mine = [r for r in rels if r.generator_index == g]
        if not mine:
            continue
        proofs = {}
        for r in mine:
            proofs[r.reduced] = derive_bend_pair(B, r)
        full = mine[0].full
        members = [full] + [r.reduced for r in mine]
        pairs = []
        for x, y in itertools.combinations(members, 2):
            if x == full:
                le, ge = proofs[y]
            else:
                # reduced_i <= full <= reduced_j and back
                le = compose(proofs[x][1], proofs[y][0])
                ge = compose(proofs[y][1], proofs[x][0])
            if not (check_derivation(B, le) and check_derivation(B, ge)):
                raise RuntimeError(f"derivation for {x} = {y} failed to check")
            pairs.append({"lhs": str(x), "rhs": str(y), "leq": le.to_script(), "geq": ge.to_script()})
        npairs += len(pairs)
        classes.append({"generator": str(p), "members": [str(m) for m in members], "pairs": pairs})
    print(f"{len(rels)} bend relations, {npairs} derivation pairs", file=sys.stderr)
    data = {
        "valuation": str(cfg.valuation),
        "bend_relations": [{"full": str(r.full), "reduced": str(r.reduced), **r.to_json()} for r in rels],
        "classes": classes,
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def cmd_analytify_a1(cfg: JobConfig) -> str:
    texts = cfg.fs or ["T", "T + 1", "T - 2", "T^2 + 1", "T^2 + T + 1"]
    rows = []
    for text in texts:
        f = bk.line_poly(text)
        if bk.lint_irreducible(f) is False:
            log.warning("f = %s is reducible; f-adic seminorms assume irreducible f", f)
        for w in (bk.FAdic(f, cfg.radius), bk.FAdicZero(f)):
            rows.append(bk.line_trop_image(w).to_json())
    for w in (bk.TrivialNorm(), bk.InfinityAdic(cfg.radius)):
        rows.append(bk.line_trop_image(w).to_json())
    for row in rows:
        del row["values"]
    return json.dumps({"radius": format_rational(cfg.radius), "classification": rows}, indent=2, sort_keys=True) + "\n"


def cmd_verify(cfg: JobConfig) -> tuple[str, bool]:
    log.info("verify seed=%d", cfg.seed)
    results = verify.run_all(cfg.seed, cfg.suites or None)
    for r in results:
        print(r.line(), file=sys.stderr)
    return verify.report_json(results, cfg.seed), all(r.passed for r in results)


def run(cfg: JobConfig) -> tuple[str, bool]:
    if cfg.command == "verify":
        return cmd_verify(cfg)
    fn = {
        "tropicalize": cmd_tropicalize,
        "sample": cmd_sample,
        "bend": cmd_bend,
        "analytify-a1": cmd_analytify_a1,
    }[cfg.command]
    return fn(cfg), True


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("TROP_LOG", "WARNING").upper(), format="%(levelname)s %(name)s: %(message)s")
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        text, ok = run(cfg)
    except PolynomialSyntaxError as e:
        print(f"error: parse error in generator: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
