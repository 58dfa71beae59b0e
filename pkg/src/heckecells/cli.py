"""Command-line driver.

    heckecells cells  --type A2 --n 2 --J full --Jp full --out results/
    heckecells kl     --type B2 --n 2 [--lambda "(1/2,0)"]
    heckecells stalks --type A2 --n 1
    heckecells gamma  --type A1 --n 2
    heckecells verify duality --type A2 --eps flip

Settings come from ``--config FILE`` (flat ``key = value`` lines, ``#`` comments)
overridden by flags.  Exit status: 0 pass, 1 counterexample, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from heckecells import grothendieck as gk, klcells, suites
from heckecells.chars import CharacterPoint, IncompatibleTwist
from heckecells.hecke import AlgebraContext
from heckecells.rootsys import CartanError, InfiniteType

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

KEYS = ("type", "n", "eps", "dbar", "J", "Jp", "seed", "out", "d0", "lambda")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    cartan_type: str = "A1"
    n: int = 1
    eps: str = "id"
    dbar: str | None = None
    J: str = "full"
    Jp: str = "full"
    seed: int = 0
    out: str = "."
    d0: int | None = None
    lam: str | None = None

    def resolved(self, ctx: AlgebraContext) -> dict:
        d = asdict(self)
        d["eps"] = [e + 1 for e in ctx.eps]
        d["dbar"] = [e + 1 for e in ctx.dbar]
        d["J"] = [j + 1 for j in parse_subset(self.J, ctx.rank)]
        d["Jp"] = [j + 1 for j in parse_subset(self.Jp, ctx.rank)]
        d["d0"] = self.d0_value(ctx)
        d["lambda"] = d.pop("lam")
        d.pop("out")
        return d

    def d0_value(self, ctx: AlgebraContext) -> int:
        return gk.default_d0(ctx) if self.d0 is None else self.d0


def read_config_file(path: str) -> dict[str, str]:
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def parse_subset(text: str, rank: int) -> tuple[int, ...]:
    """``"full"``, ``"empty"`` or 1-based indices ``"1,3"``."""
    t = text.strip().lower()
    if t in ("full", "all", "i"):
        return tuple(range(rank))
    if t in ("empty", "none", ""):
        return ()
    try:
        J = sorted({int(x) - 1 for x in t.replace(" ", "").split(",") if x})
    except ValueError:
        raise ConfigError(f"cannot parse subset {text!r}") from None
    if any(j < 0 or j >= rank for j in J):
        raise ConfigError(f"subset {text!r} is not inside 1..{rank}")
    return tuple(J)


def build_config(args: argparse.Namespace) -> RunConfig:
    raw = read_config_file(args.config) if args.config else {}
    for key in KEYS:
        val = getattr(args, key if key != "lambda" else "lam", None)
        if val is not None:
            raw[key] = str(val)
    cfg = RunConfig()
    try:
        if "type" in raw:
            cfg.cartan_type = raw["type"]
        for key in ("n", "seed", "d0"):
            if key in raw:
                setattr(cfg, key, int(raw[key]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    for key, attr in (("eps", "eps"), ("dbar", "dbar"), ("J", "J"), ("Jp", "Jp"), ("out", "out"), ("lambda", "lam")):
        if key in raw:
            setattr(cfg, attr, raw[key])
    if cfg.n < 1:
        raise ConfigError("n must be >= 1")
    return cfg


def make_context(cfg: RunConfig) -> AlgebraContext:
    try:
        return AlgebraContext.build(cfg.cartan_type, cfg.n, cfg.eps, cfg.dbar)
    except (CartanError, InfiniteType, IncompatibleTwist, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def select_lambdas(ctx: AlgebraContext, cfg: RunConfig) -> list[int]:
    if cfg.lam is None:
        return list(ctx.lambdas)
    try:
        return [ctx.chars.lookup(CharacterPoint.parse(cfg.lam))]
    except (KeyError, ValueError, ZeroDivisionError):
        raise ConfigError(f"lambda {cfg.lam!r} is not in ufs_{ctx.n} for rank {ctx.rank}") from None


def write(out: Path, name: str, content: str) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(content)
    return path


def dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- commands ------------------------------------------------------------------

def cmd_cells(cfg: RunConfig, ctx: AlgebraContext) -> int:
    J, Jp = parse_subset(cfg.J, ctx.rank), parse_subset(cfg.Jp, ctx.rank)
    part = klcells.two_sided_cells(ctx, J, Jp)
    data = {"config": cfg.resolved(ctx), **part.to_json(ctx)}
    path = write(Path(cfg.out), "cells.json", dump(data))
    W, chars = ctx.W, ctx.chars
    print(f"{len(part)} cells ({ctx.datum.name}, n={ctx.n}, J={list(data['config']['J'])}, "
          f"J'={list(data['config']['Jp'])})")
    for i, cell in enumerate(part.cells):
        members = ", ".join(f"({W.render(w)},{chars.render(lam)})" for w, lam in cell)
        print(f"{i:4d} {len(cell):4d}  {members}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_kl(cfg: RunConfig, ctx: AlgebraContext) -> int:
    lams = select_lambdas(ctx, cfg)
    kl = klcells.kl_rows(ctx, lams)
    nt = klcells.n_rows(ctx, lams)
    out = Path(cfg.out)
    p1 = write(out, "kl.csv", klcells.to_csv(("lambda", "z'", "z", "poly"), kl))
    p2 = write(out, "n.csv", klcells.to_csv(("lambda", "w'", "w", "i", "N"), nt))
    write(out, "kl.json", dump({"config": cfg.resolved(ctx), "kl_rows": len(kl), "n_rows": len(nt)}))
    print(f"{len(kl)} KL rows -> {p1}\n{len(nt)} N rows -> {p2}")
    return EXIT_OK


def cmd_stalks(cfg: RunConfig, ctx: AlgebraContext) -> int:
    lams = select_lambdas(ctx, cfg)
    d0 = cfg.d0_value(ctx)
    W, chars = ctx.W, ctx.chars
    entries = []
    for lam in lams:
        for w in W:
            cls = gk.sheaf_class(ctx, w, lam, d0)
            stalks = [{"w'": W.render(wp), "N": {str(i): N for i, N in sorted(klcells.n_coeffs(ctx, wp, w, lam).items())}}
                      for wp in W if klcells.n_coeffs(ctx, wp, w, lam)]
            entries.append({"w": W.render(w), "lambda": chars.point(lam).to_json(),
                            "d_w": W.length(w) + d0, "stalks": stalks, "class": cls.to_json(d0)["terms"]})
    path = write(Path(cfg.out), "stalks.json", dump({"config": cfg.resolved(ctx), "d0": d0, "entries": entries}))
    rows = klcells.n_rows(ctx, lams)
    write(Path(cfg.out), "stalks.csv", klcells.to_csv(("lambda", "w'", "w", "i", "N"), rows))
    print(f"{len(entries)} stalk tables -> {path}")
    return EXIT_OK


def cmd_gamma(cfg: RunConfig, ctx: AlgebraContext) -> int:
    W, chars = ctx.W, ctx.chars
    lams = select_lambdas(ctx, cfg)
    table = []
    for w in W:
        for lam in lams:
            for wp in W:
                for lamp in ctx.lambdas:
                    g = klcells.gamma(ctx, w, lam, wp, lamp)
                    if not g:
                        continue
                    table.append({
                        "left": {"w": W.render(w), "lambda": chars.point(lam).to_json()},
                        "right": {"w": W.render(wp), "lambda": chars.point(lamp).to_json()},
                        "terms": [{"w": W.render(y), "lambda": chars.point(nu).to_json(), "poly": str(c)}
                                  for (y, nu), c in sorted(g.items(), key=lambda kv: (W.length(kv[0][0]),) + kv[0])],
                    })
    path = write(Path(cfg.out), "gamma.json", dump({"config": cfg.resolved(ctx), "products": table}))
    print(f"{len(table)} nonzero products -> {path}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, ctx: AlgebraContext, suite: str) -> int:
    results = suites.run(suite, ctx, cfg.seed)
    ok = all(r.passed for r in results)
    data = {"config": cfg.resolved(ctx), "suite": suite, "pass": ok,
            "results": [r.to_json() for r in results]}
    out = Path(cfg.out)
    path = write(out, f"verify_{suite}.json", dump(data))
    for r in results:
        print(f"{r.suite:12s} {'PASS' if r.passed else 'FAIL'}  ({r.checked} checks)")
        if r.suite == "facets":
            write(out, "facets.csv", klcells.to_csv(
                ("element", "lhs_trace", "rhs_trace"),
                [(row["element"], row["lhs_trace"], row["rhs_trace"]) for row in r.rows]))
        if not r.passed:
            print("counterexample: " + json.dumps(r.counterexample, sort_keys=True), file=sys.stderr)
    print(f"wrote {path}")
    return EXIT_OK if ok else EXIT_FAIL


# -- argument parsing ----------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--type", help="Cartan type, e.g. A2, B2, A1xA1")
    p.add_argument("--n", type=int, help="torsion level of the characters")
    p.add_argument("--eps", help="diagram automorphism: id, flip, swap or images like 2,1")
    p.add_argument("--dbar", help="coordinate permutation for the character twist (default: eps)")
    p.add_argument("--J", help="left subset: full, empty or indices like 1,2")
    p.add_argument("--Jp", help="right subset: full, empty or indices")
    p.add_argument("--lambda", dest="lam", help='restrict to one character, e.g. "(1/2,0)"')
    p.add_argument("--out", help="output directory (default: current)")
    p.add_argument("--seed", type=int, help="seed for randomized checks")
    p.add_argument("--d0", type=int, help="override the constant D0 in d_w = l(w) + D0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heckecells", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("cells", "two-sided (J,J') cells"), ("kl", "KL polynomials and N tables"),
                        ("stalks", "N tables as stalk multiplicities"), ("gamma", "structure constants")):
        _common(sub.add_parser(name, help=help_))
    pv = sub.add_parser("verify", help="run a property suite")
    pv.add_argument("suite", choices=suites.SUITES + ("all",))
    _common(pv)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = build_config(args)
        ctx = make_context(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, ctx, args.suite)
        return {"cells": cmd_cells, "kl": cmd_kl, "stalks": cmd_stalks, "gamma": cmd_gamma}[args.command](cfg, ctx)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
