"""Command-line driver: ``greenmackey <subcommand> [options]``.

Exit status is 0 when every check passes, 1 when at least one fails and 2
on bad input.  Reports carry wall times only with ``--timing``, so by
default a fixed seed gives byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .burnside import (
    artin_solve,
    burnside_green_functor,
    marks_report,
    zero_mark_certificate,
)
from .checks import CheckResult
from .functors import (
    AXIOM_NAMES,
    axiom_tuples,
    frobenius_check,
    mackey_axiom_check,
    merge,
    regular_identity_check,
)
from .groups import (
    brute_force_subgroups,
    classify_subgroup,
    load_group,
    orbit_count,
    parse_family,
)
from .mackey import (
    GreenModule,
    fixed_point_green,
    load_mackey_fixture,
    scalar_module,
    swan_vanishing_check,
    tate_module,
    validate_green,
    verify_induction_iso,
)
from .twisted import TwistedCategory
from .zalgebra import load_ring, parse_mode, validate_action

SUBCOMMANDS = ("group", "families", "axioms", "frobenius", "dress", "artin", "twisted")


class InputError(Exception):
    pass


@dataclass
class SuiteConfig:
    command: str
    group: str | None = None
    ring: str = "Z"
    seed: int = 0
    samples: int = 10
    family: str = "H"
    coeff: str = "Z"
    functor: str = "fixed-point"
    subgroups: list[int] | None = None
    out: str | None = None
    format: str = "text"
    timing: bool = False


@dataclass
class Report:
    """Checks in run order.  Wall times are kept but only emitted with ``timing``,
    so that default reports stay byte-identical for a fixed seed."""

    config: SuiteConfig
    checks: list[dict] = field(default_factory=list)
    sections: dict = field(default_factory=dict)
    seconds: list[float] = field(default_factory=list)
    _clock: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, res: CheckResult | dict):
        now = time.perf_counter()
        # time since the previous check (or the start) is charged to this one
        self.seconds.append(now - self._clock)
        self._clock = now
        self.checks.append(res.to_dict() if isinstance(res, CheckResult) else res)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if c["status"] == "fail")

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_dict(self) -> dict:
        cfg = {k: v for k, v in asdict(self.config).items() if k not in ("out", "format", "timing")}
        checks = self.checks
        summary = {"total": len(self.checks), "failed": self.failed}
        if self.config.timing:
            checks = [dict(c, seconds=round(t, 3)) for c, t in zip(self.checks, self.seconds)]
            summary["seconds"] = round(sum(self.seconds), 3)
        return {
            "tool": "greenmackey",
            "version": __version__,
            "config": cfg,
            "sections": self.sections,
            "checks": checks,
            "summary": summary,
        }


def emit_report(report: Report, fmt: str = "text") -> str:
    data = report.to_dict()
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    lines = [f"greenmackey {data['version']} {report.config.command}"]
    lines.append("config: " + " ".join(f"{k}={v}" for k, v in sorted(data["config"].items()) if v is not None))
    for name, sec in data["sections"].items():
        lines.append(f"[{name}]")
        lines.append(json.dumps(sec, sort_keys=True))
    for c in data["checks"]:
        tag = c["status"].upper()
        took = f", {c['seconds']:.3f}s" if "seconds" in c else ""
        lines.append(f"{tag:<18} {c['name']} (checked {c.get('checked', 0)}{took})")
        if "details" in c:
            lines.append("    details: " + json.dumps(c["details"], sort_keys=True))
        if "counterexample" in c:
            lines.append("    counterexample: " + json.dumps(c["counterexample"], sort_keys=True))
    s = data["summary"]
    took = f" in {s['seconds']:.3f}s" if "seconds" in s else ""
    lines.append(f"summary: {s['total']} checks, {s['failed']} failed{took}")
    return "\n".join(lines) + "\n"


# subcommands


def _subgroup_filter(cfg: SuiteConfig, G):
    if cfg.subgroups is None:
        return lambda *Hs: True
    allowed = set(cfg.subgroups)
    bad = allowed - {H.id for H in G.subgroups}
    if bad:
        raise InputError(f"unknown subgroup ids {sorted(bad)}")
    return lambda *Hs: all(H.id in allowed for H in Hs)


DEFAULT_GROUP = "S3"


def _load(cfg: SuiteConfig):
    return load_group(cfg.group or DEFAULT_GROUP)


def _context(cfg: SuiteConfig, G):
    R, action = load_ring(cfg.ring, G)
    return TwistedCategory(action)


def run_group(cfg, rep):
    G = _load(cfg)
    rep.sections["group"] = {
        "name": G.name, "order": G.order, "degree": G.degree,
        "subgroups": len(G.subgroups),
        "subgroup_orders": [H.order for H in G.subgroups],
        "element_classes": len(G.conjugacy_classes),
        "subgroup_classes": [[H.id for H in c] for c in G.subgroup_classes],
    }
    if G.order <= 24:
        bf = brute_force_subgroups(G)
        same = sorted(bf) == sorted(H.members for H in G.subgroups)
        rep.add(CheckResult("subgroup lattice matches brute force", same, len(bf),
                            counterexample=None if same else {"brute_force": len(bf), "lattice": len(G.subgroups)}))
    bad, n = [], 0
    for K in G.subgroups:
        for J in K.subgroups:
            for I in K.subgroups:
                n += 1
                lhs, rhs = orbit_count(K, J, I)
                if lhs != rhs:
                    bad.append({"tuple": [K.id, J.id, I.id], "index": lhs, "orbit_sum": rhs})
    rep.add(CheckResult("orbit counting over double cosets", not bad, n, counterexample={"failures": bad[:5]} if bad else None))


def _classification(G, H) -> dict:
    c = classify_subgroup(G, H)
    return {"order": c.order, "cyclic": c.is_cyclic,
            "elementary_primes": sorted(c.elementary_primes),
            "hyperelementary_primes": sorted(c.hyperelementary_primes)}


def run_families(cfg, rep):
    G = _load(cfg)
    fam = parse_family(G, cfg.family)
    rep.sections["family"] = {
        "label": fam.label,
        "members": [H.id for H in fam],
        "orders": [H.order for H in fam],
        "classification": {str(H.id): _classification(G, H) for H in fam},
    }
    bad = fam.closure_violations()
    rep.add(CheckResult(f"family {fam.label} closed under subgroups and conjugation", not bad, len(fam),
                        counterexample={"violations": bad[:5]} if bad else None))


def run_axioms(cfg, rep):
    G = _load(cfg)
    ctx = _context(cfg, G)
    keep = _subgroup_filter(cfg, G)
    rng = np.random.default_rng(cfg.seed)
    for k in range(1, 8):
        tuples = [t for t in axiom_tuples(k, G) if keep(*t)]
        results = [mackey_axiom_check(k, ctx, t, rng, cfg.samples) for t in tuples]
        res = merge(f"axiom {k}", results, {"tuples": len(tuples), "title": AXIOM_NAMES[k]})
        rep.add(res)


def run_frobenius(cfg, rep):
    G = _load(cfg)
    ctx = _context(cfg, G)
    keep = _subgroup_filter(cfg, G)
    rng = np.random.default_rng(cfg.seed)
    for J in G.subgroups:
        for I in J.subgroups:
            if I == J or not keep(I, J):
                continue
            for law in (1, 2):
                rep.add(frobenius_check(law, ctx, I, J, rng, cfg.samples))
    for F in G.subgroups:
        if F.order > 1 and keep(F):
            rep.add(regular_identity_check(ctx, F, rng, cfg.samples))


BUILTIN_FUNCTORS = ("fixed-point", "burnside", "tate")


def _dress_module(cfg, G):
    """Builtin Green module, or a fixture (which names its own group) over the fixed-point functor."""
    kind = cfg.functor
    if kind == "fixed-point":
        return GreenModule.regular(fixed_point_green(G))
    if kind == "burnside":
        return GreenModule.regular(burnside_green_functor(G))
    if kind == "tate":
        return tate_module(G)
    M = load_mackey_fixture(kind)
    return scalar_module(fixed_point_green(M.group), M)


def run_dress(cfg, rep):
    mode = parse_mode(cfg.coeff)
    builtin = cfg.functor in BUILTIN_FUNCTORS
    mod = _dress_module(cfg, _load(cfg) if builtin else None)
    G = mod.group
    if not builtin:
        rep.sections["fixture"] = {"name": mod.module.name, "group": G.name, "order": G.order}
    fam = parse_family(G, cfg.family)
    for r in validate_green(mod.green, mod):
        rep.add(r)
    if rep.failed:
        return
    res = verify_induction_iso(mod, fam, mode)
    cert = res.certificate
    rep.sections["certificate"] = cert.to_dict()
    status = {"pass": "pass", "counterexample": "fail"}.get(res.status, res.status)
    details = {"gcd_certificate": f"{{{', '.join(map(str, cert.indices))}}} -> {cert.index_gcd}", **res.details}
    rep.add({"name": f"induction from {fam.label} ({mode.label})", "status": status, "checked": 1,
             "details": details})
    if res.status == "hypothesis_failure" and cfg.functor == "burnside":
        rep.add(zero_mark_certificate(mod.green, fam))
    if not mod.module.value(G.trivial).factors:
        rep.add(swan_vanishing_check(mod))


def run_artin(cfg, rep):
    G = _load(cfg)
    rep.sections["marks"] = marks_report(G)
    sol = artin_solve(G)
    full = artin_solve(G, G.order)
    rep.sections["artin"] = {"minimal": sol.to_dict(), "order": full.to_dict()}
    ok = G.order % sol.n == 0 and full.expand().values == tuple(G.order for _ in G.conjugacy_classes)
    rep.add(CheckResult("artin induction over cyclic subgroups", ok, 2, {"minimal_n": sol.n}))


def run_twisted(cfg, rep):
    G = _load(cfg)
    ctx = _context(cfg, G)
    report = validate_action(G, ctx.ring, ctx.action)
    rep.add(CheckResult("right action of the group on the ring", report.ok, G.order ** 2,
                        counterexample={"violations": [str(v) for v in report.violations[:5]]} if not report.ok else None))
    rng = np.random.default_rng(cfg.seed)
    bad, n = [], 0
    for s in range(cfg.samples):
        a, b, c, d = (int(x) for x in rng.integers(0, 4, size=4))
        f = ctx.random_morphism(rng, a, b)
        g = ctx.random_morphism(rng, b, c)
        g2 = ctx.random_morphism(rng, b, c)
        h = ctx.random_morphism(rng, c, d)
        n += 1
        if ctx.compose(h, ctx.compose(g, f)) != ctx.compose(ctx.compose(h, g), f):
            bad.append({"sample": s, "law": "associativity"})
        if ctx.compose(ctx.identity(b), f) != f or ctx.compose(f, ctx.identity(a)) != f:
            bad.append({"sample": s, "law": "identity"})
        if ctx.compose(g + g2, f) != ctx.compose(g, f) + ctx.compose(g2, f):
            bad.append({"sample": s, "law": "additivity"})
    rep.add(CheckResult("category laws", not bad, n, {"ring": ctx.ring.name, "trivial_action": ctx.action.is_trivial},
                        {"failures": bad[:5]} if bad else None))


RUNNERS = {
    "group": run_group, "families": run_families, "axioms": run_axioms, "frobenius": run_frobenius,
    "dress": run_dress, "artin": run_artin, "twisted": run_twisted,
}


def run_suite(cfg: SuiteConfig) -> Report:
    rep = Report(cfg)
    RUNNERS[cfg.command](cfg, rep)
    return rep


# argument handling


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="greenmackey", description="Exact checks for Mackey and Green functors.")
    p.add_argument("--version", action="version", version=f"greenmackey {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", help="JSON file with default option values")
        s.add_argument("--group", help="builtin name (S3, D4, A4, ...) or JSON file")
        s.add_argument("--ring", help="Z, Z[i], Z[C3], ZxZ-swap, Zn-perm or JSON file")
        s.add_argument("--seed", type=int)
        s.add_argument("--samples", type=int)
        s.add_argument("--family", help="H, Hp:<p>, E, Ep:<p>, FC, proper or all")
        s.add_argument("--coeff", help="Z, Zp:<p>, Q or Z-half")
        s.add_argument("--functor", help="fixed-point, burnside, tate or a fixture file")
        s.add_argument("--subgroups", help="comma separated subgroup ids to restrict to")
        s.add_argument("--out", help="write the report here instead of stdout")
        s.add_argument("--format", choices=("text", "json"))
        s.add_argument("--timing", action="store_true", default=None,
                       help="add wall times (reports are then no longer byte-identical)")
    return p


def config_from_args(ns: argparse.Namespace) -> SuiteConfig:
    values: dict = {}
    if ns.config:
        try:
            values = json.loads(Path(ns.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {ns.config}: {exc}") from None
        if not isinstance(values, dict):
            raise InputError("config file must hold a JSON object")
        unknown = set(values) - set(SuiteConfig.__dataclass_fields__)
        if unknown:
            raise InputError(f"unknown config keys {sorted(unknown)}")
    for key in ("group", "ring", "seed", "samples", "family", "coeff", "functor", "out", "format", "timing"):
        v = getattr(ns, key)
        if v is not None:
            values[key] = v
    if ns.subgroups is not None:
        try:
            values["subgroups"] = [int(x) for x in ns.subgroups.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"bad subgroup list {ns.subgroups!r}") from None
    values["command"] = ns.command
    cfg = SuiteConfig(**values)
    if cfg.samples < 0:
        raise InputError("samples must be non-negative")
    if cfg.format not in ("text", "json"):
        raise InputError(f"unknown format {cfg.format!r}")
    return cfg


# GroupError, RingError and the rest all derive from ValueError
INPUT_ERRORS = (InputError, ValueError)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        report = run_suite(cfg)
    except INPUT_ERRORS as exc:
        print(f"greenmackey: input error: {exc}", file=sys.stderr)
        return 2
    text = emit_report(report, cfg.format)
    if cfg.out:
        try:
            Path(cfg.out).write_text(text)
        except OSError as exc:
            print(f"greenmackey: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
