"""Command-line driver: build lattices and codes, run verifiers, simulate code switching.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or input
error, 3 internal inconsistency.  Identical arguments give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from . import gf2, qrm, simplicial, stab_sim, transversal
from .color_code import (
    CodeSpec,
    build_color_code,
    fifteen_qubit_pair,
    from_bundle,
    min_distance_bruteforce,
    to_bundle,
    verify_commutation,
    verify_structure,
)
from .report import Report

OUT_ENV = "GAUGECOLOR_OUT"
DEFAULT_OUT = "gaugecolor-out"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    d: int | None = None
    level: int | None = None
    lattice: str | None = None
    bundle: str | None = None
    named: str | None = None
    x: int | None = None
    z: int | None = None
    n: int | None = None
    T: str | None = None
    seed: int = 0
    out: Path = Path(DEFAULT_OUT)
    mode: str = "verify"
    qrm_equiv: int | None = None
    distance: int | None = None
    other_x: int | None = None
    other_z: int | None = None
    other_bundle: str | None = None
    other_named: str | None = None
    protocol: str = "H"
    input: str = "0"
    quiet: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        fields = {k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__}
        fields["out"] = Path(ns.out or os.environ.get(OUT_ENV) or DEFAULT_OUT)
        cfg = cls(**fields)
        sources = [cfg.d is not None or cfg.level is not None, cfg.lattice, cfg.bundle, cfg.named]
        if sum(bool(s) for s in sources) > 1:
            raise UsageError("choose one of --d/--level, --lattice, --bundle, --named")
        return cfg


# -- loading -----------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def load_lattice(cfg: RunConfig) -> simplicial.ColoredComplex | None:
    if cfg.lattice:
        return simplicial.from_json(_read(cfg.lattice), check=False)
    if cfg.d is not None or cfg.level is not None:
        if cfg.d is None or cfg.level is None:
            raise UsageError("--d and --level go together")
        return simplicial.build_fractal(cfg.d, cfg.level)
    return None


def _named(name: str) -> CodeSpec:
    a, b = fifteen_qubit_pair()
    codes = {"C_A": a, "C_B": b}
    if name.startswith("QRM"):
        return qrm.build_qrm(int(name[3:])).spec
    if name not in codes:
        raise UsageError(f"unknown code {name!r}; known: C_A, C_B, QRM<m>")
    return codes[name]


def load_code(cfg: RunConfig, L: simplicial.ColoredComplex | None) -> CodeSpec | None:
    if cfg.bundle:
        try:
            return from_bundle(_read(cfg.bundle))
        except (KeyError, json.JSONDecodeError) as exc:
            raise UsageError(f"malformed bundle {cfg.bundle}: {exc}") from exc
    if cfg.named:
        return _named(cfg.named)
    if L is None:
        return None
    if cfg.x is None or cfg.z is None:
        raise UsageError("--x and --z are required with a lattice")
    return build_color_code(L, cfg.x, cfg.z)


def load_other(cfg: RunConfig, L: simplicial.ColoredComplex | None) -> CodeSpec:
    if cfg.other_bundle:
        return from_bundle(_read(cfg.other_bundle))
    if cfg.other_named:
        return _named(cfg.other_named)
    if L is None or cfg.other_x is None or cfg.other_z is None:
        raise UsageError("the second code needs --other-x/--other-z, --other-bundle or --other-named")
    return build_color_code(L, cfg.other_x, cfg.other_z)


def parse_T(spec: str | None, L: simplicial.ColoredComplex | None, n_qubits: int) -> list[int]:
    if spec is None:
        spec = "bipartition" if L is not None else "empty"
    if spec == "empty":
        return []
    if spec == "bipartition":
        if L is None:
            raise UsageError("T=bipartition needs a lattice")
        return simplicial.bipartition_indices(L)[0]
    try:
        T = sorted({int(i) for i in spec.split(",") if i.strip()})
    except ValueError as exc:
        raise UsageError(f"bad --T {spec!r}") from exc
    if any(i < 0 or i >= n_qubits for i in T):
        raise UsageError(f"--T indices must lie in 0..{n_qubits - 1}")
    return T


# -- output ------------------------------------------------------------------

def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _write_reports(cfg: RunConfig, reports: list[Report]) -> None:
    for r in reports:
        _write(cfg.out / "reports" / f"{r.check}.json", json.dumps(r.to_dict(), sort_keys=True, indent=1) + "\n")
    summary = {"passed": all(reports), "checks": {r.check: r.passed for r in reports}}
    _write(cfg.out / "summary.json", json.dumps(summary, sort_keys=True, indent=1) + "\n")


def _say(cfg: RunConfig, line: str) -> None:
    if not cfg.quiet:
        print(line)


def render(report: Report) -> str:
    status = "PASS" if report.passed else "FAIL"
    extra = f"  first witness: {json.dumps(report.to_dict()['witnesses'][0])}" if report.witnesses else ""
    return f"{status}  {report.check:<22} {report.code}{extra}"


# -- commands ----------------------------------------------------------------

def cmd_build(cfg: RunConfig) -> int:
    L = load_lattice(cfg)
    if L is not None:
        problems = simplicial.validate(L)
        if problems:
            raise UsageError(f"invalid lattice: {problems[0]}")
        _write(cfg.out / "lattice.json", simplicial.to_json(L))
    c = load_code(cfg, L)
    if c is None:
        raise UsageError("nothing to build: give --d/--level, --lattice, --bundle or --named")
    _write(cfg.out / "code.json", to_bundle(c))
    for name in ("gauge_x", "gauge_z", "stab_x", "stab_z"):
        _write(cfg.out / f"{name}.txt", gf2.to_text(getattr(c, name)))
    _say(cfg, f"built {c.name}: n={c.n} -> {cfg.out}")
    return EXIT_OK


def _code_reports(cfg: RunConfig, L, c: CodeSpec) -> list[Report]:
    reports = [verify_commutation(c), verify_structure(c)]
    if cfg.n is not None:
        T = parse_T(cfg.T, L, c.n)
        if L is not None:
            reports.append(transversal.verify_property_of_T(L, T))
        reports.append(transversal.check_condition_15(c, T, cfg.n, seed=cfg.seed))
        if cfg.mode == "verify" and gf2.rank(c.gauge_x) <= transversal.ENUMERATION_RANK_LIMIT:
            reports.append(transversal.check_condition_13(c, T, cfg.n))
            plan = transversal.TransversalRnPlan.for_code(c, T, cfg.n)
            reports.append(transversal.phase_oracle_Rn(c, plan))
    if cfg.distance is not None and cfg.mode == "verify":
        rep = Report(check="distance", passed=True, code=c.name, params={"w_max": cfg.distance})
        rep.details["dressed"] = min_distance_bruteforce(c, cfg.distance)
        rep.details["bare"] = min_distance_bruteforce(c, cfg.distance, bare=True)
        reports.append(rep)
    return reports


def cmd_verify(cfg: RunConfig) -> int:
    reports: list[Report] = []
    if cfg.qrm_equiv is not None:
        m = cfg.qrm_equiv
        if m < 3:
            raise UsageError("--qrm-equiv needs m >= 3")
        rep = qrm.certify_equivalence(m)
        reports.append(rep)
        q = qrm.build_qrm(m)
        _write(cfg.out / f"qrm{m}_M.txt", gf2.to_text(q.M))
        _write(cfg.out / f"qrm{m}_M_perp.txt", gf2.to_text(q.M_perp))
        if "permutation" in rep.details:
            _write(cfg.out / f"qrm{m}_permutation.json",
                   json.dumps({"m": m, "permutation": rep.details["permutation"]}) + "\n")
        if m == 4:
            reports.append(qrm.compare_fifteen_qubit_pair())
    L = load_lattice(cfg)
    lattice_ok = True
    if L is not None:
        rep = simplicial.verify_lemmas(L, seed=cfg.seed)
        reports.append(rep)
        # codes on a broken lattice are meaningless; the lemma report carries the witnesses
        lattice_ok = not simplicial.validate(L)
    if lattice_ok:
        c = load_code(cfg, L)
        if c is not None:
            reports.extend(_code_reports(cfg, L, c))
    if not reports:
        raise UsageError("nothing to verify")
    _write_reports(cfg, reports)
    for r in reports:
        _say(cfg, render(r))
    return EXIT_OK if all(reports) else EXIT_FAIL


def _verdict(t: stab_sim.Tableau) -> str:
    v = stab_sim.logical_value(t)
    return {(0, 1): "|0>", (0, -1): "|1>", (1, 0): "|+>", (-1, 0): "|->"}.get((v["X"], v["Z"]), "undetermined")


EXPECTED_H = {"0": "|+>", "1": "|->", "+": "|0>", "-": "|1>"}


def cmd_simulate(cfg: RunConfig) -> int:
    L = load_lattice(cfg)
    c = load_code(cfg, L)
    if c is None:
        raise UsageError("simulate needs a code")
    other = load_other(cfg, L)
    if cfg.input not in stab_sim.LOGICAL_STATES:
        raise UsageError(f"--input must be one of {sorted(stab_sim.LOGICAL_STATES)}")
    t = stab_sim.prepare_codeword(c, "gZ", cfg.input, seed=cfg.seed)
    log: list[dict] = []
    if cfg.protocol == "H":
        stab_sim.logical_H_protocol(other, c, t, log)
        expected, final_code = EXPECTED_H[cfg.input], c
    else:
        stab_sim.gauge_fix(t, stab_sim.switch_script(c, other), log)
        expected, final_code = _verdict(stab_sim.prepare_codeword(c, "gZ", cfg.input)), other
    if cfg.mode == "verify":
        t.check()
    verdict = _verdict(t)
    satisfied = stab_sim.state_satisfies(t, final_code.stabilizers())
    result: dict[str, Any] = {
        "protocol": cfg.protocol,
        "code": c.name,
        "other": other.name,
        "input": cfg.input,
        "seed": cfg.seed,
        "verdict": verdict,
        "expected": expected,
        "stabilizers_satisfied": satisfied,
        "measurements": len(log),
        "corrections": sum(1 for r in log if r["correction_support"]),
        "pass": satisfied and verdict == expected,
    }
    _write(cfg.out / "trace.jsonl", stab_sim.trace_lines(log))
    _write(cfg.out / "result.json", json.dumps(result, sort_keys=True, indent=1) + "\n")
    _say(cfg, f"{'PASS' if result['pass'] else 'FAIL'}  {cfg.protocol} on {c.name} via {other.name}: "
              f"input {cfg.input} -> {verdict} (expected {expected}), stabilizers satisfied: {satisfied}")
    return EXIT_OK if result["pass"] else EXIT_FAIL


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gaugecolor", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("code source (pick one)")
    src.add_argument("--d", type=int, help="lattice dimension of the fractal family")
    src.add_argument("--level", type=int, help="fractal level")
    src.add_argument("--lattice", help="lattice JSON file")
    src.add_argument("--bundle", help="code bundle JSON file")
    src.add_argument("--named", help="explicit code: C_A, C_B or QRM<m>")
    common.add_argument("--x", type=int, help="X stabilizers on interior x-simplices")
    common.add_argument("--z", type=int, help="Z stabilizers on interior z-simplices")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")
    common.add_argument("--mode", choices=("fast", "verify"), default="verify",
                        help="fast skips enumerations and debug invariant checks")
    common.add_argument("--quiet", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("build", parents=[common], help="write lattice, code bundle and check matrices")

    v = sub.add_parser("verify", parents=[common], help="run verifiers and write JSON reports")
    v.add_argument("--n", type=int, help="check transversal R_n at this level")
    v.add_argument("--T", help="'bipartition' (lattice default), 'empty' or comma-separated qubit indices")
    v.add_argument("--qrm-equiv", type=int, metavar="M", help="certify QRM(M) = CC_{M-1}(0, M-3)")
    v.add_argument("--distance", type=int, metavar="W", help="brute-force distance up to weight W")

    s = sub.add_parser("simulate", parents=[common], help="run a code-switching protocol on a tableau")
    s.add_argument("--protocol", choices=("H", "switch"), default="H",
                   help="H: logical H through the other (self-dual) code; switch: gauge-fix into the other code")
    s.add_argument("--input", default="0", help="logical input state: 0, 1, + or -")
    s.add_argument("--other-x", type=int)
    s.add_argument("--other-z", type=int)
    s.add_argument("--other-bundle")
    s.add_argument("--other-named")
    return p


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "simulate": cmd_simulate}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RuntimeError, AssertionError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
