"""Command-line front end.

    conicbundle analyze FILE
    conicbundle involutions FILE [--mode symbolic|sampled] [--corrupt]
    conicbundle lattice D
    conicbundle hypersurface FILE

Exit status: 0 when every check passes, 1 when a check fails, 2 on input
errors (no report is written then).  Reports contain no floats and, unless
--timing is given, are byte-identical for the same input, seed and version.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from ._forms import InvalidSurface
from .cremona import (
    RationalMap,
    cross_minors_divisible,
    satellite_curve,
    theta,
    theta_prime,
    verify_commute,
    verify_fixes_curve,
    verify_involution,
    verify_surface_invariance,
)
from .exactalg import QQ, Field, MultiPoly, PolySyntaxError, poly_parse
from .hypersurface import (
    fiber_matrix,
    first_polar,
    hypersurface_from_polynomial,
    satellite_parameterization,
    subspace_dimension_bound,
    theta_general,
    theta_prime_general,
)
from .lattice import (
    SpecialSectionClass,
    all_classes,
    dual_section,
    intersection_form,
    section_counts,
    standard_classes,
    tau_action,
    tau_matrix,
)
from .monoidal import (
    moduli_dimension,
    monoidal_validate,
    pinch_divisor_monoidal,
    sigma_curve_monoidal,
)
from .submonoidal import (
    check_nondegenerate,
    classify_fibers,
    eckardt_locus,
    pinch_divisor,
    submonoidal_from_polynomial,
)

DEFAULT_SEED = 1
LATTICE_RANGE = (3, 12)
# exhaustive class checks above this many classes switch to a seeded subset
EXHAUSTIVE_LIMIT = 1 << 13
SUBSET_SIZE = 512


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input files


@dataclass
class Entry:
    value: str
    line: int
    # (offset in value, line number, column of that offset) for each physical line
    spans: list[tuple[int, int, int]] = field(default_factory=list)

    def locate(self, pos: int) -> tuple[int, int]:
        line, col = self.line, 1
        for off, ln, c in self.spans:
            if pos >= off:
                line, col = ln, c + (pos - off)
        return line, col


def read_sections(text: str, path: str = "<input>") -> dict[str, Entry]:
    """``key = value`` lines; indented lines continue the previous value; ``#`` starts a comment."""
    entries: dict[str, Entry] = {}
    current: Entry | None = None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line[0].isspace():
            if current is None:
                raise InputError(f"{path}:{ln}:1: continuation line without a key")
            stripped = line.lstrip()
            current.spans.append((len(current.value) + 1, ln, len(line) - len(stripped) + 1))
            current.value += " " + stripped
            continue
        if "=" not in line:
            raise InputError(f"{path}:{ln}:1: expected 'key = value'")
        key, value = line.split("=", 1)
        key = key.strip()
        if key in entries:
            raise InputError(f"{path}:{ln}:1: duplicate key {key!r}")
        stripped = value.strip()
        col = line.index("=") + 2 + (len(value) - len(value.lstrip()))
        current = Entry(stripped, ln, [(0, ln, col)])
        entries[key] = current
    return entries


def parse_field(entries: dict[str, Entry], path: str) -> Field:
    e = entries.get("field")
    if e is None or e.value == "Q":
        return QQ
    v = e.value.replace(" ", "")
    if v.startswith("Q(sqrt,") and v.endswith(")"):
        try:
            return Field(int(v[len("Q(sqrt,"):-1]))
        except ValueError as exc:
            raise InputError(f"{path}:{e.line}:1: bad field declaration: {exc}") from None
    raise InputError(f"{path}:{e.line}:1: field must be 'Q' or 'Q(sqrt, D)'")


def parse_poly(entries: dict[str, Entry], key: str, vars, K: Field, path: str) -> MultiPoly:
    e = entries.get(key)
    if e is None:
        raise InputError(f"{path}: missing '{key} = ...'")
    try:
        return poly_parse(e.value, vars, K)
    except PolySyntaxError as exc:
        line, col = e.locate(exc.pos)
        raise InputError(f"{path}:{line}:{col}: {exc.message}") from None


def parse_int(entries: dict[str, Entry], key: str, path: str, default: int | None = None) -> int:
    e = entries.get(key)
    if e is None:
        if default is None:
            raise InputError(f"{path}: missing '{key} = ...'")
        return default
    try:
        return int(e.value)
    except ValueError:
        raise InputError(f"{path}:{e.line}:1: {key} must be an integer") from None


def parse_vars(entries: dict[str, Entry], default: tuple[str, ...]) -> tuple[str, ...]:
    e = entries.get("vars")
    return tuple(e.value.split()) if e else default


def parse_line(entries: dict[str, Entry], vars, K: Field, path: str):
    e = entries.get("line")
    if e is None:
        return None
    parts = e.value.split(",")
    if len(parts) != 2:
        raise InputError(f"{path}:{e.line}:1: line needs two linear forms separated by ','")
    out, off = [], 0
    for part in parts:
        try:
            out.append(poly_parse(part, vars, K))
        except PolySyntaxError as exc:
            line, col = e.locate(off + exc.pos)
            raise InputError(f"{path}:{line}:{col}: {exc.message}") from None
        off += len(part) + 1
    return tuple(out)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    command: str
    source: str
    digest: str
    seed: int | None
    results: dict[str, Any] = field(default_factory=dict)
    checks: list[dict[str, str]] = field(default_factory=list)
    timing: dict[str, str] | None = None

    def check(self, name: str, ok: bool, certifies: str, witness: str = "") -> None:
        self.checks.append({"name": name, "status": "pass" if ok else "fail",
                            "certifies": certifies, "witness": witness})

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def tree(self) -> dict[str, Any]:
        t = {
            "tool": "conicbundle",
            "version": __version__,
            "command": self.command,
            "input": self.source,
            "input_digest": self.digest,
            "seed": self.seed,
            "results": self.results,
            "checks": sorted(self.checks, key=lambda c: c["name"]),
            "passed": self.passed,
        }
        if self.timing is not None:
            t["timing"] = self.timing
        return t

    def structured(self) -> str:
        return json.dumps(self.tree(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def human(self) -> str:
        lines = [f"conicbundle {__version__}: {self.command} {self.source}"]
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        lines.extend(_human_block(self.results, 0))
        lines.append("checks:")
        for c in sorted(self.checks, key=lambda c: c["name"]):
            lines.append(f"  {c['status'].upper():4}  {c['name']}: {c['certifies']}")
            if c["witness"]:
                lines.append(f"        data: {c['witness']}")
        if self.timing is not None:
            for k in sorted(self.timing):
                lines.append(f"time {k}: {self.timing[k]}")
        lines.append("result: " + ("all checks pass" if self.passed else "some check failed"))
        return "\n".join(lines) + "\n"


def _human_block(obj, depth: int) -> list[str]:
    pad = "  " * depth
    out = []
    for k in sorted(obj):
        v = obj[k]
        if isinstance(v, dict):
            out.append(f"{pad}{k}:")
            out.extend(_human_block(v, depth + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            out.append(f"{pad}{k}:")
            for item in v:
                out.append(f"{pad}  - " + ", ".join(f"{a}={item[a]}" for a in sorted(item)))
        elif isinstance(v, list):
            out.append(f"{pad}{k}: [" + ", ".join(str(x) for x in v) + "]")
        else:
            out.append(f"{pad}{k}: {v}")
    return out


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _strs(seq) -> list[str]:
    return [str(x) for x in seq]


# ---------------------------------------------------------------------------
# commands


def _load(path: str) -> tuple[str, dict[str, Entry], bytes]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{path}: not UTF-8 text") from None
    return Path(path).name, read_sections(text, path), data


def _surface_from_file(path: str):
    name, entries, data = _load(path)
    K = parse_field(entries, path)
    vars = parse_vars(entries, ("x0", "x1", "x2", "x3"))
    if len(vars) != 4:
        raise InputError(f"{path}: surfaces need four variables")
    F = parse_poly(entries, "F", vars, K, path)
    line = parse_line(entries, vars, K, path)
    kind = entries["kind"].value if "kind" in entries else ""
    return name, data, F, line, kind


def cmd_analyze(path: str, seed: int = DEFAULT_SEED) -> Report:
    name, data, F, line, kind = _surface_from_file(path)
    rep = Report("analyze", name, _digest(data), None)
    try:
        S = submonoidal_from_polynomial(F, line)
    except InvalidSurface as exc:
        if exc.reason != "monoidal":
            raise
        return _analyze_monoidal(rep, F, line, kind)
    d = S.d
    rep.results["surface"] = {"type": "submonoidal", "d": d, "field": str(S.field), "kind": kind or "-"}
    rep.results["forms"] = dict(zip("ABCDEF", _strs(S.forms)))
    fr = classify_fibers(S)
    verdict = check_nondegenerate(S)
    eck = eckardt_locus(S)
    pinch = pinch_divisor(S)
    rep.results["P"] = str(fr.P)
    factors = fr.decomposition.factors
    rep.results["P_factors"] = [{"multiplicity": m, "form": str(f)} for f, m in factors]
    rep.results["P_is_square"] = all(m % 2 == 0 for _, m in factors)
    rep.results["R"] = str(fr.R)
    rep.results["R_squarefree"] = fr.R_squarefree
    rep.results["s"] = list(fr.s)
    rep.results["node_count"] = fr.node_count
    rep.results["strata"] = [
        {"multiplicity": st.multiplicity, "form": str(st.form), "label": st.label} for st in fr.strata
    ]
    rep.results["eckardt_locus"] = str(eck) if eck is not None else "-"
    rep.results["eckardt_points"] = eck.total_degree() if eck is not None else 0
    rep.results["pinch_divisor"] = str(pinch)
    rep.results["pinch_points"] = pinch.total_degree()
    rep.results["nondegeneracy"] = {n: s for n, s in verdict.clauses}
    rep.check("discriminant degree", fr.P.total_degree() == 3 * d - 4,
              "the discriminant P is a binary form of degree 3d-4", str(fr.P.total_degree()))
    rep.check("small discriminant degree", not fr.R or fr.R.total_degree() == 2 * d - 4,
              "the small discriminant R is zero or a binary form of degree 2(d-2)")
    rep.check("fiber census", fr.s1 + 2 * fr.s2 + 2 * fr.s3 == 3 * d - 4,
              "every root of P is counted: s1 + 2*s2 + 2*s3 = 3d-4", str(list(fr.s)))
    rep.check("node bound", fr.node_count <= 3 * d - 4,
              "the surface has at most 3d-4 nodes", str(fr.node_count))
    rep.check("nondegenerate", verdict.passed,
              "P has roots of multiplicity at most 2, simple roots give line pairs, double roots are nodes or double lines",
              ", ".join(verdict.failures))
    return rep


def _analyze_monoidal(rep: Report, F: MultiPoly, line, kind: str) -> Report:
    if line is not None:
        raise InputError("monoidal files must place the line at V(x0, x1)")
    vars = F.vars
    blocks = F.coefficients_in(vars[2:])
    d = F.total_degree()
    zero = MultiPoly.zero(vars[:2], F.field)

    def part(e):
        g = blocks.get(e)
        return zero if g is None else g.with_vars(vars[:2])

    if any(sum(e) > 1 for e in blocks):
        raise InvalidSurface("multiplicity", "the line V(x0, x1) has multiplicity below d-1")
    M = monoidal_validate(part((0, 0)), part((1, 0)), part((0, 1)), d, F.field, kind)
    sig = sigma_curve_monoidal(M)
    pinch = pinch_divisor_monoidal(M)
    rep.results["surface"] = {"type": "monoidal", "d": d, "field": str(M.field), "kind": kind or "-"}
    rep.results["forms"] = {"A": str(M.A), "B": str(M.B), "C": str(M.C)}
    rep.results["sigma_section"] = _strs(sig.section)
    rep.results["sigma_fiber_factor"] = str(sig.fiber_factor)
    rep.results["pinch_divisor"] = str(pinch)
    rep.results["pinch_points"] = pinch.total_degree()
    if d >= 4:
        rep.results["moduli_dimension"] = moduli_dimension("monoidal", d)
    rep.check("projection degree", sig.projection_degree == d - 1,
              "the curve on the exceptional surface covers the line with degree d-1")
    return rep


def cmd_involutions(path: str, mode: str = "symbolic", seed: int = DEFAULT_SEED, corrupt: bool = False) -> Report:
    name, data, F, line, kind = _surface_from_file(path)
    rep = Report("involutions", name, _digest(data), seed)
    S = submonoidal_from_polynomial(F, line)
    d = S.d
    Feq = S.equation()
    th, tp = theta(S), theta_prime(S)
    sat = satellite_curve(S)
    rep.results["surface"] = {"d": d, "field": str(S.field), "kind": kind or "-", "mode": mode}
    rep.results["theta"] = _strs(th.components)
    rep.results["theta_algebraic_degree"] = th.algebraic_degree
    rep.results["theta_prime"] = _strs(tp.components)
    rep.results["satellite"] = str(sat)
    rep.results["satellite_degree"] = sat.degree
    rep.results["satellite_canceled"] = str(sat.canceled)
    if corrupt:
        x0 = MultiPoly.variable(S.vars[0], S.vars, S.field)
        th = RationalMap((th.components[0] + x0 ** th.degree,) + th.components[1:])
        rep.results["corrupted"] = "x0^deg added to the first component of theta"
    inv = verify_surface_invariance(th, Feq)
    rep.check("theta invariance", inv.passed, "F divides F o theta exactly", inv.witness or
              f"quotient degree {inv.quotient_degree}")
    theta_mode = mode if (mode == "sampled" or d <= 4) else "sampled"
    v = verify_involution(th, theta_mode, seed=seed)
    rep.check("theta involution", v.passed,
              "theta o theta is the identity" + (" as polynomial maps" if theta_mode == "symbolic" else
                                                  f" on {v.successes} random exact points"), v.witness)
    rep.check("theta fixes satellite", verify_fixes_curve(th, sat.forms),
              "theta maps each point of the satellite curve to itself, as an identity in t")
    ok, cells = cross_minors_divisible(tp, Feq)
    rep.check("theta_prime fixes surface", ok,
              "F divides every x_i'*x_j - x_j'*x_i, so theta_prime is the identity on the surface",
              ", ".join(f"({i},{j})" for i, j, good in cells if not good))
    v = verify_involution(tp, "sampled", seed=seed)
    rep.check("theta_prime involution", v.passed,
              f"theta_prime o theta_prime is the identity on {v.successes} random exact points", v.witness)
    v = verify_commute(th, tp, seed=seed)
    rep.check("involutions commute", v.passed,
              f"theta and theta_prime commute on {v.successes} random exact points", v.witness)
    return rep


def cmd_lattice(d: int, seed: int = DEFAULT_SEED) -> Report:
    lo, hi = LATTICE_RANGE
    if not lo <= d <= hi:
        raise InputError(f"d = {d} is out of range {lo}..{hi}")
    rep = Report("lattice", f"d={d}", _digest(f"lattice {d}".encode()), seed)
    H, Sig, K, fib = standard_classes(d)
    rep.results["rank"] = 3 * d - 2
    rep.results["classes"] = {"H": str(H), "Sigma": str(Sig), "K": str(K), "fiber": str(fib)}
    rep.results["numbers"] = {"H^2": H.square, "H.Sigma": H.dot(Sig), "Sigma^2": Sig.square, "K^2": K.square}
    counts = section_counts(d)
    total = sum(counts.values())
    rep.results["special_sections_by_n"] = {str(n): c for n, c in counts.items()}
    rep.results["special_sections_total"] = total
    rep.check("Sigma^2", Sig.square == d - 4, "Sigma^2 = d-4", str(Sig.square))
    rep.check("K^2", K.square == 12 - 3 * d, "K^2 = 12-3d", str(K.square))
    rep.check("adjunction", K == (d - 4) * H - (d - 3) * Sig, "K = (d-4)H - (d-3)Sigma coefficientwise")
    rep.check("section count", total == 2 ** (3 * d - 5), "the special sections number 2^(3d-5)", str(total))
    exhaustive = total <= EXHAUSTIVE_LIMIT
    if exhaustive:
        sample = list(all_classes(d))
    else:
        rng = random.Random(seed)
        sample = [_random_section(d, rng) for _ in range(SUBSET_SIZE)]
    rep.results["classes_checked"] = "all" if exhaustive else f"{SUBSET_SIZE} seeded"
    bad = [s for s in sample if not s.satisfies_equations()]
    rep.check("section equations", not bad,
              "each listed class has E^2 = -1, -K.E = 1, H.E = d-2, Sigma.E = d-3",
              str(bad[0]) if bad else "")
    if d % 2 == 0:
        T = tau_matrix(d)
        G = intersection_form(d)
        rep.check("tau squared", bool((T @ T == np.eye(len(T), dtype=T.dtype)).all()), "tau o tau is the identity")
        rep.check("tau isometry", bool((T.T @ G @ T == G).all()), "tau preserves the intersection form")
        rep.check("tau fixes H", tau_action(H) == H, "tau(H) = H")
        dual_bad = [s for s in sample if dual_section(dual_section(s)) != s]
        rep.check("dual involutive", not dual_bad, "taking the dual twice returns the class",
                  str(dual_bad[0]) if dual_bad else "")
        tau_bad = [s for s in sample if tau_action(s.lattice_class) != dual_section(s).lattice_class]
        rep.check("tau is duality", not tau_bad, "tau sends each special section to its dual",
                  str(tau_bad[0]) if tau_bad else "")
        pairs: dict[str, int] = {}
        for s in sample:
            key = f"{s.n}->{dual_section(s).n}"
            pairs[key] = pairs.get(key, 0) + 1
        rep.results["duality_by_n"] = pairs
        if total <= 128:
            rep.results["class_table"] = [
                {"n": s.n, "I": " ".join(map(str, sorted(s.I))), "dual_n": dual_section(s).n} for s in sample
            ]
    elif total <= 128:
        rep.results["class_table"] = [{"n": s.n, "I": " ".join(map(str, sorted(s.I)))} for s in sample]
    return rep


def _random_section(d: int, rng: random.Random) -> SpecialSectionClass:
    top = 3 * d - 4
    I = frozenset(i for i in range(1, top + 1) if rng.random() < 0.5)
    if len(I) % 2:
        I = I ^ {top}
    return SpecialSectionClass(d, len(I) // 2, I)


def cmd_hypersurface(path: str, seed: int = DEFAULT_SEED) -> Report:
    name, entries, data = _load(path)
    K = parse_field(entries, path)
    n = parse_int(entries, "n", path)
    m = parse_int(entries, "gamma_codim", path)
    if n < 1 or not 1 <= m <= n + 1:
        raise InputError(f"{path}: need n >= 1 and 1 <= gamma_codim <= n+1")
    vars = parse_vars(entries, tuple(f"x{i}" for i in range(n + 2)))
    if len(vars) != n + 2:
        raise InputError(f"{path}: expected {n + 2} variables")
    F = parse_poly(entries, "F", vars, K, path).rename(tuple(f"x{i}" for i in range(n + 2)))
    H = hypersurface_from_polynomial(F, m)
    d = H.d
    rep = Report("hypersurface", name, _digest(data), seed)
    sat = satellite_parameterization(H)
    expected = (n + 2 - m) * (d - 2) + 1
    rep.results["hypersurface"] = {"n": n, "m": m, "d": d, "field": str(K)}
    rep.results["fiber_matrix"] = [" | ".join(_strs(row)) for row in fiber_matrix(H)]
    rep.results["satellite"] = str(sat)
    rep.results["satellite_raw_degree"] = sat.raw_degree
    rep.results["satellite_degree"] = sat.degree
    rep.results["dimension_bound"] = subspace_dimension_bound(n, m, d)
    rep.check("raw satellite degree", sat.raw_degree == expected,
              "the unreduced satellite parameterization has degree (n+2-m)(d-2)+1", str(sat.raw_degree))
    if m == n + 1:
        pol = first_polar(H)
        rep.results["first_polar"] = str(pol)
        on = pol.compose(list(sat.forms)).is_zero()
        rep.check("satellite is first polar", on and sat.degree == pol.total_degree() == d - 1,
                  "the satellite lies on the first polar of the point and both have degree d-1")
    th, tp = theta_general(H), theta_prime_general(H)
    v = verify_involution(th, "sampled", seed=seed)
    rep.check("theta involution", v.passed,
              f"the fiberwise reflection is an involution on {v.successes} random exact points", v.witness)
    v = verify_involution(tp, "sampled", seed=seed)
    rep.check("theta_prime involution", v.passed,
              f"the fiberwise harmonic map is an involution on {v.successes} random exact points", v.witness)
    ok, _ = cross_minors_divisible(tp, H.equation())
    rep.check("theta_prime fixes hypersurface", ok, "F divides every cross-minor of theta_prime against x")
    return rep


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled checks")
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing (breaks byte stability)")
    p = argparse.ArgumentParser(prog="conicbundle", description="Exact analysis of submonoidal surfaces.")
    p.add_argument("--version", action="version", version=f"conicbundle {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="fibers, discriminants, Eckardt and pinch points")
    a.add_argument("file")
    i = sub.add_parser("involutions", parents=[common], help="the two Cremona involutions and their checks")
    i.add_argument("file")
    i.add_argument("--mode", choices=("symbolic", "sampled"), default="symbolic")
    i.add_argument("--corrupt", action="store_true", help="perturb theta to exercise the failure path")
    lat = sub.add_parser("lattice", parents=[common], help="lattice classes and special sections")
    lat.add_argument("d", type=int)
    h = sub.add_parser("hypersurface", parents=[common], help="fiber matrix, satellite and involutions")
    h.add_argument("file")
    return p


def run(args: argparse.Namespace) -> Report:
    if args.command == "analyze":
        return cmd_analyze(args.file, args.seed)
    if args.command == "involutions":
        return cmd_involutions(args.file, args.mode, args.seed, args.corrupt)
    if args.command == "lattice":
        return cmd_lattice(args.d, args.seed)
    return cmd_hypersurface(args.file, args.seed)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        rep = run(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except InvalidSurface as exc:
        print(f"input error: rejected surface: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        rep.timing = {"total_ms": str(round((time.perf_counter() - start) * 1000))}
    text = rep.structured() if args.format == "structured" else rep.human()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if rep.passed else 1
