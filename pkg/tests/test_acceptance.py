"""Acceptance suite: one exact check per criterion, each printing a PASS/FAIL line.

Run under pytest (lines appear in the -v log) or directly with
``python3 tests/test_acceptance.py``.
"""

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import AMBIENT, DATA, ECKARDT  # noqa: E402
from conicbundle.cli import parse_field, read_sections  # noqa: E402
from conicbundle.cremona import (  # noqa: E402
    cross_minors_divisible,
    fiber_singular_points,
    projectively_equal,
    sample_surface,
    satellite_curve,
    theta,
    theta_prime,
    verify_involution,
    verify_surface_invariance,
)
from conicbundle.exactalg import (  # noqa: E402
    MultiPoly,
    binary_resultant,
    field_solve,
    format_poly,
    is_squarefree,
    poly_gcd,
    poly_parse,
    squarefree_decomposition,
)
from conicbundle.hypersurface import (  # noqa: E402
    first_polar,
    hypersurface_from_surface,
    random_hypersurface,
    satellite_parameterization,
    theta_general,
    theta_prime_general,
)
from conicbundle.lattice import (  # noqa: E402
    all_classes,
    dual_section,
    enumerate_special_sections,
    intersection_form,
    rank,
    section_counts,
    standard_classes,
    tau_action,
    tau_matrix,
)
from conicbundle.monoidal import (  # noqa: E402
    moduli_dimension,
    monoidal_web_invariants,
    pair_intersection_profile,
)
from conicbundle.submonoidal import (  # noqa: E402
    SubmonoidalSurface,
    check_nondegenerate,
    classify_fibers,
    discriminant_P,
    pluecker_surface,
    random_submonoidal,
    small_discriminant_R,
    submonoidal_from_polynomial,
    verify_incidence,
)


class Tally:
    """Collects sub-checks; the criterion passes when all of them do."""

    def __init__(self):
        self.count = 0
        self.failures: list[str] = []

    def __call__(self, ok: bool, what: str) -> None:
        self.count += 1
        if not ok:
            self.failures.append(what)

    def outcome(self) -> tuple[bool, str]:
        if self.failures:
            return False, f"{len(self.failures)}/{self.count} failed, first: {self.failures[0]}"
        return True, f"{self.count} checks"


def discriminant_degrees():
    check = Tally()
    for d in (3, 4, 5, 6):
        for seed in range(10):
            S = random_submonoidal(d, random.Random(1000 * d + seed))
            P, R = discriminant_P(S), small_discriminant_R(S)
            check(bool(P) and P.total_degree() == 3 * d - 4, f"deg P, d={d} seed={seed}")
            check(bool(R) and R.total_degree() == 2 * (d - 2), f"deg R, d={d} seed={seed}")
    return check.outcome()


def fiber_census():
    check = Tally()
    surfaces = [random_submonoidal(d, random.Random(2000 * d + s)) for d in (3, 4, 5, 6) for s in range(10)]
    surfaces.append(submonoidal_from_polynomial(poly_parse(ECKARDT, AMBIENT)))
    surfaces.append(pluecker_surface()[0])
    cayley = poly_parse("x0*x1*x2 + x0*x1*x3 + x0*x2*x3 + x1*x2*x3", AMBIENT)
    surfaces.append(submonoidal_from_polynomial(
        cayley, (poly_parse("x0 + x1", AMBIENT), poly_parse("x2 + x3", AMBIENT))))
    used = 0
    for S in surfaces:
        if not check_nondegenerate(S).passed:
            continue
        used += 1
        r = classify_fibers(S)
        d = S.d
        check(r.s1 + 2 * r.s2 + 2 * r.s3 == 3 * d - 4, f"census {r.s} at d={d}")
        check(r.node_count <= 3 * d - 4, f"nodes {r.node_count} at d={d}")
    check(used >= 30, f"only {used} non-degenerate samples")
    return check.outcome()


def pluecker_package():
    check = Tally()
    S, data = pluecker_surface()
    K = S.field
    F = data.quartic
    for name, pt in data.nodes.items():
        check(F.evaluate(pt) == 0, f"{name} on F")
        check(all(F.diff(v).evaluate(pt) == 0 for v in F.vars), f"{name} singular")
    check(len(data.nodes) == 8 and len(data.tropes) == 8, "eight nodes and eight tropes")
    rep = verify_incidence(list(data.nodes.values()), list(data.tropes.values()), K)
    check(rep.configuration == (8, 4), f"incidence {rep.row_sums} / {rep.column_sums}")
    r = classify_fibers(S)
    check(r.s == (0, 0, 4), f"s = {r.s}")
    dec = r.decomposition
    check(all(m % 2 == 0 for _, m in dec.factors), "P is a perfect square")
    root = MultiPoly.one(S.tvars, K)
    for f, m in dec.factors:
        root = root * f ** (m // 2)
    check(root * root * (r.P.leading_coefficient() / (root * root).leading_coefficient()) == r.P,
          "P equals a constant times a square")
    return check.outcome()


def theta_prime_fix():
    check = Tally()
    for d in (3, 4, 5):
        for seed in (1, 2, 3):
            S = sample_surface(d, seed=seed)
            ok, pairs = cross_minors_divisible(theta_prime(S), S.equation())
            check(ok and len(pairs) == 6, f"d={d} seed={seed}: {pairs}")
    return check.outcome()


def theta_invariance():
    check = Tally()
    for d in (3, 4):
        for seed in (1, 2):
            S = sample_surface(d, seed=seed)
            cert = verify_surface_invariance(theta(S), S)
            check(cert.passed, f"invariance d={d} seed={seed}: {cert.witness}")
    S3 = sample_surface(3, seed=1)
    check(verify_involution(theta(S3), "symbolic").passed, "symbolic involution d=3")
    for d in (4, 5):
        v = verify_involution(theta(sample_surface(d, seed=1)), "sampled", seed=d, points=20)
        check(v.passed and v.successes == 20, f"sampled involution d={d}: {v.witness}")
    return check.outcome()


def _with_line_pairs(S: SubmonoidalSurface, params) -> SubmonoidalSurface:
    """Re-solve three coefficients of A so that P vanishes at the given parameters."""
    d, K = S.d, S.field
    _, B, C, D, E, F = S.forms
    rows, rhs = [], []
    for t in params:
        t = [K(c) for c in t]
        d1 = (D * F - E * E).evaluate(t)
        d2 = (C * E - B * F).evaluate(t)
        d3 = (B * E - C * D).evaluate(t)
        rest = sum((S.A.coefficient((d - k, k)) * t[0] ** (d - k) * t[1] ** k for k in range(3, d + 1)), K.zero)
        rows.append([d1 * t[0] ** (d - k) * t[1] ** k for k in range(3)])
        rhs.append(-(B.evaluate(t) * d2 + C.evaluate(t) * d3) - d1 * rest)
    a = field_solve(rows, rhs, K)
    terms = dict(S.A.terms)
    for k in range(3):
        terms[(d - k, k)] = a[k]
    A = MultiPoly(terms, S.A.vars, K)
    return SubmonoidalSurface.from_forms(A, B, C, D, E, F, d=d, field=K)


def satellite():
    check = Tally()
    eck = submonoidal_from_polynomial(poly_parse(ECKARDT, AMBIENT))
    sat = satellite_curve(eck)
    x = MultiPoly.gens(AMBIENT)
    line = (x[0] + x[2], x[1] + x[3])
    for L in line:
        check(not L.compose(list(sat.forms)), f"Eckardt satellite off {L}")
    check(sat.degree == 1, "Eckardt satellite is a line")
    for seed in range(1, 6):
        sd = satellite_curve(sample_surface(4, seed=seed)).degree
        check(sd == 5, f"generic d=4 seed={seed}: degree {sd}")
    params = [(1, 1), (1, 2), (2, -1)]
    for seed in range(1, 4):
        S = _with_line_pairs(sample_surface(4, seed=seed), params)
        sat = satellite_curve(S)
        for t in params:
            pts = fiber_singular_points(S, t)
            check(len(pts) == 1, f"seed={seed} t={t}: kernel of dimension {len(pts)}")
            check(len(pts) == 1 and projectively_equal(sat(t), pts[0]), f"seed={seed} t={t}: satellite point")
    (pt,) = fiber_singular_points(eck, (-1, 1))
    check(projectively_equal(satellite_curve(eck)((-1, 1)), pt), "Eckardt line pair at t=[-1,1]")
    return check.outcome()


def lattice_census():
    check = Tally()
    groups = enumerate_special_sections(4)
    counts = {n: len(v) for n, v in groups.items()}
    check(counts == {0: 1, 1: 28, 2: 70, 3: 28, 4: 1}, f"d=4 counts {counts}")
    check(sum(counts.values()) == 128, "d=4 total")
    zero_duals = [s for s in all_classes(4) if dual_section(s).n == 0]
    check(len(zero_duals) == 1, f"{len(zero_duals)} degree-0 duals")
    for d in range(3, 9):
        check(sum(section_counts(d).values()) == 2 ** (3 * d - 5), f"binomial identity d={d}")
        _, Sig, K, _ = standard_classes(d)
        check(Sig.square == d - 4, f"Sigma^2 at d={d}")
        check(K.square == 12 - 3 * d, f"K^2 at d={d}")
    return check.outcome()


def tau():
    import numpy as np

    check = Tally()
    for d in (4, 6):
        T = tau_matrix(d)
        g = intersection_form(d)
        check(np.array_equal(T @ T, np.eye(rank(d), dtype=np.int64)), f"tau^2 at d={d}")
        check(np.array_equal(T.T @ g @ T, g), f"isometry at d={d}")
        H = standard_classes(d).H
        check(tau_action(H) == H, f"tau(H) at d={d}")
        for s in all_classes(d):
            check(tau_action(s.lattice_class) == dual_section(s).lattice_class, f"tau vs dual, d={d}, {s}")
    return check.outcome()


def hypersurface_specialization():
    check = Tally()
    for d in (3, 4):
        for seed in range(5):
            S = sample_surface(d, seed=seed)
            H = hypersurface_from_surface(S)
            sat = satellite_parameterization(H)
            check(sat.forms == satellite_curve(S).forms, f"satellite d={d} seed={seed}")
            check(sat.raw_degree == 2 * (d - 2) + 1, f"raw degree d={d} seed={seed}")
            check(projectively_equal(theta_general(H).components, theta(S).components), f"theta d={d} seed={seed}")
            check(projectively_equal(theta_prime_general(H).components, theta_prime(S).components),
                  f"theta_prime d={d} seed={seed}")
    for n, d in ((2, 3), (2, 4), (3, 3)):
        H = random_hypersurface(n, n + 1, d, seed=1)
        sat = satellite_parameterization(H)
        polar = first_polar(H).rename(H.tvars + (H.vars[-1],))
        check(not polar.compose(list(sat.forms)), f"point case on the polar, n={n} d={d}")
        check(sat.raw_degree == d - 1 and polar.total_degree() == d - 1, f"point case degree n={n} d={d}")
    for n, m, d in ((3, 2, 3), (3, 2, 4), (4, 2, 3), (3, 3, 3), (3, 4, 3), (4, 5, 3)):
        sat = satellite_parameterization(random_hypersurface(n, m, d, seed=1))
        check(sat.raw_degree == (n + 2 - m) * (d - 2) + 1, f"raw degree (n,m,d)=({n},{m},{d})")
    return check.outcome()


def bookkeeping():
    check = Tally()
    r = monoidal_web_invariants(2, 0, 3)
    check(r.passed and r.d_prime == 3, "quadro-cubic")
    for d in range(3, 9):
        r = monoidal_web_invariants(d, d - 1, d - 1)
        check(r.passed and r.d_prime == d, f"(d-1, d-1) family d={d}")
        check(moduli_dimension("submonoidal", d) == 6 * d - 14, f"submonoidal moduli d={d}")
        check(pair_intersection_profile(d) == (2 * d - 1, 2 * d - 2), f"pair profile d={d}")
        if d >= 4:
            check(moduli_dimension("monoidal", d) == 3 * d - 11, f"monoidal moduli d={d}")
    return check.outcome()


BIN = ("u", "v")


def _random_binary(rng: random.Random, deg: int) -> MultiPoly:
    while True:
        f = MultiPoly({(deg - k, k): rng.randint(-4, 4) for k in range(deg + 1)}, BIN)
        if f:
            return f


def _coeffs(f: MultiPoly, deg: int):
    return [MultiPoly.constant(f.coefficient((k, deg - k)), ("z",)) for k in range(deg + 1)]


def kernel_soundness():
    check = Tally()
    rng = random.Random(11)
    for i in range(100):
        degs = [rng.randint(0, 3) for _ in range(3)]
        while degs[0] + 2 * degs[1] + 3 * degs[2] > 10:
            degs = [max(0, k - 1) for k in degs]
        f = MultiPoly.one(BIN)
        for m, k in enumerate(degs, 1):
            f = f * _random_binary(rng, k) ** m
        dec = squarefree_decomposition(f)
        check(dec.expand() == f, f"reconstruct case {i}: {f}")
        check(all(is_squarefree(h) for h, _ in dec.factors), f"squarefree factors case {i}")
    for i in range(50):
        common = _random_binary(rng, rng.randint(0, 2))
        a = common * _random_binary(rng, rng.randint(0, 3))
        b = common * _random_binary(rng, rng.randint(0, 3))
        g = poly_gcd(a, b)
        check(g.divides(a) and g.divides(b) and common.divides(g), f"gcd case {i}")
        da, db = a.total_degree(), b.total_degree()
        if da and db:
            res = binary_resultant(_coeffs(a, da), _coeffs(b, db))
            check((not res) == (not g.is_constant()), f"resultant vs gcd case {i}")
    for path in sorted(DATA.iterdir()):
        entries = read_sections(path.read_text())
        nvars = 5 if "threefold" in path.name else 4
        vars = tuple(entries["vars"].value.split()) if "vars" in entries else tuple(f"x{i}" for i in range(nvars))
        K = parse_field(entries, path.name)
        F = poly_parse(entries["F"].value, vars, K)
        text = format_poly(F)
        G = poly_parse(text, vars, K)
        check(G == F and format_poly(G) == text, f"round trip {path.name}")
    return check.outcome()


CRITERIA = [
    (1, "discriminant degrees", discriminant_degrees),
    (2, "fiber census identity and node bound", fiber_census),
    (3, "eight-nodal quartic package", pluecker_package),
    (4, "theta' cross-minor divisibility", theta_prime_fix),
    (5, "theta invariance and involutivity", theta_invariance),
    (6, "satellite curve", satellite),
    (7, "lattice census", lattice_census),
    (8, "tau action", tau),
    (9, "hypersurface specialization", hypersurface_specialization),
    (10, "bookkeeping formulas", bookkeeping),
    (11, "kernel soundness", kernel_soundness),
]


def _line(num, title, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {num:2d}: {title} [{detail}]"


@pytest.mark.parametrize("num, title, fn", CRITERIA, ids=[f"criterion-{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        results.append(ok)
        print(_line(num, title, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
