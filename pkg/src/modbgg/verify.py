"""The acceptance battery: each check returns a CheckResult."""
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

from . import ampcalc
from .alcove import generic_sweep, leq_order, linkage_up, orbit_family
from .bggkit import (
    build_bgg_gl3,
    build_bgg_gsp4_c1,
    build_bgg_gsp4_c2,
    dual_class,
    euler_characteristic,
    serre_dual,
    validate_filtration,
)
from .charring import closed_form_C2, kostant_count, weyl_character
from .euler_check import big_computation_n, build_ledger, floor_case_analysis, multiplicity_differences
from .groth import KElement, VermaClass, char_of_K, simple_char_in_vermas, window_for
from .rootdata import add, group, mat_apply, neg, scale

PRIMES = (11, 13, 17)

# Closed-form Verma-class expressions: (coefficient, kind, orbit member).
CLOSED_FORMS = {
    ("gl3", 1): [(1, "W", "lambda1"), (-1, "W", "lambda0"), (-1, "L_M", "mu1"), (1, "W", "nu1"), (-1, "W", "nu0")],
    ("gsp4", 0): [(1, "W", "lambda0"), (-1, "W", "mu0"), (1, "W", "nu0"), (-1, "W", "eps0")],
    ("gsp4", 1): [(1, "W", "lambda1"), (-1, "W", "lambda0"), (-1, "L_M", "mu1"), (1, "L_M", "nu1"),
                  (-1, "W", "eps1"), (1, "W", "eps0")],
    ("gsp4", 2): [(1, "W", "lambda2"), (-1, "W", "lambda1"), (-1, "L_M", "mu2"), (1, "L_M", "mu1"),
                  (1, "L_M", "nu2"), (-1, "L_M", "nu1"), (-1, "W", "eps2"), (1, "W", "eps1")],
}

# [L(lambda_i)] as signed Weyl characters, from the mod p decomposition table.
WEYL_ALTERNATING = {
    ("gl3", 1): [(1, "lambda1"), (-1, "lambda0")],
    ("gsp4", 0): [(1, "lambda0")],
    ("gsp4", 1): [(1, "lambda1"), (-1, "lambda0")],
    ("gsp4", 2): [(1, "lambda2"), (-1, "lambda1"), (1, "lambda0")],
}


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2}. {self.title}: {self.detail} ({self.seconds:.2f}s)"

    def to_json(self):
        return {"criterion": self.number, "title": self.title, "pass": self.passed, "detail": self.detail,
                "data": self.data}


def sweep(datum, p):
    """Acceptance sweep: every weight of the open lowest alcove."""
    return generic_sweep(datum, p, None)


def spread(points, k):
    """k evenly spaced points (all of them if there are at most k)."""
    if len(points) <= k:
        return list(points)
    return [points[(i * (len(points) - 1)) // (k - 1)] for i in range(k)]


def closed_form_expression(datum, fam, alcove):
    return KElement([(VermaClass(kind, fam[name]), c) for c, kind, name in CLOSED_FORMS[(datum.name, alcove)]])


def _timed(fn):
    def run(*a, **kw):
        t = time.perf_counter()
        res = fn(*a, **kw)
        res.seconds = time.perf_counter() - t
        return res
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_timed
def kostant_oracle(bound=40):
    d = group("gsp4")
    a, b = d.simple_roots
    bad = [(n, m) for n in range(bound + 1) for m in range(bound + 1)
           if closed_form_C2(n, m) != kostant_count(d, add(scale(n, a), scale(m, b)))]
    cases = (bound + 1) ** 2
    return CheckResult(1, "Kostant closed form", not bad, f"{cases - len(bad)}/{cases} cases agree",
                       data={"mismatches": bad[:10]})


@lru_cache(maxsize=None)
def _ledger(p, lam0):
    return build_ledger(group("gsp4"), p, lam0, eps=None)


@_timed
def euler_n(primes=PRIMES):
    d = group("gsp4")
    cells, bad = 0, []
    for p in primes:
        for lam in sweep(d, p):
            cells += 1
            n = big_computation_n(d, p, lam, None, ledger=_ledger(p, lam))
            if n != 1:
                bad.append((p, lam, n))
    return CheckResult(2, "Euler computation gives n = 1", not bad, f"{cells - len(bad)}/{cells} cells",
                       data={"failures": bad[:10]})


@_timed
def multiplicity_diffs(primes=PRIMES):
    d = group("gsp4")
    cells, literal_bad, euler_bad, seen = 0, [], [], {}
    for p in primes:
        for lam in sweep(d, p):
            cells += 1
            diffs = multiplicity_differences(d, p, lam, None, ledger=_ledger(p, lam))
            seen.setdefault(diffs, (p, lam))
            if diffs != (1, 1, 1, 0):
                literal_bad.append((p, lam, diffs))
            # the alternating combinations that enter the Euler characteristic
            if (diffs[0] - diffs[2], diffs[1] - diffs[3]) != (0, 1):
                euler_bad.append((p, lam, diffs))
    detail = (f"literal (1,1,1,0) on {cells - len(literal_bad)}/{cells} cells; "
              f"Euler combinations (0,1) on {cells - len(euler_bad)}/{cells}")
    return CheckResult(3, "Multiplicity differences (1,1,1,0)", not literal_bad, detail,
                       data={"examples": [{"diffs": list(k), "p": v[0], "lambda0": list(v[1])} for k, v in list(seen.items())[:5]],
                             "euler_combination_failures": euler_bad[:10]})


@_timed
def floor_cases(primes=PRIMES):
    d = group("gsp4")
    cells, bad, branches = 0, [], {}
    for p in primes:
        for lam in sweep(d, p):
            cells += 1
            res = floor_case_analysis(d, p, lam)
            branches[res["branch"]] = branches.get(res["branch"], 0) + 1
            if not res["pass"]:
                bad.append((p, lam, [c["case"] for c in res["cases"] if not c["pass"]]))
    ok = not bad and {"C0'", "C0''"} <= set(branches)
    return CheckResult(4, "Floor case analysis", ok,
                       f"{cells - len(bad)}/{cells} cells; branches {dict(sorted(branches.items()))}",
                       data={"failures": bad[:10]})


def character_identity(datum, p, lam0, alcove):
    """char of the closed-form expression vs the signed Weyl characters, on a window."""
    fam = orbit_family(datum, p, lam0)
    top = fam[f"lambda{alcove}"]
    names = [k for k in fam.names() if not k.endswith("'")]
    win = window_for(datum, top, [fam[k] for k in names])
    expr = closed_form_expression(datum, fam, alcove)
    chi = None
    for c, name in WEYL_ALTERNATING[(datum.name, alcove)]:
        term = c * weyl_character(datum, fam[name])
        chi = term if chi is None else chi + term
    lhs = char_of_K(datum, expr, win, p)
    return lhs == chi.restrict(datum, win), expr == simple_char_in_vermas(datum, p, top)


@_timed
def character_identities(primes=PRIMES, per_prime=20):
    bad, count = [], 0
    for name, alcoves in (("gl3", (1,)), ("gsp4", (0, 1, 2))):
        d = group(name)
        for p in primes:
            pts = spread(sweep(d, p), per_prime)
            if len(pts) < per_prime:
                bad.append((name, p, "too few points"))
            for lam in pts:
                for a in alcoves:
                    count += 1
                    on_window, symbolic = character_identity(d, p, lam, a)
                    if not (on_window and symbolic):
                        bad.append((name, p, lam, a, on_window, symbolic))
    return CheckResult(5, "Character identities on windows", not bad, f"{count - len(bad)}/{count} identities",
                       data={"failures": bad[:10]})


BUILDS = (("gl3", build_bgg_gl3, 1), ("gsp4", build_bgg_gsp4_c1, 1), ("gsp4", build_bgg_gsp4_c2, 2))


@_timed
def bgg_euler(primes=PRIMES):
    bad, count = [], 0
    for name, fn, a in BUILDS:
        d = group(name)
        for p in primes:
            for lam in sweep(d, p):
                count += 1
                spec = fn(d, p, lam)
                euler_ok = euler_characteristic(spec.total) == simple_char_in_vermas(d, p, spec.family[f"lambda{a}"])
                issues = validate_filtration(d, spec.total)
                if not euler_ok or issues:
                    bad.append((fn.__name__, p, lam, euler_ok, issues[:2]))
    return CheckResult(6, "BGG Euler characteristics and filtrations", not bad, f"{count - len(bad)}/{count} complexes",
                       data={"failures": bad[:10]})


def _classes_by_degree(c):
    return [sorted(t) for t in c.degrees]


@_timed
def serre_duality(primes=PRIMES):
    bad, count = [], 0
    g, s = group("gl3"), group("gsp4")
    for p in primes:
        for lam in sweep(g, p):
            count += 1
            fam = orbit_family(g, p, lam)
            dual_l1 = neg(mat_apply(g.w0, fam["lambda1"]))
            if dual_class(g, VermaClass("W", dual_l1)) != VermaClass("W", fam["nu1"]):
                bad.append(("exchange", p, lam))
            spec = build_bgg_gl3(g, p, lam)
            if serre_dual(g, serre_dual(g, spec.total)).degrees != spec.total.degrees:
                bad.append(("involution", "gl3", p, lam))
        for lam in sweep(s, p):
            for fn in (build_bgg_gsp4_c1, build_bgg_gsp4_c2):
                count += 1
                spec = fn(s, p, lam)
                if serre_dual(s, serre_dual(s, spec.total)).degrees != spec.total.degrees:
                    bad.append(("involution", fn.__name__, p, lam))
                pieces = [c for _, c in spec.pieces]
                for i in range(4):
                    mirrored = serre_dual(s, pieces[3 - i])
                    if _classes_by_degree(pieces[i]) != _classes_by_degree(mirrored):
                        bad.append(("pairing", fn.__name__, p, lam, i))
    return CheckResult(7, "Serre duality", not bad, f"{count - len(bad)}/{count} cases", data={"failures": bad[:10]})


def _chain_ok(datum, start, chain):
    cur = start
    for _, _, w in chain:
        if not leq_order(datum, cur, w):
            return False
        cur = w
    return True


@_timed
def linkage_chains(primes=PRIMES):
    bad, count = [], 0
    for name, pairs in (("gl3", [("lambda0", "lambda1")]),
                        ("gsp4", [("lambda0", "lambda1"), ("lambda1", "lambda2"), ("lambda2", "lambda3"),
                                  ("lambda0", "lambda3")])):
        d = group(name)
        for p in primes:
            for lam in sweep(d, p):
                fam = orbit_family(d, p, lam)
                for x, y in pairs:
                    count += 1
                    chain = linkage_up(d, p, fam[x], fam[y])
                    if chain is None or not chain or chain[-1][2] != fam[y] or not _chain_ok(d, fam[x], chain):
                        bad.append((name, p, lam, x, y))
    return CheckResult(8, "Linkage chains", not bad, f"{count - len(bad)}/{count} chains", data={"failures": bad[:10]})


@_timed
def amplitude_soundness(trials=500, seed=0):
    rng = random.Random(seed)
    bad = []
    for k in range(trials):
        ok, info = ampcalc.soundness_trial(rng)
        if not ok:
            bad.append((k, info["dims"]))
    return CheckResult(9, "Amplitude engine soundness", not bad, f"{trials - len(bad)}/{trials} random complexes",
                       data={"failures": bad[:10]})


@_timed
def scenario_replays():
    notes, ok = [], True
    timings = {}
    for name, want in (("gl3_concentration", "PASS"), ("gsp4_entailment", "PASS"), ("gsp4_c1", "CONDITIONAL PASS")):
        t = time.perf_counter()
        res = ampcalc.run_scenario(name)
        rows = ampcalc.minimality(name)
        timings[name] = round(time.perf_counter() - t, 3)
        if res["verdict"] != want:
            ok = False
            notes.append(f"{name}: {res['verdict']}")
        loose = [r["fact"] for r in rows if not r["breaks_scenario"]]
        if loose:
            ok = False
            notes.append(f"{name}: deleting {loose} keeps the verdict")
        if timings[name] > 1.0:
            ok = False
            notes.append(f"{name}: {timings[name]}s")
    dropped = ampcalc.run_scenario("gl3_concentration", drop={"inj_theta"})
    support = dropped["report"]["supports"]["dR"]
    if support != [1, 2]:
        ok = False
        notes.append(f"without injectivity the support is {support}")
    rows = ampcalc.minimality("gsp4_entailment")
    step_only = [r["fact"] for r in rows if r["breaks_scenario"] and not r["breaks_conclusion"]]
    detail = "; ".join(notes) if notes else "verdicts, {1,2} without injectivity, minimality all hold"
    return CheckResult(10, "Scenario replays", ok, detail,
                       data={"timings": timings, "needed_only_for_intermediate_steps": step_only})


CHECKS = (kostant_oracle, euler_n, multiplicity_diffs, floor_cases, character_identities, bgg_euler,
          serre_duality, linkage_chains, amplitude_soundness, scenario_replays)


def run_all():
    return [check() for check in CHECKS]
