"""Cohomological amplitude bookkeeping.

Each object carries an over-approximation of the degrees where its cohomology
may be nonzero, and a set of degrees where it is known to be nonzero. Facts
(exact triangles, complexes built from terms, maps on cohomology, duality)
shrink the first and grow the second until nothing changes.
"""
import json
from fractions import Fraction
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

STRUCTURAL = {"triangle", "filtration", "complex", "declare"}


class ContradictoryFact(ValueError):
    pass


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class AmpObject:
    identifier: str
    support: frozenset
    nonzero: frozenset
    status: str  # asserted | derived | unknown
    label: str = ""


class Session:
    def __init__(self, lo=0, hi=6):
        self.lo, self.hi = lo, hi
        self.ranges = {}
        self.labels = {}
        self.supp = {}
        self.nz = {}
        self.asserted = set()
        self.facts = []
        self.trace = []
        self.contradictions = []
        self.applications = 0

    # ------------------------------------------------------------ objects

    def declare(self, name, lo=None, hi=None, label=""):
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        if name in self.ranges:
            return
        if lo < self.lo or hi > self.hi:
            raise ScenarioError(f"range of {name} leaves the global range")
        self.ranges[name] = (lo, hi)
        self.labels[name] = label
        self.supp[name] = set(range(lo, hi + 1))
        self.nz[name] = set()

    def _obj(self, name):
        if name not in self.ranges:
            self.declare(name)
        return name

    def _vertex(self, v):
        if isinstance(v, str):
            return (self._obj(v), 0)
        name, shift = v
        return (self._obj(name), int(shift))

    def support(self, name):
        return frozenset(self.supp[name])

    def nonzero(self, name):
        return frozenset(self.nz[name])

    def objects(self):
        out = []
        for name in sorted(self.ranges):
            full = set(range(self.ranges[name][0], self.ranges[name][1] + 1))
            if name in self.asserted:
                status = "asserted"
            elif self.supp[name] != full or self.nz[name]:
                status = "derived"
            else:
                status = "unknown"
            out.append(AmpObject(name, self.support(name), self.nonzero(name), status, self.labels[name]))
        return out

    # ------------------------------------------------------------ facts

    def _add(self, kind, fid, source, status, **data):
        fid = fid or f"{kind}{len(self.facts)}"
        self.facts.append({"kind": kind, "id": fid, "source": source, "status": status, **data})
        return fid

    def _facts_on(self, obj, kind):
        return [f for f in self.facts if f["kind"] == kind and f["object"] == obj]

    def assert_support(self, obj, support, id=None, source="", status="input"):
        obj = self._obj(obj)
        support = set(support)
        lo, hi = self.ranges[obj]
        if not all(lo <= n <= hi for n in support):
            raise ScenarioError(f"support {sorted(support)} of {obj} leaves its range")
        claimed = self.nz[obj] | {f["degree"] for f in self._facts_on(obj, "assert_nonzero")}
        clash = claimed - support
        if clash:
            raise ContradictoryFact(f"{obj} is known nonzero in degrees {sorted(clash)}")
        self.asserted.add(obj)
        return self._add("assert_support", id, source, status, object=obj, support=sorted(support))

    def assert_nonzero(self, obj, degree, id=None, source="", status="input"):
        obj = self._obj(obj)
        asserted = [f["support"] for f in self._facts_on(obj, "assert_support")]
        if degree not in self.supp[obj] or any(degree not in sup for sup in asserted):
            raise ContradictoryFact(f"{obj} already vanishes in degree {degree}")
        self.asserted.add(obj)
        return self._add("assert_nonzero", id, source, status, object=obj, degree=degree)

    def triangle(self, a, b, c, id=None, source=""):
        """a -> b -> c -> a[1]; vertices are names or (name, shift) with H^n(X[k]) = H^(n+k)(X)."""
        return self._add("triangle", id, source, "structure",
                         vertices=[self._vertex(a), self._vertex(b), self._vertex(c)])

    def filtration(self, total, terms, id=None, source=""):
        """total is the complex with term objects in the given cohomological positions."""
        total = self._obj(total)
        terms = [(self._obj(n), int(i)) for n, i in terms]
        return self._add("filtration", id, source, "structure", total=total, terms=terms)

    def map_fact(self, complex, degree, property, id=None, source="", status="input"):
        """The differential of a two-term complex is injective/surjective on H^degree."""
        if property not in ("injective", "surjective"):
            raise ScenarioError(f"unknown map property {property!r}")
        return self._add("map_fact", id, source, status, complex=self._obj(complex), degree=degree,
                         property=property)

    def surjection(self, source_slot, target_slot, id=None, source="", status="input"):
        return self._add("surjection", id, source, status,
                         src=self._vertex(source_slot), tgt=self._vertex(target_slot))

    def injection(self, source_slot, target_slot, id=None, source="", status="input"):
        return self._add("injection", id, source, status,
                         src=self._vertex(source_slot), tgt=self._vertex(target_slot))

    def duality(self, a, b, dimension, id=None, source="", status="input"):
        """H^n(a) is dual to H^(dimension - n)(b)."""
        return self._add("duality", id, source, status, a=self._obj(a), b=self._obj(b), dimension=dimension)

    # ------------------------------------------------------------ rules

    def _zero(self, slot):
        name, n = slot
        return n not in self.supp[name]

    def _known(self, slot):
        name, n = slot
        return n in self.nz[name]

    def _kill(self, slot, fact, why):
        name, n = slot
        if n in self.supp[name]:
            self.supp[name].discard(n)
            if n in self.nz[name]:
                self.contradictions.append({"object": name, "degree": n, "fact": fact["id"]})
            self.trace.append(f"H^{n}({name}) = 0  [{fact['id']}: {why}]")
            return True
        return False

    def _mark(self, slot, fact, why):
        name, n = slot
        if n is None:
            clash = {"object": name, "degree": None, "fact": fact["id"]}
            if clash not in self.contradictions:
                self.contradictions.append(clash)
            return False
        if n not in self.nz[name]:
            self.nz[name].add(n)
            if n not in self.supp[name]:
                self.contradictions.append({"object": name, "degree": n, "fact": fact["id"]})
            self.trace.append(f"H^{n}({name}) != 0  [{fact['id']}: {why}]")
            return True
        return False

    def _exact(self, x, y, z, fact):
        """Rules for an exact piece H(x) -> H(y) -> H(z)."""
        changed = False
        if self._zero(x) and self._zero(z):
            changed |= self._kill(y, fact, f"between zero groups of {x[0]} and {z[0]}")
        if self._known(y) and self._zero(x):
            changed |= self._mark(z, fact, f"injects from H^{y[1]}({y[0]})")
        if self._known(y) and self._zero(z):
            changed |= self._mark(x, fact, f"surjects onto H^{y[1]}({y[0]})")
        return changed

    def _apply(self, fact, maps):
        self.applications += 1
        kind = fact["kind"]
        changed = False
        if kind == "assert_support":
            for n in list(self.supp[fact["object"]]):
                if n not in fact["support"]:
                    changed |= self._kill((fact["object"], n), fact, "asserted")
        elif kind == "assert_nonzero":
            changed |= self._mark((fact["object"], fact["degree"]), fact, "asserted")
        elif kind == "triangle":
            verts = fact["vertices"]
            for n in range(self.lo - 2, self.hi + 3):
                seq = [(v[0], n + v[1]) for v in verts] + [(verts[0][0], n + 1 + verts[0][1])]
                # the long exact sequence, folded into consecutive triples
                prev = (verts[2][0], n - 1 + verts[2][1])
                chain = [prev] + seq
                for i in range(len(chain) - 2):
                    changed |= self._exact(*(self._clip(s) for s in chain[i:i + 3]), fact)
        elif kind == "filtration":
            changed |= self._filtration(fact, maps.get(fact["total"], {}))
        elif kind in ("surjection", "injection"):
            src, tgt = fact["src"], fact["tgt"]
            if kind == "surjection":
                if self._zero(self._clip(src)):
                    changed |= self._kill(self._clip(tgt), fact, "image of a zero group")
                if self._known(self._clip(tgt)):
                    changed |= self._mark(self._clip(src), fact, "surjects onto a nonzero group")
            else:
                if self._zero(self._clip(tgt)):
                    changed |= self._kill(self._clip(src), fact, "injects into a zero group")
                if self._known(self._clip(src)):
                    changed |= self._mark(self._clip(tgt), fact, "receives an injection from a nonzero group")
        elif kind == "duality":
            a, b, d = fact["a"], fact["b"], fact["dimension"]
            for x, y in ((a, b), (b, a)):
                lo, hi = self.ranges[x]
                for n in range(lo, hi + 1):
                    other = self._clip((y, d - n))
                    if self._zero(other):
                        changed |= self._kill((x, n), fact, f"dual to H^{d - n}({y})")
                    if self._known(other):
                        changed |= self._mark((x, n), fact, f"dual to H^{d - n}({y})")
        return changed

    def _clip(self, slot):
        # Slots outside an object's range are zero; reuse a sentinel degree.
        name, n = slot
        lo, hi = self.ranges[name]
        return (name, n) if lo <= n <= hi else (name, None)

    def _filtration(self, fact, maps):
        total, terms = fact["total"], fact["terms"]
        two_term = len(terms) == 2 and terms[1][1] == terms[0][1] + 1
        possible = set()
        for k, (name, i) in enumerate(terms):
            for t in self.supp[name]:
                if two_term and k == 0 and ("injective", t) in maps:
                    continue
                if two_term and k == 1 and ("surjective", t) in maps:
                    continue
                possible.add(t + i)
        changed = False
        for n in list(self.supp[total]):
            if n not in possible:
                changed |= self._kill((total, n), fact, "no term contributes")
        return changed

    def propagate(self):
        """Run every rule to a fixpoint; returns a report dict."""
        maps = {}
        for f in self.facts:
            if f["kind"] == "map_fact":
                maps.setdefault(f["complex"], set()).add((f["property"], f["degree"]))
        rounds = 0
        changed = True
        while changed:
            changed = False
            rounds += 1
            for f in self.facts:
                changed |= self._apply(f, maps)
        return {
            "rounds": rounds,
            "applications": self.applications,
            "supports": {k: sorted(v) for k, v in sorted(self.supp.items())},
            "nonzero": {k: sorted(v) for k, v in sorted(self.nz.items()) if v},
            "contradictions": list(self.contradictions),
        }


# ---------------------------------------------------------------- scenarios

def _dispatch(session, step, expectations):
    op = step["op"]
    common = {"id": step.get("id"), "source": step.get("source", "")}
    if op == "declare":
        rng = step.get("range") or [None, None]
        session.declare(step["object"], rng[0], rng[1], step.get("label", ""))
    elif op == "assert_support":
        session.assert_support(step["object"], step["support"], status=step.get("status", "input"), **common)
    elif op == "assert_nonzero":
        session.assert_nonzero(step["object"], step["degree"], status=step.get("status", "input"), **common)
    elif op == "triangle":
        session.triangle(step["a"], step["b"], step["c"], **common)
    elif op in ("filtration", "complex"):
        session.filtration(step["total"], step["terms"], **common)
    elif op == "map_fact":
        session.map_fact(step["complex"], step["degree"], step["property"],
                         status=step.get("status", "input"), **common)
    elif op in ("surjection", "injection"):
        getattr(session, op)(step["from"], step["to"], status=step.get("status", "input"), **common)
    elif op == "duality":
        session.duality(step["a"], step["b"], step["dimension"], status=step.get("status", "input"), **common)
    elif op == "expect":
        expectations.append(step)
    else:
        raise ScenarioError(f"unknown scenario op {op!r}")


def _check(session, exp):
    obj = exp["object"]
    if obj not in session.supp:
        return False, f"{obj} never appears"
    got = sorted(session.supp[obj])
    if "support_subset" in exp:
        ok = set(got) <= set(exp["support_subset"])
        return ok, f"support of {obj} is {got}, wanted within {exp['support_subset']}"
    if "support_equals" in exp:
        ok = got == sorted(exp["support_equals"])
        return ok, f"support of {obj} is {got}, wanted {sorted(exp['support_equals'])}"
    if "vanishes" in exp:
        ok = exp["vanishes"] not in session.supp[obj]
        return ok, f"H^{exp['vanishes']}({obj}) = 0: {'derived' if ok else 'not derived'}"
    if "nonzero" in exp:
        ok = exp["nonzero"] in session.nz[obj]
        return ok, f"H^{exp['nonzero']}({obj}) nonzero: {'derived' if ok else 'not derived'}"
    raise ScenarioError(f"expectation {exp.get('id')} has no test")


def load_scenario(name):
    """A bundled scenario by name, or a JSON file path."""
    path = Path(name)
    if path.suffix == ".json" and path.exists():
        data = json.loads(path.read_text())
    else:
        try:
            text = resources.files("modbgg.scenarios").joinpath(f"{name}.json").read_text()
        except FileNotFoundError:
            raise ScenarioError(f"no scenario named {name!r}") from None
        data = json.loads(text)
    if isinstance(data, list):
        data = {"name": str(name), "steps": data}
    return data


def scenario_names():
    return sorted(p.name[:-5] for p in resources.files("modbgg.scenarios").iterdir() if p.name.endswith(".json"))


def run_steps(data, drop=()):
    rng = data.get("range", [0, 6])
    session = Session(rng[0], rng[1])
    expectations = []
    for step in data["steps"]:
        if step.get("id") in drop:
            continue
        _dispatch(session, step, expectations)
    report = session.propagate()
    results = []
    for exp in expectations:
        ok, msg = _check(session, exp)
        results.append({"id": exp.get("id"), "pass": ok, "detail": msg, "final": exp.get("final", False)})
    failed = [r for r in results if not r["pass"]]
    hypotheses = [f["id"] for f in session.facts if f["status"] == "hypothesis"]
    if failed or report["contradictions"]:
        verdict = "FAIL"
    elif hypotheses:
        verdict = "CONDITIONAL PASS"
    else:
        verdict = "PASS"
    return {
        "scenario": data.get("name", ""),
        "verdict": verdict,
        "first_failure": failed[0] if failed else None,
        "expectations": results,
        "hypotheses": hypotheses,
        "report": report,
        "trace": list(session.trace),
    }, session


def run_scenario(name, drop=()):
    data = load_scenario(name)
    out, _ = run_steps(data, drop)
    return out


def minimality(name):
    """Drop each non-structural fact in turn and record what breaks."""
    data = load_scenario(name)
    rows = []
    for step in data["steps"]:
        if step["op"] in STRUCTURAL or step["op"] == "expect" or "id" not in step:
            continue
        res, _ = run_steps(data, drop={step["id"]})
        finals = [e for e in res["expectations"] if e["final"]]
        rows.append({
            "fact": step["id"],
            "breaks_scenario": res["verdict"] == "FAIL",
            "breaks_conclusion": any(not e["pass"] for e in finals),
            "first_failure": res["first_failure"]["id"] if res["first_failure"] else None,
        })
    return rows


def format_trace(result):
    lines = [f"scenario {result['scenario']}: {result['verdict']}"]
    lines += ["  " + t for t in result["trace"]]
    for e in result["expectations"]:
        lines.append(f"  [{'ok' if e['pass'] else 'FAIL'}] {e['id']}: {e['detail']}")
    return "\n".join(lines)


# ---------------------------------------------------------------- soundness on random complexes

def rank_q(mat):
    """Rank over Q of an integer matrix given as a list of rows."""
    rows = [[Fraction(x) for x in r] for r in mat if any(r)]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, colv)) for colv in zip(*b)] for row in a] if a and b and b[0] else (
        [[0] * (len(b[0]) if b else 0) for _ in a])


def _unimodular(rng, n):
    g = [[int(i == j) for j in range(n)] for i in range(n)]
    inv = [row[:] for row in g]
    for _ in range(2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-3, 3)
        # row op on g: r_i += c r_j ; matching column op on the inverse
        g[i] = [a + c * b for a, b in zip(g[i], g[j])]
        for r in inv:
            r[j] -= c * r[i]
    return g, inv


def random_complex(rng, max_len=6, max_rank=5):
    """Integer cochain complex: list of dims and differentials d_i: V_i -> V_{i+1}."""
    length = rng.randint(1, max_len)
    dims, pairs_out = [], []
    incoming = 0
    for i in range(length):
        room = max_rank - incoming
        out = rng.randint(0, room) if i < length - 1 else 0
        single = rng.randint(0, room - out)
        dims.append(incoming + out + single)
        pairs_out.append(out)
        incoming = out
    # standard basis: [incoming | outgoing | singletons]
    mats = []
    for i in range(length - 1):
        inc_i = pairs_out[i - 1] if i else 0
        d = [[0] * dims[i] for _ in range(dims[i + 1])]
        for k in range(pairs_out[i]):
            d[k][inc_i + k] = 1
        mats.append(d)
    gs = [_unimodular(rng, n) for n in dims]
    out = []
    for i, d in enumerate(mats):
        g_next, _ = gs[i + 1]
        _, g_inv = gs[i]
        m = _matmul(_matmul(g_next, d), g_inv) if dims[i] and dims[i + 1] else [[0] * dims[i] for _ in range(dims[i + 1])]
        out.append(m)
    return dims, out


def _piece_support(dims, mats, lo, hi):
    """Cohomology degrees of the stupid piece living in positions lo..hi."""
    supp = set()
    for i in range(lo, hi + 1):
        r_out = rank_q(mats[i]) if i < hi and dims[i] and dims[i + 1] else 0
        r_in = rank_q(mats[i - 1]) if i > lo and dims[i] and dims[i - 1] else 0
        if dims[i] - r_out - r_in:
            supp.add(i)
    return supp


def soundness_trial(rng):
    """Feed true facts about a random complex; True if every derived claim holds."""
    dims, mats = random_complex(rng)
    n = len(dims)
    s = Session(0, n)
    truth = {}
    for i in range(n):
        s.declare(f"V{i}", 0, 0)
        s.assert_support(f"V{i}", [0] if dims[i] else [])
        truth[f"V{i}"] = {0} if dims[i] else set()
    s.declare(f"S{n}")
    s.assert_support(f"S{n}", [])
    truth[f"S{n}"] = set()
    for k in range(n):
        s.filtration(f"S{k}", [(f"V{i}", i) for i in range(k, n)])
        s.triangle(f"S{k + 1}", f"S{k}", (f"V{k}", -k))
        truth[f"S{k}"] = _piece_support(dims, mats, k, n - 1)
    for i in range(n - 1):
        b = f"B{i}"
        s.filtration(b, [(f"V{i}", i), (f"V{i + 1}", i + 1)])
        s.triangle((f"V{i + 1}", -i - 1), b, (f"V{i}", -i))
        r = rank_q(mats[i]) if dims[i] and dims[i + 1] else 0
        if dims[i] and r == dims[i]:
            s.map_fact(b, 0, "injective")
        if dims[i + 1] and r == dims[i + 1]:
            s.map_fact(b, 0, "surjective")
        truth[b] = _piece_support(dims, mats, i, i + 1)
    for name in sorted(truth):
        if name.startswith("V") or name == f"S{n}":
            continue
        if rng.random() < 0.3:
            s.assert_support(name, sorted(truth[name]))
        if truth[name] and rng.random() < 0.3:
            s.assert_nonzero(name, rng.choice(sorted(truth[name])))
    report = s.propagate()
    ok = not report["contradictions"]
    for name, t in truth.items():
        ok &= t <= s.supp[name] and s.nz[name] <= t
    return ok, {"dims": dims, "truth": {k: sorted(v) for k, v in truth.items()}, "report": report}
