"""Filtered complexes of Verma classes: the generalized BGG builders,
filtration checks, Euler characteristics and Serre duality."""
from dataclasses import dataclass, field, replace
from functools import lru_cache

from .alcove import generic_sweep, is_epsilon_generic, leq_order, linkage_up, orbit_family
from .euler_check import NotGeneric
from .groth import LM, KElement, VermaClass, W
from .rootdata import add, mat_apply, neg, sub


@dataclass(frozen=True)
class Differential:
    """Annotation on the map from degree ``degree`` to ``degree + 1``."""

    degree: int
    sources: tuple
    targets: tuple
    label: str  # zero | unique_nonzero | theta | unspecified
    weights: tuple = ()
    note: str = ""

    def to_json(self):
        out = {
            "degree": self.degree,
            "sources": list(self.sources),
            "targets": list(self.targets),
            "label": self.label,
        }
        if self.weights:
            out["weights"] = [list(w) for w in self.weights]
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class FilteredComplex:
    """Terms in degrees 0..top; each term is an ordered list of classes
    (index 0 is the deepest filtration step)."""

    p: int
    degrees: tuple  # tuple of tuples of VermaClass
    names: tuple  # parallel: filtration piece of each class
    groups: tuple = ()  # parallel: unordered-group tag or None
    differentials: tuple = ()

    def __post_init__(self):
        if not self.groups:
            object.__setattr__(self, "groups", tuple(tuple(None for _ in t) for t in self.degrees))

    @property
    def top(self):
        return len(self.degrees) - 1

    def classes(self):
        for k, term in enumerate(self.degrees):
            for i, cls in enumerate(term):
                yield k, i, cls

    def to_json(self):
        return {
            "p": self.p,
            "degrees": [[c.to_json() for c in t] for t in self.degrees],
            "filtration_names": [list(t) for t in self.names],
            "unordered": [[g for g in t] for t in self.groups],
            "differentials": [d.to_json() for d in self.differentials],
        }

    @classmethod
    def from_json(cls, data):
        degrees = tuple(tuple(VermaClass(c["kind"], c["weight"]) for c in t) for t in data["degrees"])
        names = tuple(tuple(t) for t in data.get("filtration_names") or [["?"] * len(t) for t in degrees])
        groups = tuple(tuple(t) for t in data.get("unordered") or [[None] * len(t) for t in degrees])
        diffs = tuple(
            Differential(
                d["degree"], tuple(d["sources"]), tuple(d["targets"]), d["label"],
                tuple(tuple(w) for w in d.get("weights", [])), d.get("note", ""),
            )
            for d in data.get("differentials", [])
        )
        return cls(data.get("p", 0), degrees, names, groups, diffs)


def make_complex(p, terms, name, differentials=(), groups=None):
    degrees = tuple(tuple(t) for t in terms)
    names = tuple(tuple(name for _ in t) for t in degrees)
    if groups is None:
        groups = tuple(tuple(None for _ in t) for t in degrees)
    return FilteredComplex(p, degrees, names, tuple(tuple(g) for g in groups), tuple(differentials))


@dataclass
class FiltrationSpec:
    """Named graded pieces, deepest first, and their concatenation."""

    pieces: list
    total: FilteredComplex = None
    family: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.total is None:
            self.total = concatenate([c for _, c in self.pieces])

    def piece(self, name):
        return dict(self.pieces)[name]

    def to_json(self):
        return {
            "pieces": [{"name": n, "complex": c.to_json()} for n, c in self.pieces],
            "total": self.total.to_json(),
            "family": {k: list(v) for k, v in self.family.items()},
        }


def concatenate(parts):
    top = max(c.top for c in parts)
    degrees, names, groups = [[] for _ in range(top + 1)], [[] for _ in range(top + 1)], [[] for _ in range(top + 1)]
    diffs = []
    for c in parts:
        if c.top != top:
            raise ValueError("pieces must share the degree range")
        offsets = [len(t) for t in degrees]
        for d in c.differentials:
            diffs.append(replace(
                d,
                sources=tuple(i + offsets[d.degree] for i in d.sources),
                targets=tuple(i + offsets[d.degree + 1] for i in d.targets),
            ))
        for k in range(top + 1):
            degrees[k] += c.degrees[k]
            names[k] += c.names[k]
            groups[k] += c.groups[k]
    return FilteredComplex(
        parts[0].p,
        tuple(tuple(t) for t in degrees),
        tuple(tuple(t) for t in names),
        tuple(tuple(t) for t in groups),
        tuple(diffs),
    )


# ---------------------------------------------------------------- duality

def _dual_weight_raw(datum, mu, delta):
    return add(neg(mat_apply(datum.w0_levi, mu)), delta)


@lru_cache(maxsize=None)
def duality_twist(datum):
    """Twist delta fixed by the exchange W(lam^vee)* = W(w.lam), w longest in W^M."""
    base = sub(datum.two_rho_gen, datum.two_rho_levi_gen)
    p = 13
    lam0 = generic_sweep(datum, p, None)[len(generic_sweep(datum, p, None)) // 2]
    lam1 = orbit_family(datum, p, lam0)["lambda1"]
    w_long = max(datum.coset_reps, key=lambda t: t[1])[0]
    from .rootdata import dot_action

    target = dot_action(datum, w_long, lam1)
    dual_lam = neg(mat_apply(datum.w0, lam1))
    hits = [d for d in (base, neg(base)) if _dual_weight_raw(datum, dual_lam, d) == target]
    if len(hits) != 1:
        raise ArithmeticError("duality exchange check did not single out a twist")
    return hits[0]


def dual_class(datum, cls):
    return VermaClass(cls.kind, _dual_weight_raw(datum, cls.weight, duality_twist(datum)))


def serre_dual(datum, c):
    """Reverse degrees, dualize each class and reverse each filtration."""
    top = c.top
    degrees, names, groups = [], [], []
    for k in range(top + 1):
        old = top - k
        degrees.append(tuple(dual_class(datum, x) for x in reversed(c.degrees[old])))
        names.append(tuple(reversed(c.names[old])))
        groups.append(tuple(reversed(c.groups[old])))
    diffs = []
    for d in c.differentials:
        n_src = len(c.degrees[d.degree])
        n_tgt = len(c.degrees[d.degree + 1])
        diffs.append(Differential(
            top - d.degree - 1,
            tuple(sorted(n_tgt - 1 - i for i in d.targets)),
            tuple(sorted(n_src - 1 - i for i in d.sources)),
            d.label,
            tuple(_dual_weight_raw(datum, w, duality_twist(datum)) for w in reversed(d.weights)),
            d.note,
        ))
    return FilteredComplex(c.p, tuple(degrees), tuple(names), tuple(groups), tuple(diffs))


def _permute(c, k, perm):
    """Reorder degree k by perm (new position -> old position)."""
    inv = {old: new for new, old in enumerate(perm)}

    def remap(d):
        src = tuple(sorted(inv[i] for i in d.sources)) if d.degree == k else d.sources
        tgt = tuple(sorted(inv[i] for i in d.targets)) if d.degree + 1 == k else d.targets
        return replace(d, sources=src, targets=tgt)

    def shuffle(rows):
        return tuple(tuple(rows[k][j] for j in perm) if n == k else row for n, row in enumerate(rows))

    return FilteredComplex(
        c.p, shuffle(c.degrees), shuffle(c.names), shuffle(c.groups), tuple(remap(d) for d in c.differentials)
    )


def split_out_of_order(datum, c):
    """Swap adjacent pieces listed in increasing weight order.

    Such extensions split, so the swapped filtration presents the same term.
    """
    for k in range(c.top + 1):
        moved = True
        while moved:
            moved = False
            for i in range(len(c.degrees[k]) - 1):
                if _out_of_order(datum, c, k, i):
                    perm = list(range(len(c.degrees[k])))
                    perm[i], perm[i + 1] = i + 1, i
                    c = _permute(c, k, perm)
                    moved = True
    return c


def dual_piece(datum, c, name):
    return rename(split_out_of_order(datum, serre_dual(datum, c)), name)


def rename(c, name):
    return replace(c, names=tuple(tuple(name for _ in t) for t in c.degrees))


# ---------------------------------------------------------------- euler / validation

def euler_characteristic(c):
    """Alternating sum of classes, signed so the top degree counts positively."""
    out = KElement()
    for k, _, cls in c.classes():
        out = out + KElement([(cls, (-1) ** (c.top - k))])
    return out


def _out_of_order(datum, c, k, i):
    """Adjacent classes i, i+1 of degree k listed with strictly increasing weight."""
    g = c.groups[k]
    if g[i] is not None and g[i] == g[i + 1]:
        return False
    a, b = c.degrees[k][i].weight, c.degrees[k][i + 1].weight
    return a != b and leq_order(datum, a, b)


def validate_filtration(datum, c):
    """List ordering violations inside terms and unlinked differentials."""
    issues = []
    for k, term in enumerate(c.degrees):
        for i in range(len(term) - 1):
            if _out_of_order(datum, c, k, i):
                issues.append({
                    "type": "order",
                    "degree": k,
                    "positions": [i, i + 1],
                    "message": f"{term[i]} sits before {term[i + 1]} but has lower highest weight",
                })
    for d in c.differentials:
        if d.label not in ("unique_nonzero", "theta"):
            continue
        for s in d.sources:
            for t in d.targets:
                a = c.degrees[d.degree][s].weight
                b = c.degrees[d.degree + 1][t].weight
                if linkage_up(datum, c.p, a, b) is None and linkage_up(datum, c.p, b, a) is None:
                    issues.append({
                        "type": "linkage",
                        "degree": d.degree,
                        "positions": [s, t],
                        "message": f"no linkage chain between {a} and {b}",
                    })
    return issues


# ---------------------------------------------------------------- builders

def _empty(n):
    return [[] for _ in range(n)]


def _theta(deg, src, tgt, weights):
    return Differential(deg, (src,), (tgt,), "theta", tuple(tuple(w) for w in weights))


def _dual_family(datum, p, lam0):
    return orbit_family(datum, p, neg(mat_apply(datum.w0, lam0)))


def _require_group(datum, name):
    if datum.name != name:
        raise ValueError(f"this builder is for {name}, got {datum.name}")


def build_bgg_gl3(datum, p, lam0):
    _require_group(datum, "gl3")
    fam = orbit_family(datum, p, lam0)

    def top_piece(f):
        terms = _empty(3)
        terms[1] = [W(f["lambda0"])]
        terms[2] = [W(f["lambda1"])]
        return make_complex(p, terms, "F2", [_theta(1, 0, 0, (f["lambda0"], f["lambda1"]))])

    f2 = top_piece(fam)
    mid = _empty(3)
    mid[1] = [LM(fam["mu1"])]
    gr1 = make_complex(p, mid, "gr1")
    dual = _dual_family(datum, p, fam["lambda0"])
    if dual["lambda1"] != neg(mat_apply(datum.w0, fam["lambda1"])):
        raise ArithmeticError("dual family does not match")
    gr0 = dual_piece(datum, top_piece(dual), "gr0")
    return FiltrationSpec([("F2", f2), ("gr1", gr1), ("gr0", gr0)], family=dict(fam.members))


def _gsp4_top_c1(p, f):
    terms = _empty(4)
    terms[2] = [W(f["lambda0"])]
    terms[3] = [W(f["lambda1"])]
    return make_complex(p, terms, "F3", [_theta(2, 0, 0, (f["lambda0"], f["lambda1"]))])


def _gsp4_gr2_c1(p, f):
    terms = _empty(4)
    terms[2] = [LM(f["mu1"])]
    return make_complex(p, terms, "gr2")


def build_bgg_gsp4_c1(datum, p, lam0):
    _require_group(datum, "gsp4")
    fam = orbit_family(datum, p, lam0)
    dual = _dual_family(datum, p, fam["lambda0"])
    f3 = _gsp4_top_c1(p, fam)
    gr2 = _gsp4_gr2_c1(p, fam)
    gr1 = dual_piece(datum, _gsp4_gr2_c1(p, dual), "gr1")
    gr0 = dual_piece(datum, _gsp4_top_c1(p, dual), "gr0")
    return FiltrationSpec([("F3", f3), ("gr2", gr2), ("gr1", gr1), ("gr0", gr0)], family=dict(fam.members))


def _gsp4_top_c2(p, f):
    terms = _empty(4)
    terms[2] = [W(f["lambda1"])]
    terms[3] = [W(f["lambda2"]), W(f["lambda0"])]
    return make_complex(p, terms, "F3", [_theta(2, 0, 0, (f["lambda1"], f["lambda2"]))])


def _gsp4_gr2_c2(p, f):
    terms = _empty(4)
    terms[1] = [LM(f["mu1"]), W(f["mu0"])]
    terms[2] = [LM(f["mu2"]), W(f["lambda0"]), W(f["mu0"])]
    groups = [[], ["V1", "V1"], [None, None, None], []]
    diffs = [
        Differential(1, (0, 1), (0, 1, 2), "unspecified"),
        Differential(1, (0, 1), (2,), "zero", note="V1 -> V2 -> W(mu0) quotient vanishes"),
    ]
    return make_complex(p, terms, "gr2", diffs, groups)


def build_bgg_gsp4_c2(datum, p, lam0, eps=None):
    _require_group(datum, "gsp4")
    lam0 = tuple(lam0)
    if eps is not None and not is_epsilon_generic(datum, p, eps, lam0):
        raise NotGeneric(f"{lam0} is not {eps}-generic for p={p}")
    fam = orbit_family(datum, p, lam0)
    dual = _dual_family(datum, p, fam["lambda0"])
    f3 = _gsp4_top_c2(p, fam)
    gr2 = _gsp4_gr2_c2(p, fam)
    gr1 = dual_piece(datum, _gsp4_gr2_c2(p, dual), "gr1")
    gr0 = dual_piece(datum, _gsp4_top_c2(p, dual), "gr0")
    return FiltrationSpec([("F3", f3), ("gr2", gr2), ("gr1", gr1), ("gr0", gr0)], family=dict(fam.members))


BUILDERS = {
    ("gl3", 1): build_bgg_gl3,
    ("gsp4", 1): build_bgg_gsp4_c1,
    ("gsp4", 2): build_bgg_gsp4_c2,
}


def build(datum, p, lam0, alcove):
    try:
        fn = BUILDERS[(datum.name, alcove)]
    except KeyError:
        raise ValueError(f"no BGG builder for {datum.name} alcove C{alcove}") from None
    return fn(datum, p, lam0)


def resolved_weight(datum, spec, alcove):
    return spec.family[f"lambda{alcove}"]
