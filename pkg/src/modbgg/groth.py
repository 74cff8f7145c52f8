"""Classes of parabolic Verma modules and their integer combinations."""
from collections import namedtuple

from .alcove import affine_reflect, classify, is_p_restricted
from .charring import (
    FormalCharacter,
    OutOfRange,
    Window,
    _levi_pairing,
    levi_partner,
    verma_character,
)
from .rootdata import add, dot_action, is_M_dominant, scale

KINDS = {"W": "W", "L": "L_M", "L_M": "L_M", "SimpleLevi": "L_M", "DualWeylLevi": "W"}


class UnsupportedAlcove(ValueError):
    pass


class VermaClass(namedtuple("VermaClass", "kind weight")):
    """Ver_P W(weight) (kind 'W') or Ver_P L_M(weight) (kind 'L_M')."""

    __slots__ = ()

    def __new__(cls, kind, weight):
        if kind not in KINDS:
            raise ValueError(f"unknown class kind {kind!r}")
        return super().__new__(cls, KINDS[kind], tuple(weight))

    def __str__(self):
        return f"{self.kind}({','.join(map(str, self.weight))})"

    def to_json(self):
        return {"kind": self.kind, "weight": list(self.weight)}


def W(weight):
    return VermaClass("W", weight)


def LM(weight):
    return VermaClass("L_M", weight)


class KElement:
    """Finitely supported integer combination of Verma classes."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or [])
        out = {}
        for cls, c in items:
            out[cls] = out.get(cls, 0) + c
        self.coeffs = {k: v for k, v in out.items() if v}

    def __eq__(self, other):
        return isinstance(other, KElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return KElement(out)

    def __neg__(self):
        return KElement({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return KElement({c: k * v for c, v in self.coeffs.items()})

    def __getitem__(self, cls):
        return self.coeffs.get(cls, 0)

    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(sorted(self.coeffs.items(), key=lambda kv: (kv[0].weight, kv[0].kind), reverse=True))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for cls, c in self:
            parts.append(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}{cls}")
        return " ".join(parts).lstrip("+")

    def to_json(self):
        return [dict(cls.to_json(), coeff=c) for cls, c in self]

    @classmethod
    def from_json(cls, data):
        return cls([(VermaClass(d["kind"], d["weight"]), d["coeff"]) for d in data])


# ---------------------------------------------------------------- alcove tables

def alcove_index(datum, p, lam):
    """Which of the restricted alcoves C0, C1, C2 holds lam (None otherwise)."""
    sig = classify(datum, p, lam)
    if not sig.regular:
        return None
    q = {g: sig.quotient(g) for g in datum.positive_roots}
    if datum.name == "gl3":
        a1, a2 = datum.simple_roots
        pattern = (q[a1], q[a2], q[add(a1, a2)])
        return {(0, 0, 0): 0, (0, 0, 1): 1}.get(pattern)
    if datum.name == "gsp4":
        a, b = datum.simple_roots
        pattern = (q[a], q[b], q[add(a, b)], q[add(scale(2, a), b)])
        return {(0, 0, 0, 0): 0, (0, 0, 1, 0): 1, (0, 0, 1, 1): 2}.get(pattern)
    raise NotImplementedError(datum.name)


def _down(datum, p, lam, idx):
    """The weight one alcove below lam along the orbit family."""
    a, b = datum.simple_roots
    if datum.name == "gl3":
        return affine_reflect(datum, p, (add(a, b), 1), lam)
    if idx == 1:
        return affine_reflect(datum, p, (add(a, b), 1), lam)
    return affine_reflect(datum, p, (add(scale(2, a), b), 1), lam)


def decompose_weyl_mod_p(datum, p, lam):
    """Composition factors of V(lam) mod p as [(highest weight, mult)]."""
    lam = tuple(lam)
    if not is_p_restricted(datum, p, lam):
        raise UnsupportedAlcove(f"{lam} is not p-restricted for p={p}")
    idx = alcove_index(datum, p, lam)
    if idx is None:
        raise UnsupportedAlcove(f"{lam} is not in a supported alcove for p={p}")
    if idx == 0:
        return [(lam, 1)]
    return [(lam, 1), (_down(datum, p, lam, idx), 1)]


def simple_in_weyl(datum, p, lam):
    """[L(lam)] as a signed combination of [V(.)]: [(weight, coeff)]."""
    lam = tuple(lam)
    out = {lam: 1}
    cur = lam
    sign = 1
    while True:
        parts = decompose_weyl_mod_p(datum, p, cur)
        if len(parts) == 1:
            break
        cur = parts[1][0]
        sign = -sign
        out[cur] = out.get(cur, 0) + sign
    return sorted(out.items(), reverse=True)


def weyl_in_vermas(datum, lam):
    """Characteristic-zero parabolic BGG: [V(lam)] = sum (-1)^l(w) Ver_P W(w.lam)."""
    return KElement([(W(dot_action(datum, w, lam)), (-1) ** l) for w, l in datum.coset_reps])


def to_mixed_basis(datum, p, k):
    """Rewrite W(mu) with Levi pairing in [p, 2p-2] as L_M(mu) + W(partner)."""
    out = KElement()
    for cls, c in k:
        m = _levi_pairing(datum, cls.weight)
        if cls.kind == "W" and p <= m:
            if m > 2 * p - 2:
                raise OutOfRange(f"{cls} lies beyond one Levi wall crossing")
            out = out + KElement([(LM(cls.weight), c), (W(levi_partner(datum, p, cls.weight)), c)])
        else:
            out = out + KElement([(cls, c)])
    return out


def simple_char_in_vermas(datum, p, lam):
    """[L(lam)] in Verma classes for lam in one of the supported alcoves."""
    total = KElement()
    for mu, c in simple_in_weyl(datum, p, lam):
        total = total + c * weyl_in_vermas(datum, mu)
    return to_mixed_basis(datum, p, total)


def char_of_K(datum, k, window, p=None):
    out = FormalCharacter({}, window)
    for cls, c in k:
        out = out + c * verma_character(datum, cls.kind, cls.weight, window, p)
    return out


def _basis_class(datum, p, nu, basis_kind):
    if basis_kind == "W":
        return W(nu)
    if basis_kind != "mixed":
        raise ValueError("basis_kind must be 'W' or 'mixed'")
    return W(nu) if _levi_pairing(datum, nu) < p else LM(nu)


def K_from_character(datum, p, chi, basis_kind="mixed", window=None):
    """Peel Verma classes off a character, highest weights first."""
    window = window or chi.window
    if window is None:
        raise ValueError("a window is needed")
    cells = window.weights(datum)
    resid = {nu: chi[nu] for nu in cells}
    out = {}
    for nu in cells:
        c = resid[nu]
        if not c:
            continue
        if not is_M_dominant(datum, nu):
            raise ValueError(f"residue at non-M-dominant weight {nu}: window too small or input inexpressible")
        cls = _basis_class(datum, p, nu, basis_kind)
        out[cls] = c
        ver = verma_character(datum, cls.kind, cls.weight, Window(nu, window.depth - sum(window.offset(datum, nu))), p)
        for x, v in ver.mults.items():
            resid[x] -= c * v
    return KElement(out)


def window_for(datum, top, weights, margin=0):
    """Smallest window at ``top`` containing every weight below it."""
    win = Window(tuple(top), 0)
    depth = 0
    for w in weights:
        off = win.offset(datum, tuple(w))
        if off is not None:
            depth = max(depth, sum(off))
    return Window(tuple(top), depth + margin)
