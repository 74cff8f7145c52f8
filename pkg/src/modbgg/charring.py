"""Exact formal characters: Weyl characters, parabolic Verma characters,
Kostant partition counts and Levi Jordan-Holder multiplicities."""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .rootdata import (
    _dot,
    add,
    dot_action,
    is_dominant,
    is_M_dominant,
    mat_apply,
    neg,
    pair,
    root_coords,
    scale,
    simple_coefficients,
    sub,
)


class OutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    """Weights nu <= top with height(top - nu) <= depth."""

    top: tuple
    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("window depth must be non-negative")

    def offset(self, datum, nu):
        """Simple-root coordinates of top - nu, or None when nu is not <= top."""
        c = root_coords(datum, sub(self.top, nu))
        if c is None or any(x < 0 for x in c):
            return None
        return c

    def contains(self, datum, nu):
        off = self.offset(datum, nu)
        return off is not None and sum(off) <= self.depth

    def weights(self, datum):
        """All weights of the window, highest first."""
        simple = datum.simple_roots
        out = []
        r = len(simple)
        for h in range(self.depth + 1):
            for c in _compositions(h, r):
                nu = self.top
                for k, s in zip(c, simple):
                    if k:
                        nu = sub(nu, scale(k, s))
                out.append(nu)
        return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class FormalCharacter:
    """Finitely supported weight -> multiplicity map.

    ``window`` is None for an honest finite character, otherwise the
    character is only known (exactly) on the window.
    """

    __slots__ = ("mults", "window")

    def __init__(self, mults=None, window=None):
        self.mults = {tuple(k): int(v) for k, v in (mults or {}).items() if v}
        self.window = window

    def __getitem__(self, nu):
        return self.mults.get(tuple(nu), 0)

    def __eq__(self, other):
        return isinstance(other, FormalCharacter) and self.mults == other.mults

    def __repr__(self):
        return f"FormalCharacter({len(self.mults)} weights, window={self.window})"

    def _combine_window(self, other):
        if self.window is None:
            return other.window
        if other.window is None or other.window == self.window:
            return self.window
        raise ValueError("cannot combine characters with different windows")

    def __add__(self, other):
        out = dict(self.mults)
        for k, v in other.mults.items():
            out[k] = out.get(k, 0) + v
        return FormalCharacter(out, self._combine_window(other))

    def __neg__(self):
        return FormalCharacter({k: -v for k, v in self.mults.items()}, self.window)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return FormalCharacter({w: k * v for w, v in self.mults.items()}, self.window)

    def restrict(self, datum, window):
        return FormalCharacter(
            {k: v for k, v in self.mults.items() if window.contains(datum, k)}, window
        )

    def dimension(self):
        if self.window is not None:
            raise ValueError("dimension of a truncated character")
        return sum(self.mults.values())

    def is_nonnegative(self):
        return all(v >= 0 for v in self.mults.values())

    def to_json(self):
        return [[list(k), v] for k, v in sorted(self.mults.items(), reverse=True)]


def tensor(datum, a, b):
    """Product of characters.

    Windowed factors must be supported below their window tops; the result
    window is (top_a + top_b, min depth).
    """
    out = {}
    for x, u in a.mults.items():
        for y, v in b.mults.items():
            z = add(x, y)
            out[z] = out.get(z, 0) + u * v
    if a.window is None and b.window is None:
        return FormalCharacter(out)
    wa = a.window or Window(_top_of(datum, a), 10**9)
    wb = b.window or Window(_top_of(datum, b), 10**9)
    win = Window(add(wa.top, wb.top), min(wa.depth, wb.depth))
    return FormalCharacter(out).restrict(datum, win)


def _top_of(datum, chi):
    from .alcove import leq_order

    for cand in chi.mults:
        if all(leq_order(datum, x, cand) for x in chi.mults):
            return cand
    raise ValueError("finite factor has no unique highest weight")


# ---------------------------------------------------------------- Weyl characters

def _dominant_conjugate(nu, simple, pairing):
    nu = tuple(nu)
    changed = True
    while changed:
        changed = False
        for a in simple:
            k = pairing(nu, a)
            if k < 0:
                nu = sub(nu, scale(k, a))
                changed = True
    return nu


def _freudenthal(datum, lam, positive, simple, group_elems):
    def pairing(x, a):
        return pair(datum, x, a)

    if any(pairing(lam, a) < 0 for a in simple):
        raise ValueError(f"{lam} is not dominant for the chosen root system")
    rho = datum.rho
    lo = mat_apply(_longest(datum, group_elems, positive), lam)
    bound = simple_coefficients(datum, sub(lam, lo))
    # restrict the bound vector to the chosen simple roots
    full_simple = datum.simple_roots
    idx = [full_simple.index(a) for a in simple]
    ranges = [range(int(bound[i]) + 1) for i in idx]
    dom = []
    for c in product(*ranges):
        nu = lam
        for k, a in zip(c, simple):
            nu = sub(nu, scale(k, a))
        if all(pairing(nu, a) >= 0 for a in simple):
            dom.append((sum(c), nu))
    dom.sort()
    mult = {}
    lr = add(lam, rho)
    norm_l = _dot(lr, lr)

    def m(nu):
        return mult.get(_dominant_conjugate(nu, simple, pairing), 0)

    for h, nu in dom:
        if h == 0:
            mult[nu] = 1
            continue
        nr = add(nu, rho)
        denom = norm_l - _dot(nr, nr)
        total = 0
        for g in positive:
            k = 1
            while True:
                x = add(nu, scale(k, g))
                if not _within(datum, lam, x):
                    break
                mx = m(x)
                if mx:
                    total += mx * _dot(x, g)
                k += 1
        val, rem = divmod(2 * total, denom)
        if rem:
            raise ArithmeticError("Freudenthal recursion produced a non-integer")
        if val:
            mult[nu] = val
    out = {}
    for nu, v in mult.items():
        for w in group_elems:
            out[mat_apply(w, nu)] = v
    return out


def _within(datum, lam, x):
    c = root_coords(datum, sub(lam, x))
    return c is not None and all(v >= 0 for v in c)


def _longest(datum, elems, positive):
    pos = set(positive)
    return max(elems, key=lambda w: sum(1 for g in positive if mat_apply(w, g) not in pos))


@lru_cache(maxsize=None)
def _levi_group(datum):
    from .rootdata import _closure, reflection_matrix

    return tuple(sorted(_closure([reflection_matrix(a, datum.rank) for a in datum.levi_simple_roots], datum.rank)))


@lru_cache(maxsize=4096)
def _weyl_mults(datum, lam, for_levi):
    if for_levi:
        return _freudenthal(datum, lam, datum.levi_positive_roots, datum.levi_simple_roots, _levi_group(datum))
    return _freudenthal(datum, lam, datum.positive_roots, datum.simple_roots, datum.weyl)


def weyl_character(datum, lam, for_levi=False):
    """Character of V(lam) (or of the Levi module W(lam) when for_levi)."""
    lam = tuple(lam)
    ok = is_M_dominant(datum, lam) if for_levi else is_dominant(datum, lam)
    if not ok:
        raise ValueError(f"{lam} is not {'M-' if for_levi else ''}dominant")
    return FormalCharacter(_weyl_mults(datum, lam, for_levi))


def weyl_dimension(datum, lam, for_levi=False):
    from fractions import Fraction

    roots = datum.levi_positive_roots if for_levi else datum.positive_roots
    num = Fraction(1)
    for g in roots:
        num *= Fraction(pair(datum, add(lam, datum.rho), g), pair(datum, datum.rho, g))
    return int(num)


# ---------------------------------------------------------------- partitions

@lru_cache(maxsize=None)
def _root_coords(datum, roots):
    return tuple(tuple(int(c) for c in simple_coefficients(datum, g)) for g in roots)


@lru_cache(maxsize=None)
def _count(coords, target):
    if not coords:
        return int(not any(target))
    first, rest = coords[0], coords[1:]
    total = 0
    t = target
    while all(x >= 0 for x in t):
        total += _count(rest, t)
        t = tuple(a - b for a, b in zip(t, first))
    return total


def kostant_count(datum, target, roots=None):
    """Number of ways to write target as a non-negative combination of roots."""
    roots = tuple(datum.positive_roots if roots is None else roots)
    c = root_coords(datum, target)
    if c is None or any(x < 0 for x in c):
        return 0
    return _count(_root_coords(datum, roots), c)


def closed_form_C2(N, M):
    """Borel weight-space count for C2 at depth N*alpha + M*beta."""
    if N < 0 or M < 0:
        raise ValueError("N and M must be non-negative")
    if N >= M:
        return sum(min((N - i) // 2, M - i) + 1 for i in range(M + 1))
    return sum((N - i) // 2 + 1 for i in range(N + 1))


def borel_weight_dim(datum, mu, lam):
    """Dimension of the mu weight space of the Borel Verma module of lam."""
    return kostant_count(datum, sub(lam, mu))


# ---------------------------------------------------------------- Verma characters

def base_character(datum, kind, mu, p=None):
    """Levi character of W(mu) or, mod p, of L_M(mu)."""
    w = weyl_character(datum, mu, for_levi=True)
    if kind == "W":
        return w
    if p is None:
        raise ValueError("L_M classes need p")
    m = _levi_pairing(datum, mu)
    if m < p:
        return w
    if m > 2 * p - 2:
        raise OutOfRange(f"Levi pairing {m} of {mu} exceeds 2p-2")
    return w - weyl_character(datum, levi_partner(datum, p, mu), for_levi=True)


def _levi_root(datum):
    if len(datum.levi_simple_roots) != 1:
        raise NotImplementedError("Levi JH data needs a rank-one Levi")
    return datum.levi_simple_roots[0]


def _levi_pairing(datum, mu):
    return pair(datum, mu, _levi_root(datum))


def levi_partner(datum, p, mu):
    """Reflection of mu across the first Levi p-wall: s_{alpha,1}.mu."""
    a = _levi_root(datum)
    m = _levi_pairing(datum, mu)
    return add(mu, scale(p - m - 1, a))


def verma_character(datum, kind, mu, window, p=None):
    """Ver_P of W(mu) / L_M(mu), exactly on ``window``."""
    mu = tuple(mu)
    base = base_character(datum, kind, mu, p)
    return _induce(datum, base, window)


def _induce(datum, base, window):
    unip = datum.unipotent_roots
    if all(_within(datum, window.top, x) for x in base.mults):
        # multiply by 1/(1 - e^{-gamma}) one root at a time
        cells = window.weights(datum)
        cur = {nu: base[nu] for nu in cells}
        for g in unip:
            for nu in cells:  # highest first, so nu + g is already done
                up = add(nu, g)
                v = cur.get(up)
                if v:
                    cur[nu] += v
        return FormalCharacter(cur, window)
    out = {}
    for nu in window.weights(datum):
        tot = 0
        for b, v in base.mults.items():
            tot += v * kostant_count(datum, sub(b, nu), unip)
        out[nu] = tot
    return FormalCharacter(out, window)


def parabolic_weight_dim(datum, nu, lam):
    """Dimension of the nu weight space of Ver_P W(lam)."""
    base = weyl_character(datum, lam, for_levi=True)
    return sum(v * kostant_count(datum, sub(b, nu), datum.unipotent_roots) for b, v in base.mults.items())


# ---------------------------------------------------------------- exterior powers

def exterior_powers_gp(datum):
    """Highest weights w.0 of the Levi summands of the exterior powers of g/p."""
    zero = tuple(0 for _ in datum.rho)
    out = {}
    for w, length in datum.coset_reps:
        out.setdefault(length, []).append(dot_action(datum, w, zero))
    return [sorted(out[k], reverse=True) for k in sorted(out)]


def exterior_power_character(datum, k):
    weights = [neg(g) for g in datum.unipotent_roots]
    out = {}
    for combo in combinations(weights, k):
        z = tuple(sum(c) for c in zip(*combo)) if combo else tuple(0 for _ in datum.rho)
        out[z] = out.get(z, 0) + 1
    return FormalCharacter(out)


# ---------------------------------------------------------------- Levi JH

def levi_decomposition(datum, chi):
    """Characteristic-zero Levi multiplicities c(mu) = chi(mu) - chi(mu + alpha)."""
    if chi.window is not None:
        raise ValueError("Levi decomposition needs a finite character")
    a = _levi_root(datum)
    out = {}
    for nu, v in chi.mults.items():
        if pair(datum, nu, a) >= 0:
            c = v - chi[add(nu, a)]
            if c:
                out[nu] = c
    return out


def levi_jh_multiplicity(datum, p, chi, mu, decomposition=None):
    """(multiplicity of W(mu), multiplicity of L_M(mu)) in a Levi character.

    The W count is taken in the basis where W(mu) with pairing below p-1
    absorbs its linked partner W(s_{alpha,1}.mu); the L_M count is the
    Jordan-Holder multiplicity mod p.
    """
    mu = tuple(mu)
    dec = levi_decomposition(datum, chi) if decomposition is None else decomposition
    for nu, c in dec.items():
        if _levi_pairing(datum, nu) > 2 * p - 2:
            raise OutOfRange(f"Levi constituent {nu} lies beyond one wall crossing")
    m = _levi_pairing(datum, mu)
    if m < 0:
        raise ValueError(f"{mu} is not M-dominant")
    if m > 2 * p - 2:
        raise OutOfRange(f"Levi pairing {m} of {mu} exceeds 2p-2")
    own = dec.get(mu, 0)
    if m <= p - 2:
        both = own + dec.get(levi_partner(datum, p, mu), 0)
        return both, both
    return own, own
