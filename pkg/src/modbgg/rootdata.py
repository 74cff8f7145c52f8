"""Root data, Weyl groups and pairings for GL_n and GSp_2n.

Weights are plain tuples of ints. GSp_2n weights use the n symplectic
coordinates only; the similitude coordinate is dropped.
"""
from dataclasses import dataclass, field
from fractions import Fraction

Weight = tuple


class UnsupportedGroup(ValueError):
    pass


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def scale(k, x):
    return tuple(k * a for a in x)


def neg(x):
    return tuple(-a for a in x)


def mat_apply(w, x):
    return tuple(_dot(row, x) for row in w)


def mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(_dot(row, c) for c in cols) for row in a)


def mat_inv(w):
    # Weyl matrices are orthogonal for the standard form.
    return tuple(zip(*w))


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class GroupDatum:
    family: str
    n: int
    parabolic: tuple
    rank: int
    positive_roots: tuple
    simple_roots: tuple
    levi_simple_roots: tuple
    rho: Weight
    two_rho_gen: Weight
    two_rho_levi_gen: Weight
    weyl: tuple = field(repr=False)
    lengths: tuple = field(repr=False)
    w0: tuple = field(repr=False)
    w0_levi: tuple = field(repr=False)
    coset_reps: tuple = field(repr=False)
    experimental: bool = False

    @property
    def roots(self):
        return self.positive_roots + tuple(neg(g) for g in self.positive_roots)

    @property
    def levi_positive_roots(self):
        span = set(self.levi_simple_roots)
        return tuple(g for g in self.positive_roots if _in_span(g, self.simple_roots, span))

    @property
    def unipotent_roots(self):
        levi = set(self.levi_positive_roots)
        return tuple(g for g in self.positive_roots if g not in levi)

    @property
    def key(self):
        return {"family": self.family, "n": self.n, "parabolic": list(self.parabolic)}

    @property
    def name(self):
        return f"{self.family.lower()}{self.n}"

    def coroot(self, gamma):
        norm = _dot(gamma, gamma)
        return tuple(Fraction(2 * g, norm) for g in gamma)

    def is_root(self, gamma):
        gamma = tuple(gamma)
        return gamma in self.positive_roots or neg(gamma) in self.positive_roots


def _in_span(gamma, simple, allowed):
    """True when gamma only involves the simple roots in ``allowed``."""
    coeffs = simple_coefficients_raw(gamma, simple)
    return all(c == 0 or s in allowed for c, s in zip(coeffs, simple))


def _invert(m):
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [v / pv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


_GRAM_INV = {}


def simple_coefficients_raw(x, simple):
    """Solve x = sum c_i simple_i exactly; raises if x is off the root span."""
    simple = tuple(simple)
    inv = _GRAM_INV.get(simple)
    if inv is None:
        inv = _invert([[_dot(s, t) for t in simple] for s in simple])
        _GRAM_INV[simple] = inv
    rhs = [_dot(s, x) for s in simple]
    coeffs = tuple(sum(r * v for r, v in zip(row, rhs)) for row in inv)
    back = tuple(sum(c * s[i] for c, s in zip(coeffs, simple)) for i in range(len(x)))
    if back != tuple(x):
        raise ValueError(f"{x} is not in the root span")
    return coeffs


def pair(datum, lam, gamma):
    """<lam, gamma^vee> for a root gamma."""
    gamma = tuple(gamma)
    if not datum.is_root(gamma):
        raise ValueError(f"{gamma} is not a root of {datum.name}")
    val = Fraction(2 * _dot(lam, gamma), _dot(gamma, gamma))
    if val.denominator != 1:
        raise ValueError(f"non-integral pairing of {lam} with {gamma}")
    return int(val)


def reflect(datum, lam, gamma):
    return sub(lam, scale(pair(datum, lam, gamma), gamma))


def reflection_matrix(datum_roots_gamma, rank):
    gamma = datum_roots_gamma
    norm = _dot(gamma, gamma)
    rows = []
    for i in range(rank):
        rows.append(tuple(int(i == j) - Fraction(2 * gamma[i] * gamma[j], norm) for j in range(rank)))
    return tuple(tuple(int(v) for v in r) for r in rows)


def dot_action(datum, w, lam):
    return sub(mat_apply(w, add(lam, datum.rho)), datum.rho)


def is_dominant(datum, lam):
    return all(pair(datum, lam, a) >= 0 for a in datum.simple_roots)


def is_M_dominant(datum, lam):
    return all(pair(datum, lam, a) >= 0 for a in datum.levi_simple_roots)


def minimal_coset_reps(datum):
    return list(datum.coset_reps)


def weyl_length(datum, w):
    pos = set(datum.positive_roots)
    return sum(1 for g in datum.positive_roots if mat_apply(w, g) not in pos)


def _closure(gens, rank):
    elems = {identity(rank)}
    frontier = [identity(rank)]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = mat_mul(s, w)
                if ws not in elems:
                    elems.add(ws)
                    nxt.append(ws)
        frontier = nxt
    return elems


def _gl_roots(n):
    def e(i):
        return tuple(int(k == i) for k in range(n))

    pos = tuple(sub(e(i), e(j)) for i in range(n) for j in range(i + 1, n))
    simple = tuple(sub(e(i), e(i + 1)) for i in range(n - 1))
    return pos, simple


def _gsp_roots(m):
    def e(i):
        return tuple(int(k == i) for k in range(m))

    pos = []
    for i in range(m):
        for j in range(i + 1, m):
            pos.append(sub(e(i), e(j)))
            pos.append(add(e(i), e(j)))
        pos.append(scale(2, e(i)))
    simple = tuple(sub(e(i), e(i + 1)) for i in range(m - 1)) + (scale(2, e(m - 1)),)
    return tuple(sorted(pos, key=lambda g: (sum(simple_coefficients_raw(g, simple)), g))), simple


def _parse_parabolic(family, n, spec):
    if isinstance(spec, str):
        s = spec.strip().lower()
        if s == "siegel":
            return ("siegel",)
        if s.startswith("block(") and s.endswith(")"):
            return tuple(int(t) for t in s[6:-1].split(","))
        raise UnsupportedGroup(f"unknown parabolic spec {spec!r}")
    return tuple(spec)


def build_datum(family, n, parabolic_spec=None):
    """Build root data for (GL, n) with a block parabolic or (GSp, 2m) Siegel."""
    fam = family.upper()
    if fam not in ("GL", "GSP"):
        raise UnsupportedGroup(f"unsupported family {family!r}")
    fam = "GL" if fam == "GL" else "GSp"
    if parabolic_spec is None:
        parabolic_spec = "block(2,1)" if fam == "GL" else "siegel"
    parabolic = _parse_parabolic(fam, n, parabolic_spec)

    if fam == "GL":
        if parabolic == ("siegel",) or sum(parabolic) != n or min(parabolic) < 1:
            raise UnsupportedGroup(f"GL{n} needs a block composition of {n}, got {parabolic_spec!r}")
        rank = n
        pos, simple = _gl_roots(n)
        breaks, acc = set(), 0
        for b in parabolic[:-1]:
            acc += b
            breaks.add(acc - 1)
        levi_simple = tuple(s for i, s in enumerate(simple) if i not in breaks)
        rho = tuple(n - 1 - i for i in range(n))
        validated = (n, parabolic) == (3, (2, 1))
    else:
        if n % 2 or n < 2:
            raise UnsupportedGroup("GSp needs an even n")
        if parabolic != ("siegel",):
            raise UnsupportedGroup("only the Siegel parabolic is supported for GSp")
        rank = n // 2
        pos, simple = _gsp_roots(rank)
        levi_simple = simple[:-1]
        rho = tuple(rank - i for i in range(rank))
        validated = n == 4

    gens = [reflection_matrix(s, rank) for s in simple]
    weyl = sorted(_closure(gens, rank))
    pos_set = set(pos)

    def length(w):
        return sum(1 for g in pos if mat_apply(w, g) not in pos_set)

    lengths = tuple(length(w) for w in weyl)
    w0 = weyl[lengths.index(max(lengths))]
    levi_gens = [reflection_matrix(s, rank) for s in levi_simple]
    levi_group = _closure(levi_gens, rank)
    w0_levi = max(levi_group, key=length)
    reps = []
    for w, l in zip(weyl, lengths):
        winv = mat_inv(w)
        if all(mat_apply(winv, a) in pos_set for a in levi_simple):
            reps.append((w, l))
    reps.sort(key=lambda t: (t[1], t[0]))

    levi_pos = [g for g in pos if _in_span(g, simple, set(levi_simple))]
    two_rho = tuple(sum(g[i] for g in pos) for i in range(rank))
    two_rho_m = tuple(sum(g[i] for g in levi_pos) for i in range(rank))

    return GroupDatum(
        family=fam,
        n=n,
        parabolic=parabolic,
        rank=rank,
        positive_roots=tuple(pos),
        simple_roots=tuple(simple),
        levi_simple_roots=levi_simple,
        rho=rho,
        two_rho_gen=two_rho,
        two_rho_levi_gen=two_rho_m,
        weyl=tuple(weyl),
        lengths=lengths,
        w0=w0,
        w0_levi=w0_levi,
        coset_reps=tuple(reps),
        experimental=not validated,
    )


_CACHE = {}


def group(name):
    """Shorthand: 'gl3' or 'gsp4' with the standard parabolic."""
    key = name.lower()
    if key not in _CACHE:
        if key == "gl3":
            _CACHE[key] = build_datum("GL", 3, "block(2,1)")
        elif key == "gsp4":
            _CACHE[key] = build_datum("GSp", 4, "siegel")
        else:
            raise UnsupportedGroup(f"unknown group {name!r}; expected gl3 or gsp4")
    return _CACHE[key]


def simple_coefficients(datum, x):
    """Coefficients of x in the simple roots (Fractions)."""
    return simple_coefficients_raw(x, datum.simple_roots)


_COORD = {}


def _coord_map(datum):
    hit = _COORD.get(datum.simple_roots)
    if hit is None:
        simple = datum.simple_roots
        inv = _invert([[_dot(s, t) for t in simple] for s in simple])
        rows = [[sum(inv[i][k] * simple[k][j] for k in range(len(simple))) for j in range(datum.rank)]
                for i in range(len(simple))]
        den = 1
        for row in rows:
            for v in row:
                den = den * v.denominator // _gcd(den, v.denominator)
        hit = (tuple(tuple(int(v * den) for v in row) for row in rows), den)
        _COORD[datum.simple_roots] = hit
    return hit


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def root_coords(datum, x):
    """Integer simple-root coordinates of x, or None off the root lattice."""
    mat, den = _coord_map(datum)
    out = []
    for row in mat:
        v = _dot(row, x)
        if v % den:
            return None
        out.append(v // den)
    simple = datum.simple_roots
    for j in range(datum.rank):
        if sum(c * s[j] for c, s in zip(out, simple)) != x[j]:
            return None
    return tuple(out)
