"""Affine reflections, alcove signatures, linkage and the named orbit families."""
from collections import namedtuple
from dataclasses import dataclass

from .rootdata import add, is_M_dominant, pair, root_coords, scale, sub

AffineReflection = namedtuple("AffineReflection", "gamma n")


class NotInLowestAlcove(ValueError):
    pass


@dataclass(frozen=True)
class AlcoveSignature:
    p: int
    entries: tuple  # (root, quotient, on_wall) per positive root

    @property
    def regular(self):
        return not any(w for _, _, w in self.entries)

    @property
    def in_lowest_alcove(self):
        return self.regular and all(q == 0 for _, q, _ in self.entries)

    def quotient(self, gamma):
        for g, q, _ in self.entries:
            if g == tuple(gamma):
                return q
        raise KeyError(gamma)

    def as_json(self):
        return {
            "p": self.p,
            "roots": [
                {"root": list(g), "quotient": q, "on_wall": w} for g, q, w in self.entries
            ],
            "regular": self.regular,
            "lowest": self.in_lowest_alcove,
        }


def shifted_pair(datum, lam, gamma):
    return pair(datum, add(lam, datum.rho), gamma)


def affine_reflect(datum, p, s, lam):
    gamma = tuple(s[0])
    n = s[1]
    return add(lam, scale(p * n - shifted_pair(datum, lam, gamma), gamma))


def classify(datum, p, lam):
    entries = []
    for g in datum.positive_roots:
        v = shifted_pair(datum, lam, g)
        entries.append((g, v // p, v % p == 0))
    return AlcoveSignature(p, tuple(entries))


def is_p_restricted(datum, p, lam):
    return all(0 <= pair(datum, lam, a) < p for a in datum.simple_roots)


def is_p_small(datum, p, lam):
    return all(abs(shifted_pair(datum, lam, g)) < p for g in datum.positive_roots)


def is_epsilon_generic(datum, p, eps, lam):
    # The condition for -gamma is equivalent to the one for gamma.
    if eps < 0:
        raise ValueError("eps must be non-negative")
    return all(eps < pair(datum, lam, g) % p < p - eps for g in datum.positive_roots)


def leq_order(datum, lam, mu):
    """lam <= mu, i.e. mu - lam is a non-negative integer span of positive roots."""
    coeffs = root_coords(datum, sub(mu, lam))
    return coeffs is not None and all(c >= 0 for c in coeffs)


def up_step(datum, p, lam, gamma):
    """The single linkage step lam -> s_{gamma,n}.lam with the least admissible n."""
    v = shifted_pair(datum, lam, gamma)
    n = -(-v // p)
    return n, affine_reflect(datum, p, (gamma, n), lam)


def linkage_up(datum, p, lam, mu):
    """Shortest chain lam -> ... -> mu of linkage steps, or None.

    Returns a list of (gamma, n, weight) steps. Among shortest chains the
    lexicographically smallest root sequence wins.
    """
    lam, mu = tuple(lam), tuple(mu)
    if not leq_order(datum, lam, mu):
        return None
    if lam == mu:
        return []
    order = {g: i for i, g in enumerate(datum.positive_roots)}
    best = {lam: ()}
    layer = [lam]
    while layer:
        nxt = {}
        for node in layer:
            for g in datum.positive_roots:
                n, new = up_step(datum, p, node, g)
                if new == node or new in best or not leq_order(datum, new, mu):
                    continue
                path = best[node] + ((g, n, new),)
                key = tuple(order[s[0]] for s in path)
                cur = nxt.get(new)
                if cur is None or key < tuple(order[s[0]] for s in cur):
                    nxt[new] = path
        best.update(nxt)
        if mu in nxt:
            return list(nxt[mu])
        layer = sorted(nxt)
    return None


@dataclass(frozen=True)
class OrbitFamily:
    group: str
    p: int
    members: tuple  # (name, weight) pairs in a fixed order

    def __getitem__(self, name):
        for k, v in self.members:
            if k == name:
                return v
        raise KeyError(name)

    def __contains__(self, name):
        return any(k == name for k, _ in self.members)

    def names(self):
        return [k for k, _ in self.members]

    def as_dict(self):
        return {k: list(v) for k, v in self.members}


def _roots_by_name(datum):
    if datum.name == "gl3":
        a1, a2 = datum.simple_roots
        return {"a1": a1, "a2": a2, "a12": add(a1, a2)}
    if datum.name == "gsp4":
        a, b = datum.simple_roots
        return {"a": a, "b": b, "ab": add(a, b), "2ab": add(scale(2, a), b)}
    raise NotImplementedError(f"no orbit family for {datum.name}")


def orbit_family(datum, p, lam0):
    lam0 = tuple(lam0)
    if not classify(datum, p, lam0).in_lowest_alcove:
        raise NotInLowestAlcove(f"{lam0} is not in the open lowest alcove for p={p}")
    r = _roots_by_name(datum)

    def s(name, n, w):
        return affine_reflect(datum, p, (r[name], n), w)

    m = []
    if datum.name == "gl3":
        lam1 = s("a12", 1, lam0)
        mu0 = s("a2", 0, lam0)
        mu1 = s("a1", 1, mu0)
        nu0 = s("a12", 0, mu0)
        nu1 = s("a2", -1, nu0)
        m = [("lambda0", lam0), ("lambda1", lam1), ("mu0", mu0), ("mu1", mu1),
             ("nu0", nu0), ("nu1", nu1)]
    else:
        lams = [lam0]
        lams.append(s("ab", 1, lams[0]))
        lams.append(s("2ab", 1, lams[1]))
        lams.append(s("ab", 2, lams[2]))
        mus = [s("b", 0, l) for l in lams]
        nus = [s("ab", 0, x) for x in mus]
        epss = [s("2ab", 0, x) for x in nus]
        for tag, ws in (("lambda", lams), ("mu", mus), ("nu", nus), ("eps", epss)):
            m += [(f"{tag}{i}", w) for i, w in enumerate(ws)]
        # Borel-level partners, used by the weight-space case analysis
        m += [(f"lambda{i}'", s("a", 0, l)) for i, l in enumerate(lams[:3])]
    fam = OrbitFamily(datum.name, p, tuple(m))
    return fam


def lowest_alcove_points(datum, p):
    """All weights in the open lowest alcove (GL3 normalised to last coordinate 0)."""
    rho = datum.rho
    pts = []
    if datum.name == "gl3":
        for x in range(p):
            for y in range(p):
                lam = (x + y, y, 0)
                if classify(datum, p, lam).in_lowest_alcove:
                    pts.append(lam)
    elif datum.name == "gsp4":
        for a in range(-rho[0], p):
            for b in range(-rho[1], p):
                if classify(datum, p, (a, b)).in_lowest_alcove:
                    pts.append((a, b))
    else:
        raise NotImplementedError(datum.name)
    return sorted(pts)


def generic_sweep(datum, p, eps=0):
    """Lowest-alcove weights that are eps-generic; eps=None keeps every one."""
    pts = lowest_alcove_points(datum, p)
    if eps is None:
        return pts
    return [l for l in pts if is_epsilon_generic(datum, p, eps, l)]


def m_dominant_family(datum, fam):
    return all(is_M_dominant(datum, w) for k, w in fam.members if not k.endswith("'"))
