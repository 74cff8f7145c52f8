"""Static SVG pictures of the alcove geometry around an orbit family."""
import math

from .alcove import orbit_family
from .rootdata import add

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_GREEK = {"lambda": "λ", "mu": "μ", "nu": "ν", "eps": "ε"}


def _plane_basis(datum):
    if datum.name == "gsp4":
        return ((1.0, 0.0), (0.0, 1.0))
    if datum.name == "gl3":
        r2, r6 = math.sqrt(2), math.sqrt(6)
        return ((1 / r2, -1 / r2, 0.0), (1 / r6, 1 / r6, -2 / r6))
    raise ValueError(f"no diagram layout for {datum.name}")


def _project(basis, x):
    return tuple(sum(a * b for a, b in zip(u, x)) for u in basis)


def _label(name):
    for k, g in _GREEK.items():
        if name.startswith(k):
            return g + name[len(k):].translate(_SUB)
    return name


def _clip(g, c, box):
    """Segment of the line g.P = c inside box = (x0, y0, x1, y1)."""
    x0, y0, x1, y1 = box
    pts = []
    gx, gy = g
    if abs(gy) > 1e-12:
        for x in (x0, x1):
            y = (c - gx * x) / gy
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                pts.append((x, y))
    if abs(gx) > 1e-12:
        for y in (y0, y1):
            x = (c - gy * y) / gx
            if x0 - 1e-9 <= x <= x1 + 1e-9:
                pts.append((x, y))
    pts = sorted(set((round(x, 6), round(y, 6)) for x, y in pts))
    return (pts[0], pts[-1]) if len(pts) >= 2 and pts[0] != pts[-1] else None


def alcove_svg(datum, p, lam0, size=520, include_primed=False):
    """SVG string: walls near the lowest alcoves, family members as labelled dots."""
    fam = orbit_family(datum, p, lam0)
    basis = _plane_basis(datum)
    members = [(k, w) for k, w in fam.members if include_primed or not k.endswith("'")]
    pts = {k: _project(basis, add(w, datum.rho)) for k, w in members}
    xs = [x for x, _ in pts.values()] + [0.0]
    ys = [y for _, y in pts.values()] + [0.0]
    pad = 0.15 * p
    side = max(max(xs) - min(xs), max(ys) - min(ys)) + 2 * pad
    cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    box = (cx - side / 2, cy - side / 2, cx + side / 2, cy + side / 2)
    scale = (size - 40) / max(box[2] - box[0], box[3] - box[1])

    def to_svg(pt):
        return (20 + (pt[0] - box[0]) * scale, size - 20 - (pt[1] - box[1]) * scale)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
           f'<title>{datum.name} p={p} lambda0={",".join(map(str, lam0))}</title>',
           '<rect width="100%" height="100%" fill="white"/>']
    corners = [(box[0], box[1]), (box[0], box[3]), (box[2], box[1]), (box[2], box[3])]
    for gamma in datum.positive_roots:
        g = _project(basis, gamma)
        norm = sum(a * a for a in gamma)
        vals = [2 * (cx * g[0] + cy * g[1]) / norm for cx, cy in corners]
        for n in range(math.floor(min(vals) / p), math.ceil(max(vals) / p) + 1):
            seg = _clip(g, n * p * norm / 2, box)
            if seg is None:
                continue
            (ax, ay), (bx, by) = to_svg(seg[0]), to_svg(seg[1])
            dash = ' stroke-dasharray="4 3"' if n == 0 else ""
            out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
                       f'stroke="#888" stroke-width="1"{dash}/>')
    chain = [k for k in ("lambda0", "lambda1", "lambda2", "lambda3") if k in pts]
    for a, b in zip(chain, chain[1:]):
        (ax, ay), (bx, by) = to_svg(pts[a]), to_svg(pts[b])
        out.append(f'<line x1="{ax:.2f}" y1="{ay:.2f}" x2="{bx:.2f}" y2="{by:.2f}" '
                   f'stroke="green" stroke-width="1.5" stroke-dasharray="2 2"/>')
    ox, oy = to_svg((0.0, 0.0))
    out.append(f'<text x="{ox + 4:.2f}" y="{oy + 14:.2f}" font-size="12" fill="#444">−ρ</text>')
    for k, pt in pts.items():
        x, y = to_svg(pt)
        colour = "crimson" if k.startswith("lambda") else "navy"
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{colour}"/>')
        out.append(f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="12" fill="{colour}">{_label(k)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
