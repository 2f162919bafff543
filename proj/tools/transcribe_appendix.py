"""Transcribe the long barycentric blocks into term-list JSON files.

The block texts are kept exactly as printed. Each block is parsed with sympy, split into
additive parts, and every part is stored as an expanded numerator (and denominator when the
part is a fraction) over the block's variable list.

Usage: python3 tools/transcribe_appendix.py [outdir]
"""
import json
import os
import sys

import sympy as sp

A_ELLIPSE = r"""
8*b^4*c^4*(a^2+b^2-c^2)*(a^2-b^2+c^2)*(a^6*b^4-3*a^4*b^6+3*a^2*b^8-b^10+3*a^4*b^4*c^2-
6*a^2*b^6*c^2+3*b^8*c^2+a^6*c^4+3*a^4*b^2*c^4+6*a^2*b^4*c^4-2*b^6*c^4-3*a^4*c^6-
6*a^2*b^2*c^6-2*b^4*c^6+3*a^2*c^8+3*b^2*c^8-c^10)*x^2+4*b^2*c^4*(a^2+b^2-c^2)^2*(a^2-
b^2+c^2)*(a^8*b^2-2*a^6*b^4+2*a^2*b^8-b^10-a^8*c^2-2*a^6*b^2*c^2+10*a^4*b^4*c^2-
10*a^2*b^6*c^2+3*b^8*c^2+4*a^6*c^4+4*a^4*b^2*c^4+10*a^2*b^4*c^4-2*b^6*c^4-6*a^4*c^6-
6*a^2*b^2*c^6-2*b^4*c^6+4*a^2*c^8+3*b^2*c^8-c^10)*x*y+a^2*c^4*(a^2-b^2-c^2)*(a^2+b^2-
c^2)*(a^12-7*a^8*b^4+16*a^6*b^6-21*a^4*b^8+16*a^2*b^10-5*b^12-6*a^10*c^2-4*a^8*b^2*c^2+
12*a^6*b^4*c^2+24*a^4*b^6*c^2-38*a^2*b^8*c^2+12*b^10*c^2+15*a^8*c^4+16*a^6*b^2*c^4+
6*a^4*b^4*c^4+32*a^2*b^6*c^4-5*b^8*c^4-20*a^6*c^6-24*a^4*b^2*c^6-20*a^2*b^4*c^6-8*b^6*c^6+
15*a^4*c^8+16*a^2*b^2*c^8+9*b^4*c^8-6*a^2*c^10-4*b^2*c^10+c^12)*y^2-4*b^4*c^2*(a^2+b^2-
c^2)*(a^2-b^2+c^2)^2*(a^8*b^2-4*a^6*b^4+6*a^4*b^6-4*a^2*b^8+b^10-a^8*c^2+2*a^6*b^2*c^2-
4*a^4*b^4*c^2+6*a^2*b^6*c^2-3*b^8*c^2+2*a^6*c^4-10*a^4*b^2*c^4-10*a^2*b^4*c^4+2*b^6*c^4+
10*a^2*b^2*c^6+2*b^4*c^6-2*a^2*c^8-3*b^2*c^8+c^10)*x*z-2*a^2*b^2*c^2*(a^2-b^2-c^2)*(a^2+
b^2-c^2)*(a^2-b^2+c^2)*(a^10-3*a^8*b^2+2*a^6*b^4+2*a^4*b^6-3*a^2*b^8+b^10-3*a^8*c^2+
8*a^6*b^2*c^2-14*a^4*b^4*c^2+16*a^2*b^6*c^2-7*b^8*c^2+2*a^6*c^4-14*a^4*b^2*c^4-26*a^2*b^4*c^4+
6*b^6*c^4+2*a^4*c^6+16*a^2*b^2*c^6+6*b^4*c^6-3*a^2*c^8-7*b^2*c^8+c^10)*y*z+a^2*b^4*(a^2-b^2-
c^2)*(a^2-b^2+c^2)*(a^12-6*a^10*b^2+15*a^8*b^4-20*a^6*b^6+15*a^4*b^8-6*a^2*b^10+b^12-
4*a^8*b^2*c^2+16*a^6*b^4*c^2-24*a^4*b^6*c^2+16*a^2*b^8*c^2-4*b^10*c^2-7*a^8*c^4+12*a^6*b^2*c^4+
6*a^4*b^4*c^4-20*a^2*b^6*c^4+9*b^8*c^4+16*a^6*c^6+24*a^4*b^2*c^6+32*a^2*b^4*c^6-8*b^6*c^6-
21*a^4*c^8-38*a^2*b^2*c^8-5*b^4*c^8+16*a^2*c^10+12*b^2*c^10-5*c^12)*z^2 = 0
"""

MAJOR_VERTICES_RT = r"""
rt = sqrt(a^6-3*a^2*b^4+2*b^6+6*a^2*b^2*c^2-2*b^4*c^2-3*a^2*c^4-2*b^2*c^4+2*c^6))
"""

MAJOR_VERTICES = r"""
[(a*(a^2-b^2-c^2)*((b^2-c^2)*(a^4*b^2-2*a^2*b^4+b^6+a^4*c^2+4*a^2*b^2*c^2-b^4*c^2-2*a^2*c^4-
b^2*c^4+c^6)+/-2*a^3*S*rt))/(a*(a^4*b^2-2*a^2*b^4+b^6+a^4*c^2+4*a^2*b^2*c^2-b^4*c^2-
2*a^2*c^4-b^2*c^4+c^6)+/-2*(b^2-c^2)*S*rt),b^2*(-a^2+b^2-c^2),-(c^2*(-a^2-b^2+c^2))]
"""

X3PRIME_CENTER = r"""
(a^14-5*a^12*b^2+9*a^10*b^4-5*a^8*b^6-5*a^6*b^8+9*a^4*b^10-5*a^2*b^12+b^14-5*a^12*c^2+10*a^10*b^2*c^2-
13*a^8*b^4*c^2+28*a^6*b^6*c^2-31*a^4*b^8*c^2+10*a^2*b^10*c^2+b^12*c^2+9*a^10*c^4-13*a^8*b^2*c^4-
30*a^6*b^4*c^4+22*a^4*b^6*c^4+21*a^2*b^8*c^4-9*b^10*c^4-5*a^8*c^6+28*a^6*b^2*c^6+22*a^4*b^4*c^6-
52*a^2*b^6*c^6+7*b^8*c^6-5*a^6*c^8-31*a^4*b^2*c^8+21*a^2*b^4*c^8+7*b^6*c^8+9*a^4*c^10+10*a^2*b^2*c^10-
9*b^4*c^10-5*a^2*c^12+b^2*c^12+c^14)*a^2
"""

PHYP_MEMBER = r"""
(2*(b^2-c^2-La^2)*p*q+(a^2-La^2)*q^2-2*(b^2-c^2+La^2)*p*r-2*(a^2+La^2)*q*r+(a^2-La^2)*r^2)*x^2-
2*(b^2-c^2-La^2)*p^2*x*y-(a^2-La^2)*p^2*y^2+2*(b^2-c^2+La^2)*p^2*x*z+2*(a^2+La^2)*p^2*y*z-
(a^2-La^2)*p^2*z^2 = 0
"""

PSTAR_CONIC = r"""
x^2+y^2+z^2-(2*(a^2+La^2)*y*z)/(a^2-La^2)-(2*(b^2+Lb^2)*z*x)/(b^2-Lb^2)-(2*(c^2+
Lc^2)*x*y)/(c^2-Lc^2)=0
"""

X5452_COORDINATE = r"""
(a^2*((-2*La^2)/(a^2-La^2)+(b^2+Lb^2)/(b^2-Lb^2)+(c^2+Lc^2)/(c^2-Lc^2)))/(a^2-La^2)
"""

SYMBOLS = {n: sp.Symbol(n) for n in "a b c x y z S rt La Lb Lc p q r pm".split()}


def parse(text):
    text = text.replace("\n", "").replace("^", "**")
    return sp.sympify(text, locals=SYMBOLS)


def lhs(text):
    return text.split("=")[0]


def terms(expr, variables):
    poly = sp.Poly(sp.expand(expr), *[SYMBOLS[v] for v in variables])
    rows = []
    for exps, coeff in poly.terms():
        if not coeff.is_integer:
            raise ValueError(f"non-integer coefficient {coeff}")
        if abs(int(coeff)) >= 2**53:
            raise ValueError(f"coefficient {coeff} not exact in double precision")
        rows.append([int(coeff), *exps])
    return rows


def parts(expr, variables):
    out = []
    for arg in sp.Add.make_args(expr):
        num, den = sp.fraction(sp.together(arg))
        part = {"num": terms(num, variables)}
        if den != 1:
            part["den"] = terms(den, variables)
        out.append(part)
    return out


def block(name, source, variables, components, notes=None):
    d = {
        "name": name,
        "source": source.strip(),
        "variables": variables,
        "components": {k: parts(v, variables) for k, v in components.items()},
    }
    if notes:
        d["notes"] = notes
    return d


def major_vertices():
    # "+/-" becomes the sign variable pm.
    point = MAJOR_VERTICES.strip().replace("+/-", "+pm*")
    inner = point.strip()[1:-1]
    depth, cut, pieces = 0, 0, []
    for i, ch in enumerate(inner):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "," and depth == 0:
            pieces.append(inner[cut:i])
            cut = i + 1
    pieces.append(inner[cut:])
    u, v, w = (parse(s) for s in pieces)
    rt_text = MAJOR_VERTICES_RT.strip()
    # The printed definition has one closing parenthesis too many.
    radicand = parse(rt_text.split("sqrt(", 1)[1].rstrip(")"))
    variables = ["a", "b", "c", "S", "rt", "pm"]
    d = block("major_vertices", MAJOR_VERTICES_RT.strip() + "\n" + MAJOR_VERTICES.strip(), variables,
              {"u": u, "v": v, "w": w, "rt_radicand": radicand},
              "pm is the +/- sign; rt = sqrt(rt_radicand); S is twice the area")
    return d


def build():
    abc = ["a", "b", "c"]
    return [
        block("a_ellipse", A_ELLIPSE, abc + ["x", "y", "z"], {"lhs": parse(lhs(A_ELLIPSE))}),
        major_vertices(),
        block("x3prime_center", X3PRIME_CENTER, abc, {"first": parse(X3PRIME_CENTER)},
              "first barycentric; the others cyclically"),
        block("phyp_member", PHYP_MEMBER, abc + ["x", "y", "z", "p", "q", "r", "La"],
              {"lhs": parse(lhs(PHYP_MEMBER))}, "p, q, r are the barycentrics of P"),
        block("pstar_conic", PSTAR_CONIC, abc + ["x", "y", "z", "La", "Lb", "Lc"],
              {"lhs": parse(lhs(PSTAR_CONIC))}),
        block("x5452_coordinate", X5452_COORDINATE, abc + ["La", "Lb", "Lc"],
              {"first": parse(X5452_COORDINATE)}, "first barycentric; the others cyclically"),
    ]


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "data", "appendix")
    os.makedirs(outdir, exist_ok=True)
    for d in build():
        path = os.path.join(outdir, d["name"] + ".json")
        with open(path, "w") as f:
            json.dump(d, f, separators=(",", ":"))
            f.write("\n")
        n = sum(len(p["num"]) + len(p.get("den", [])) for c in d["components"].values() for p in c)
        print(f"{path}: {n} terms")


if __name__ == "__main__":
    main()
