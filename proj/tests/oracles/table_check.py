"""Independent symbolic check of the catalog closed forms.

For every row: F - (2 pi r^3 h^2 + r^2 h') simplifies to 0, T' = F/h^3, and
rho equals M'/(4 pi r^2) for M = (h^2/r)(c2 - T). Row 2 is checked twice: with
the sign used by the library and with the flipped (misprinted) sign.
Exit status is 0 when the corrected catalog passes and the typeset row 2 fails.
"""
import sys

import sympy as sp

r, c1, c2 = sp.symbols("r c1 c2", positive=True)
pi, L = sp.pi, sp.log
half, quarter = sp.Rational(1, 2), sp.Rational(1, 4)

Y2 = -c1 + pi * r**2 + pi * L(r**2 - 1)
G12 = (-2 * c1 * c2 * (r**2 - 1) + 3 * pi**2 * (r**2 - 1) * (pi * r**2 - c1) * L(r**2 - 1) ** 2
       - 2 * pi * (c2 * (1 - 5 * r**2) * r**2 + c1**2 * (r**4 + 2 * r**2 - 1))
       + pi * (r**2 - 1) * (2 * pi * c1 * (1 - 3 * r**2) + 2 * (c1**2 + c2) + pi**2 * (3 * r**4 - 1)) * L(r**2 - 1)
       - pi**2 * c1 * (3 * r**6 - 13 * r**4 + r**2 + 1) + pi**3 * (r**2 - 1) * L(r**2 - 1) ** 3
       + pi**3 * (r**8 - r**6 - 5 * r**4 + r**2))
Y3 = -c1 + pi * (r**2 + 2 * r - 3) + 2 * pi * L(r - 1)
num3 = (60 * pi**2 * (r - 1) * (9 * c1 + pi * (8 * r**3 - 9 * r**2 - 18 * r + 31)) * L(r - 1) ** 2
        + 30 * pi * (c1**2 * (4 * r**4 - r**3 - 3 * r**2 + 17 * r - 11) - 3 * c2 * (5 * r**3 + r**2 - 5 * r + 3))
        + 2 * pi * (r - 1) * (-30 * pi * c1 * (8 * r**3 - 9 * r**2 - 18 * r + 31) - 90 * (c1**2 + c2)
                              + pi**2 * (24 * r**5 + 135 * r**4 - 1460 * r**3 + 390 * r**2 + 1860 * r - 1669)) * L(r - 1)
        - pi**2 * c1 * (24 * r**6 + 111 * r**5 - 1595 * r**4 + 1850 * r**3 + 1470 * r**2 - 3529 * r + 1669)
        + 90 * c1 * c2 * (r - 1)
        + pi**3 * (9 * r**7 - 115 * r**6 - 803 * r**5 + 4465 * r**4 - 3365 * r**3 - 3529 * r**2 + 5375 * r - 2037)
        - 360 * pi**3 * (r - 1) * L(r - 1) ** 3)
lg = L(r - 1)
G3 = (-2 * pi**2 * r**5 / 5 - 3 * pi**2 * r**4 / 2 + r**3 * (2 * pi * c1 / 3 + 4 * pi**2 / 9)
      + r**2 * (pi * c1 + 5 * pi**2 / 3) + r * (2 * pi * c1 + 22 * pi**2 / 3)
      + 2 * pi * (3 * c1 + 11 * pi) / 3 * lg + (-4 * pi**2 * r**3 / 3 - 2 * pi**2 * r**2 - 4 * pi**2 * r) * lg
      - 2 * pi**2 * lg**2)
D8 = -2 * c1 * r**2 + 2 * pi * r**4 + 1
s = sp.sqrt(r)
q = r**quarter

ROWS = {
    "1": dict(F=lambda h: 0, h=1 / (pi * r**2 - c1), T=0,
              rho=c2 * (c1 - 5 * pi * r**2) / (4 * pi * r**4 * (pi * r**2 - c1) ** 3)),
    "2": dict(F=lambda h: sp.diff(h, r), h=1 / Y2, T=((c1 - pi) ** 2 - Y2**2) / 2,
              rho=-G12 / (8 * pi * r**4 * (r**2 - 1) * Y2**3)),
    "3": dict(F=lambda h: r * sp.diff(h, r), h=1 / Y3, T=G3 - 11 * pi * c1 / 3 - 679 * pi**2 / 90,
              rho=num3 / (360 * pi * (r - 1) * r**4 * Y3**3)),
    "4": dict(F=lambda h: h**2, h=r / (-c1 * r + pi * r**3 + 1), T=-c1 * r + pi * r**3 / 3 + L(r),
              rho=(-pi * r**3 * (10 * c1 * r + 15 * c2 + 7) + 3 * (-c1 * r + 5 * pi * r**3 - 1) * L(r)
                   + 3 * (c1 * (c2 + 3) * r + c2 - 1) + 2 * pi**2 * r**6)
              / (12 * pi * r**2 * (-c1 * r + pi * r**3 + 1) ** 3)),
    "5": dict(F=lambda h: r * h**2, h=1 / (-c1 + pi * r**2 - L(r)),
              T=pi * r**4 / 4 + r**2 * (quarter - c1 / 2) - r**2 * L(r) / 2,
              rho=(-3 * pi * (c1 - 1) * r**4 - (2 * c1**2 - 3 * c1 + 20 * pi * c2 + 2) * r**2
                   + ((3 - 4 * c1) * r**2 + 4 * c2 - 3 * pi * r**4) * L(r) + 4 * (c1 + 2) * c2
                   + pi**2 * r**6 - 2 * r**2 * L(r) ** 2)
              / (-16 * pi * r**4 * (c1 - pi * r**2 + L(r)) ** 3)),
    "6": dict(F=lambda h: r**2 * h**2, h=1 / (-c1 + pi * r**2 - r),
              T=-c1 * r**3 / 3 + pi * r**5 / 5 - r**4 / 4 + 2 * c2,
              rho=-((8 * pi * c1 - 15) * r**5 - 45 * c1 * r**4 - 40 * c1**2 * r**3 + 300 * pi * c2 * r**2
                    - 180 * c2 * r - 60 * c1 * c2 + 9 * pi * r**6)
              / (240 * pi * r**4 * (c1 - pi * r**2 + r) ** 3)),
    "7": dict(F=lambda h: r**3 * h**2, h=2 / (-2 * c1 + 2 * pi * r**2 - r**2),
              T=-c1 * r**4 / 4 + r**6 * (pi / 6 - sp.Rational(1, 12)) + sp.Rational(3, 4) * c2,
              rho=(7 * (2 * pi - 1) * c1 * r**6 - 18 * c1**2 * r**4 + 15 * (1 - 2 * pi) * c2 * r**2
                   + 6 * c1 * c2 - (1 - 2 * pi) ** 2 * r**8)
              / (12 * pi * r**4 * ((2 * pi - 1) * r**2 - 2 * c1) ** 3)),
    "8": dict(F=lambda h: h**2 / r, h=2 * r**2 / D8,
              T=-c1 * L(r) + pi * r**2 / 2 - 1 / (4 * r**2) + sp.Rational(3, 4) * c2,
              rho=(D8 * (4 * c1 * r**2 + 3 * c2 * r**2 + 12 * c1 * r**2 * L(r) - 10 * pi * r**4 + 1)
                   - 2 * (8 * pi * r**3 - 4 * c1 * r) * (c2 * r**3 + 4 * c1 * r**3 * L(r) - 2 * pi * r**5 + r))
              / (4 * pi * r**2 * D8**3)),
    "9": dict(F=lambda h: s * h**2, h=s / (-c1 * s + pi * r**sp.Rational(5, 2) + 2),
              T=-2 * c1 * r**sp.Rational(3, 2) / 3 + 2 * pi * r**sp.Rational(7, 2) / 7 + 2 * r,
              rho=(-7 * c1**2 * r**sp.Rational(3, 2) - 34 * pi * c1 * r**sp.Rational(7, 2) - 105 * pi * c2 * r**2
                   + 42 * c1 * r + 21 * c1 * c2 + 9 * pi**2 * r**sp.Rational(11, 2) + 126 * pi * r**3 - 84 * s)
              / (84 * pi * r**sp.Rational(5, 2) * (-c1 * s + pi * r**sp.Rational(5, 2) + 2) ** 3)),
    "10": dict(F=lambda h: r**sp.Rational(3, 4) * h**2, h=q / (-c1 * q + pi * r**sp.Rational(9, 4) + 4),
               T=-4 * c1 * r**sp.Rational(7, 4) / 7 + 4 * pi * r**sp.Rational(15, 4) / 15 + 8 * r**sp.Rational(3, 2) / 3,
               rho=(440 * c1 * r**sp.Rational(7, 4) - 525 * pi * c2 * r**sp.Rational(9, 4) - 118 * pi * c1 * r**4
                    - 45 * c1**2 * r**2 + 105 * c1 * c2 * q - 210 * c2 - 1120 * r**sp.Rational(3, 2)
                    + 616 * pi * r**sp.Rational(15, 4) + 35 * pi**2 * r**6)
               / (420 * pi * r**sp.Rational(7, 2) * (-c1 * q + pi * r**sp.Rational(9, 4) + 4) ** 3)),
}

POINTS = [sp.Rational(17, 10), sp.Rational(23, 10), sp.Rational(31, 10), 5]
PARAMS = [(sp.Rational(7, 10), sp.Rational(13, 10)), (7, 1), (0, 1), (-3, 2)]


def numeric_zero(expr):
    worst = 0.0
    for a, b in PARAMS:
        for x in POINTS:
            val = abs(complex(sp.N(expr.subs({c1: a, c2: b, r: x}), 30)))
            worst = max(worst, val)
    return worst


def check(name, row):
    h = row["h"]
    F = row["F"](h)
    hode = numeric_zero(F - (2 * pi * r**3 * h**2 + r**2 * sp.diff(h, r)))
    antider = numeric_zero(sp.diff(row["T"], r) - F / h**3)
    M = h**2 / r * (c2 - row["T"])
    cont = numeric_zero((sp.diff(M, r) / (4 * pi * r**2) - row["rho"]) * r**4)
    ok = max(hode, antider, cont) < 1e-20
    print(f"row {name:>9}: h-ode {hode:.1e}  antiderivative {antider:.1e}  continuity {cont:.1e}  "
          f"{'ok' if ok else 'FAIL'}")
    return ok


def main():
    results = {name: check(name, row) for name, row in ROWS.items()}
    typeset = dict(ROWS["2"], rho=G12 / (8 * pi * r**4 * (r**2 - 1) * Y2**3))
    typeset_ok = check("2-typeset", typeset)
    if not typeset_ok:
        print("row 2 as typeset: density sign disagrees with M'/(4 pi r^2)")
    return 0 if all(results.values()) and not typeset_ok else 1


if __name__ == "__main__":
    sys.exit(main())
