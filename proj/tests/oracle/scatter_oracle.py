"""Independent reference computations for rank-2 scattering diagrams.

Plain-dict Laurent series over Python integers; no code shared with the C++
library. Used to derive the constants frozen into the C++ test suites.
"""
from fractions import Fraction
from math import gcd, atan2, comb
import sys


def delta(m):
    return m[0] + m[1]


def trunc(f, D):
    return {m: c for m, c in f.items() if c != 0 and delta(m) <= D}


def mul(f, g, D):
    out = {}
    for m, a in f.items():
        for n, b in g.items():
            k = (m[0] + n[0], m[1] + n[1])
            if delta(k) <= D:
                out[k] = out.get(k, 0) + a * b
    return trunc(out, D)


def add(f, g, D):
    out = dict(f)
    for m, c in g.items():
        out[m] = out.get(m, 0) + c
    return trunc(out, D)


def power(f, e, D):
    # f = 1 + t with t of positive degree
    if e >= 0:
        r = {(0, 0): 1}
        for _ in range(e):
            r = mul(r, f, D)
        return r
    t = {m: c for m, c in f.items() if m != (0, 0)}
    neg = {m: -c for m, c in t.items()}
    inv = {(0, 0): 1}
    term = {(0, 0): 1}
    for _ in range(max(D, 0) + 1):
        term = mul(term, neg, D)
        if not term:
            break
        inv = add(inv, term, D)
    return power(inv, -e, D)


def omega(a, b):
    return a[0] * b[1] - a[1] * b[0]


def wall_fn(u, coeffs, D):
    f = {(0, 0): 1}
    for j, c in enumerate(coeffs, 1):
        m = (j * u[0], j * u[1])
        if c and delta(m) <= D:
            f[m] = c
    return f


def cross(u, fw, sign, f, D):
    out = {}
    for m, c in f.items():
        e = sign * omega(u, m)
        g = mul({m: c}, power(fw, e, D), D)
        out = add(out, g, D)
    return out


def ang(r):
    a = atan2(r[1], r[0])
    return a if a >= 0 else a + 2 * 3.141592653589793


class Diagram:
    def __init__(self, b, c, k):
        self.b, self.c, self.k = b, c, k
        # rays: list of (ray_dir, wall_dir m0, fn)
        fx = power({(0, 0): 1, (1, 0): 1}, c, k)
        fy = power({(0, 0): 1, (0, 1): 1}, b, k)
        self.rays = {}
        if c:
            self.rays[(1, 0)] = ((1, 0), fx)
            self.rays[(-1, 0)] = ((1, 0), fx)
        if b:
            self.rays[(0, 1)] = ((0, 1), fy)
            self.rays[(0, -1)] = ((0, 1), fy)

    def ordered(self):
        return sorted(self.rays.items(), key=lambda kv: ang(kv[0]))

    def loop(self, f, D, start_angle=-1e-9):
        # ccw loop starting just below angle 0
        out = f
        for r, (u, fw) in self.ordered():
            s = 1 if (r[0] == -u[0] and r[1] == -u[1]) else -1
            out = cross(u, fw, s, out, D)
        return out

    def complete(self):
        k = self.k
        for n in range(2, k + 1):
            lx = self.loop({(1, 0): 1}, n + 1)
            ly = self.loop({(0, 1): 1}, n + 1)
            for i in range(0, n + 1):
                m0 = (i, n - i)
                dx = lx.get((1 + m0[0], m0[1]), 0)
                dy = ly.get((m0[0], 1 + m0[1]), 0)
                # dx = a*omega(m0,(1,0)) = -a*m0[1]; dy = a*m0[0]
                if dx == 0 and dy == 0:
                    continue
                if m0[1] != 0:
                    a = Fraction(-dx, m0[1])
                    if m0[0] != 0:
                        assert a == Fraction(dy, m0[0]), (n, m0, dx, dy)
                else:
                    a = Fraction(dy, m0[0])
                assert m0[0] and m0[1], ("axis deviation", m0)
                g = gcd(*m0)
                u = (m0[0] // g, m0[1] // g)
                cc = g * a
                assert cc.denominator == 1
                cc = int(cc)
                # outgoing ray sits at -u; ccw crossing there has sign +1
                cc = -cc
                r = (-u[0], -u[1])
                old = self.rays.get(r, (u, {(0, 0): 1}))[1]
                new = mul(old, {(0, 0): 1, m0: cc}, k)
                self.rays[r] = (u, new)
        return self


def show(f):
    return " + ".join(f"{c}*{m}" for m, c in sorted(f.items(), key=lambda kv: (delta(kv[0]), kv[0])))


if __name__ == "__main__":
    d = Diagram(1, 1, 8).complete()
    for r, (u, f) in d.ordered():
        print(r, show(f))
    print("loop x", show(d.loop({(1, 0): 1}, 9)))
    print("loop y", show(d.loop({(0, 1): 1}, 9)))


# ---------------------------------------------------------------------------
# Broken lines with explicit rational geometry.

def support_rays(d):
    """(ray_point r, wall dir u, univariate coeffs of f) for nontrivial walls."""
    out = []
    for r, (u, f) in d.ordered():
        if len(f) > 1:
            out.append((r, u, f))
    return out


def fpow_coeffs(u, f, e, D):
    """Coefficients a_j of f^e in powers of z^u, j*delta(u) <= D."""
    p = power(f, e, D)
    out = {}
    for m, c in p.items():
        j = m[0] // u[0] if u[0] else m[1] // u[1]
        out[j] = c
    return out


def cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def theta_local(d, p, Q, D=None):
    """iota_Q(theta_p) via backward broken-line search from the point Q."""
    k = d.k
    if D is None:
        D = k + min(0, delta(p))
    if p == (0, 0):
        return {(0, 0): 1}
    rays = support_rays(d)
    Qp = (Fraction(Q[0]), Fraction(Q[1]))
    result = {}

    def walk(P, m, on_ray):
        # returns sum of coefficient products of backward completions to p
        if m == p and False:
            pass
        if m == (0, 0):
            return 1 if m == p else 0
        best = None
        for idx, (r, u, f) in enumerate(rays):
            if idx == on_ray:
                continue
            den = cross2(m, r)
            if den == 0:
                continue
            s = Fraction(cross2(r, P), den)
            t = Fraction(cross2(P, m), cross2(r, m))
            if s > 0 and t > 0:
                if best is None or s < best[0]:
                    best = (s, idx)
        if best is None:
            return 1 if m == p else 0
        s, idx = best
        r, u, f = rays[idx]
        P2 = (P[0] + s * m[0], P[1] + s * m[1])
        e = abs(omega(u, m))
        coeffs = fpow_coeffs(u, f, e, k)
        total = 0
        for j, a in coeffs.items():
            m2 = (m[0] - j * u[0], m[1] - j * u[1])
            q = (m2[0] - p[0], m2[1] - p[1])
            if q[0] < 0 or q[1] < 0:
                continue
            total += a * walk(P2, m2, idx)
        return total

    for i in range(0, D - delta(p) + 1):
        for a in range(0, i + 1):
            m = (p[0] + a, p[1] + i - a)
            w = walk(Qp, m, None)
            if w:
                result[m] = w
    return result


def chamber_reps(d):
    rs = [r for r, u, f in support_rays(d)]
    if not rs:
        return [(1, 1)]
    reps = []
    for i, a in enumerate(rs):
        b = rs[(i + 1) % len(rs)]
        c = cross2(a, b)
        if len(rs) == 1:
            v = (-a[0], -a[1])
        elif c > 0:
            v = (a[0] + b[0], a[1] + b[1])
        elif c == 0:
            v = (-a[1], a[0])
        else:
            v = (-(a[0] + b[0]), -(a[1] + b[1]))
        g = gcd(*v)
        reps.append((v[0] // g, v[1] // g))
    return reps


# ---------------------------------------------------------------------------
# Rank-2 cluster variables by the exchange recursion with sympy-free
# rational-function arithmetic (polynomial division via sympy is avoided;
# we use exact Laurent division implemented with dicts).

def laurent_div(N, Dn):
    """Exact division of Laurent polynomials (dict exponent->int)."""
    import sympy
    x, y = sympy.symbols("x y")
    def to_expr(f):
        return sum(c * x**m[0] * y**m[1] for m, c in f.items())
    q = sympy.cancel(to_expr(N) / to_expr(Dn))
    num, den = sympy.fraction(sympy.together(q))
    num = sympy.Poly(sympy.expand(num), x, y)
    den = sympy.Poly(sympy.expand(den), x, y)
    assert len(den.terms()) == 1, "not Laurent"
    (dm, dc), = den.terms()
    out = {}
    for mon, c in num.terms():
        assert c % dc == 0
        out[(mon[0] - dm[0], mon[1] - dm[1])] = int(c // dc)
    return out


def cluster_sequence(b, c, depth):
    """Variables a_{1-depth} .. a_{2+depth}; a1 = x, a2 = y, a_{n-1}a_{n+1} = 1 + a_n^{e_n}."""
    import sympy
    x, y = sympy.symbols("x y")
    seq = {1: x, 2: y}
    def e(n):
        return c if n % 2 == 0 else b
    for n in range(2, 2 + depth):
        seq[n + 1] = sympy.cancel((1 + seq[n] ** e(n)) / seq[n - 1])
    for n in range(1, 1 - depth, -1):
        seq[n - 1] = sympy.cancel((1 + seq[n] ** e(n)) / seq[n + 1])
    out = {}
    for n, expr in seq.items():
        num, den = sympy.fraction(sympy.together(expr))
        N = {m: int(cc) for m, cc in sympy.Poly(sympy.expand(num), x, y).terms()}
        Dd = {m: int(cc) for m, cc in sympy.Poly(sympy.expand(den), x, y).terms()}
        (dm, dc), = Dd.items()
        out[n] = {(m[0] - dm[0], m[1] - dm[1]): cc // dc for m, cc in N.items()}
    return out


def gvec(f):
    return (min(m[0] for m in f), min(m[1] for m in f))


def cluster_sequence_walls(b, c, depth):
    """Exchange law matched to the diagram walls: x1 x1' = (1+x2)^b, x2 x2' = (1+x1)^c."""
    import sympy
    x, y = sympy.symbols("x y")
    seq = {1: x, 2: y}
    def e(n):
        return b if n % 2 == 0 else c
    for n in range(2, 2 + depth):
        seq[n + 1] = sympy.cancel((1 + seq[n]) ** e(n) / seq[n - 1])
    for n in range(1, 1 - depth, -1):
        seq[n - 1] = sympy.cancel((1 + seq[n]) ** e(n) / seq[n + 1])
    out = {}
    for n, expr in seq.items():
        num, den = sympy.fraction(sympy.together(expr))
        N = {m: int(cc) for m, cc in sympy.Poly(sympy.expand(num), x, y).terms()}
        Dd = {m: int(cc) for m, cc in sympy.Poly(sympy.expand(den), x, y).terms()}
        (dm, dc), = Dd.items()
        out[n] = {(m[0] - dm[0], m[1] - dm[1]): cc // dc for m, cc in N.items()}
    return out
