#!/usr/bin/env python3
"""Independent pins for HH^0 / HH^1 of small bound quiver algebras.

Each algebra is given by a basis with endpoint metadata and a structure-
constant table.  Two independent computations must agree:

  * bar:      derivations modulo inner derivations on the full algebra
              (hh1 = dim Der - (dim A - dim Z), hh0 = dim Z)
  * reduced:  the Hochschild complex relative to the vertex-span semisimple
              subalgebra, C^0 -> C^1 -> C^2 with radical-indexed cochains

Expected values:
  Kronecker           hh0 = 1  hh1 = 3
  A3 path             hh0 = 1  hh1 = 0
  D4 star (tree)      hh0 = 1  hh1 = 0
  commutative square  hh0 = 1  hh1 = 0
  squid(2,(1,1))      hh0 = 1  hh1 = 1   dim 10
  squid(3,(1,1,1),(1))          hh1 = 0   dim 13
  squid(3,(2,1,1),(1))          hh1 = 0   dim 17
"""

from fractions import Fraction

import sympy as sp


class Alg:
    """basis[i] = (src, tgt, length); mult[(i, j)] = [(k, coeff), ...]"""

    def __init__(self, nv, basis, mult):
        self.nv = nv
        self.basis = basis
        self.mult = mult

    def dim(self):
        return len(self.basis)

    def mul(self, i, j):
        return self.mult.get((i, j), [])


def path_algebra(nv, arrows):
    """arrows: list of (src, tgt).  Acyclic quivers only."""
    basis = [(v, v, 0) for v in range(nv)]
    words = {i: () for i in range(nv)}  # basis index -> arrow word
    frontier = []
    for a, (s, t) in enumerate(arrows):
        basis.append((s, t, 1))
        words[len(basis) - 1] = (a,)
        frontier.append(len(basis) - 1)
    while frontier:
        nxt = []
        for i in frontier:
            s, t, l = basis[i]
            for a, (as_, at) in enumerate(arrows):
                if as_ == t:
                    basis.append((s, at, l + 1))
                    words[len(basis) - 1] = words[i] + (a,)
                    nxt.append(len(basis) - 1)
        frontier = nxt
    index = {words[i]: i for i in range(len(basis))}
    mult = {}
    for i, (si, ti, li) in enumerate(basis):
        for j, (sj, tj, lj) in enumerate(basis):
            if ti != sj:
                continue
            if li == 0:
                mult[(i, j)] = [(j, Fraction(1))]
            elif lj == 0:
                mult[(i, j)] = [(i, Fraction(1))]
            else:
                w = words[i] + words[j]
                if w in index:
                    mult[(i, j)] = [(index[w], Fraction(1))]
    return Alg(nv, basis, mult)


def square_algebra():
    """1 -> 2 (a, c), 2 -> 3 wait: commutative square: 1->2 via a, 1->3 via c,
    2->4 via b, 3->4 via d, relation ab = cd; normal form keeps ab."""
    nv = 4
    basis = [(v, v, 0) for v in range(nv)]
    names = {}
    for nm, (s, t) in [("a", (0, 1)), ("c", (0, 2)), ("b", (1, 3)), ("d", (2, 3))]:
        basis.append((s, t, 1))
        names[nm] = len(basis) - 1
    basis.append((0, 3, 2))  # ab (= cd)
    names["ab"] = len(basis) - 1
    mult = {}
    for v in range(nv):
        for j, (sj, tj, _) in enumerate(basis):
            if sj == v:
                mult[(v, j)] = [(j, Fraction(1))]
            if tj == v:
                mult[(j, v)] = [(j, Fraction(1))]
    mult[(names["a"], names["b"])] = [(names["ab"], Fraction(1))]
    mult[(names["c"], names["d"])] = [(names["ab"], Fraction(1))]
    return Alg(nv, basis, mult)


def squid(t, p, tau):
    """Heads 1, 2 with arrows a1, a2; arm i of length p[i] hangs off head 2.
    Relations a1 b1 = 0, a2 b2 = 0, a2 b_i = tau_i a1 b_i (i >= 3).
    Vertices: 0, 1 heads, then arm vertices in arm-major order."""
    vid = {}
    nv = 2
    for i in range(t):
        for j in range(1, p[i] + 1):
            vid[(i, j)] = nv
            nv += 1
    basis = [(v, v, 0) for v in range(nv)]
    key = {}

    def add(k, s, tg, l):
        basis.append((s, tg, l))
        key[k] = len(basis) - 1

    add(("a", 1), 0, 1, 1)
    add(("a", 2), 0, 1, 1)
    # arm segments ("arm", i, j1, j2): j1 = 0 starts at head 2
    for i in range(t):
        for j1 in range(0, p[i]):
            for j2 in range(j1 + 1, p[i] + 1):
                s = 1 if j1 == 0 else vid[(i, j1)]
                add(("arm", i, j1, j2), s, vid[(i, j2)], j2 - j1)
    # canonical head composites: arm 0 via a2, arms >= 1 via a1
    for i in range(t):
        k = 2 if i == 0 else 1
        for j in range(1, p[i] + 1):
            add(("head", k, i, j), 0, vid[(i, j)], 1 + j)

    def head_junction(k, i):
        """a_k . b_i...  ->  (coeff, canonical head index) or None"""
        if i == 0:
            return None if k == 1 else (Fraction(1), 2)
        if i == 1:
            return (Fraction(1), 1) if k == 1 else None
        return (Fraction(1), 1) if k == 1 else (Fraction(tau[i - 2]), 1)

    mult = {}
    for v in range(nv):
        for j, (sj, tj, _) in enumerate(basis):
            if sj == v:
                mult[(v, j)] = [(j, Fraction(1))]
            if tj == v:
                mult[(j, v)] = [(j, Fraction(1))]
    for ka, ia in key.items():
        for kb, ib in key.items():
            if basis[ia][1] != basis[ib][0]:
                continue
            if ka[0] == "a" and kb[0] == "arm" and kb[2] == 0:
                r = head_junction(ka[1], kb[1])
                if r:
                    mult[(ia, ib)] = [(key[("head", r[1], kb[1], kb[3])], r[0])]
            elif ka[0] == "arm" and kb[0] == "arm" and ka[1] == kb[1] and ka[3] == kb[2]:
                mult[(ia, ib)] = [(key[("arm", ka[1], ka[2], kb[3])], Fraction(1))]
            elif ka[0] == "head" and kb[0] == "arm" and ka[2] == kb[1] and ka[3] == kb[2]:
                mult[(ia, ib)] = [(key[("head", ka[1], ka[2], kb[3])], Fraction(1))]
    return Alg(nv, basis, mult)


def bar_hh(alg):
    n = alg.dim()
    # center: a = sum z_k b_k with b_i a = a b_i for all i (unknowns = rows)
    zmat = sp.zeros(n, n * n)
    for k in range(n):
        for i in range(n):
            for m, c in alg.mul(i, k):
                zmat[k, i * n + m] += sp.Rational(c)
            for m, c in alg.mul(k, i):
                zmat[k, i * n + m] -= sp.Rational(c)
    dim_z = n - zmat.rank()

    # derivations: f(b_i b_j) = b_i f(b_j) + f(b_i) b_j; unknowns F[j][k]
    cols = {}
    data = []

    def col(i, j, k):
        if (i, j, k) not in cols:
            cols[(i, j, k)] = len(cols)
        return cols[(i, j, k)]

    trip = []
    for i in range(n):
        for j in range(n):
            # every pair constrains f, composable or not (product then zero)
            for m, c in alg.mul(i, j):  # -f(b_i b_j), spread over coordinates
                for k in range(n):
                    trip.append((m * n + k, col(i, j, k), -sp.Rational(c)))
            for k in range(n):  # b_i f(b_j) + f(b_i) b_j
                for m, c in alg.mul(i, k):
                    trip.append((j * n + k, col(i, j, m), sp.Rational(c)))
                for m, c in alg.mul(k, j):
                    trip.append((i * n + k, col(i, j, m), sp.Rational(c)))
    dmat = sp.zeros(n * n, max(len(cols), 1))
    for r, c, v in trip:
        dmat[r, c] += v
    dim_der = n * n - dmat.rank()
    return dim_z, dim_der - (n - dim_z)


def reduced_hh(alg):
    n = alg.dim()
    rad = [i for i in range(n) if alg.basis[i][2] >= 1]
    par = {}  # (s, t) -> basis indices parallel to it
    for k in range(n):
        par.setdefault((alg.basis[k][0], alg.basis[k][1]), []).append(k)

    # C0: unknowns u_k on basis with src == tgt; d0(u)(p) = p u - u p
    c0 = [k for k in range(n) if alg.basis[k][0] == alg.basis[k][1]]
    c1cols = {}
    for p in rad:
        for c in par.get((alg.basis[p][0], alg.basis[p][1]), []):
            c1cols[(p, c)] = len(c1cols)
    d0 = sp.zeros(max(len(c0), 1), max(len(c1cols), 1))
    for r, k in enumerate(c0):
        for p in rad:
            for m, c in alg.mul(p, k):
                d0[r, c1cols[(p, m)]] += sp.Rational(c)
            for m, c in alg.mul(k, p):
                d0[r, c1cols[(p, m)]] -= sp.Rational(c)
    hh0 = len(c0) - d0.rank()

    # C1 unknowns x_(p,b) = coefficient of b in f(p); d1 into composable pairs
    unk = {}
    for p in rad:
        for b in par.get((alg.basis[p][0], alg.basis[p][1]), []):
            unk[(p, b)] = len(unk)
    c2cols = {}
    trip = []
    for p in rad:
        for q in rad:
            if alg.basis[p][1] != alg.basis[q][0]:
                continue
            vals = par.get((alg.basis[p][0], alg.basis[q][1]), [])
            for c in vals:
                c2cols[(p, q, c)] = len(c2cols)
            # p f(q): unknown (q, b) -> mul(p, b)
            for b in par.get((alg.basis[q][0], alg.basis[q][1]), []):
                for m, c in alg.mul(p, b):
                    trip.append((unk[(q, b)], (p, q, m), sp.Rational(c)))
            # f(p) q: unknown (p, b) -> mul(b, q)
            for b in par.get((alg.basis[p][0], alg.basis[p][1]), []):
                for m, c in alg.mul(b, q):
                    trip.append((unk[(p, b)], (p, q, m), sp.Rational(c)))
            # -f(pq)
            for r, c in alg.mul(p, q):
                for b in par.get((alg.basis[r][0], alg.basis[r][1]), []):
                    trip.append((unk[(r, b)], (p, q, b), -sp.Rational(c)))
    d1 = sp.zeros(max(len(unk), 1), max(len(c2cols), 1))
    for r, key, v in trip:
        d1[r, c2cols[key]] += v
    hh1 = (len(unk) - d1.rank()) - d0.rank()
    return hh0, hh1


def report(name, alg):
    z, h1b = bar_hh(alg)
    h0r, h1r = reduced_hh(alg)
    ok = (z == h0r) and (h1b == h1r)
    print(f"{name:24s} dim {alg.dim():3d}  bar: hh0={z} hh1={h1b}  "
          f"reduced: hh0={h0r} hh1={h1r}  agree={ok}")
    assert ok


def main():
    report("Kronecker", path_algebra(2, [(0, 1), (0, 1)]))
    report("A3 path", path_algebra(3, [(0, 1), (1, 2)]))
    report("D4 star", path_algebra(4, [(0, 1), (0, 2), (0, 3)]))
    report("commutative square", square_algebra())
    report("squid(2,(1,1))", squid(2, [1, 1], []))
    report("squid(3,(1,1,1),(1))", squid(3, [1, 1, 1], [Fraction(1)]))
    report("squid(3,(2,1,1),(1))", squid(3, [2, 1, 1], [Fraction(1)]))
    report("squid(2,(2,2))", squid(2, [2, 2], []))


if __name__ == "__main__":
    main()
