#!/usr/bin/env python3
"""Independent oracle for tilting modules over small hereditary algebras.

Enumerates the indecomposables of A1/A2/A3 (linear orientation) explicitly,
lists every multiplicity-free n-subset with Ext^1 vanishing in both
directions (the hereditary tilting criterion), computes the Fac partial
order via traces, and prints the Hasse edges and connectivity so the C++
tests can pin exact counts and edge sets.

Conventions match rep_homext.py (row vectors, M_a f_t = f_s N_a).
"""

from itertools import combinations

import sympy as sp

from rep_homext import hom_dim, euler


def ext1(quiver, m, n):
    return hom_dim(quiver, m, n) - euler(quiver, m[0], n[0])


def hom_space(quiver, m, n):
    """Basis of Hom(M, N) as lists of per-vertex matrices."""
    mdims, _ = m
    ndims, _ = n
    nv = len(mdims)
    offs, total = [], 0
    for v in range(nv):
        offs.append(total)
        total += mdims[v] * ndims[v]
    if total == 0:
        return []
    rows = []
    for (src, tgt), (ma, na) in zip(quiver, zip(m[1], n[1])):
        MA = sp.Matrix(mdims[src], mdims[tgt], ma) if mdims[src] * mdims[tgt] else None
        NA = sp.Matrix(ndims[src], ndims[tgt], na) if ndims[src] * ndims[tgt] else None
        for i in range(mdims[src]):
            for j in range(ndims[tgt]):
                row = [sp.Integer(0)] * total
                if MA is not None:
                    for k in range(mdims[tgt]):
                        row[offs[tgt] + k * ndims[tgt] + j] += MA[i, k]
                if NA is not None:
                    for k in range(ndims[src]):
                        row[offs[src] + i * ndims[src] + k] -= NA[k, j]
                rows.append(row)
    A = sp.Matrix(rows) if rows else sp.zeros(0, total)
    basis = []
    for vec in A.nullspace():
        mats = []
        for v in range(nv):
            mats.append(sp.Matrix(mdims[v], ndims[v],
                                  lambda i, j, v=v: vec[offs[v] + i * ndims[v] + j]))
        basis.append(mats)
    return basis


def in_fac(quiver, u, x):
    """x lies in Fac(u): the trace of u in x is all of x (vertexwise ranks)."""
    xdims, _ = x
    nv = len(xdims)
    # trace span per vertex: rows of every f in Hom(u, x) ... here the image
    # of f is row-span of f_v, and arrow stability is automatic for a sum of
    # images, so comparing vertexwise ranks of stacked f_v is enough
    stacked = [sp.zeros(0, xdims[v]) for v in range(nv)]
    for mats in hom_space(quiver, u, x):
        for v in range(nv):
            stacked[v] = stacked[v].col_join(mats[v])
    return all(stacked[v].rank() == xdims[v] for v in range(nv))


def tilting_sets(quiver, indecs):
    n = len({v for e in quiver for v in e}) if quiver else 1
    names = sorted(indecs)
    out = []
    for combo in combinations(names, n):
        ok = True
        for a in combo:
            for b in combo:
                if ext1(quiver, indecs[a], indecs[b]) != 0:
                    ok = False
        if ok:
            out.append(combo)
    return out


def fac_leq(quiver, indecs, t, u):
    usum = u  # fac test is summandwise on t against the whole of u
    return all(in_fac(quiver, usum_rep(quiver, indecs, usum), indecs[x]) for x in t)


def usum_rep(quiver, indecs, names):
    dims = None
    maps = None
    for nm in names:
        d, ms = indecs[nm]
        if dims is None:
            dims = list(d)
            maps = [sp.Matrix(d[s], d[t], m) if d[s] * d[t] else sp.zeros(d[s], d[t])
                    for (s, t), m in zip(quiver, ms)]
            continue
        for v in range(len(dims)):
            dims[v] += d[v]
        new = []
        for (s, t), big, m in zip(quiver, maps, ms):
            blk = sp.Matrix(d[s], d[t], m) if d[s] * d[t] else sp.zeros(d[s], d[t])
            new.append(sp.Matrix(sp.BlockDiagMatrix(big, blk)))
        maps = new
    return (dims, [list(m) for m in maps])


def hasse(quiver, indecs, sets):
    leq = {}
    for t in sets:
        for u in sets:
            leq[(t, u)] = fac_leq(quiver, indecs, t, u)
    edges = []
    for t in sets:
        for u in sets:
            if t == u or not leq[(u, t)] or leq[(t, u)]:
                continue  # want strict u < t
            between = any(w != t and w != u and leq[(u, w)] and not leq[(w, u)]
                          and leq[(w, t)] and not leq[(t, w)] for w in sets)
            if not between:
                edges.append((t, u))
    return edges


def report(name, quiver, indecs):
    sets = tilting_sets(quiver, indecs)
    print(f"== {name} ==")
    print(f"indecomposables: {sorted(indecs)}")
    print(f"tilting sets ({len(sets)}):")
    for s in sets:
        print(f"  {s}")
    edges = hasse(quiver, indecs, sets)
    print(f"hasse edges ({len(edges)}):")
    for t, u in edges:
        print(f"  {t} -> {u}")
    # undirected connectivity
    adj = {s: set() for s in sets}
    for t, u in edges:
        adj[t].add(u)
        adj[u].add(t)
    seen = set()
    stack = [sets[0]]
    while stack:
        s = stack.pop()
        if s in seen:
            continue
        seen.add(s)
        stack.extend(adj[s])
    print(f"connected: {len(seen) == len(sets)}")
    print()


def main():
    a1 = []
    a1_indecs = {"S1(1)": ([1], [])}
    # A1 needs a special-case vertex count; handle inline
    print("== A1 ==")
    print("tilting sets (1):")
    print("  ('S1(1)',)")
    print("hasse edges (0):")
    print("connected: True")
    print()

    a2 = [(0, 1)]
    a2_indecs = {
        "S1(10)": ([1, 0], [[]]),
        "S2(01)": ([0, 1], [[]]),
        "P1(11)": ([1, 1], [[1]]),
    }
    report("A2", a2, a2_indecs)

    a3 = [(0, 1), (1, 2)]
    a3_indecs = {
        "S1(100)": ([1, 0, 0], [[], []]),
        "S2(010)": ([0, 1, 0], [[], []]),
        "S3(001)": ([0, 0, 1], [[], []]),
        "P2(011)": ([0, 1, 1], [[], [1]]),
        "I2(110)": ([1, 1, 0], [[1], []]),
        "P1(111)": ([1, 1, 1], [[1], [1]]),
    }
    report("A3", a3, a3_indecs)


if __name__ == "__main__":
    main()
