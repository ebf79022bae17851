#!/usr/bin/env python3
"""Independent oracle for Hom/Ext dimensions of quiver representations.

Conventions match the library: a representation assigns to each arrow
a: s -> t a matrix M_a of shape dims[s] x dims[t] acting on row vectors;
a morphism f: M -> N is a tuple of dims_M[v] x dims_N[v] matrices with
M_a f_t = f_s N_a for every arrow.

hom(M, N) is computed as the nullspace dimension of the stacked linear
system.  For path algebras (hereditary) ext1(M, N) comes from the Euler
form:  hom - ext1 = sum_v m_v n_v - sum_a m_src n_tgt.
"""

import sympy as sp


def hom_dim(quiver, m, n):
    mdims, mmaps = m
    ndims, nmaps = n
    nv = len(mdims)
    # unknowns: entries of f_v, offset bookkeeping
    offs, total = [], 0
    for v in range(nv):
        offs.append(total)
        total += mdims[v] * ndims[v]
    if total == 0:
        return 0
    rows = []
    for (src, tgt), (ma, na) in zip(quiver, zip(mmaps, nmaps)):
        MA = sp.Matrix(mdims[src], mdims[tgt], ma) if mdims[src] * mdims[tgt] else None
        NA = sp.Matrix(ndims[src], ndims[tgt], na) if ndims[src] * ndims[tgt] else None
        # equation block: MA * f_tgt - f_src * NA = 0, entry (i, j)
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
    if not rows:
        return total
    A = sp.Matrix(rows)
    return total - A.rank()


def euler(quiver, mdims, ndims):
    e = sum(a * b for a, b in zip(mdims, ndims))
    for src, tgt in quiver:
        e -= mdims[src] * ndims[tgt]
    return e


def report(name, quiver, reps):
    print(f"== {name} ==")
    for rn, r in reps.items():
        for sn, s in reps.items():
            h = hom_dim(quiver, r, s)
            x = h - euler(quiver, r[0], s[0])
            print(f"  hom({rn},{sn}) = {h}   ext1({rn},{sn}) = {x}")


# A2: 1 -> 2
a2 = [(0, 1)]
a2_reps = {
    "P1": ((1, 1), [[1]]),
    "P2": ((0, 1), [[]]),
    "S1": ((1, 0), [[]]),
}
report("A2", a2, a2_reps)

# A3: 1 -> 2 -> 3
a3 = [(0, 1), (1, 2)]
a3_reps = {
    "P1": ((1, 1, 1), [[1], [1]]),
    "P2": ((0, 1, 1), [[], [1]]),
    "P3": ((0, 0, 1), [[], []]),
    "S2": ((0, 1, 0), [[], []]),
    "I2": ((1, 1, 0), [[1], []]),
}
report("A3", a3, a3_reps)

# Kronecker: two arrows 1 -> 2
kr = [(0, 1), (0, 1)]
kr_reps = {
    "S1": ((1, 0), [[], []]),
    "S2": ((0, 1), [[], []]),
    "P1": ((1, 2), [[1, 0], [0, 1]]),
    "R0": ((1, 1), [[1], [0]]),
    "R1": ((1, 1), [[1], [1]]),
    "PP": ((2, 3), [[1, 0, 0, 0, 1, 0], [0, 1, 0, 0, 0, 1]]),
}
report("Kronecker", kr, kr_reps)
