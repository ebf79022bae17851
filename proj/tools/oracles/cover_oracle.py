#!/usr/bin/env python3
"""Independent oracle for the Galois-covering pins frozen into test_cover.cpp.

Everything is recomputed from scratch with sympy; nothing comes from the C++
code.  Conventions match the library: representations assign to each arrow
a: s -> t a matrix of shape dims[s] x dims[t] acting on row vectors.

Setup: Kronecker base  1 --a,b--> 2  with Z/2 monodromy (a trivial, b the
generator).  Total quiver vertices are the fibre copies v0=1@e, v1=1@g,
v2=2@e, v3=2@g and the lifted arrows are

    a0: v0 -> v2     a1: v1 -> v3     b0: v0 -> v3     b1: v1 -> v2

(the lift of b at 1@h ends at 2@(h+1)).  The deck transformation g swaps the
two members of every fibre.
"""

import sympy as sp

from rep_homext import euler, hom_dim

TQ = [(0, 2), (1, 3), (0, 3), (1, 2)]  # a0, a1, b0, b1
BQ = [(0, 1), (0, 1)]                  # Kronecker a, b


def mat(rows):
    return sp.Matrix(rows)


def flat(m):
    return [m[i, j] for i in range(m.rows) for j in range(m.cols)]


def rep(dims, mats):
    return dims, [flat(m) for m in mats]


def ext1(quiver, m, n):
    return hom_dim(quiver, m, n) - euler(quiver, m[0], n[0])


def z(r, c):
    return sp.zeros(r, c)


# ---------------------------------------------------------------- total reps
P10 = rep([1, 0, 1, 1], [mat([[1]]), z(0, 1), mat([[1]]), z(0, 1)])
P11 = rep([0, 1, 1, 1], [z(0, 1), mat([[1]]), z(0, 1), mat([[1]])])
S10 = rep([1, 0, 0, 0], [z(1, 0), z(0, 0), z(1, 0), z(0, 0)])
S20 = rep([0, 0, 1, 0], [z(0, 1), z(0, 0), z(0, 0), z(0, 1)])
S21 = rep([0, 0, 0, 1], [z(0, 0), z(0, 1), z(0, 1), z(0, 0)])
# one member of the one-parameter family at delta = (1,1,1,1)
E1 = rep([1, 1, 1, 1], [mat([[1]]), mat([[1]]), mat([[1]]), mat([[1]])])
# cokernel of the socle column S20 -> P10 + P11 (quotient basis x - y at v2)
W = rep([1, 1, 1, 2], [mat([[1]]), mat([[0, 1]]), mat([[1, 0]]), mat([[-1]])])
# its deck translate
gW = rep([1, 1, 2, 1], [mat([[0, 1]]), mat([[1]]), mat([[-1]]), mat([[1, 0]])])

# ------------------------------------------------------------- base pushdown
# fibre order (v@e, v@g): base-1 blocks (v0, v1), base-2 blocks (v2, v3)


def push(dims, mats):
    bd = [dims[0] + dims[1], dims[2] + dims[3]]
    a0, a1, b0, b1 = (sp.Matrix(dims[s], dims[t], m) for (s, t), m in zip(TQ, mats))
    A = sp.zeros(bd[0], bd[1])
    B = sp.zeros(bd[0], bd[1])
    A[: dims[0], : dims[2]] = a0
    A[dims[0] :, dims[2] :] = a1
    B[: dims[0], dims[2] :] = b0
    B[dims[0] :, : dims[2]] = b1
    return rep(bd, [A, B])


def main():
    print("== structure pins ==")
    # path-count dimensions: path algebras have dim = |vertices| + |paths>=1|
    print("kronecker base dim 4, total (4 vertices, 4 arrows, no length-2) dim", 4 + 4)
    # squid(2,(1,1)): 4 vertices, arrows a1,a2,b1,b2, length-2 paths a1b2,a2b1
    print("squid(2,(1,1)) dim", 4 + 4 + 2, " Z/2 cover dim", 2 * (4 + 4 + 2))

    print("== pushdown dims ==")
    for name, r in [("P10", P10), ("P11", P11), ("S20", S20), ("E1", E1), ("W", W), ("gW", gW)]:
        mats = [sp.Matrix(r[0][s], r[0][t], m) for (s, t), m in zip(TQ, r[1])]
        pd = push(r[0], mats)
        print(f"push({name}) dims {pd[0]}")

    print("== covering property instances (hom and ext sums) ==")
    P1 = push(P10[0], [mat([[1]]), z(0, 1), mat([[1]]), z(0, 1)])
    FE = push(E1[0], [mat([[1]]), mat([[1]]), mat([[1]]), mat([[1]])])
    FS2 = push(S20[0], [z(0, 1), z(0, 0), z(0, 0), z(0, 1)])
    FS1 = push(S10[0], [z(1, 0), z(0, 0), z(1, 0), z(0, 0)])
    print("hom(F P10, F E1) =", hom_dim(BQ, P1, FE), "| upstairs split:",
          hom_dim(TQ, P10, E1), "+", hom_dim(TQ, P11, E1))
    print("hom(F S20, F P10) =", hom_dim(BQ, FS2, P1), "| upstairs split:",
          hom_dim(TQ, S20, P10), "+", hom_dim(TQ, S21, P10))
    print("ext1(F S10, F S20) =", ext1(BQ, FS1, FS2), "| upstairs split:",
          ext1(TQ, S10, S20), "+", ext1(TQ, S10, S21))

    print("== homogeneous decomposition instance ==")
    # two one-dimensional degree components of Hom(F P10, F E1)
    phi_e1 = [mat([[1, 0]]), mat([[1, 0], [0, 1]])]  # pushdown of P10 -> E1
    phi_g1 = [mat([[0, 1]]), mat([[0, 1], [1, 0]])]  # pushdown of P10 -> gE1
    rows = sp.Matrix([flat(phi_e1[0]) + flat(phi_e1[1]), flat(phi_g1[0]) + flat(phi_g1[1])])
    print("pushdown components independent:", rows.rank() == 2,
          "| hom dim downstairs", hom_dim(BQ, P1, FE))

    print("== straightening pin (nilpotent lambda = 0 branch) ==")
    # downstairs column S2 -> P1 + P1 with u1 = h_e + h_g, u2 = h_e at base-2
    h_e = mat([[1, 0]])
    h_g = mat([[0, 1]])
    u1, u2 = h_e + h_g, h_e
    lam, mu = sp.symbols("lam mu")
    sol = sp.solve(lam * u1 + mu * u2 - h_e, [lam, mu], dict=True)
    print("h_e = lam*u1 + mu*u2 solves as", sol)
    print("rewritten first entry u1 - h_e =", (u1 - h_e).tolist(), "(= h_g, degree g)")

    print("== mutation walk upstairs ==")
    # W = coker(S20 -> P10+P11): dims (1,1,1,2) -> pushdown (2,3)
    # V = coker(P10 -> W+gW): dims below
    wd, gd, pd = W[0], gW[0], P10[0]
    vd = [wd[i] + gd[i] - pd[i] for i in range(4)]
    print("coker(P10 -> W+gW) dims", vd, "-> pushdown",
          [vd[0] + vd[1], vd[2] + vd[3]])
    # injectivity of the column P10 -> W + gW, vertexwise stacked matrices
    phiW = [mat([[1]]), None, mat([[1]]), mat([[1, 0]])]   # v0, v2, v3 blocks
    psiG = [mat([[1]]), None, mat([[0, 1]]), mat([[-1]])]
    for v, (x, y) in [(0, (phiW[0], psiG[0])), (2, (phiW[2], psiG[2])), (3, (phiW[3], psiG[3]))]:
        stacked = sp.Matrix([[*x.row(0), *y.row(0)]])
        print(f"column rank at v{v}:", stacked.rank(), "of", P10[0][v])

    print("== endomorphism tables for T1 = P1 + (2,3) and its lifts ==")
    objs = {"P10": P10, "P11": P11, "W": W, "gW": gW}
    for rn, r in objs.items():
        line = []
        for sn, s in objs.items():
            line.append(f"hom({rn},{sn})={hom_dim(TQ, r, s)} ext={ext1(TQ, r, s)}")
        print("  " + " | ".join(line))
    FW = push(W[0], [mat([[1]]), mat([[0, 1]]), mat([[1, 0]]), mat([[-1]])])
    print("base: hom(P1,FW) =", hom_dim(BQ, P1, FW), " hom(FW,P1) =", hom_dim(BQ, FW, P1),
          " ext(FW,P1) =", ext1(BQ, FW, P1), " ext(P1,FW) =", ext1(BQ, P1, FW),
          " end(FW) =", hom_dim(BQ, FW, FW))


if __name__ == "__main__":
    main()
