#!/usr/bin/env python3
"""Independent dimension oracle for squid algebras.

Builds the squid quiver S(t, p, tau), enumerates all paths (the quiver is
acyclic), spans the two-sided ideal generated by the relations a1*b1,
a2*b2, a2*bi - tau_i * a1*bi (paths compose left to right), and reports
dim = #paths - rank(ideal) via sympy's exact rational rank.

Usage: python3 squid_dim.py t p1 p2 ... [tau...]
"""
import sys
from fractions import Fraction

import sympy


def build_squid(t, arms, tau):
    vertices = ["1", "2"]
    arrows = []  # (name, src, tgt)
    arrows.append(("a1", "1", "2"))
    arrows.append(("a2", "1", "2"))
    for i in range(1, t + 1):
        for j in range(1, arms[i - 1] + 1):
            vertices.append(f"{i}.{j}")
        if arms[i - 1] >= 1:
            arrows.append((f"b{i}", "2", f"{i}.1"))
        for j in range(1, arms[i - 1]):
            arrows.append((f"c{i}.{j}", f"{i}.{j}", f"{i}.{j+1}"))

    relations = []  # list of {path-tuple: coeff}
    for i in range(1, t + 1):
        if arms[i - 1] == 0:
            continue
        if i == 1:
            relations.append({("a1", "b1"): Fraction(1)})
        elif i == 2:
            relations.append({("a2", "b2"): Fraction(1)})
        else:
            relations.append({("a2", f"b{i}"): Fraction(1),
                              ("a1", f"b{i}"): -tau[i - 3]})
    return vertices, arrows, relations


def all_paths(vertices, arrows):
    out = {}
    for name, s, tgt in arrows:
        out.setdefault(s, []).append((name, tgt))
    paths = [((), v, v) for v in vertices]  # (arrow names, src, tgt)
    frontier = list(paths)
    while frontier:
        nxt = []
        for arrs, s, tgt in frontier:
            for name, t2 in out.get(tgt, []):
                p = (arrs + (name,), s, t2)
                nxt.append(p)
        paths.extend(nxt)
        frontier = nxt
    return paths


def squid_dims(t, arms, tau):
    vertices, arrows, relations = build_squid(t, arms, tau)
    paths = all_paths(vertices, arrows)
    index = {p: i for i, p in enumerate(paths)}
    src_of = {p: p[1] for p in paths}
    tgt_of = {p: p[2] for p in paths}
    arrow_tgt = {name: tg for name, _, tg in arrows}
    arrow_src = {name: s for name, s, _ in arrows}

    def rel_endpoints(rel):
        some = next(iter(rel))
        return arrow_src[some[0]], arrow_tgt[some[-1]]

    rows = []
    for rel in relations:
        rs, rt = rel_endpoints(rel)
        for u in paths:
            if tgt_of[u] != rs:
                continue
            for v in paths:
                if src_of[v] != rt:
                    continue
                row = {}
                for mono, c in rel.items():
                    full = (u[0] + mono + v[0], u[1], v[2])
                    row[index[full]] = row.get(index[full], 0) + c
                rows.append(row)
    if rows:
        m = sympy.zeros(len(rows), len(paths))
        for r, row in enumerate(rows):
            for c, val in row.items():
                m[r, c] = sympy.Rational(val)
        rank = m.rank()
    else:
        rank = 0
    return len(paths), rank, len(paths) - rank


def main():
    cases = [
        (2, [1, 1], []),
        (3, [1, 1, 1], [Fraction(5)]),
        (3, [2, 1, 1], [Fraction(2)]),
        (2, [0, 0], []),
        (4, [1, 1, 1, 1], [Fraction(2), Fraction(3)]),
        (3, [2, 2, 1], [Fraction(7)]),
    ]
    for t, arms, tau in cases:
        npaths, rank, dim = squid_dims(t, arms, tau)
        formula = 4 + 3 * sum(arms) + sum(p * (p - 1) // 2 for p in arms)
        print(f"squid({t}, {arms}, {[str(x) for x in tau]}): "
              f"paths={npaths} rank={rank} dim={dim} formula={formula}")


if __name__ == "__main__":
    main()
