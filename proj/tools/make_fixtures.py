#!/usr/bin/env python3
"""Writes generator fixtures for SL_n(2) = PSL_n(2) acting on the nonzero
vectors of F_2^n. Vector v (an n-bit integer) is point v. Generators: the
transvection e_2 -> e_1 + e_2 and the cyclic shift of the basis."""

import sys
from pathlib import Path


def apply(columns, v):
    out = 0
    for j, col in enumerate(columns):
        if v >> j & 1:
            out ^= col
    return out


def cycles(columns, n):
    seen = set()
    parts = []
    for start in range(1, 2 ** n):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        w = apply(columns, start)
        while w != start:
            cyc.append(w)
            seen.add(w)
            w = apply(columns, w)
        if len(cyc) > 1:
            parts.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(parts)


def fixture(n):
    basis = [1 << j for j in range(n)]
    transvection = list(basis)
    transvection[1] = basis[0] ^ basis[1]
    shift = [basis[(j + 1) % n] for j in range(n)]
    lines = [
        f"# SL_{n}(2) on the {2 ** n - 1} nonzero vectors of F_2^{n}",
        f"degree {2 ** n - 1}",
        cycles(transvection, n),
        cycles(shift, n),
    ]
    return "\n".join(lines) + "\n"


def main(argv):
    out = Path(argv[1]) if len(argv) > 1 else Path(__file__).resolve().parent.parent / "data"
    for n in (9, 10):
        (out / f"psl{n}_2.txt").write_text(fixture(n))


if __name__ == "__main__":
    main(sys.argv)
