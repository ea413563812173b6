"""Plain-text serialization of cone programs for external cross-checking.

Format (whitespace separated, '#' comments allowed):

    CONIC 1
    dims <rows> <cols> <nnz>
    cones <spec> ...        # z<k> zero, l<k> nonneg, q<k> second-order, s<k> psd side k
    c <j> <value>           # one line per nonzero objective entry
    b <i> <value>           # one line per nonzero rhs entry
    A <i> <j> <value>       # COO triplets
    end

Indices are 0-based; PSD rows use the scaled lower-triangle vectorization.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .cones import Nonneg, Psd, SecondOrder, Zero
from .solver import ConicProblem


def _cone_token(c) -> str:
    if isinstance(c, Zero):
        return f"z{c.dim}"
    if isinstance(c, Nonneg):
        return f"l{c.dim}"
    if isinstance(c, SecondOrder):
        return f"q{c.dim}"
    return f"s{c.side}"


def _parse_cone(tok: str):
    kind, num = tok[0], int(tok[1:])
    if kind == "z":
        return Zero(num)
    if kind == "l":
        return Nonneg(num)
    if kind == "q":
        return SecondOrder(num)
    if kind == "s":
        return Psd(num)
    raise ValueError(f"unknown cone token {tok!r}")


def dumps(problem: ConicProblem) -> str:
    A = problem.A.tocoo()
    lines = ["CONIC 1",
             f"dims {problem.num_rows} {problem.num_vars} {A.nnz}",
             "cones " + " ".join(_cone_token(c) for c in problem.cones)]
    for j, v in enumerate(problem.c):
        if v != 0.0:
            lines.append(f"c {j} {float(v)!r}")
    for i, v in enumerate(problem.b):
        if v != 0.0:
            lines.append(f"b {i} {float(v)!r}")
    order = np.lexsort((A.col, A.row))
    for k in order:
        lines.append(f"A {A.row[k]} {A.col[k]} {float(A.data[k])!r}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def loads(text: str) -> ConicProblem:
    rows = cols = None
    cones = []
    c = b = None
    triplets: list[tuple[int, int, float]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "CONIC":
            if parts[1] != "1":
                raise ValueError(f"unsupported format version {parts[1]}")
        elif tag == "dims":
            rows, cols = int(parts[1]), int(parts[2])
            c = np.zeros(cols)
            b = np.zeros(rows)
        elif tag == "cones":
            cones = [_parse_cone(tok) for tok in parts[1:]]
        elif tag == "c":
            c[int(parts[1])] = float(parts[2])
        elif tag == "b":
            b[int(parts[1])] = float(parts[2])
        elif tag == "A":
            triplets.append((int(parts[1]), int(parts[2]), float(parts[3])))
        elif tag == "end":
            break
        else:
            raise ValueError(f"unknown line tag {tag!r}")
    if rows is None:
        raise ValueError("missing dims line")
    i, j, v = zip(*triplets) if triplets else ((), (), ())
    A = sp.coo_matrix((v, (i, j)), shape=(rows, cols)).tocsc()
    return ConicProblem(c, A, b, tuple(cones))


def dump(problem: ConicProblem, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(problem))


def load(path) -> ConicProblem:
    with open(path) as fh:
        return loads(fh.read())
