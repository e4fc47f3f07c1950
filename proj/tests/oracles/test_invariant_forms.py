from itertools import combinations

import pytest
import sympy as sp

from common import DATA, load, run_json, structure_constants


def closed_forms_on_quotient(doc, k_idx):
    """Dimension of closed 2-forms on g that vanish when one argument lies in span(e_k, k in k_idx)."""
    n = doc["dim"]
    c = structure_constants(doc)
    pairs = [p for p in combinations(range(n), 2) if p[0] not in k_idx and p[1] not in k_idx]
    unknowns = sp.symbols(f"w0:{len(pairs)}")
    w = sp.zeros(n, n)
    for s, (a, b) in zip(unknowns, pairs):
        w[a, b], w[b, a] = s, -s

    def omega(u, v):
        return (u.T * w * v)[0, 0]

    e = [sp.eye(n)[:, i] for i in range(n)]
    br = [[sp.Matrix(c[i][j]) for j in range(n)] for i in range(n)]
    eqs = []
    for x, y, z in combinations(range(n), 3):
        eqs.append(omega(br[x][y], e[z]) - omega(br[x][z], e[y]) + omega(br[y][z], e[x]))
    m = sp.Matrix([[sp.diff(q, s) for s in unknowns] for q in eqs])
    return len(pairs) - m.rank()


@pytest.mark.parametrize("name,torus,expected", [("su2.json", [3], 1), ("su3.json", [7, 8], 2)])
def test_solution_dimension(name, torus, expected):
    dim = closed_forms_on_quotient(load(name), [t - 1 for t in torus])
    assert dim == expected
    rc, rep = run_json("invariant-forms", "--algebra", str(DATA / name), "--torus", ",".join(map(str, torus)))
    assert rc == 0
    assert rep["result"]["solution_dim"] == dim
