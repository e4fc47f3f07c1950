import json
import os
import subprocess
from fractions import Fraction
from pathlib import Path

import sympy as sp

DATA = Path(os.environ.get("AQS_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))
AQS = os.environ.get("AQS_BIN", "aqs")


def scalar(s):
    return sp.Rational(Fraction(s))


def load(name):
    with open(DATA / name) as f:
        return json.load(f)


def structure_constants(doc):
    """c[i][j] is the coefficient list of [e_i, e_j], 0-based."""
    n = doc["dim"]
    c = [[[sp.Integer(0)] * n for _ in range(n)] for _ in range(n)]
    for b in doc["brackets"]:
        i, j = b["i"] - 1, b["j"] - 1
        for k, v in b["coeffs"].items():
            c[i][j][int(k) - 1] = scalar(v)
            c[j][i][int(k) - 1] = -scalar(v)
    return c


def run_json(*args):
    p = subprocess.run([AQS, "--json", *args], capture_output=True, text=True)
    return p.returncode, json.loads(p.stdout)
