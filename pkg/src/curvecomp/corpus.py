"""Shipped curve/map/configuration corpus.

The JSON files under data/corpus are generated from the constants in the code
(``python -m curvecomp.corpus --write``) and checked against them in the tests,
so a hand edit that drifts from the code is caught.
"""
import json
import os
import sys
from importlib import resources
from pathlib import Path

from .counterexample import conic_equations
from .cremona import CONIC, PSI_DISPLAY, Q_DISPLAY, THETA1, THETA2, Q_alpha
from .poly import parse, to_string

ENV = "CURVECOMP_CORPUS"
ALPHAS = (0, 1, -1)
LAMBDAS = (2, 3)


def build_corpus():
    curves = {
        "cuspidal_cubic": {"equation": "x^2*z - y^3", "irreducible": True, "rational": True},
        "nodal_cubic": {"equation": "x^2*z - y^3 - y^2*z", "irreducible": True, "rational": True},
        "Q": {"equation": to_string(parse(Q_DISPLAY)), "irreducible": True, "rational": True},
        "conic": {"equation": to_string(parse(CONIC)), "irreducible": True, "rational": True},
    }
    for a in ALPHAS:
        curves[f"Q_{a}"] = {"equation": to_string(Q_alpha(a).equation), "irreducible": True, "rational": True}
    maps = {
        "theta1": {"components": list(THETA1)},
        "theta2": {"components": list(THETA2)},
        "psi": {"components": [to_string(parse(s)) for s in PSI_DISPLAY]},
        "standard_quadratic": {"components": ["y*z", "x*z", "x*y"]},
    }
    configs = {}
    for lam in LAMBDAS:
        configs[f"lambda={lam}"] = {
            "lambda": str(lam),
            "curves": {k: to_string(v) for k, v in sorted(conic_equations(lam).items())},
        }
    return {"curves": curves, "maps": maps, "configurations": configs}


def default_dir():
    env = os.environ.get(ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("curvecomp").joinpath("data/corpus")))


def load_corpus(path=None):
    """Read curves/maps/configurations/table1 from a corpus directory.

    Missing files give empty sections, so a partial corpus still works for
    the commands that do not need the absent part.
    """
    base = Path(path) if path else default_dir()
    if not base.is_dir():
        raise FileNotFoundError(f"corpus directory {base} does not exist")
    out = {}
    for key in ("curves", "maps", "configurations", "table1"):
        f = base / f"{key}.json"
        out[key] = json.loads(f.read_text()) if f.exists() else {}
    return out


def write_corpus(path):
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    for key, val in build_corpus().items():
        (path / f"{key}.json").write_text(json.dumps(val, sort_keys=True, indent=2) + "\n")
    table = resources.files("curvecomp").joinpath("data/table1.json").read_text()
    (path / "table1.json").write_text(table)


if __name__ == "__main__":
    if sys.argv[1:2] != ["--write"]:
        sys.exit("usage: python -m curvecomp.corpus --write [dir]")
    write_corpus(sys.argv[2] if len(sys.argv) > 2 else Path(__file__).parent / "data" / "corpus")
