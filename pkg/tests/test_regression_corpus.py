"""Fixed instance files checked into the repo: every algorithm must agree on
all of them, for every k in range.  Guards against representation drift."""

from pathlib import Path

import pytest

from kdiam.cli import run_algorithm
from kdiam.geometry import axis_square, load_points, load_polygon
from kdiam.graph import load_edge_list

DATA = Path(__file__).parent / "data"

CASES = [
    ("squares_small.csv", "points", None),
    ("squares_medium.csv", "points", None),
    ("graph_small.el", "graph", None),
    ("hexagon_points.csv", "points", "hexagon_points.poly.csv"),
]


@pytest.mark.parametrize("name,kind,poly", CASES,
                         ids=[c[0] for c in CASES])
def test_all_algorithms_agree(name, kind, poly):
    if kind == "graph":
        payload = load_edge_list(DATA / name)
    else:
        shape = load_polygon(DATA / poly) if poly else axis_square(1.0)
        payload = (load_points(DATA / name), shape)
    for k in range(1, 5):
        answers = {
            algo: run_algorithm(algo, kind, payload, k, 4, seed=7).answer
            for algo in ("naive", "explicit", "implicit")
        }
        assert len(set(answers.values())) == 1, (name, k, answers)
