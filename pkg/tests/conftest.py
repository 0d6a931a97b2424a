from __future__ import annotations

import json

import pytest

from gaugecolor import color_code, simplicial


def miscolored_lattice_json() -> str:
    """Level-1 triangle lattice with one boundary vertex recolored to clash with a neighbour."""
    data = json.loads(simplicial.to_json(simplicial.build_fractal(2, 1)))
    v = next(v for v in data["vertices"] if v["boundary"])
    v["color"] = (v["color"] + 1) % 3
    return json.dumps(data)


def truncated_stabilizer_bundle() -> str:
    """The 15-qubit stabilizer code with the last qubit dropped from its first X stabilizer row."""
    code_a, _ = color_code.fifteen_qubit_pair()
    data = json.loads(color_code.to_bundle(code_a))
    row = data["matrices"]["stab_x"][0]
    i = row.rindex("1")
    data["matrices"]["stab_x"][0] = row[:i] + "0" + row[i + 1:]
    return json.dumps(data)


def perturbed_T(L: simplicial.ColoredComplex) -> list[int]:
    """Bipartition class with one qubit swapped for one from the other class."""
    T, Tc = simplicial.bipartition_indices(L)
    return sorted(T[1:] + Tc[:1])


@pytest.fixture
def lattice_15():
    return simplicial.build_fractal(3, 1)


@pytest.fixture
def pair_15():
    return color_code.fifteen_qubit_pair()
