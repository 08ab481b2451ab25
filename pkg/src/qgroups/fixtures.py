"""Bundled example data: JSON files shipped in ``qgroups/data``.

The files are generated from the constructors below; ``regenerate`` rewrites
them and the test-suite checks they still agree.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .finite.core import (FiniteQuantumGroup, cyclic_group, function_algebra, group_algebra, symmetric_group,
                          tensor_product, trivial_quantum_group)
from .graded import DiscSemigroup
from .jsonio import dumps
from .groups.discrete import FiniteTableGroup, adjacent_transpositions
from .scalars import ExactScalar

QUANTUM_GROUPS = {
    "trivial": trivial_quantum_group,
    "c_z2": lambda: function_algebra(cyclic_group(2)),
    "c_z3": lambda: function_algebra(cyclic_group(3)),
    "c_s3": lambda: function_algebra(symmetric_group(3)),
    "cg_z2": lambda: group_algebra(cyclic_group(2)),
    "cg_s3": lambda: group_algebra(symmetric_group(3)),
    "c_z2_x_cg_z2": lambda: tensor_product(function_algebra(cyclic_group(2)), group_algebra(cyclic_group(2))),
}


def corrupted(A: FiniteQuantumGroup, target: int | None = None) -> FiniteQuantumGroup:
    """Copy of A with one comultiplication structure constant perturbed by 1."""
    comult = {i: dict(t) for i, t in A.comult.items()}
    i = target if target is not None else A.dim - 1
    pair = min(comult[i]) if comult.get(i) else (0, 0)
    comult.setdefault(i, {})
    comult[i][pair] = comult[i].get(pair, ExactScalar(0)) + 1
    if not comult[i][pair]:
        del comult[i][pair]
    return A.replace(comult=comult, name=A.name + " (corrupted)")


def _other_files() -> dict:
    table, gens = adjacent_transpositions(3)
    s3 = table.to_json()
    s3["name"] = "S_3"
    s3["generators"] = gens
    return {
        "c_s3_corrupted": corrupted(function_algebra(symmetric_group(3))).to_json(),
        "s3_table": s3,
        "disc_semigroup": {"graded": DiscSemigroup.name, "degree": 4},
    }


def generated() -> dict:
    """name -> JSON document for every bundled file."""
    out = {name: make().to_json() for name, make in QUANTUM_GROUPS.items()}
    out.update(_other_files())
    return out


def data_dir():
    return resources.files("qgroups") / "data"


def names() -> list[str]:
    return sorted(generated())


def bundled_json(name: str) -> dict:
    path = data_dir() / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"no bundled example {name!r}; available: {', '.join(names())}")
    return json.loads(path.read_text(encoding="utf-8"))


def bundled(name: str):
    """Load a bundled file as a FiniteQuantumGroup, FiniteTableGroup or graded view."""
    data = bundled_json(name)
    return load_document(data)


def load_document(data: dict):
    if "graded" in data:
        if data["graded"] != DiscSemigroup.name:
            raise ValueError(f"unknown graded algebra {data['graded']!r}")
        return DiscSemigroup(int(data.get("degree", 4)))
    if "table" in data:
        return FiniteTableGroup.from_json(data)
    return FiniteQuantumGroup.from_json(data)


def bundled_quantum_groups() -> dict:
    return {name: bundled(name) for name in QUANTUM_GROUPS}


def regenerate(directory: str | Path | None = None) -> list[Path]:
    directory = Path(directory) if directory is not None else Path(str(data_dir()))
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in generated().items():
        p = directory / f"{name}.json"
        p.write_text(dumps(doc), encoding="utf-8")
        written.append(p)
    return written


if __name__ == "__main__":
    for p in regenerate():
        print(p)
