"""Smoke test for the Python bindings.

Run after `maturin develop -m crates/normcross-py/pyproject.toml`, or after
`cargo build --release -p normcross-py --features extension-module`, in which
case the freshly built library is loaded from target/release.
"""

import importlib.util
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "crates" / "normcross" / "tests" / "fixtures"


def load_module():
    try:
        import normcross_py

        return normcross_py
    except ImportError:
        pass
    built = ROOT / "target" / "release" / "libnormcross_py.so"
    if not built.exists():
        sys.exit(f"normcross_py is not installed and {built} does not exist")
    tmp = pathlib.Path(tempfile.mkdtemp()) / "normcross_py.so"
    shutil.copy(built, tmp)
    spec = importlib.util.spec_from_file_location("normcross_py", tmp)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    nc = load_module()

    trefoil = nc.Triangulation((FIXTURES / "trefoil.json").read_text())
    assert trefoil.size > 0
    assert json.loads(trefoil.to_json())["tets"] == trefoil.size
    assert trefoil.validate()["diagnostics"] == []

    r = nc.crosscap(trefoil, meridian_edge=0)
    assert r["crosscap"] == 1, r
    q = nc.crosscap(trefoil, meridian_edge=0, coords="quad")
    assert q["crosscap"] == 1, q

    fig8 = nc.Triangulation.from_isosig("kfLPfLQQdefgjihjijraxbuubddj")
    assert nc.knot_genus(fig8, 2)["genus"] == 1
    assert nc.crosscap(fig8, meridian_edge=2)["crosscap"] == 2
    assert nc.slope_norm(fig8, "0/1")["norm"] == 1

    surfaces = nc.fundamental_surfaces(trefoil)
    assert len(surfaces) == 16
    assert {"coords", "system", "chi", "orientable", "connected", "boundary"} <= set(surfaces[0])

    assert nc.farey_distance("0/1", "2/1") == 1
    assert nc.distance_to_even_integral_subtree("0/1") == 0
    assert abs(nc.intersection_number([1, 0, 0], [0, 1, 0])) == 1
    basis = nc.hilbert_basis(3, [[1, 1, -2]])
    assert sorted(basis) == [[0, 2, 1], [1, 1, 1], [2, 0, 1]], basis

    try:
        nc.crosscap(trefoil, meridian_edge=99)
    except nc.PreconditionError:
        pass
    else:
        raise AssertionError("bad edge accepted")
    try:
        nc.crosscap(trefoil, meridian_edge=0, hb_cap=3)
    except nc.EnumerationAborted:
        pass
    else:
        raise AssertionError("cap ignored")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
