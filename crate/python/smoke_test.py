"""Builds the extension module, imports it and checks a few known values.

Usage: python3 python/smoke_test.py
"""

import importlib
import json
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build() -> Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "cosym-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libcosym_py.so"
    out = Path(tempfile.mkdtemp(prefix="cosym-py-"))
    shutil.copy(lib, out / "cosym_py.so")
    return out


def main() -> None:
    sys.path.insert(0, str(build()))
    cosym = importlib.import_module("cosym_py")

    m = cosym.Monoid("trunc:2")
    assert m.labels() == ["0", "1", "2"]
    assert m.op("1", "2") is None
    x = m.simplex_set("2", level=3)
    assert x.level_sizes() == [1, 3, 6, 10]
    assert all(x.checks().values())
    a = x.hall_algebra()
    assert a.dimension == 3 and all(a.checks().values())
    assert a.pairing_determinant() in (Fraction(1), Fraction(-1))
    assert [x.surface_invariant(g) for g in range(3)] == [0, 3, 0]

    u = cosym.Monoid("pset-union:2")
    passed, report = u.check("{a,b}", level=3)
    report = json.loads(report)
    assert passed and not report["non_nerve_witness"]["is_nerve_like"]
    assert u.simplex_set("{a,b}", level=2).surface_invariant(1) == 9

    word = json.loads(cosym.Monoid("zmod:3").simplex_set("0", level=2).evaluate_word("comult;mult"))
    assert word["profile"] == {"inputs": 1, "outputs": 1}

    try:
        cosym.Monoid("zmod:0")
    except cosym.CosymError as e:
        assert "order" in str(e)
    else:
        raise AssertionError("zmod:0 accepted")
    print("python smoke test passed")


if __name__ == "__main__":
    main()
