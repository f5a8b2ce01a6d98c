#!/usr/bin/env python3
"""Smoke test for the liftcheck_py extension module.

Builds the cdylib with cargo, copies it next to this script under the
importable module name, and exercises the main types and operations.
Run from anywhere: `python3 python/smoke_test.py`.
"""

import json
import pathlib
import shutil
import subprocess
import sys

REPO = pathlib.Path(__file__).resolve().parent.parent


def build_module() -> pathlib.Path:
    subprocess.run(
        [
            "cargo",
            "build",
            "-p",
            "liftcheck-py",
            "--release",
            "--features",
            "extension-module",
        ],
        cwd=REPO,
        check=True,
    )
    built = REPO / "target" / "release" / "libliftcheck_py.so"
    target = pathlib.Path(__file__).resolve().parent / "liftcheck_py.so"
    shutil.copy2(built, target)
    return target


def main() -> int:
    module_path = build_module()
    sys.path.insert(0, str(module_path.parent))
    import liftcheck_py as lc

    # Fox calculus: d(x0^2)/dx0 = 1 + x0, exponent sums.
    terms = dict(lc.fox_derivative("x0^2", 0))
    assert terms == {"e": 1, "x0^1": 1}, terms
    assert lc.exponent_sum("x0^2 x1^-1", 1) == -1

    # Catalog groups and p-group presentations.
    q8 = lc.Group.from_spec(json.dumps({"catalog": "quaternion8"}))
    assert q8.order == 8 and not q8.is_abelian()
    assert q8.element_order(1) in (2, 4)
    generators, relators = q8.presentation(2)
    assert generators == 2 and relators, (generators, relators)
    assert q8.presentation_order_certificate(2) == 8

    psl2 = lc.Group.from_spec(json.dumps({"catalog": "psl2", "q": 5}))
    assert psl2.order == 60

    # The headline SL2(5) extension: the point stabilizer at infinity is
    # not liftable and no subextension exists.
    sl2_5 = lc.Extension.from_spec(json.dumps({"catalog": "sl2", "q": 5}))
    assert sl2_5.order == 120 and sl2_5.p == 2
    assert not sl2_5.stabilizer_liftable(5)
    report = json.loads(sl2_5.liftability_report(5))
    assert report["liftable"] is False
    assert report["witness"]["obstruction"]["value"] == 1
    assert not sl2_5.subextension_exists()
    assert not sl2_5.necessary_condition_holds()

    # SL2(3) over A4 satisfies the condition.
    sl2_3 = lc.Extension.from_spec(json.dumps({"catalog": "sl2", "q": 3}))
    assert sl2_3.necessary_condition_holds()

    # An explicit cocycle: the C4 extension of C2.
    c4 = lc.Extension.from_spec(
        json.dumps(
            {
                "group": {"catalog": "cyclic", "n": 2},
                "p": 2,
                "cocycle": [[0, 0], [0, 1]],
            }
        )
    )
    assert c4.order == 4

    print("liftcheck_py smoke test: all checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
