"""Smoke test for the pyfolcalc extension module.

Build and run from the repository root:

    cargo build --release -p pyfolcalc --features extension-module
    cp target/release/libpyfolcalc.so python/pyfolcalc.so
    python3 python/smoke.py
"""

import json

import pyfolcalc

SOURCE = """
vars x y z;
let w = x*d(y) + z*d(z);
let pi = [x, y^2 + x*z];
"""


def main():
    check = json.loads(pyfolcalc.run("check", SOURCE))
    assert check["integrable"] is False
    assert check["witness"] == "(z)*dx^dy^dz"

    crit = json.loads(pyfolcalc.run("critical", SOURCE, k=[1]))
    row = crit["critical_sets"][0]
    assert row["ideal"] == ["y", "x"] and row["dim"] == 1 and row["holds"]

    unf = json.loads(pyfolcalc.run("unfold", form="e3", degrees=(0, 8)))
    assert all(s["dim_Unf"] == 0 for s in unf["slices"])

    printed = pyfolcalc.parse(SOURCE)
    assert pyfolcalc.parse(printed) == printed

    entry = json.loads(pyfolcalc.catalog("sl2q"))
    assert entry["entries"][0]["integrable"]

    try:
        pyfolcalc.parse("vars x;\nlet w = x +;")
    except ValueError as e:
        assert str(e).startswith("2:"), e
    else:
        raise AssertionError("malformed input accepted")

    try:
        pyfolcalc.run("unfold", SOURCE)
    except ArithmeticError:
        pass
    else:
        raise AssertionError("non-integrable input accepted by unfold")

    print("pyfolcalc smoke: ok")


if __name__ == "__main__":
    main()
