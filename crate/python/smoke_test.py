"""Smoke test for the icis extension module."""

import json

import icis

GOLDEN = {
    "n": 2,
    "k": 1,
    "vars": ["x", "y", "z"],
    "h": ["x^3+y^3-z^2"],
    "f": ["x", "y", "z^3+x*z+y^2"],
}


def main():
    r = json.loads(icis.report(json.dumps(GOLDEN)))
    assert r["schema"] == icis.SCHEMA_VERSION
    assert r["dimM"] == 6 and r["dimK"] == 0 and r["codimAe-direct"] == 6
    assert r["muI"] == {"value": 6, "provenance": "proved-n2"}
    assert r["conjecture-verdict"] == "holds-with-equality"

    cusp = {"n": 1, "k": 0, "vars": ["x"], "f": ["x^2", "x^3"]}
    assert json.loads(icis.report(json.dumps(cusp), char=32003))["dimM"] == 1
    assert icis.validate(json.dumps(GOLDEN)) == r["tau"] == 4

    try:
        icis.report(json.dumps({**cusp, "f": ["x", "x^^2"]}))
    except ValueError:
        pass
    else:
        raise AssertionError("malformed input accepted")

    try:
        icis.report(json.dumps(GOLDEN), max_degree=3)
    except icis.ResourceError:
        pass
    else:
        raise AssertionError("degree budget ignored")

    print(f"icis {icis.__version__}: ok")


if __name__ == "__main__":
    main()
