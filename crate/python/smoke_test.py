"""Smoke test for the perimac extension module.

Build and install first:
    maturin build -m crates/py/Cargo.toml --release -o dist && pip install dist/perimac-*.whl
"""

import json
from fractions import Fraction

import perimac


def main():
    assert sorted(map(tuple, perimac.partitions(3, 3, 3))) == [(), (1,), (1, 1), (1, 1, 1), (2,), (2, 1), (3,)]

    # One letter: P_(1)(x) = x for every (q, t).
    assert Fraction(perimac.macdonald_p([1], "1/3", "1/4", ["2/5"])) == Fraction(2, 5)
    # Hall-Littlewood Q_(1)(a) = (1 - t) a.
    assert Fraction(perimac.skew("hl_q", [1], [], ["1/3"], "1/4")) == Fraction(1, 4)

    spec = perimac.MeasureSpec("3/10", "0", "1/7", ["1/3", "1/4"], ["1/5", "1/6"])
    lhs, inc = perimac.pqw_shifted_cdf(spec, 1, 14)
    rhs, delta = perimac.qtsym_rhs(spec, 1, 128)
    assert abs(lhs - rhs) < 1e-8, (lhs, rhs)

    hl = perimac.MeasureSpec("0", "1/4", "0", ["1/3", "1/4"], ["1/5", "1/6"])
    rows = perimac.quasi_joint(hl, 3, 4)
    assert all(w == 0 for w, _, _, _ in rows)
    assert abs(sum(p for *_, p in rows) - 1.0) < 1e-12

    try:
        perimac.MeasureSpec("3/2", "0", "0", [], [])
    except ValueError:
        pass
    else:
        raise AssertionError("q outside [0, 1) must be rejected")

    report = json.loads(perimac.run_check("A5"))
    assert report["pass"] and report["abs_err"] == "0"
    print("perimac smoke test passed:", spec, len(perimac.check_ids()), "checks")


if __name__ == "__main__":
    main()
