"""Regenerate the oracle golden files: ``python tests/generate_golden.py``."""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


def fermat_hk_p5():
    p = 5
    rows = []
    for e in range(4):
        q = p ** e
        rows.append({"e": e, "q": q, "length": oracles.fermat_length(p, q, q)})
    # cross-check the structural formula against plain Macaulay matrices where cheap
    rel = {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): p - 1}
    for row in rows[:2]:
        q = row["q"]
        gens = [{(q, 0, 0): 1}, {(0, q, 0): 1}, {(0, 0, q): 1}, rel]
        assert oracles.quotient_length(gens, 3, p) == row["length"]
    return {"ring": "F_5[x,y,z]/(x^3+y^3-z^3)", "ideal": "(x,y,z)", "rows": rows}


def fermat_hs_p5():
    return {"ring": "F_5[x,y,z]/(x^3+y^3-z^3)", "ideal": "(x,y,z)",
            "rows": [{"n": n, "length": oracles.fermat_hs_length(5, n)} for n in range(1, 5)]}


def fermat_hk_compare_p7():
    p = 7
    out = {"ring": "F_7[x,y,z]/(x^3+y^3-z^3)", "rows": []}
    for e in range(4):
        q = p ** e
        out["rows"].append({
            "e": e, "q": q,
            # (x,y,z^3) = (x,y) modulo the relation: no z-power in the bracket ideal
            "xy": 3 * q * q,
            "xyz2": oracles.fermat_length(p, q, 2 * q),
            "xyz": oracles.fermat_length(p, q, q),
        })
    return out


def main():
    GOLDEN.mkdir(exist_ok=True)
    for name, fn in [("fermat_hk_p5", fermat_hk_p5), ("fermat_hs_p5", fermat_hs_p5),
                     ("fermat_hk_compare_p7", fermat_hk_compare_p7)]:
        path = GOLDEN / f"{name}.json"
        path.write_text(json.dumps(fn(), indent=2) + "\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
