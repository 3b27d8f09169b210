"""Regenerate leopoldt.json from the integer oracle at N = 60.

Run from the repository root:  python3 tests/golden/make_golden.py
"""
import json
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))

from oracle import algebra_log_oracle, minor_valuation_rank  # noqa: E402

ORACLE_N = 60
CASES = [
    ("sqrt2", [-2, 0, 1], [[1, 1]], [3, 5, 7, 11, 13]),
    ("golden", [-1, -1, 1], [[0, 1]], [3, 7, 11, 13]),
    ("cubic", [-1, -1, 0, 1], [[0, 1]], [3, 5, 7, 11, 13]),
    ("cyclic_cubic", [1, -3, 0, 1], [[0, 1], [-1, 1]], [5, 7, 11, 13]),
]


def main():
    out = []
    for name, f, units, primes in CASES:
        for p in primes:
            rows = [algebra_log_oracle(u, f, p, ORACLE_N) for u in units]
            out.append({
                "case": name, "f": f, "units": units, "p": p, "N": ORACLE_N,
                "log_rows": [[str(c) for c in r] for r in rows],
                "rank_mod_p20": minor_valuation_rank(rows, p, 20),
            })
    (HERE / "leopoldt.json").write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
