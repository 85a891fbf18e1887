"""Regenerate data/toric_seeds.json.

Hand-tuned seeds taken from published projections are kept; for every torus
pair used by the test suite the seeded template search is run with a large
budget, degree by degree from q + r0 upward, and the first certified curve
is stored.
"""

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from polyknot import nodal
from polyknot.braid import smallest_r0
from polyknot.polycore import print_poly

OUT = Path(__file__).resolve().parents[1] / "src" / "polyknot" / "data" / "toric_seeds.json"
PAIRS = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (3, 7)]
BUDGET = {2: 50_000, 3: 400_000}
MAX_SLACK = 6

HAND = [
    {"p": 2, "q": 3, "f": "t(t - 1) × (t + 1)", "g": "t^2(t - 1.15) × (t + 1.15)",
     "source": "3_1 catalog projection"},
    {"p": 2, "q": 5, "f": "t^3 - 4t", "g": "(t^2 - 1.2) × (t^2 - 2.25) × (t^2 - 3.9) × (t^2 - 4.85)",
     "source": "5_1 catalog projection"},
    {"p": 3, "q": 4, "f": "t^5 - 5.5t^3 + 4.5t", "g": "t^6 - 7.35t^4 + 14t^2",
     "source": "8_19 catalog projection"},
    {"p": 3, "q": 7, "f": "t(t^2 - 6.431)(t^2 - 15.91)",
     "g": "t(t^2 - 0.18)(t^2 - 2.4899)(t^2 - 17.458)(t^2 - 16.15)(t^2 - 14.8)(t^2 - 11)",
     "source": "worked (3, 7) example"},
]


def search(p, q, start=None):
    target = nodal._toric_closure_seq(p, q)
    m0 = q + smallest_r0(p, q)
    for m in range(start or m0, m0 + MAX_SLACK + 1):
        rng = np.random.default_rng([0, p, q, m])
        gen = (nodal._search_p2 if p == 2 else nodal._search_p3)(q, m, target, rng, BUDGET[p])
        for cand in gen or ():
            if nodal.certify_toric(cand, p, q):
                return cand
    return None


def _pair(text):
    p, q = (int(x) for x in text.split(","))
    return p, q


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("pairs", nargs="*", type=_pair, help="p,q pairs to search (default: all)")
    ap.add_argument("--start", type=int, help="first deg g to try instead of q + r0")
    args = ap.parse_args()
    pairs = args.pairs or PAIRS
    # keep earlier search results for pairs not searched this time
    old = json.loads(OUT.read_text())["seeds"] if OUT.exists() else []
    seeds = list(HAND) + [s for s in old if s.get("source") == "template search"
                          and (s["p"], s["q"]) not in pairs]
    for p, q in pairs:
        t0 = time.time()
        c = search(p, q, args.start)
        if c is None:
            print(f"({p}, {q}): search failed", file=sys.stderr)
            continue
        print(f"({p}, {q}): deg g = {c.g.degree} in {time.time() - t0:.0f}s")
        seeds.append({"p": p, "q": q, "f": print_poly(c.f), "g": print_poly(c.g),
                      "source": "template search"})
    OUT.write_text(json.dumps({"description": "Regular projections of torus closures; "
                               "certified again whenever toric_projection uses them.",
                               "seeds": seeds}, indent=2, ensure_ascii=False) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
