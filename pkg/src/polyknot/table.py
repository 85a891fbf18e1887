"""Reference table of prime knots 3_1 .. 8_21 built from curated braid words.

The table is produced by running the invariant engine on the closure of one
braid word per knot and frozen into ``data/knot_table.jsonl``.  Three anchors
(3_1, 4_1, 5_1) are compared against hand-derived values before anything is
written, so a convention slip in the engine cannot leak into the table.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .braid import BraidWord, braid_closure_diagram
from .invariants import LaurentPoly, alexander, jones

# Signed-integer braid notation; k means sigma_k, -k its inverse.
CURATED_BRAIDS: dict[str, list[int]] = {
    "3_1": [1, 1, 1],
    "4_1": [1, -2, 1, -2],
    "5_1": [1, 1, 1, 1, 1],
    "5_2": [1, 1, 1, 2, -1, 2],
    "6_1": [1, 1, 2, -1, -3, 2, -3],
    "6_2": [1, 1, 1, -2, 1, -2],
    "6_3": [1, 1, -2, 1, -2, -2],
    "7_1": [1, 1, 1, 1, 1, 1, 1],
    "7_2": [1, 1, 1, 2, -1, 2, 3, -2, 3],
    "7_3": [1, 1, 1, 1, 1, 2, -1, 2],
    "7_4": [1, 1, 2, -1, 2, 2, 3, -2, 3],
    "7_5": [1, 1, 1, 1, 2, -1, 2, 2],
    "7_6": [1, 1, -2, 1, 3, -2, 3],
    "7_7": [1, -2, 1, -2, 3, -2, 3],
    "8_1": [1, 1, 2, -1, 2, 3, -2, -4, 3, -4],
    "8_2": [1, 1, 1, 1, 1, -2, 1, -2],
    "8_3": [1, 1, 2, -1, -3, 2, -3, -4, 3, -4],
    "8_4": [1, 1, 1, -2, 1, -2, -3, 2, -3],
    "8_5": [1, 1, 1, -2, 1, 1, 1, -2],
    "8_6": [1, 1, 1, 1, 2, -1, -3, 2, -3],
    "8_7": [1, 1, 1, 1, -2, 1, -2, -2],
    "8_8": [1, 1, 1, 2, -1, -3, 2, -3, -3],
    "8_9": [1, 1, 1, -2, 1, -2, -2, -2],
    "8_10": [1, 1, 1, -2, 1, 1, -2, -2],
    "8_11": [1, 1, 2, -1, 2, 2, -3, 2, -3],
    "8_12": [1, -2, 1, 3, -2, -4, 3, -4],
    "8_13": [1, 1, 2, -1, 2, -3, 2, -3, -3],
    "8_14": [1, 1, 1, 2, -1, 2, -3, 2, -3],
    "8_15": [1, 1, -2, 1, 3, 2, 2, 2, 3],
    "8_16": [1, 1, -2, 1, 1, -2, 1, -2],
    "8_17": [1, 1, -2, 1, -2, 1, -2, -2],
    "8_18": [1, -2, 1, -2, 1, -2, 1, -2],
    "8_19": [1, 1, 1, 2, 1, 1, 1, 2],
    "8_20": [1, 1, 1, -2, -1, -1, -1, -2],
    "8_21": [1, 1, 1, 2, -1, -1, 2, 2],
}


def _lp(d: dict[int, int]) -> LaurentPoly:
    return LaurentPoly(d)


# Worked out by hand: Alexander from a 2x2 Wirtinger minor, Jones from the
# eight-state (trefoil), sixteen-state (figure-eight) and skein recursion (5_1).
# Jones values are for one handedness; the check accepts either.
HAND_ANCHORS: dict[str, tuple[LaurentPoly, LaurentPoly]] = {
    "3_1": (_lp({-1: 1, 0: -1, 1: 1}), _lp({-4: -1, -3: 1, -1: 1})),
    "4_1": (_lp({-1: 1, 0: -3, 1: 1}), _lp({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})),
    "5_1": (_lp({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}), _lp({-7: -1, -6: 1, -5: -1, -4: 1, -2: 1})),
}

TABLE_PATH = Path(__file__).resolve().parent / "data" / "knot_table.jsonl"


class TableBuildError(RuntimeError):
    pass


def _crossings(name: str) -> int:
    return int(name.split("_")[0])


def build_rows() -> tuple[list[dict], dict]:
    rows = []
    for name, word in CURATED_BRAIDS.items():
        d = braid_closure_diagram(BraidWord.from_ints(word))
        a, v = alexander(d), jones(d)
        if name in HAND_ANCHORS:
            ha, hv = HAND_ANCHORS[name]
            if a != ha or (v != hv and v != hv.invert_variable()):
                raise TableBuildError(f"anchor {name} disagrees with the hand value: {a} | {v}")
        rows.append({"name": name, "crossings": _crossings(name), "braid": word,
                     "alexander": a.to_pairs(), "jones": v.to_pairs()})

    # collisions up to mirror, recorded rather than hidden
    collisions = []
    for i, r in enumerate(rows):
        for s in rows[i + 1:]:
            if r["alexander"] != s["alexander"]:
                continue
            vr = LaurentPoly.from_pairs(r["jones"])
            vs = LaurentPoly.from_pairs(s["jones"])
            if vr == vs or vr == vs.invert_variable():
                collisions.append([r["name"], s["name"]])
    meta = {"knots": len(rows), "collisions": collisions}
    return rows, meta


def _checksum(lines: list[str]) -> str:
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()


def write_table(path: Path | str = TABLE_PATH) -> dict:
    rows, meta = build_rows()
    lines = [json.dumps(r, separators=(",", ":")) for r in rows]
    meta["sha256"] = _checksum(lines)
    Path(path).write_text("\n".join([json.dumps({"meta": meta})] + lines) + "\n")
    return meta


def verify_checksum(text: str) -> bool:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        return False
    head = json.loads(lines[0]).get("meta", {})
    return head.get("sha256") == _checksum(lines[1:])
