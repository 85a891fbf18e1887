"""Regenerate src/polyknot/data/knot_table.jsonl from the curated braid words."""

import sys

from polyknot.table import TABLE_PATH, write_table

if __name__ == "__main__":
    meta = write_table(TABLE_PATH)
    print(f"wrote {meta['knots']} knots to {TABLE_PATH}")
    if meta["collisions"]:
        print("collisions:", meta["collisions"])
    sys.exit(0)
