"""Regenerate src/knottheta/data/knots.json from the KnotInfo database.

Needs the ``database_knotinfo`` package, which is only required here and
not by the library. Keeps the unknot, every prime knot with at most 10
crossings, and the Conway and Kinoshita-Terasaka knots.
"""

import json
import pathlib
import sys

import database_knotinfo

EXTRA = ("11n_34", "11n_42")
OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "knottheta" / "data" / "knots.json"


def main() -> int:
    rows = database_knotinfo.link_list()[1:]  # first row holds column titles
    out = []
    for r in rows:
        name = r["name"]
        n = int(r["crossing_number"])
        if n > 10 and name not in EXTRA:
            continue
        pd = json.loads(r["pd_notation"]) if r["pd_notation"] else []
        out.append({
            "name": name,
            "crossings": n,
            "pd": pd,
            "genus": int(r["three_genus"]) if r["three_genus"] else None,
            "fibered": {"Y": True, "N": False}.get(r["fibered"]),
        })
    OUT.parent.mkdir(parents=True, exist_ok=True)
    source = json.dumps("KnotInfo via database_knotinfo " + database_knotinfo.version())
    lines = [json.dumps(k, separators=(",", ":")) for k in out]
    with open(OUT, "w") as fh:
        fh.write('{"source": %s,\n"knots": [\n' % source)
        fh.write(",\n".join(lines))
        fh.write("\n]}\n")
    print(f"wrote {len(out)} knots to {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
