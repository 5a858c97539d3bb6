"""Write tests/data/knotinfo_conway.json: KnotInfo Conway polynomials.

The tests use them as an independent reference for the Alexander
polynomial, via z^2 = T - 2 + T^-1. Needs ``database_knotinfo``.
"""

import json
import pathlib
import re
import sys

import database_knotinfo

from make_knot_table import EXTRA

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "knotinfo_conway.json"


def parse_conway(text: str) -> dict[int, int]:
    """'1+ 4*z^2' -> {0: 1, 2: 4}."""
    out: dict[int, int] = {}
    for sign, coeff, z, power in re.findall(r"([+-]?)\s*(\d*)\s*\*?\s*(z?)(?:\^(\d+))?",
                                            text.replace(" ", "")):
        if not coeff and not z:
            continue
        n = (int(power) if power else 1) if z else 0
        c = int(coeff) if coeff else 1
        out[n] = out.get(n, 0) + (-c if sign == "-" else c)
    return out


def main() -> int:
    out = {}
    for r in database_knotinfo.link_list()[1:]:
        if int(r["crossing_number"]) > 10 and r["name"] not in EXTRA:
            continue
        out[r["name"]] = sorted(parse_conway(r["conway_polynomial"]).items())
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(out, sort_keys=True, indent=0) + "\n")
    print(f"wrote {len(out)} Conway polynomials to {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
