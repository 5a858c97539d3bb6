"""Upright long-knot diagrams and everything that builds or rewrites them."""

from .core import (Crossing, Diagram, connected_sum, crossing_change_mirror, is_valid,
                   make_diagram, mirror, relabel, reverse, unknot, validate)
from .pd import (MultiComponent, NonPlanar, PDFormatError, face_count, format_pd, from_pd,
                 orient, parse_pd)
from .braids import (braid_closure, closure_is_knot, random_braid_word, random_diagram,
                     torus_knot, torus_knot_braid)
from .moves import (KINDS, Move, PatternMismatch, apply_move, build_r3_site, inverse_sites,
                    r3_sites, random_forward_move, random_move)
from .table import (KnotRecord, get_knot, knots_up_to, ks_virtual, load_table, named_diagram,
                    trefoil)

__all__ = [
    "Crossing", "Diagram", "connected_sum", "crossing_change_mirror", "is_valid",
    "make_diagram", "mirror", "relabel", "reverse", "unknot", "validate",
    "MultiComponent", "NonPlanar", "PDFormatError", "face_count", "format_pd", "from_pd",
    "orient", "parse_pd",
    "braid_closure", "closure_is_knot", "random_braid_word", "random_diagram",
    "torus_knot", "torus_knot_braid",
    "KINDS", "Move", "PatternMismatch", "apply_move", "build_r3_site", "inverse_sites",
    "r3_sites", "random_forward_move", "random_move",
    "KnotRecord", "get_knot", "knots_up_to", "ks_virtual", "load_table", "named_diagram",
    "trefoil",
]
