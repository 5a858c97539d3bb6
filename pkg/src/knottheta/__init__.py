"""Exact computation of the two-variable knot invariant theta and its pictures.

Typical use::

    from knottheta import theta, get_knot
    r = theta(get_knot("3_1").diagram())
    r.delta, r.theta
"""

from .algebra import LaurentPoly1, LaurentPoly2, RatFunc1, from_json, to_json, to_text
from .diagram import Diagram, get_knot, make_diagram, named_diagram, torus_knot
from .invariant import ThetaResult, alexander, green, theta, theta_numeric

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly1", "LaurentPoly2", "RatFunc1", "from_json", "to_json", "to_text",
    "Diagram", "get_knot", "make_diagram", "named_diagram", "torus_knot",
    "ThetaResult", "alexander", "green", "theta", "theta_numeric",
]
