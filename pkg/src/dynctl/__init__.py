"""dynctl: exact arithmetic for S-integral points in orbits of rational self-maps of P^1."""

import sys

__version__ = "0.1.0"

# Orbit coordinates legitimately reach hundreds of thousands of digits; the
# interpreter's int<->str conversion guard would otherwise break report output.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)
