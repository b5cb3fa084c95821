"""GL_2-orbits of tuples of nilpotent 2x2 matrices and their separating invariants."""

from .canonical import CanonicalForm, are_similar, canonicalize, orbit_representatives
from .counting import brute_force_orbit_count, gamma, kappa, kappa_poly
from .gf import Fe, Field, field_make
from .indicator import ReducedPoly, build_h_set, verify_h_separating
from .invariants import build_set, check_minimality, check_separating
from .matrices import Mat, conjugate_tuple, enumerate_gl, enumerate_nilpotent

__version__ = "0.1.0"
