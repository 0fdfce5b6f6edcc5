"""Jordan triple product homomorphisms of 2x2 Hermitian matrices."""
from .errors import *  # noqa: F401,F403
from .herm import Herm2, Unitary2
from .families import (
    FamilyMap, FormI, FormII, FormIII, FormIV, TildeVariant, canonical_suite, eval_family,
    make_form_i, make_form_ii, make_form_iii, make_form_iv,
)
from .classifier import ClassificationReport, TranscriptMap, classify, gauge_equivalent

__version__ = "0.1.0"
