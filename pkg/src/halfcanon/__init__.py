"""Half-canonical rings of genus two curves.

Exact polynomial arithmetic over GF(p) and QQ, Groebner bases, Hilbert series,
minimal graded free resolutions, the built-in ring formats, certificates and
spin-structure counting.
"""
from .formats import FormatId, Presentation, build_format, builtin
from .groebner import GroebnerBasis, Ideal, MonomialOrder, buchberger, eliminate, ideal_equal, krull_dimension, subring_presentation
from .hilbert import RationalSeries, curve_invariants, eigenspace_dims, hilbert_series, parse_series, series_equal
from .polycore import Field, ParseError, Polynomial, WeightedRing
from .presentation_io import parse_presentation, read_presentation, write_presentation
from .resolution import BettiTable, Resolution, betti_table, free_resolution, gorenstein_certificate
from .spincomb import CurveGraph, catalog_type_AB, count_regular_ggs, partial_normalisations
from .verify import CertificateReport, VerifyConfig, brute_force_dims, koszul_betti, run_certificate

__version__ = "0.1.0"

__all__ = [
    "BettiTable", "CertificateReport", "CurveGraph", "Field", "FormatId", "GroebnerBasis", "Ideal",
    "MonomialOrder", "ParseError", "Polynomial", "Presentation", "RationalSeries", "Resolution",
    "VerifyConfig", "WeightedRing", "betti_table", "brute_force_dims", "buchberger", "build_format",
    "builtin", "catalog_type_AB", "count_regular_ggs", "curve_invariants", "eigenspace_dims",
    "eliminate", "free_resolution", "gorenstein_certificate", "hilbert_series", "ideal_equal",
    "koszul_betti", "krull_dimension", "parse_presentation", "parse_series", "partial_normalisations",
    "read_presentation", "run_certificate", "series_equal", "subring_presentation", "write_presentation",
]
