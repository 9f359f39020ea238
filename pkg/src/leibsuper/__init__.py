"""Exact computations with finite-dimensional Leibniz superalgebras."""

from .algebra import (
    GradingError,
    NotNilpotentError,
    Subspace,
    SuperAlgebra,
    abelian,
    check_identity,
    derived_square,
    generator_count,
    is_leibniz,
    lower_central_series,
    nilindex,
    right_annihilator,
    series_dims,
)
from .basis_change import (
    BasisChange,
    Lemma31Case,
    change_basis,
    lemma31_transform,
    lemma31_with_retry,
    verify_preserved_products,
)
from .families import FamilySpec, build, build_remark21, build_theorem21, build_theorem22
from .fileformat import ParseError, dump_algebra, parse_algebra, read_algebra, write_algebra
from .invariants import CharSeq, SamplingConfig, characteristic_sequence, jordan_sequence
from .sampling import VerifyConfig, VerifyReport, sample_valid_superalgebra, verify_theorem

__version__ = "0.1.0"
