"""Cohomology of loop extensions defined by one-nested association laws.

Laws are parsed into :class:`LawIR`, turned into a differential on
normalized 2-cochains over ``Z/m`` (a ``Z/n``-module), and the resulting
cocycles classify loop extensions of ``Z/m`` by ``Z/n`` satisfying the law.
"""

from .cochains import (
    BUILTIN_LAWS,
    Cochain,
    CommutativityDifferential,
    CyclicModule,
    DifferentialSpec,
    InversePropertyDifferential,
    apply_differential,
    builtin_law,
    commutativity_delta,
    delta1,
    derive_differential,
    inverse_property_residual,
    normalized_cochains,
    valid_actions,
    verify_delta_squared,
)
from .cohomology import (
    CohomologyReport,
    coboundaries,
    coboundary_count,
    cocycle_count,
    cocycles,
    cohomology,
    inverse_property_count,
)
from .corpus import corpus
from .dsl import LawAST, LawIR, Move, NestTrace, parse, parse_law, render, substitute_neutral, to_ir
from .extensions import ExtensionLoop, build_extension, classify, equivalent, extract_factor_set, witness_isomorphism
from .loops import (
    FiniteLoop,
    check_loop,
    cyclic_group,
    direct_product,
    inner_maps,
    law_holds,
    load_loop,
    nucleus,
    save_loop,
    verify_commutation_formula,
    verify_m_composition,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
