"""Finite 2-degenerate 3-computads: products, coequalisers, isomorphism search
and brute-force universal-property checks."""
from .constructions import (CoequalizerResult, ProductResult, coeq_factor, coequalizer,
                            comparison_map, pair_into_product, product, product_of_morphisms)
from .core import (Computad, Morphism, ThreeCell, compose, computad, enumerate_homs,
                   find_isomorphism, identity, inverse, validate_computad, validate_morphism)
from .errors import (ComputadError, ConeConditionViolated, IncompatibleParallelPair,
                     NonComposable, OracleBudgetExceeded, ParseError, SearchBudgetExceeded,
                     UnmappedLabel)
from .multiset import (Multiset, enumerate_pairings, make_multiset, monoid_sum, project,
                       push_forward)

__version__ = "0.1.0"
