"""Exact crossed products A x| Z: commutants, centers and maximal-abelian decisions."""

from .crossed import (CrossedContext, CrossedElement, DegreeBasis, center_basis,
                      center_basis_oracle, commutant_basis, commutant_basis_oracle, commutes,
                      extract_commutant_generators, is_maximal_abelian, multiply)
from .dynamics import (FiniteSystem, PointSet, RotationSystem, SubAlgebra, check_invariance,
                       cycle_decomposition, is_domain_of_uniqueness, multiplicative_closure,
                       per_infinity, sep_sets)
from .gelfand import CharacterSpace, GelfandIsomorphism, character_space, gelfand_transform

__version__ = '0.1.0'

__all__ = [
    'CrossedContext', 'CrossedElement', 'DegreeBasis', 'center_basis', 'center_basis_oracle',
    'commutant_basis', 'commutant_basis_oracle', 'commutes', 'extract_commutant_generators',
    'is_maximal_abelian', 'multiply', 'FiniteSystem', 'PointSet', 'RotationSystem',
    'SubAlgebra', 'check_invariance', 'cycle_decomposition', 'is_domain_of_uniqueness',
    'multiplicative_closure', 'per_infinity', 'sep_sets', 'CharacterSpace',
    'GelfandIsomorphism', 'character_space', 'gelfand_transform',
]
