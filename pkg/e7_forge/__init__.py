from .composition import Octonion, Quaternion, oct_derivation, oct_mul, quat_derivation, quat_mul
from .config import Settings, get_settings
from .e7mat import read_e7mat, write_e7mat
from .errors import (DimensionMismatch, E7ForgeError, ExactFieldOverflow, FormatError, NotClosed,
                     NotCommuting, NotDiagonalizable, NotRepresentable, NotSubalgebra, NotTraceless,
                     NotUnitary, OutOfRange, PeriodMismatch, StructureMismatch, WrongType)
from .euler import (EulerChart, GroupElement, SplitHaarSampler, assemble, chart_evi, chart_split,
                    chart_split_su8, chart_tits, haar_sample_split, su8_embed, tits_density,
                    tits_ranges)
from .f4e6 import F4E6Basis, f4e6_basis
from .generators import GeneratorSet, StructureConstants, killing_signature, structure_constants, weyl_trick
from .jordan import JordanBasis, JordanMatrix, jordan_basis
from .measures import (GroupVolumeDescriptor, SymbolicVolume, covering_check, group_volume,
                       integral_closed, integral_quadrature, macdonald_volume, quotient_volume)
from .rep56 import (Rep56Set, build_56_split, build_56_tits, build_basis_evi, center_and_periods,
                    verify_iso)
from .rep133 import build_adjoint_133, jacobi_check
from .report import CheckRecord, VerificationReport
from .roots import (RootDatum, classify_e7, commutant_evi, extract_roots, restricted_roots_evi)
from .scalars import ExactScalar

__all__ = [
    'Octonion', 'Quaternion', 'oct_mul', 'quat_mul', 'oct_derivation', 'quat_derivation',
    'ExactScalar', 'JordanMatrix', 'JordanBasis', 'jordan_basis', 'F4E6Basis', 'f4e6_basis',
    'GeneratorSet', 'StructureConstants', 'structure_constants', 'killing_signature', 'weyl_trick',
    'build_adjoint_133', 'jacobi_check',
    'Rep56Set', 'build_56_tits', 'build_56_split', 'build_basis_evi', 'verify_iso', 'center_and_periods',
    'EulerChart', 'GroupElement', 'SplitHaarSampler', 'chart_tits', 'chart_split', 'chart_evi',
    'chart_split_su8', 'assemble', 'haar_sample_split', 'su8_embed', 'tits_density', 'tits_ranges',
    'SymbolicVolume', 'GroupVolumeDescriptor', 'macdonald_volume', 'quotient_volume', 'group_volume',
    'integral_closed', 'integral_quadrature', 'covering_check',
    'RootDatum', 'extract_roots', 'classify_e7', 'restricted_roots_evi', 'commutant_evi',
    'CheckRecord', 'VerificationReport', 'read_e7mat', 'write_e7mat', 'Settings', 'get_settings',
    'E7ForgeError', 'ExactFieldOverflow', 'DimensionMismatch', 'NotClosed', 'NotSubalgebra',
    'PeriodMismatch', 'StructureMismatch', 'OutOfRange', 'NotUnitary', 'NotCommuting',
    'NotDiagonalizable', 'WrongType', 'NotRepresentable', 'NotTraceless', 'FormatError',
]
