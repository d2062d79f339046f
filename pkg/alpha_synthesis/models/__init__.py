"""
Package models

Expose les classes principales pour l'import depuis `alpha_synthesis.models`.
"""

from .grid import LineGrid, SampledFunction1D, PlaneGrid, PlaneFunction
from .operator import KernelOperator, SchattenExponent
from .hermite import HermiteBasis
from .mollifier import MollifierFamily, ConstantsLedger, DecayRow, DecayTable
from .report import Check, Report

__all__ = [
	"LineGrid",
	"SampledFunction1D",
	"PlaneGrid",
	"PlaneFunction",
	"KernelOperator",
	"SchattenExponent",
	"HermiteBasis",
	"MollifierFamily",
	"ConstantsLedger",
	"DecayRow",
	"DecayTable",
	"Check",
	"Report",
]
