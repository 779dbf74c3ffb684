# Sort Engine
from sortengine.perms import Permutation, parse_permutation, format_permutation
from sortengine.machine import PatternSet, CLASSICAL, DEFAULT, apply, apply_traced
from sortengine.structure import decompose, is_half_decreasing
from sortengine.dynamics import OrbitSummary, orbit, ord_of
