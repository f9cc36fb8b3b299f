"""Exact linear algebra over Z, Q and F_p."""

from .matrix import IntMatrix, hstack, vstack, block_diagonal, kron, determinant
from .snf import (SmithForm, smith_normal_form, elementary_divisors, integer_kernel, solve_integer, Cancelled,
                  sparse_elementary_divisors)
from .abgroup import (FgAbGroup, AbMap, NotWellDefined, kernel, image, cokernel, intersect_subgroups,
                      homology_of_complex, factor_through, preimage_element, direct_sum_groups,
                      direct_sum_maps, parse_ring, rank_over)
from .modp import rank_mod_p, nullspace_mod_p, solve_mod_p, Echelon
