"""Twisted homology of symmetric groups and Young subgroups."""

from .groups import PermGroup, GroupError
from .resolution import (FreeResolution, ResolutionError, modular_symmetric_resolution, resolution, resolution_over,
                         symmetric_resolution, young_resolution)
from .gmodule import (GModule, ModuleError, induced_layer_module, top_piece_module, trivial_module,
                      permutation_module, module_over_ring)
from .twisted import HomologyGroup, HomologyError, TwistedComplex, twisted_homology, coinvariant_group, maschke_applies
from .bar import BarCapExceeded, bar_homology
from .shapiro import ShapiroCertificate, ShapiroCell, bar_cells, describe_over, same_homology, shapiro_reduce
from .stability import (Caps, CapExceeded, NotEquivariant, HomologyTable, StabilityReport, StabilityCell,
                        stabilisation_maps, stability_report, left_inverse, in_stable_range)
from .dold import DoldData, DoldResult, dold_splitting, coinvariant_data, toy_data, check_hypothesis
