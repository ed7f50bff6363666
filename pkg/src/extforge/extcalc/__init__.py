"""Graded modules, minimal resolutions and Ext charts."""

from .modules import (FPModule, check_equivariant, cyclic_quotient, direct_sum,
                      equivariant_maps, free_module, induced_module, kernel_module,
                      module_isomorphic, quotient_module, shift, trivial_module, truncate)
from .resolution import (ExtChart, Resolution, compute_chart, ext_operation, shapiro_chart,
                         minimal_resolution, operation_degree)
from .library import (APPENDIX_DECOMPOSITIONS, HBP3, N3, AmodSq1, Qbar, Qbar_as_kernel,
                      appendix_module, appendix_names, builtin_module)

__all__ = [
    "FPModule", "check_equivariant", "cyclic_quotient", "direct_sum", "equivariant_maps",
    "free_module", "induced_module", "kernel_module", "module_isomorphic", "quotient_module",
    "shift", "trivial_module", "truncate", "ExtChart", "Resolution", "compute_chart",
    "ext_operation", "shapiro_chart", "minimal_resolution", "operation_degree", "APPENDIX_DECOMPOSITIONS",
    "HBP3", "N3", "AmodSq1", "Qbar", "Qbar_as_kernel", "appendix_module", "appendix_names",
    "builtin_module",
]
