"""Local analysis of rational double points: Tjurina numbers, resolution graphs, ADE types."""

from .artin import (ADEType, Classification, ClassificationError, artin_form, artin_forms,
                    artin_tau_table, classify, classify_ade, needs_coindex)
from .local import LocalModel, LocalModelError, local_equation, local_model, tjurina_ideal, tjurina_number
from .resolve import (DEFAULT_MAX_DEPTH, DepthLimitError, DualGraph, NeedsExtension, ResolutionError,
                      resolve_dual_graph)
