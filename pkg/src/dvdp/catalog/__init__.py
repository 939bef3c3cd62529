"""Catalog of explicit surfaces, Dynkin-type algebra and end-to-end verification."""

from .dynkin import DynkinType, dynkin_parse, dynkin_rank
from .entries import (CatalogEntry, CatalogError, build_surface, constraint_holds, default_parameters,
                      get_entry, load_catalog, parameter_domain_check, parse_parameters, registry,
                      registry_contains)
from .param import PARAMETRIZATIONS, ParametrizationResult, verify_parametrization
from .verify import (SurfaceAnalysis, VerificationError, VerificationReport, analyze_surface, verify_entry,
                     verify_family)
