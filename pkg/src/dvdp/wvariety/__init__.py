"""Weighted-projective surface models and certified singular-locus search."""

from .surface import (DEFAULT_K_MAX, AffineChart, BasePoint, CertificateError,
                      CompletenessCertificate, NonIsolatedError, SingularPoint, SurfaceError,
                      SurfaceModel, base_point_check, charts, default_k_max, singular_point_check,
                      singular_points, surface_create)
