"""Intrinsic dimension estimation from the variance of angles between neighbors."""

try:
    from ._angledim import (  # installed package: extension lives inside it
        CalibrationCache,
        beta,
        build_cache,
        default_c,
        default_k,
        en_samples,
        estimate_global,
        estimate_local,
        estimate_local_at,
        generate,
        lb_global,
        manifolds,
        qq_data,
        sigma_sq,
        theta_cdf,
        theta_mgf,
    )
except ImportError:  # build tree: extension sits on sys.path by itself
    from _angledim import (
        CalibrationCache,
        beta,
        build_cache,
        default_c,
        default_k,
        en_samples,
        estimate_global,
        estimate_local,
        estimate_local_at,
        generate,
        lb_global,
        manifolds,
        qq_data,
        sigma_sq,
        theta_cdf,
        theta_mgf,
    )

__version__ = "0.1.0"

__all__ = [
    "CalibrationCache",
    "beta",
    "build_cache",
    "default_c",
    "default_k",
    "en_samples",
    "estimate_global",
    "estimate_local",
    "estimate_local_at",
    "generate",
    "lb_global",
    "manifolds",
    "qq_data",
    "sigma_sq",
    "theta_cdf",
    "theta_mgf",
    "__version__",
]
