"""Variance of partial sums of stationary Gaussian sequences from their spectral measure."""

from ._specvar import (
    DomainError,
    SpecvarError,
    IoError,
    NumericError,
    SpectralMeasure,
    ValidationError,
    autocovariances,
    c_gamma,
    d_gamma,
    empirical_variance,
    fejer_kernel,
    g_eval,
    gallery,
    robinson_integral,
    run_cli,
    sandwich,
    simulate,
    variance_covariance,
    variance_many,
    variance_spectral,
)

__all__ = [
    "DomainError",
    "SpecvarError",
    "IoError",
    "NumericError",
    "SpectralMeasure",
    "ValidationError",
    "autocovariances",
    "c_gamma",
    "d_gamma",
    "empirical_variance",
    "fejer_kernel",
    "g_eval",
    "gallery",
    "robinson_integral",
    "run_cli",
    "sandwich",
    "simulate",
    "variance_covariance",
    "variance_many",
    "variance_spectral",
]
