"""Persistence barcodes of tunnel block clouds, LS-SVM feature prediction, blast loads."""

from ._core import (
    DEFAULT_MAX_FILTRATION,
    DEFAULT_WARNING_THRESHOLD,
    Barcode,
    InputError,
    LssvmModel,
    NumericalError,
    PersistencePair,
    betti_numbers,
    evaluate_warning,
    extract_features,
    feature_category,
    fixture_series,
    kkt_residual,
    load_profile,
    paper_load,
    persistence,
    persistent_betti,
    run_all,
    train_classifier,
    train_regressor,
)

__all__ = [
    "DEFAULT_MAX_FILTRATION",
    "DEFAULT_WARNING_THRESHOLD",
    "Barcode",
    "InputError",
    "LssvmModel",
    "NumericalError",
    "PersistencePair",
    "betti_numbers",
    "evaluate_warning",
    "extract_features",
    "feature_category",
    "fixture_series",
    "kkt_residual",
    "load_profile",
    "paper_load",
    "persistence",
    "persistent_betti",
    "run_all",
    "train_classifier",
    "train_regressor",
]
