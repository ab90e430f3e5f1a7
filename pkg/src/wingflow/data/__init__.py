"""Design-space sampling, dataset generation, storage, splits, and PCA."""

from .design_space import DesignSpace, sample_conditions, sample_shape
from .generate import (
    DatasetManifest,
    generate_dataset,
    iter_records,
    load_manifest,
    load_shapes,
    sample_filename,
)
from .pca import ModeAnalysis, pca_modes
from .records import SampleRecord, read_sample, write_sample
from .splits import split_folds
from .training_data import FlowStats, TrainingData

__all__ = [
    "DesignSpace",
    "sample_shape",
    "sample_conditions",
    "generate_dataset",
    "DatasetManifest",
    "load_manifest",
    "load_shapes",
    "iter_records",
    "sample_filename",
    "SampleRecord",
    "read_sample",
    "write_sample",
    "split_folds",
    "pca_modes",
    "ModeAnalysis",
    "FlowStats",
    "TrainingData",
]
