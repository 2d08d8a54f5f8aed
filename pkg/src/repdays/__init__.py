"""repdays: representative-day scenarios from hourly load/solar time series.

Multi-year hourly data is segmented into day profiles, compared with
time-normalized dynamic time warping, grouped by hierarchical clustering
(with a Euclidean K-Means baseline), validated with warping-aware and
traditional indices, and summarized as JSON/CSV/SVG scenario reports.
"""

from .clustering import (
    ClusterModel,
    Merge,
    MergeHistory,
    ahc,
    compute_centroids,
    cut,
    kmeans,
    load_model,
    medoid,
    save_model,
)
from .data import HOURS_PER_DAY, Dataset, DayProfile, load_dataset, save_dataset
from .dtw import (
    DistanceMatrix,
    WarpingPath,
    brute_force_dtw,
    distance_matrix,
    dtw_distance,
    iter_warping_paths,
    load_distance_matrix,
    multivariate_dtw,
    profile_distances_to,
    resolve_weights,
    save_distance_matrix,
)
from .ingest import (
    CsvSchema,
    Exclusion,
    FormatError,
    ParseResult,
    RawRecord,
    RowError,
    build_days,
    denormalize,
    normalize,
    parse_csv,
    save_exclusions,
)
from .metrics import (
    MetricSweep,
    SweepRow,
    ValidationReport,
    calinski_harabasz,
    cohesion_score,
    davies_bouldin,
    day_centroid_distances,
    evaluate,
    load_sweep_csv,
    ma_scores,
    mc_scores,
    report_to_json,
    separation_score,
    silhouette,
    sweep,
    sweep_to_csv,
    sweep_to_json,
)
from .report import (
    ClusterSection,
    ScenarioReport,
    build_report,
    emit_csv,
    emit_json,
    emit_svg,
    monthly_histogram,
    report_from_json,
    seasonal_coherence,
    write_report_files,
)
from .rng import SplitMix64
from .synth import (
    OutlierLabel,
    SynthConfig,
    SynthResult,
    VariableSpec,
    default_config,
    generate,
    load_labels,
    write_csv,
    write_labels,
)

__version__ = "0.1.0"

__all__ = [
    "HOURS_PER_DAY",
    "ClusterModel",
    "ClusterSection",
    "CsvSchema",
    "Dataset",
    "DayProfile",
    "DistanceMatrix",
    "Exclusion",
    "FormatError",
    "Merge",
    "MergeHistory",
    "MetricSweep",
    "OutlierLabel",
    "ParseResult",
    "RawRecord",
    "RowError",
    "ScenarioReport",
    "SplitMix64",
    "SweepRow",
    "SynthConfig",
    "SynthResult",
    "ValidationReport",
    "VariableSpec",
    "WarpingPath",
    "ahc",
    "brute_force_dtw",
    "build_days",
    "build_report",
    "calinski_harabasz",
    "cohesion_score",
    "compute_centroids",
    "cut",
    "davies_bouldin",
    "day_centroid_distances",
    "default_config",
    "denormalize",
    "distance_matrix",
    "dtw_distance",
    "emit_csv",
    "emit_json",
    "emit_svg",
    "evaluate",
    "generate",
    "iter_warping_paths",
    "kmeans",
    "load_dataset",
    "load_distance_matrix",
    "load_labels",
    "load_model",
    "load_sweep_csv",
    "ma_scores",
    "mc_scores",
    "medoid",
    "monthly_histogram",
    "multivariate_dtw",
    "normalize",
    "parse_csv",
    "profile_distances_to",
    "report_from_json",
    "report_to_json",
    "resolve_weights",
    "save_dataset",
    "save_distance_matrix",
    "save_exclusions",
    "save_model",
    "seasonal_coherence",
    "separation_score",
    "silhouette",
    "sweep",
    "sweep_to_csv",
    "sweep_to_json",
    "write_csv",
    "write_labels",
    "write_report_files",
]
