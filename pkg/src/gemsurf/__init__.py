"""Uniform sampling of graph-encoded surfaces with exact correction weights."""

from .gem import GemTopology, StandardFormGem, genus, is_connected, max_genus, num_vertices
from .oracle import EnumerationReport, VerificationVerdict, enumerate_space, verify_sampler
from .perm import (
    CycleStructure,
    Partition,
    Permutation,
    canonical_representative,
    centralizer_order,
    partition_from_multiplicities,
    partitions,
    sample_partition,
    sample_permutation,
)
from .sampler import (
    BatchConfig,
    WeightedSampleRecord,
    draw_connected_pair,
    draw_one,
    read_records,
    run_batch,
    worker_seed,
    write_csv,
    write_jsonl,
    write_records,
)
from .stats import (
    MeanGenusFit,
    StabilityReport,
    WeightedStats,
    aggregate,
    fit_mean_genus,
    stability_report,
)
from .symmetry import (
    COLOUR_ROLE_PERMUTATIONS,
    ColourSwapImage,
    SymmetryReport,
    Weight,
    are_colour_preserving_isomorphic,
    colour_preserving_signature,
    colour_swap,
    colour_swap_images,
    compute_weight,
    count_colour_preserving_symmetries,
    isomorphism_signature,
)

__version__ = "0.1.0"
