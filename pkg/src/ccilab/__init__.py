"""Circuit-cocircuit intersection lab.

Matroid computations over small ground sets: CCI enumeration and spectra,
envelope minors, hyperplane-partition analysis, certified size-(k-2)
reduction for k <= 7, and batch conjecture verification over catalogs.
"""

from .bitset import capacity, full_mask, index_tuple, mask_of, set_capacity
from .cci import (
    CCIRecord,
    CCISpectrum,
    cci_spectrum,
    ccis_via_complements,
    ccis_via_pairs,
    check_duality_closure,
    check_minor_closure,
)
from .envelope import Envelope, all_envelopes, build_envelope, is_envelope
from .matroid import Matroid, compress_mask, expand_mask, surviving_labels
from .partitions import (
    HPartition,
    InducedPartition,
    all_partitions,
    cohyperplane_partition,
    hyperplane_partition,
    induced,
    lemma_a_certificate,
    lemma_b_facts,
    lemma_c_certificate,
    lemma_d_containment,
    partition_type_census,
)
from .reduction import (
    Certificate,
    brute_force_certificate,
    reduce_envelope,
    validate_certificate,
    verify_conjecture,
)
from .catalog import (
    find_counterexample_k1,
    gen_catalog,
    read_matroid_file,
    run_verify,
    write_matroid_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
