"""Erasure-code layouts, encoders, decoders and repair metrics."""
from .layout import (Group, StripeLayout, UnrecoverableError, check_parities, decode,
                     decode_or_raise, encode, expand_erasures, random_stripe, recoverable,
                     recoverable_by_generator, recoverable_many)
from .arrays import (is_prime, layout_raid5, rdp_decode, rdp_encode, rdp_layout, rdp_xor_count,
                     rebuild_with_plan, single_rebuild_plan, xcode_decode, xcode_layout,
                     xcode_membership)
from .hvpc import hvpc_decode, hvpc_encode, hvpc_layout, hvpc_upcode, redundancy, tolerated_faults
from .lrc import (SearchExhaustedError, azure_layout, decodable_fraction, itd, itd_patterns,
                  lrc_build, lrc_layout)
from .metrics import RepairCostReport, azure_arc_closed, cell_costs, repair_metrics
from .misc import (hamming_locate, parity_2d_example, parity_3d_example, rs_parity_matrix,
                   xorbas_local_parities)
from .pmds import (EnumerationLimitError, cases, pmds_example, pmds_layout, pmds_sd_check,
                   sd_only_example, search_pmds)
from .recover import xor_recoverable, xor_recoverable_labels

xcode_single_rebuild_plan = single_rebuild_plan
