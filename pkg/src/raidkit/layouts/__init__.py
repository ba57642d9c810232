from .clustered import (DATA, PARITY, SPARE, EMPTY, ClusteredLayout, BIBDDesign, BIBD_10_4_COLUMNS,
                        bibd_builtin_10_4, bibd_complete, bibd_check, bibd_layout, durstenfeld,
                        sequential_fill, nrp_rows_per_permutation, nrp_layout, shifted_layout,
                        raid5_clustered, raid4_clustered, reconstruction_reads, layout_properties)
from .copysets import (CopysetPlan, EnumerationLimitError, copysets_permutation,
                       copysets_random_window, copyset_pdl_exact, window_loss)
from .mirror import ORGS, MirrorMap, mirror_map, survivable_closed
