from .basic import (HOURS_PER_YEAR, DriveParams, afr_from_mttf, kofn_no_repair, DegenerateRootsError,
                    raid5_roots, raid5_transient, raid5_mttdl, mttdl_closed_form, birth_death_mtta,
                    kofn_rates, kofn_mttdl)
from .ctmc import (CTMCModel, SingularChainError, ctmc_mtta, ctmc_transient, raid5_chain,
                   birth_death_chain)
from .lse import (DEFAULT_BURST, LSEParams, binom_tail, pseg, segments_per_disk, puf,
                  puf_raid6_single, mttdl_lse, mttdl_raid5_lse, mttdl_raid6_lse, raid5_lse_chain,
                  raid6_lse_chain, scrub_error_prob, scrub_error_prob_approx, ioe, sigma_max,
                  InfeasibleLoadError, scrub_min_period)
from .poly import (ReliabilityPolynomial, enumerate_poly, mirror_poly, mirror_loss_predicate,
                   code_loss_predicate, lsi_disks, sspiral_disks, hybrid_poly, raid_poly,
                   raid15_predicate, raid51_predicate, TABLE_TERMS, DERIVED_TERMS, system_poly,
                   shortcut_term, numeric_slope, raid15_reliability, raid51_reliability,
                   hda_compare, hda_terms)
from .models import (raid15_mttdl_approx, raid15_mttdl_exact, raid51_path, multilevel_mttdl,
                     placement_metrics, expected_loss, diffraid_aging, ExpMixture, exp_mixture_mttf,
                     raid5_mixture, lrc_chain, lrc_mttdl)
