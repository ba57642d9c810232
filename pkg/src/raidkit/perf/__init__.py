"""Analytic disk and array performance."""
from .disk import (ServiceMoments, Dist, Deterministic, Exponential, Uniform, Discrete,
                   Convolution, DiskGeometry, WorkloadMix, seek_pmf, zbr_seek_pmf, pmf_mean,
                   seek_moments, seek_dist, latency_moments, transfer_moments, f_sr,
                   service_moments, default_geometry)
from .queues import (UnstableQueueError, mm1, mmm, erlang_c, mg1, MG1Result, priority_wait,
                     percentile_tools, lambda_for_percentile, gim1_erlang2, balanced_example)
from .forkjoin import harmonic, fj_response, fj_max_asymmetric2, expected_max_erlang
from .raid import (degraded_load, VacationSpec, disk_vacations, numeric_lst_moments,
                   vsm_rebuild, VSMResult, rebuild_shortcuts, pcm_vs_vsm)
from .misc import (lfs_bso, ioe, satf_scale, seek_minmax, delayed_encoding,
                   optimal_routing, misc_formulas)
from .quad import adaptive_simpson
