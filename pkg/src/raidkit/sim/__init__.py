"""Seeded Monte Carlo reliability simulation."""
from .engine import SimConfig, SimReport, run_replications, summarize
from .models import (simulate_hraid, simulate_kofn_repair, simulate_copyset, simulate_static_loss,
                     kofn_chain, absorption_time, window_loss_mask, HRAID_MODES)
