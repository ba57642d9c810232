"""raidkit: erasure codes, RAID layouts, reliability and queueing models."""
from ._kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND"]
