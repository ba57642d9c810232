"""Seed derivation.

Streams are keyed by (master seed, index) through a splitmix64 mixer and the
resulting 64-bit value seeds a PCG64 generator::

    z = (x + 0x9E3779B97F4A7C15) mod 2^64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2^64
    splitmix64(x) = z ^ (z >> 31)
    stream_seed(seed, i) = splitmix64(splitmix64(seed) ^ splitmix64(i + 0x632BE59BD9B4E019))
"""
import numpy as np

M64 = (1 << 64) - 1


def splitmix64(x):
    z = (x + 0x9E3779B97F4A7C15) & M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
    return z ^ (z >> 31)


def stream_seed(seed, index):
    return splitmix64(splitmix64(int(seed) & M64) ^ splitmix64((int(index) + 0x632BE59BD9B4E019) & M64))


def stream(seed, index):
    """Independent generator for replication/row-group ``index``."""
    return np.random.Generator(np.random.PCG64(stream_seed(seed, index)))
