"""Deterministic counter-based randomness.

Every random draw in pairlab is a pure function of (label, seed, index):
SHAKE-256 over the ASCII key "pairlab:<label>:<seed>:<index>" supplies the
bytes. Draws therefore do not depend on call order, thread count, or
platform, which is what makes same-seed runs byte-identical and lets
--threads leave results unchanged.

Labels namespace the streams (one label per sampling site) so that e.g.
the Monte Carlo alphas and the Bourgain inclusion draws never share bytes
even under the same user seed.
"""
from __future__ import annotations

import hashlib

import numpy as np


def keystream(label: str, seed: int, index: int, nbytes: int) -> bytes:
    key = f"pairlab:{label}:{seed}:{index}".encode("ascii")
    return hashlib.shake_256(key).digest(nbytes)


def uniform_bits(label: str, seed: int, index: int, bits: int) -> int:
    """Uniform integer in [0, 2**bits)."""
    nbytes = (bits + 7) // 8
    value = int.from_bytes(keystream(label, seed, index, nbytes), "big")
    return value >> (nbytes * 8 - bits)


def u64_array(label: str, seed: int, index: int, count: int) -> np.ndarray:
    """Uniform uint64 array; '<u8' keeps the lane order byte-stable."""
    raw = keystream(label, seed, index, count * 8)
    return np.frombuffer(raw, dtype="<u8").copy()


def unit_floats(label: str, seed: int, index: int, count: int) -> np.ndarray:
    """Uniform float64 array in [0, 1)."""
    return u64_array(label, seed, index, count) / 2.0**64
