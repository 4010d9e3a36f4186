"""Deterministic random generators derived from one integer seed."""

import hashlib

import numpy as np


def label_entropy(label: str) -> int:
    """Stable 64-bit integer for a label."""
    digest = hashlib.blake2b(label.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def derive_rng(seed: int, label: str) -> np.random.Generator:
    """
    Build the generator used by one consumer of randomness.

    Args:
        seed: Global seed of the run.
        label: Name of the consumer, e.g. ``"vankampen.map"``.

    Returns:
        np.random.Generator: Generator seeded from ``(seed, label)``.
    """
    sequence = np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, label_entropy(label)])
    return np.random.default_rng(sequence)
