"""XOR-combinable random fingerprints for fast set-equality checks.

A set is identified by the XOR of the fingerprints of its members; the
fingerprint of the empty set is 0.  Two distinct sets collide with
probability 2**-FINGERPRINT_BITS per comparison.
"""

from __future__ import annotations

import numpy as np

FINGERPRINT_BITS = 128

Fingerprint = int


def draw_fingerprint(rng: np.random.Generator) -> Fingerprint:
    """Draw one nonzero 128-bit fingerprint from a seeded generator."""
    while True:
        value = int.from_bytes(rng.bytes(FINGERPRINT_BITS // 8), "little")
        if value:
            return value


def draw_fingerprints(rng: np.random.Generator, count: int) -> list[Fingerprint]:
    return [draw_fingerprint(rng) for _ in range(count)]


def xor_all(fingerprints) -> Fingerprint:
    acc = 0
    for f in fingerprints:
        acc ^= f
    return acc
