"""Deterministic random streams.

All randomness in the package flows from one integer master seed.
Sub-streams are derived by index: stream (seed, i0, i1, ...) seeds a
Mersenne Twister with the big-endian integer value of
SHA-256("seed/i0/i1/...").  Derivation is pure, so parallel workers can
recreate any sub-stream regardless of scheduling, and results are
platform-independent.  This generator is part of the golden-test
contract: changing it invalidates pinned sample values.
"""

import hashlib
import random


def substream(master_seed: int, *indices: int) -> random.Random:
    """Return the deterministic sub-stream for the given index path."""
    tag = "/".join(str(i) for i in (master_seed, *indices)).encode("ascii")
    value = int.from_bytes(hashlib.sha256(tag).digest(), "big")
    return random.Random(value)
