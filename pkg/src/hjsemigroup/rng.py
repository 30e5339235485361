"""Counter-based random streams keyed by (seed, variable index, sample index).

Draws come from numpy's Philox4x64-10.  The 128-bit key is ``(seed, variable)``
and sample ``i`` reads the 4-word output block produced at counter
``(i + 1, slot, 0, 0)``.  A draw is therefore a pure function of
``(seed, variable, sample, slot)``: chunking a run across workers cannot change
any value.
"""

from __future__ import annotations

import numpy as np

GENERATOR_NAME = "numpy.random.Philox (Philox4x64-10)"
KEYING_SCHEME = "key=(seed mod 2^64, variable_index); sample i -> output block at counter (i+1, slot, 0, 0)"
WORDS_PER_BLOCK = 4

_MASK = (1 << 64) - 1
_TO_UNIT = 2.0**-53


class CounterRng:
    def __init__(self, seed: int):
        self.seed = int(seed)

    def raw_blocks(self, variable: int, start: int, count: int, slot: int = 0) -> np.ndarray:
        """uint64 array of shape ``(count, 4)``; row ``r`` belongs to sample ``start + r``."""
        key = np.array([self.seed & _MASK, variable & _MASK], dtype=np.uint64)
        counter = np.array([start & _MASK, slot & _MASK, 0, 0], dtype=np.uint64)
        bitgen = np.random.Philox(key=key, counter=counter)
        return bitgen.random_raw(WORDS_PER_BLOCK * count).reshape(count, WORDS_PER_BLOCK)

    def uniforms(self, variable: int, start: int, count: int, slot: int = 0) -> np.ndarray:
        """Doubles in ``[0, 1)`` with 53 random bits, shape ``(count, 4)``."""
        return (self.raw_blocks(variable, start, count, slot) >> np.uint64(11)).astype(np.float64) * _TO_UNIT

    def normals(self, variable: int, start: int, count: int, dim: int) -> np.ndarray:
        """Standard normals via Box-Muller, shape ``(count, dim)``.

        Each block of 4 uniforms yields 4 normals; block ``b`` of a sample lives
        in counter slot ``b``.
        """
        cols = []
        for slot in range((dim + 3) // 4):
            u = self.uniforms(variable, start, count, slot)
            for a, b in ((0, 1), (2, 3)):
                radius = np.sqrt(-2.0 * np.log1p(-u[:, a]))
                angle = 2.0 * np.pi * u[:, b]
                cols.append(radius * np.cos(angle))
                cols.append(radius * np.sin(angle))
        return np.stack(cols[:dim], axis=1)
