"""Reproducible, splittable random streams.

A stream is identified by ``(seed, stream_id)`` and backed by the
counter-based Philox generator, keyed through :class:`numpy.random.SeedSequence`.
Two states with the same pair produce bit-identical draws, independently of
which thread or in which order they are consumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngState:
    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or not (0 <= v <= _MASK64):
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {v!r}")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=int(self.seed), spawn_key=(int(self.stream_id),))
        return np.random.Generator(np.random.Philox(ss))

    def substream(self, index: int) -> "RngState":
        """Child stream, used to split one logical stream into per-path streams."""
        # Mixing keeps (s, k).substream(j) distinct from (s, k').substream(j').
        mixed = (int(self.stream_id) * 0x9E3779B97F4A7C15 + int(index) + 1) & _MASK64
        return RngState(self.seed, mixed)


RngLike = Union[RngState, np.random.Generator, int, None]


def as_generator(rng: RngLike) -> np.random.Generator:
    """Normalise the accepted ``rng`` arguments to a numpy Generator.

    An :class:`RngState` always yields a fresh generator, so calling a sampler
    twice with the same state returns the same draw.
    """
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngState):
        return rng.generator()
    if rng is None:
        raise ValueError("an explicit rng is required; ambient entropy is not used")
    return RngState(int(rng)).generator()
