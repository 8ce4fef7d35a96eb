"""Per-state action orders.

``app`` keeps model order, ``learn`` moves one preferred action to the front,
``rand`` applies a seeded permutation that depends only on the seed and the
state's descriptor, so it does not change with the order states are visited.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np


@dataclass(frozen=True)
class OrderingSpec:
    mode: str = "app"
    preferences: Mapping = field(default_factory=dict)
    seed: Optional[int] = None

    @classmethod
    def app(cls):
        return cls("app")

    @classmethod
    def learn(cls, preferences):
        return cls("learn", dict(preferences))

    @classmethod
    def rand(cls, seed=0):
        return cls("rand", seed=int(seed))

    def bind(self, system):
        """Return ``order(s) -> tuple of action indices`` for ``system`` (cached)."""
        cache = {}
        mode = self.mode
        if mode == "app":
            def order(s):
                got = cache.get(s)
                if got is None:
                    got = cache[s] = tuple(range(len(system.actions(s))))
                return got
        elif mode == "learn":
            prefs = self.preferences

            def order(s):
                got = cache.get(s)
                if got is None:
                    acts = system.actions(s)
                    got = tuple(range(len(acts)))
                    want = prefs.get(system.key(s))
                    if want is not None:
                        first = next((i for i, a in enumerate(acts) if a.name == want), None)
                        if first is not None:
                            got = (first,) + tuple(i for i in got if i != first)
                    cache[s] = got
                return got
        elif mode == "rand":
            seed = self.seed or 0

            def order(s):
                got = cache.get(s)
                if got is None:
                    got = cache[s] = rand_permutation(seed, system.key(s), len(system.actions(s)))
                return got
        else:
            raise ValueError(f"unknown ordering mode {mode!r}")
        return order


def _state_hash(key):
    digest = hashlib.blake2b(repr(key).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def rand_permutation(seed, key, k):
    """Permutation of ``range(k)`` from a counter-based generator keyed by (seed, state)."""
    if k <= 1:
        return tuple(range(k))
    bits = np.random.Philox(key=np.array([seed & (2 ** 64 - 1), _state_hash(key)], dtype=np.uint64))
    return tuple(int(i) for i in np.random.Generator(bits).permutation(k))
