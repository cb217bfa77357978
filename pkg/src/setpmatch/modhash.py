"""Prime fields and Karp-Rabin style polynomial hashes."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)

# Both are Mersenne primes.  Layer 1 stays far below the layer 2/3 cap so the
# layer-2 collision term p1/p2 remains small once the caps bind.
FIELD_CAP = (1 << 61) - 1
LAYER1_CAP = FIELD_CAP >> 16
MAX_REPETITIONS = 16
# Primes are sized for at least this many text positions, so short inputs do
# not end up with single-digit fields.
MIN_SIZING_LENGTH = 1024

# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    if n <= 2:
        return 2
    c = n | 1
    while not is_prime(c):
        c += 2
    return c


def modpow(base: int, exp: int, p: int) -> int:
    if exp < 0:
        raise ValueError("negative exponent")
    return pow(base, exp, p)


@dataclass(frozen=True)
class FieldParams:
    p: int
    r: int
    r_inv: int = 0

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if not 1 <= self.r <= self.p - 1:
            raise ValueError("r must lie in [1, p-1]")
        if self.r_inv == 0:
            object.__setattr__(self, "r_inv", pow(self.r, -1, self.p))
        elif self.r * self.r_inv % self.p != 1:
            raise ValueError("r_inv is not the inverse of r")

    @classmethod
    def draw(cls, p: int, rng: np.random.Generator) -> "FieldParams":
        return cls(p, int(rng.integers(1, p)))


@dataclass(frozen=True)
class HashParams:
    """Three hash fields plus the seed and repetition count they came from.

    ``index`` says which of the ``repetitions`` independent draws this is;
    :meth:`instances` expands the full set.
    """

    layer1: FieldParams
    layer2: FieldParams
    layer3: FieldParams
    seed: int = 0
    repetitions: int = 1
    index: int = 0

    def __post_init__(self):
        if self.layer2.p <= self.layer1.p:
            raise ValueError("layer-2 prime must exceed the layer-1 prime")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")

    def instances(self) -> list["HashParams"]:
        out = []
        for j in range(self.repetitions):
            if j == self.index:
                out.append(self)
                continue
            f1, f2, f3 = _draw_fields((self.layer1.p, self.layer2.p, self.layer3.p), self.seed, j)
            out.append(replace(self, layer1=f1, layer2=f2, layer3=f3, index=j))
        return out

    def to_text(self) -> str:
        a, b, c = self.layer1, self.layer2, self.layer3
        return (
            f"p1={a.p} r1={a.r} p2={b.p} r2={b.r} p3={c.p} r3={c.r} "
            f"seed={self.seed} k={self.repetitions} rep={self.index}"
        )

    @classmethod
    def from_text(cls, text: str) -> "HashParams":
        kv = dict(item.split("=", 1) for item in text.split())
        v = {k: int(x) for k, x in kv.items()}
        return cls(
            FieldParams(v["p1"], v["r1"]),
            FieldParams(v["p2"], v["r2"]),
            FieldParams(v["p3"], v["r3"]),
            seed=v["seed"],
            repetitions=v["k"],
            index=v.get("rep", 0),
        )


def _draw_fields(primes: Sequence[int], seed: int, index: int) -> tuple[FieldParams, ...]:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    return tuple(FieldParams.draw(p, rng) for p in primes)


def error_bound(n: int, m: int, sigma: int, p1: int, p2: int, p3: int) -> float:
    """Union bound on a false positive for one repetition over all windows."""
    return n * (m * sigma * sigma / p1 + m * p1 / p2 + m / p3)


def select_primes(
    n: int,
    m: int,
    sigma: int,
    target: float | None = None,
    seed: int = 0,
    repetitions: int | None = None,
    min_n: int = MIN_SIZING_LENGTH,
) -> HashParams:
    """Pick the three primes for a text of length ``n`` and pattern length ``m``.

    Uncapped sizes are ``4n^2 sigma^2 m``, ``4n^2 m p1`` and ``4n^2 m``, which
    keep one repetition under ``target`` (default ``1/n``).  When layer 2 would
    exceed the 61-bit field, layer 1 is rebalanced to ``sigma * sqrt(p2)`` and
    the repetition count is raised instead.  Sizing uses ``max(n, min_n)`` in
    place of ``n``.
    """
    if not (n >= m >= 1 and sigma >= 1):
        raise ValueError("need n >= m >= 1 and sigma >= 1")
    if target is None:
        target = 1.0 / n
    size_n = max(n, min_n)
    nnm4 = 4 * size_n * size_n * m
    b1 = nnm4 * sigma * sigma
    if nnm4 * b1 > FIELD_CAP:
        b1 = min(b1, sigma * math.isqrt(FIELD_CAP), LAYER1_CAP)
    p1 = next_prime(b1)
    p2 = next_prime(min(nnm4 * p1, FIELD_CAP))
    p3 = next_prime(min(nnm4, FIELD_CAP))

    if repetitions is None:
        bound = error_bound(n, m, sigma, p1, p2, p3)
        if bound <= target:
            repetitions = 1
        elif bound < 1:
            repetitions = min(MAX_REPETITIONS, math.ceil(math.log(target) / math.log(bound)))
        else:
            log.warning("per-repetition error bound %.3g is vacuous; using %d repetitions", bound, MAX_REPETITIONS)
            repetitions = MAX_REPETITIONS
    f1, f2, f3 = _draw_fields((p1, p2, p3), seed, 0)
    return HashParams(f1, f2, f3, seed=seed, repetitions=repetitions)


def seq_hash(a: Iterable[int], f: FieldParams) -> int:
    h, x, p = 0, 1, f.p
    for v in a:
        h = (h + v * x) % p
        x = x * f.r % p
    return h


def multiset_hash(values: Iterable[int], f: FieldParams) -> int:
    p, r = f.p, f.r
    h = 0
    for v in values:
        if v >= p:
            raise ValueError(f"value {v} outside the field universe")
        h += pow(r, v, p)
    return h % p


def rolling_update(h: int, leaving: int, entering: int, f: FieldParams, m: int) -> int:
    """Window hash at ``i+1`` from the one at ``i``."""
    p = f.p
    return ((h - leaving) * f.r_inv + entering * pow(f.r, m - 1, p)) % p
