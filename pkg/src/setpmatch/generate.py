"""Random instance generation with planted matches."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .setstring import Alphabet, Bijection, SetString, apply_bijection


@dataclass(frozen=True)
class GenSpec:
    n: int
    m: int
    sigma: int
    density: float = 1.0
    planted: int = 0
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.m <= self.n:
            raise ValueError("need 1 <= m <= n")
        if self.sigma < 1:
            raise ValueError("sigma must be >= 1")
        if not 0 < self.density <= self.sigma:
            raise ValueError("density must lie in (0, sigma]")
        if not 0 <= self.planted <= self.n - self.m + 1:
            raise ValueError("planted must lie in [0, n - m + 1]")
        if self.planted * self.m > self.n:
            raise ValueError(f"cannot place {self.planted} disjoint windows of length {self.m} in {self.n}")


@dataclass
class Instance:
    pattern: SetString
    text: SetString
    alphabet: Alphabet
    plants: list[tuple[int, Bijection]] = field(default_factory=list)  # 1-based start

    @property
    def planted_positions(self) -> list[int]:
        return [pos for pos, _ in self.plants]


def make_alphabet(sigma: int) -> Alphabet:
    return Alphabet(f"c{j}" for j in range(1, sigma + 1))


def random_sets(rng: np.random.Generator, n: int, sigma: int, density: float) -> list[frozenset[int]]:
    """``n`` positions whose sizes are Binomial(sigma, density/sigma)."""
    sizes = rng.binomial(sigma, density / sigma, size=n)
    out = []
    for k in sizes:
        k = int(k)
        if 4 * k > sigma:
            chosen = rng.choice(sigma, size=k, replace=False) + 1
            out.append(frozenset(int(c) for c in chosen))
            continue
        s: set[int] = set()
        while len(s) < k:
            s.update(int(c) for c in rng.integers(1, sigma + 1, size=k - len(s)))
        out.append(frozenset(s))
    return out


def random_setstring(rng: np.random.Generator, n: int, sigma: int, density: float, alphabet: Alphabet | None = None) -> SetString:
    return SetString(tuple(random_sets(rng, n, sigma, density)), alphabet)


def random_bijection(rng: np.random.Generator, sigma: int) -> Bijection:
    perm = rng.permutation(sigma) + 1
    return Bijection({j + 1: int(perm[j]) for j in range(sigma)})


def generate(spec: GenSpec) -> Instance:
    rng = np.random.default_rng(spec.seed)
    alphabet = make_alphabet(spec.sigma)
    pattern = random_setstring(rng, spec.m, spec.sigma, spec.density, alphabet)
    text = list(random_sets(rng, spec.n, spec.sigma, spec.density))
    plants = []
    if spec.planted:
        k = spec.planted
        # k sorted distinct slots, spread apart so windows do not overlap
        slots = np.sort(rng.choice(spec.n - k * (spec.m - 1), size=k, replace=False))
        for j, slot in enumerate(slots):
            start = int(slot) + j * (spec.m - 1)
            pi = random_bijection(rng, spec.sigma)
            text[start : start + spec.m] = apply_bijection(pattern, pi).positions
            plants.append((start + 1, pi))
    return Instance(pattern, SetString(tuple(text), alphabet), alphabet, plants)


def random_pair(rng: np.random.Generator, n: int, sigma: int, density: float) -> tuple[SetString, SetString]:
    """A pair of equal-length set-strings, biased toward hard cases.

    Roughly a third are renamed copies (matches), a third are renamed copies
    with one occurrence moved to another character at the same position
    (cardinalities preserved), and the rest are independent draws.
    """
    s1 = random_setstring(rng, n, sigma, density)
    kind = rng.integers(3)
    if kind == 2:
        return s1, random_setstring(rng, n, sigma, density)
    s2 = list(apply_bijection(s1, random_bijection(rng, sigma)).positions)
    if kind == 1:
        spots = [i for i, pos in enumerate(s2) if 0 < len(pos) < sigma]
        if spots:
            i = spots[int(rng.integers(len(spots)))]
            pos = sorted(s2[i])
            out = pos[int(rng.integers(len(pos)))]
            free = [c for c in range(1, sigma + 1) if c not in s2[i]]
            into = free[int(rng.integers(len(free)))]
            s2[i] = (s2[i] - {out}) | {into}
    return s1, SetString(tuple(s2))
