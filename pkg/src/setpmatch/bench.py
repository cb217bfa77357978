"""Scaling benchmarks driven by the matcher's step counters."""
from __future__ import annotations

import time
from dataclasses import dataclass

from .generate import GenSpec, generate
from .matcher import scan
from .modhash import select_primes


@dataclass(frozen=True)
class BenchRow:
    sweep: str  # "size" or "alphabet"
    n: int
    m: int
    sigma: int
    N: int
    M: int
    steps: int
    elapsed: float

    FIELDS = ("sweep", "n", "m", "sigma", "N", "M", "steps", "elapsed")

    def as_tsv(self, timing: bool = True) -> str:
        vals = [self.sweep, self.n, self.m, self.sigma, self.N, self.M, self.steps]
        vals.append(f"{self.elapsed:.4f}" if timing else "-")
        return "\t".join(str(v) for v in vals)


def measure(n: int, m: int, sigma: int, density: float, seed: int, sweep: str) -> BenchRow:
    inst = generate(GenSpec(n=n, m=m, sigma=sigma, density=density, seed=seed))
    params = select_primes(n, m, sigma, seed=seed, repetitions=1)
    t0 = time.perf_counter()
    _, steps = scan(inst.pattern, inst.text, params)
    elapsed = time.perf_counter() - t0
    return BenchRow(sweep, n, m, sigma, inst.text.size, inst.pattern.size, steps, elapsed)


def size_sweep(sizes, m: int = 16, sigma: int = 64, density: float = 2.0, seed: int = 0) -> list[BenchRow]:
    """Doubling text sizes; ``sizes`` are target totals N, so n = N / density."""
    return [measure(max(m, round(N / density)), m, sigma, density, seed, "size") for N in sizes]


def alphabet_sweep(N: int, sigmas, m: int = 16, density: float = 2.0, seed: int = 0) -> list[BenchRow]:
    n = max(m, round(N / density))
    return [measure(n, m, s, min(density, s), seed, "alphabet") for s in sigmas]


def ratios(rows: list[BenchRow]) -> list[float]:
    return [b.steps / a.steps for a, b in zip(rows, rows[1:])]


def spread(rows: list[BenchRow]) -> float:
    """Relative spread ``(max - min) / min`` of step counts."""
    s = [r.steps for r in rows]
    return (max(s) - min(s)) / min(s)
