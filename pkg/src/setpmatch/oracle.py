"""Brute-force ground truth for small instances."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

from .offsets import exact_compare
from .setstring import SetString


class BudgetExceeded(RuntimeError):
    pass


class OracleDisagreement(AssertionError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_alphabet: int = 7
    max_work: int = 50_000_000

    def admits(self, sigma: int, n: int, avg_set: float) -> bool:
        if sigma > self.max_alphabet:
            return False
        return math.factorial(sigma) * n * max(avg_set, 1.0) <= self.max_work


def bijection_enumerate_compare(s1: SetString, s2: SetString, budget: OracleBudget = OracleBudget()) -> bool:
    """Try every permutation of the union alphabet."""
    n = len(s1)
    if n != len(s2):
        return False
    union = sorted(s1.characters() | s2.characters())
    avg = (s1.size + s2.size) / (2 * n) if n else 0.0
    if not budget.admits(len(union), n, avg):
        raise BudgetExceeded(f"alphabet of {len(union)} characters over {n} positions is over budget")
    pairs = list(zip(s1.positions, s2.positions))
    for perm in permutations(union):
        pi = dict(zip(union, perm))
        for a, b in pairs:
            if len(a) != len(b) or {pi[c] for c in a} != b:
                break
        else:
            return True
    return False


def oracle_find_matches(
    p: SetString,
    t: SetString,
    budget: OracleBudget | None = OracleBudget(),
) -> list[int]:
    """1-based window starts matching ``p``, decided by :func:`exact_compare`.

    Windows whose alphabet fits ``budget`` are cross-checked by enumeration;
    pass ``budget=None`` to skip the cross-check.
    """
    m, n = len(p), len(t)
    if m < 1 or m > n:
        raise ValueError("need 1 <= m <= n")
    out = []
    for i in range(n - m + 1):
        w = t.slice(i, i + m)
        hit = exact_compare(p, w)
        if budget is not None:
            sigma = len(p.characters() | w.characters())
            avg = (p.size + w.size) / (2 * m)
            if budget.admits(sigma, m, avg):
                if bijection_enumerate_compare(p, w, budget) != hit:
                    raise OracleDisagreement(f"window {i + 1}: enumeration and offset comparison differ")
        if hit:
            out.append(i + 1)
    return out
