"""Sliding-window set parameterized matching.

The window hash is kept character-centric::

    H = sum over window chars c of  (r2 ** psi[c] mod p2) * P(c)   (mod p3)

where ``psi[c]`` is the layer-1 hash of ``c``'s offset set inside the window
and ``P(c) = sum r3 ** k`` over its relative indices ``k``.  Sliding by one
only touches characters at the leaving and entering positions; the shift
of every other fingerprint is folded into a single global multiplier so that
``P(c) = p_stored[c] * r_glob``.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .compare import layer1_fingerprints
from .modhash import HashParams, select_primes
from .offsets import compute_offsets, construct_bijection, exact_compare
from .setstring import Bijection, SetString


@dataclass
class OccurrenceLists:
    """Per character, ascending 0-based text positions, plus a cursor at the
    first occurrence not before the current window start."""

    positions: dict[int, list[int]]
    cursor: dict[int, int]

    @classmethod
    def build(cls, t: SetString) -> "OccurrenceLists":
        positions: dict[int, list[int]] = {}
        for i, pos in enumerate(t.positions):
            for c in pos:
                positions.setdefault(c, []).append(i)
        return cls(positions, dict.fromkeys(positions, 0))

    def first_at_or_after(self, c: int) -> int | None:
        lst = self.positions[c]
        k = self.cursor[c]
        return lst[k] if k < len(lst) else None


@dataclass
class MatcherState:
    m: int
    params: HashParams
    occ: OccurrenceLists
    psi: dict[int, int]
    p_stored: dict[int, int]
    weight: dict[int, int]  # cached r2 ** psi mod p2
    r_glob: int = 1
    r_glob_inv: int = 1
    h_window: int = 0
    start: int = 0  # 0-based window start
    steps: int = 0
    r1_pows: list[int] = field(default_factory=list, repr=False)
    r3_top: int = 1  # r3 ** (m - 1)

    @property
    def window_start(self) -> int:
        """1-based start of the current window."""
        return self.start + 1

    def fingerprint(self, c: int) -> int:
        return self.p_stored.get(c, 0) * self.r_glob % self.params.layer3.p


def _weighted_hash(s: SetString, params: HashParams, steps: list[int] | None = None) -> int:
    f2, f3 = params.layer2, params.layer3
    p3, r3 = f3.p, f3.r
    rep = compute_offsets(s)
    psi = layer1_fingerprints(rep, params.layer1)
    fp: dict[int, int] = {}
    x = 1
    for pos in s.positions:
        for c in pos:
            fp[c] = (fp.get(c, 0) + x) % p3
        x = x * r3 % p3
    h = 0
    for c, pc in fp.items():
        h += pow(f2.r, psi[c], f2.p) * pc
    if steps is not None:
        steps[0] += 2 * s.size + len(s)
    return h % p3


def pattern_hash(p: SetString, params: HashParams) -> int:
    if len(p) == 0:
        raise ValueError("empty pattern")
    return _weighted_hash(p, params)


def window_hash_scratch(t: SetString, i: int, m: int, params: HashParams) -> int:
    """Layer-3 hash of the window at 1-based start ``i``, from the slice alone."""
    if m < 1 or not 1 <= i <= len(t) - m + 1:
        raise ValueError(f"window {i} of length {m} is out of range")
    return _weighted_hash(t.slice(i - 1, i - 1 + m), params)


def init_state(t: SetString, m: int, params: HashParams, occ: OccurrenceLists | None = None) -> MatcherState:
    n = len(t)
    if m < 1:
        raise ValueError("empty pattern")
    if m > n:
        raise ValueError(f"pattern length {m} exceeds text length {n}")
    if occ is None:
        occ = OccurrenceLists.build(t)
    f1, f2, f3 = params.layer1, params.layer2, params.layer3
    p3 = f3.p
    window = t.slice(0, m)
    psi = layer1_fingerprints(compute_offsets(window), f1)
    p_stored: dict[int, int] = {}
    x = 1
    for pos in window.positions:
        for c in pos:
            p_stored[c] = (p_stored.get(c, 0) + x) % p3
        x = x * f3.r % p3
    weight = {c: pow(f2.r, v, f2.p) for c, v in psi.items()}
    h = sum(weight[c] * p_stored[c] for c in p_stored) % p3
    r1_pows = [1] * m
    for k in range(1, m):
        r1_pows[k] = r1_pows[k - 1] * f1.r % f1.p
    steps = t.size + 3 * window.size + m
    return MatcherState(
        m=m,
        params=params,
        occ=occ,
        psi=psi,
        p_stored=p_stored,
        weight=weight,
        h_window=h,
        steps=steps,
        r1_pows=r1_pows,
        r3_top=pow(f3.r, m - 1, p3),
    )


def advance(state: MatcherState, t: SetString) -> MatcherState:
    """Slide the window one position right, in place.

    Isolate the boundary characters' terms, shift everything else with one
    multiplication, then update and re-add the boundary terms.  A character
    both leaving and entering is handled leave-first.
    """
    i, m = state.start, state.m
    if i + m >= len(t):
        raise ValueError("window is already at the end of the text")
    f1, f2, f3 = state.params.layer1, state.params.layer2, state.params.layer3
    p1, p2, p3 = f1.p, f2.p, f3.p
    psi, p_stored, weight = state.psi, state.p_stored, state.weight
    occ_pos, cursor = state.occ.positions, state.occ.cursor
    leaving = t.positions[i]
    entering = t.positions[i + m]
    r_glob = state.r_glob
    h = state.h_window

    # isolate
    for c in leaving:
        h -= weight[c] * p_stored[c] * r_glob
    for c in entering:
        if c not in leaving and c in psi:
            h -= weight[c] * p_stored[c] * r_glob

    # global shift
    h = h % p3 * f3.r_inv % p3
    r_glob = r_glob * f3.r_inv % p3
    old_inv = state.r_glob_inv
    r_glob_inv = old_inv * f3.r % p3

    # reintegrate
    # The leaving occurrence now sits at relative index -1, so its stored
    # term is r3**-1 / r_glob = old_inv.
    for c in leaving:
        k = cursor[c] + 1
        cursor[c] = k
        lst = occ_pos[c]
        if k < len(lst) and lst[k] - i <= m - 1:
            delta = lst[k] - i
            p_stored[c] = (p_stored[c] - old_inv) % p3
            psi[c] = (psi[c] - 1) * pow(f1.r_inv, delta, p1) % p1
        else:
            del psi[c], p_stored[c], weight[c]
    top = state.r3_top * r_glob_inv % p3
    for c in entering:
        if c in psi:
            first = occ_pos[c][cursor[c]]
            psi[c] = (psi[c] + state.r1_pows[i + m - first]) % p1
            p_stored[c] = (p_stored[c] + top) % p3
        else:
            psi[c] = 1
            p_stored[c] = top
    for c in leaving:
        if c in psi:
            w = weight[c] = pow(f2.r, psi[c], p2)
            h += w * p_stored[c] * r_glob
    for c in entering:
        if c not in leaving:
            w = weight[c] = pow(f2.r, psi[c], p2)
            h += w * p_stored[c] * r_glob

    state.h_window = h % p3
    state.r_glob = r_glob
    state.r_glob_inv = r_glob_inv
    state.start = i + 1
    state.steps += 1 + 3 * (len(leaving) + len(entering))
    return state


def scan(p: SetString, t: SetString, params: HashParams) -> tuple[list[int], int]:
    """One repetition: 1-based window starts whose hash equals the pattern's,
    and the number of elementary steps spent."""
    m, n = len(p), len(t)
    steps = [0]
    target = _weighted_hash(p, params, steps)
    state = init_state(t, m, params)
    out = [1] if state.h_window == target else []
    for _ in range(n - m):
        advance(state, t)
        if state.h_window == target:
            out.append(state.window_start)
    return out, state.steps + steps[0]


@dataclass
class MatchReport:
    candidates: list[int]
    verified: list[bool] | None = None
    witnesses: list[Bijection | None] | None = None
    params_echo: list[str] = field(default_factory=list)
    steps: list[int] = field(default_factory=list)

    @property
    def matches(self) -> list[int]:
        """Verified positions when verification ran, else the candidates."""
        if self.verified is None:
            return list(self.candidates)
        return [c for c, ok in zip(self.candidates, self.verified) if ok]


def _intersect(a: list[int], b: list[int]) -> list[int]:
    out, i, j = [], 0, 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            out.append(a[i])
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return out


def _scan_job(args):
    return scan(*args)


def find_matches(
    p: SetString,
    t: SetString,
    params: HashParams | None = None,
    verify: bool = False,
    *,
    seed: int = 0,
    jobs: int = 1,
) -> MatchReport:
    """Report every window of ``t`` that set-parameterized matches ``p``.

    True matches are always reported.  With ``verify`` every candidate is
    re-checked exactly and a witness bijection is attached.
    """
    m, n = len(p), len(t)
    if m < 1:
        raise ValueError("empty pattern")
    if m > n:
        raise ValueError(f"pattern length {m} exceeds text length {n}")
    if p.alphabet is not None and t.alphabet is not None and p.alphabet is not t.alphabet:
        raise ValueError("pattern and text use different alphabets")
    if params is None:
        sigma = max(1, len(p.characters() | t.characters()))
        params = select_primes(n, m, sigma, seed=seed)
    instances = params.instances()
    work = [(p, t, inst) for inst in instances]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_scan_job, work))
    else:
        results = [scan(*w) for w in work]

    candidates = results[0][0]
    for cand, _ in results[1:]:
        candidates = _intersect(candidates, cand)
    report = MatchReport(
        candidates=candidates,
        params_echo=[inst.to_text() for inst in instances],
        steps=[s for _, s in results],
    )
    if verify:
        report.verified, report.witnesses = [], []
        for pos in candidates:
            window = t.slice(pos - 1, pos - 1 + m)
            ok = exact_compare(p, window)
            report.verified.append(ok)
            report.witnesses.append(construct_bijection(p, window) if ok else None)
    return report
