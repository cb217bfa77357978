"""Exact offset representation of set-strings.

Everything here is deterministic and hash-free.  It serves as the match
certificate used by verification, the witness-bijection builder, and the
classical ``prev`` encoding kept around as a baseline.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property

from .setstring import Bijection, SetString

Offsets = tuple[int, ...]


@dataclass(frozen=True)
class OffsetSet:
    first_pos: int  # 1-based
    offsets: Offsets

    def __len__(self) -> int:
        return len(self.offsets)


@dataclass
class OffsetRepresentation:
    length: int
    per_char: dict[int, OffsetSet]
    _string: SetString = field(repr=False)

    @cached_property
    def per_position(self) -> tuple[tuple[Offsets, ...], ...]:
        """Per position, the multiset of offset sets in canonical (sorted) order.

        Can be quadratic in the input size; only used on verification paths.
        """
        pc = self.per_char
        return tuple(tuple(sorted(pc[c].offsets for c in pos)) for pos in self._string.positions)


def compute_offsets(s: SetString, counter: Counter | None = None) -> OffsetRepresentation:
    first: dict[int, int] = {}
    offs: dict[int, list[int]] = {}
    for i, pos in enumerate(s.positions):
        for c in pos:
            f = first.get(c)
            if f is None:
                first[c] = i
                offs[c] = [0]
            else:
                offs[c].append(i - f)
    if counter is not None:
        counter["char_ops"] += s.size
    per_char = {c: OffsetSet(first[c] + 1, tuple(o)) for c, o in offs.items()}
    return OffsetRepresentation(len(s), per_char, s)


def exact_compare(s1: SetString, s2: SetString) -> bool:
    """Decide set parameterized matching exactly by comparing the sequences
    of offset-set multisets."""
    if len(s1) != len(s2):
        return False
    for a, b in zip(s1.positions, s2.positions):
        if len(a) != len(b):
            return False
    return compute_offsets(s1).per_position == compute_offsets(s2).per_position


@dataclass(frozen=True)
class StartCountTable:
    """Number of distinct characters per (1-based start position, offset set)."""

    counts: dict[tuple[int, Offsets], int]

    def __getitem__(self, key: tuple[int, Offsets]) -> int:
        return self.counts.get(key, 0)

    def total_size(self) -> int:
        return sum(n * len(o) for (_, o), n in self.counts.items())


def _start_counts_direct(rep: OffsetRepresentation) -> dict[tuple[int, Offsets], int]:
    return dict(Counter((o.first_pos, o.offsets) for o in rep.per_char.values()))


def _start_counts_recurrence(rep: OffsetRepresentation) -> dict[tuple[int, Offsets], int]:
    # Uses only the per-position multisets, never first_pos.
    starts: dict[tuple[int, Offsets], int] = {}
    for i, multiset in enumerate(rep.per_position, start=1):
        for o, count in Counter(multiset).items():
            earlier = sum(starts.get((i - d, o), 0) for d in o if d > 0)
            here = count - earlier
            if here < 0:
                raise AssertionError(f"negative start count at position {i} for {o}")
            if here:
                starts[(i, o)] = here
    return starts


def start_counts(s: SetString) -> StartCountTable:
    """Start-count table, computed by direct grouping and by the recurrence
    over per-position counts; the two must agree."""
    rep = compute_offsets(s)
    direct = _start_counts_direct(rep)
    recurred = _start_counts_recurrence(rep)
    if direct != recurred:
        raise AssertionError("start-count recurrence disagrees with direct grouping")
    return StartCountTable(direct)


def construct_bijection(s1: SetString, s2: SetString, sigma: int | None = None) -> Bijection | None:
    """A bijection mapping ``s1`` onto ``s2``, or ``None`` if they do not match.

    Characters are paired within groups sharing start position and offset
    set, in ascending id order.  When ``sigma`` is given the map is extended
    to all of ``1..sigma`` by pairing the leftover ids in ascending order.
    """
    if not exact_compare(s1, s2):
        return None
    groups1: dict[tuple[int, Offsets], list[int]] = defaultdict(list)
    groups2: dict[tuple[int, Offsets], list[int]] = defaultdict(list)
    for c, o in compute_offsets(s1).per_char.items():
        groups1[(o.first_pos, o.offsets)].append(c)
    for c, o in compute_offsets(s2).per_char.items():
        groups2[(o.first_pos, o.offsets)].append(c)
    if groups1.keys() != groups2.keys():
        return None
    forward: dict[int, int] = {}
    for key, cs in groups1.items():
        ds = groups2[key]
        if len(cs) != len(ds):
            return None
        forward.update(zip(sorted(cs), sorted(ds)))
    if sigma is not None:
        rest_dom = [c for c in range(1, sigma + 1) if c not in forward]
        used = set(forward.values())
        rest_img = [c for c in range(1, sigma + 1) if c not in used]
        forward.update(zip(rest_dom, rest_img))
    return Bijection(forward)


def prev_transform(s: SetString) -> tuple[int, ...]:
    """Classical prev encoding of a string given as singleton positions."""
    last: dict[int, int] = {}
    out = []
    for i, pos in enumerate(s.positions):
        if len(pos) != 1:
            raise ValueError(f"position {i + 1} is not a singleton")
        (c,) = pos
        j = last.get(c)
        out.append(0 if j is None else i - j)
        last[c] = i
    return tuple(out)


def naive_prev_sets(s: SetString) -> tuple[tuple[int, ...], ...]:
    """Per position, the sorted multiset of each character's prev value.

    This encoding loses which chain each value belongs to and therefore
    admits false matches.
    """
    last: dict[int, int] = {}
    out = []
    for i, pos in enumerate(s.positions):
        vals = []
        for c in pos:
            j = last.get(c)
            vals.append(0 if j is None else i - j)
            last[c] = i
        out.append(tuple(sorted(vals)))
    return tuple(out)
