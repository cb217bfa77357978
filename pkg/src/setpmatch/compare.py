"""Randomized comparison of two equal-length set-strings.

Each character's offset set is hashed to one residue (layer 1); each
position's multiset of those residues is hashed again (layer 2, the
"mashed" value).  Two strings match iff their mashed sequences agree, up to
hash collisions.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .modhash import FieldParams, HashParams, select_primes
from .offsets import OffsetRepresentation, compute_offsets
from .setstring import SetString


@dataclass(frozen=True)
class MashedRepresentation:
    values: tuple[int, ...]
    params: HashParams | None = None

    def __len__(self) -> int:
        return len(self.values)


def layer1_fingerprints(rep: OffsetRepresentation, f1: FieldParams, counter: Counter | None = None) -> dict[int, int]:
    p, r = f1.p, f1.r
    psi = {}
    work = 0
    for c, o in rep.per_char.items():
        h = 0
        for x in o.offsets:
            h += pow(r, x, p)
        psi[c] = h % p
        work += len(o.offsets)
    if counter is not None:
        counter["char_ops"] += work
    return psi


def _mash_position(pos, psi, p2: int, r2: int) -> int:
    h = 0
    for c in pos:
        h += pow(r2, psi[c], p2)
    return h % p2


def mash(s: SetString, psi: dict[int, int], f2: FieldParams, counter: Counter | None = None) -> MashedRepresentation:
    values = tuple(_mash_position(pos, psi, f2.p, f2.r) for pos in s.positions)
    if counter is not None:
        counter["char_ops"] += s.size
    return MashedRepresentation(values)


def _compare_once(s1: SetString, s2: SetString, params: HashParams, counter: Counter | None) -> bool:
    f1, f2 = params.layer1, params.layer2
    psi1 = layer1_fingerprints(compute_offsets(s1, counter), f1, counter)
    psi2 = layer1_fingerprints(compute_offsets(s2, counter), f1, counter)
    p2, r2 = f2.p, f2.r
    work = 0
    equal = True
    for a, b in zip(s1.positions, s2.positions):
        work += len(a) + len(b)
        if _mash_position(a, psi1, p2, r2) != _mash_position(b, psi2, p2, r2):
            equal = False
            break
    if counter is not None:
        counter["char_ops"] += work
    return equal


def compare_setstrings(
    s1: SetString,
    s2: SetString,
    params: HashParams | None = None,
    *,
    seed: int = 0,
    counter: Counter | None = None,
) -> bool:
    """Monte Carlo set parameterized comparison.

    A true match always returns ``True``.  A non-match returns ``False``
    except with probability ``O(1/m)`` per repetition.  Without explicit
    ``params``, primes are sized with ``n = m`` and the union alphabet.
    """
    m = len(s1)
    if m != len(s2):
        return False
    if m == 0:
        return True
    if params is None:
        sigma = max(1, len(s1.characters() | s2.characters()))
        params = select_primes(m, m, sigma, seed=seed)
    for inst in params.instances():
        if not _compare_once(s1, s2, inst, counter):
            return False
    return True
