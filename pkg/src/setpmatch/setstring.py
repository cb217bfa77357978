"""Set-strings, alphabet interning and the on-disk text format.

A set-string is a sequence of positions, each holding a set of character
ids.  Ids are dense integers starting at 1, handed out by an
:class:`Alphabet`.  Positions are 0-based inside the library; every
external surface (files, CLI output) is 1-based.

File format: one position per line, tokens separated by single spaces,
``-`` for the empty set, ``#`` starts a comment line.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

MAX_TOKEN_LENGTH = 256
EMPTY_MARK = "-"
COMMENT_MARK = "#"


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DuplicateTokenWarning(UserWarning):
    """A token was repeated inside one position and has been dropped."""


class Alphabet:
    """Order-stable interning of external tokens to ids ``1..len(self)``."""

    def __init__(self, tokens: Iterable[str] = ()):
        self._tokens: list[str] = []
        self._ids: dict[str, int] = {}
        for tok in tokens:
            self.intern(tok)

    def intern(self, token: str) -> int:
        cid = self._ids.get(token)
        if cid is None:
            self._tokens.append(token)
            cid = len(self._tokens)
            self._ids[token] = cid
        return cid

    def id(self, token: str) -> int:
        return self._ids[token]

    def token(self, cid: int) -> str:
        if not 1 <= cid <= len(self._tokens):
            raise KeyError(cid)
        return self._tokens[cid - 1]

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self._tokens)

    @property
    def ids(self) -> Mapping[str, int]:
        return dict(self._ids)

    def __len__(self) -> int:
        return len(self._tokens)

    def __contains__(self, token: object) -> bool:
        return token in self._ids

    def __repr__(self) -> str:
        return f"Alphabet({self._tokens!r})"


@dataclass(frozen=True)
class SetString:
    positions: tuple[frozenset[int], ...]
    alphabet: Alphabet | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_size", sum(len(p) for p in self.positions))

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], alphabet: Alphabet | None = None) -> "SetString":
        positions = tuple(frozenset(s) for s in sets)
        if alphabet is not None:
            bound = len(alphabet)
            for s in positions:
                for cid in s:
                    if not 1 <= cid <= bound:
                        raise ValueError(f"id {cid} is not in the alphabet")
        return cls(positions, alphabet)

    @property
    def size(self) -> int:
        """Total number of character occurrences."""
        return self._size  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.positions)

    def __getitem__(self, i: int) -> frozenset[int]:
        return self.positions[i]

    def __iter__(self):
        return iter(self.positions)

    def slice(self, start: int, stop: int) -> "SetString":
        """0-based half-open slice ``[start, stop)``."""
        return SetString(self.positions[start:stop], self.alphabet)

    def characters(self) -> set[int]:
        out: set[int] = set()
        for s in self.positions:
            out |= s
        return out


@dataclass(frozen=True)
class Bijection:
    forward: Mapping[int, int]
    backward: Mapping[int, int] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        fwd = dict(self.forward)
        bwd = {v: k for k, v in fwd.items()}
        if len(bwd) != len(fwd):
            raise ValueError("mapping is not injective")
        if self.backward is not None and dict(self.backward) != bwd:
            raise ValueError("backward is not the inverse of forward")
        object.__setattr__(self, "forward", fwd)
        object.__setattr__(self, "backward", bwd)

    @classmethod
    def identity(cls, ids: Iterable[int]) -> "Bijection":
        return cls({i: i for i in ids})

    def inverse(self) -> "Bijection":
        return Bijection(self.backward)

    def __call__(self, cid: int) -> int:
        return self.forward[cid]


def apply_bijection(s: SetString, pi: Bijection) -> SetString:
    fwd = pi.forward
    try:
        positions = tuple(frozenset(fwd[c] for c in pos) for pos in s.positions)
    except KeyError as exc:
        raise ValueError(f"id {exc.args[0]} is outside the bijection's domain") from None
    return SetString(positions, s.alphabet)


def _split_lines(text: str) -> list[str]:
    if not text:
        return []
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return [ln[:-1] if ln.endswith("\r") else ln for ln in lines]


def _line_tokens(line: str, lineno: int) -> list[str] | None:
    """Tokens of one line; ``None`` for a comment line."""
    if line.startswith(COMMENT_MARK):
        return None
    if line == EMPTY_MARK:
        return []
    if line == "":
        raise ParseError(lineno, "empty line (use '-' for the empty set)")
    toks = line.split(" ")
    for tok in toks:
        if tok == "":
            raise ParseError(lineno, "tokens must be separated by single spaces")
        if any(ch.isspace() for ch in tok):
            raise ParseError(lineno, f"whitespace inside token {tok!r}")
        if tok == EMPTY_MARK:
            raise ParseError(lineno, "'-' cannot be mixed with other tokens")
        if tok.startswith(COMMENT_MARK):
            raise ParseError(lineno, f"token {tok!r} starts with '#'")
        if len(tok) > MAX_TOKEN_LENGTH:
            raise ParseError(lineno, f"token longer than {MAX_TOKEN_LENGTH} characters")
    return toks


def _decode(document: bytes | str) -> str:
    if isinstance(document, bytes):
        return document.decode("utf-8")
    return document


def scan_tokens(document: bytes | str) -> list[list[str]]:
    """Validate a document and return its positions as token lists."""
    rows = []
    for lineno, line in enumerate(_split_lines(_decode(document)), start=1):
        toks = _line_tokens(line, lineno)
        if toks is not None:
            rows.append(toks)
    return rows


def parse_setstring(document: bytes | str, alphabet: Alphabet | None = None) -> SetString:
    """Parse a set-string document, interning tokens into ``alphabet``.

    A fresh alphabet is created when none is given.  Tokens repeated within
    one position are dropped and reported through a single
    :class:`DuplicateTokenWarning` carrying the count.
    """
    if alphabet is None:
        alphabet = Alphabet()
    positions = []
    dupes = 0
    for toks in scan_tokens(document):
        ids = [alphabet.intern(t) for t in toks]
        pos = frozenset(ids)
        dupes += len(ids) - len(pos)
        positions.append(pos)
    if dupes:
        warnings.warn(f"{dupes} duplicate token(s) dropped", DuplicateTokenWarning, stacklevel=2)
    return SetString(tuple(positions), alphabet)


def read_setstrings(documents: Sequence[bytes | str], normalize: bool = False) -> tuple[Alphabet, list[SetString]]:
    """Parse several documents over one shared alphabet.

    With ``normalize`` the ids follow the sorted order of all tokens, so the
    numbering no longer depends on which file was read first.
    """
    alphabet = Alphabet()
    if normalize:
        seen: set[str] = set()
        for doc in documents:
            for toks in scan_tokens(doc):
                seen.update(toks)
        for tok in sorted(seen):
            alphabet.intern(tok)
    return alphabet, [parse_setstring(doc, alphabet) for doc in documents]


def serialize_setstring(s: SetString, alphabet: Alphabet | None = None) -> str:
    """Inverse of :func:`parse_setstring`.

    Within a position, tokens already written earlier come first in text
    order, followed by first-time tokens in id order; re-parsing into an
    empty alphabet therefore reproduces the same interning.
    """
    alphabet = alphabet or s.alphabet
    if alphabet is None:
        raise ValueError("an alphabet is needed to serialize")
    out = []
    seen: set[int] = set()
    for pos in s.positions:
        if pos:
            old = sorted((alphabet.token(c) for c in pos if c in seen))
            new = [alphabet.token(c) for c in sorted(pos - seen)]
            seen |= pos
            out.append(" ".join(old + new))
        else:
            out.append(EMPTY_MARK)
        out.append("\n")
    return "".join(out)
