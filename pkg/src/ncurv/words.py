"""Words in the free semigroup on ``n`` letters and truncated Fock bases.

A word is a tuple of letters in ``1..n``; the empty tuple is the empty word.
Ordering everywhere is length first, then lexicographic.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field
from typing import Iterator, Sequence

Word = tuple  # tuple[int, ...]

EMPTY: Word = ()

INDEX_LIMIT = sys.maxsize


def word(spec: str | Sequence[int] = "") -> Word:
    """Build a word from ``"121"`` / ``"1.2.10"`` / ``[1, 2, 1]``; ``"e"`` is the empty word."""
    if isinstance(spec, str):
        if spec in ("", "e"):
            return EMPTY
        parts = spec.split(".") if "." in spec else list(spec)
        return tuple(int(p) for p in parts)
    return tuple(int(x) for x in spec)


def word_str(w: Word) -> str:
    if not w:
        return "e"
    if all(x < 10 for x in w):
        return "".join(str(x) for x in w)
    return ".".join(str(x) for x in w)


def check_word(w: Word, n: int) -> Word:
    for x in w:
        if not 1 <= x <= n:
            raise ValueError(f"letter {x} outside alphabet 1..{n} in word {word_str(w)}")
    return w


def word_key(w: Word):
    return (len(w), w)


def enumerate_words(n: int, length: int) -> list[Word]:
    """All ``n**length`` words of exactly ``length`` letters, lexicographic."""
    if n < 1:
        raise ValueError("alphabet size must be >= 1")
    if length < 0:
        raise ValueError("length must be >= 0")
    return list(itertools.product(range(1, n + 1), repeat=length))


def iter_words_below(n: int, k: int) -> Iterator[Word]:
    """Words of length ``< k`` in length-then-lex order."""
    for m in range(k):
        yield from itertools.product(range(1, n + 1), repeat=m)


def basis_dimension(n: int, k: int, limit: int = INDEX_LIMIT) -> int:
    """Number of words of length ``< k``: ``(n**k - 1) / (n - 1)``.

    Raises ``OverflowError`` when the count exceeds ``limit``.
    """
    if n < 2:
        raise ValueError("basis_dimension needs n >= 2")
    if k < 0:
        raise ValueError("k must be >= 0")
    value = (n**k - 1) // (n - 1)
    if value > limit:
        raise OverflowError(f"basis dimension for n={n}, k={k} exceeds {limit}")
    return value


def strip_prefix(w: Word, p: Word):
    """Return ``w`` with prefix ``p`` removed, or ``None`` if ``p`` is not a prefix."""
    if len(p) <= len(w) and w[: len(p)] == p:
        return w[len(p) :]
    return None


@dataclass(frozen=True)
class TruncatedBasis:
    """Ordinal indexing of ``{(copy, w) : |w| < depth}`` for ``alpha`` copies."""

    n: int
    depth: int
    alpha: int = 1
    _words: tuple = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("TruncatedBasis needs n >= 2")
        words = tuple(iter_words_below(self.n, self.depth))
        object.__setattr__(self, "_words", words)
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(words)})

    @property
    def per_copy(self) -> int:
        return len(self._words)

    def __len__(self) -> int:
        return self.alpha * len(self._words)

    def index(self, copy: int, w: Word) -> int:
        if not 0 <= copy < self.alpha:
            raise IndexError(f"copy {copy} outside 0..{self.alpha - 1}")
        return copy * len(self._words) + self._index[w]

    def label(self, i: int) -> tuple[int, Word]:
        copy, j = divmod(i, len(self._words))
        if not 0 <= copy < self.alpha:
            raise IndexError(i)
        return copy, self._words[j]

    def labels(self) -> list[tuple[int, Word]]:
        return [(c, w) for c in range(self.alpha) for w in self._words]

    def __contains__(self, key) -> bool:
        copy, w = key
        return 0 <= copy < self.alpha and w in self._index
