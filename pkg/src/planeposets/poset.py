"""Plane posets on canonical labels {1..n}.

A plane poset is stored as its E-set: the pairs ``(i, j)`` with ``i < j`` and
``i <_h j``. Every other pair ``i < j`` satisfies ``i <_r j``. The pairs are
packed into an integer bitmask using a colex pair index, which does not depend
on ``n``; a prefix ``{1..k}`` therefore occupies the low ``k(k-1)/2`` bits.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

DEFAULT_MAX_N = 9


class PlanePosetError(ValueError):
    pass


class TransitivityViolation(PlanePosetError):
    """A triple ``i < j < k`` breaks transitivity of one of the two orders."""

    def __init__(self, i: int, j: int, k: int, relation: str):
        self.triple = (i, j, k)
        self.relation = relation
        super().__init__(
            f"{relation}-transitivity fails at ({i},{j}),({j},{k}) => ({i},{k})"
        )


class CardinalityMismatch(PlanePosetError):
    pass


class CardinalityGuardError(PlanePosetError):
    """Raised before a factorial-size allocation above the configured limit."""

    def __init__(self, n: int, limit: int):
        self.n = n
        self.limit = limit
        super().__init__(f"n={n} exceeds the cardinality guard (limit {limit})")


def pair_index(i: int, j: int) -> int:
    return (j - 1) * (j - 2) // 2 + (i - 1)


def _pair_bit(i: int, j: int) -> int:
    return 1 << ((j - 1) * (j - 2) // 2 + (i - 1))


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def full_mask(n: int) -> int:
    return (1 << num_pairs(n)) - 1


def check_guard(n: int, limit: int | None = DEFAULT_MAX_N) -> None:
    if n < 0:
        raise PlanePosetError(f"cardinality must be non-negative, got {n}")
    if limit is not None and n > limit:
        raise CardinalityGuardError(n, limit)


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} in one-line notation."""

    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(v) for v in self.word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise PlanePosetError(f"{self.word!r} is not a permutation of 1..{len(word)}")
        object.__setattr__(self, "word", word)

    def __len__(self) -> int:
        return len(self.word)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.word)
        for pos, v in enumerate(self.word, start=1):
            inv[v - 1] = pos
        return Permutation(tuple(inv))

    def reversed(self) -> Permutation:
        return Permutation(self.word[::-1])

    def __str__(self) -> str:
        return format_word(self.word)


@dataclass(frozen=True)
class PlanePoset:
    """Canonical plane poset: cardinality plus E-set bitmask.

    Construct through :func:`validate`, :func:`psi` or the products; the raw
    constructor does not check the transitivity invariants.
    """

    n: int
    mask: int

    @cached_property
    def hset(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (i, j)
            for j in range(2, self.n + 1)
            for i in range(1, j)
            if self.mask & _pair_bit(i, j)
        )

    def is_h(self, i: int, j: int) -> bool:
        """``i <_h j`` for ``i < j``."""
        return bool(self.mask & _pair_bit(i, j))

    @cached_property
    def word(self) -> tuple[int, ...]:
        return psi_inverse(self).word

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return format_word(self.word)

    def __repr__(self) -> str:
        return f"PlanePoset({format_word(self.word)!r})"

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.n, self.word)

    def to_json(self) -> dict:
        return {"n": self.n, "h": [list(p) for p in sorted(self.hset)]}


def format_word(word: Sequence[int]) -> str:
    if len(word) <= 9:
        return "".join(str(v) for v in word)
    return ",".join(str(v) for v in word)


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "()"):
        return ()
    if "," in text:
        return tuple(int(t) for t in text.split(","))
    if not text.isdigit():
        raise PlanePosetError(f"cannot parse permutation word {text!r}")
    return tuple(int(c) for c in text)


def parse_poset(text: str) -> PlanePoset:
    """Parse the permutation-word encoding (``"2413"`` or ``"10,2,1,..."``)."""
    return psi(Permutation(parse_word(text)))


def poset_from_json(data: dict | str) -> PlanePoset:
    if isinstance(data, str):
        data = json.loads(data)
    return validate(int(data["n"]), [tuple(p) for p in data["h"]])


def validate(n: int, pairs: Iterable[tuple[int, int]]) -> PlanePoset:
    """Build a plane poset from its E-set, checking both transitivity laws."""
    mask = 0
    for i, j in pairs:
        if not 1 <= i < j <= n:
            raise PlanePosetError(f"pair ({i},{j}) is not 1 <= i < j <= {n}")
        mask |= _pair_bit(i, j)
    poset = PlanePoset(n, mask)
    bad = first_violation(poset)
    if bad is not None:
        raise TransitivityViolation(*bad)
    return poset


def first_violation(poset: PlanePoset) -> tuple[int, int, int, str] | None:
    n, h = poset.n, poset.is_h
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            hij = h(i, j)
            for k in range(j + 1, n + 1):
                hjk, hik = h(j, k), h(i, k)
                if hij and hjk and not hik:
                    return (i, j, k, "h")
                if not hij and not hjk and hik:
                    return (i, j, k, "r")
    return None


def is_valid(poset: PlanePoset) -> bool:
    return first_violation(poset) is None


def psi(sigma: Permutation | Sequence[int]) -> PlanePoset:
    """Plane poset whose h-pairs are the non-inversions of ``sigma``."""
    word = sigma.word if isinstance(sigma, Permutation) else Permutation(tuple(sigma)).word
    n = len(word)
    pos = [0] * (n + 1)
    for p, v in enumerate(word):
        pos[v] = p
    mask = 0
    for j in range(2, n + 1):
        pj = pos[j]
        for i in range(1, j):
            if pos[i] < pj:
                mask |= _pair_bit(i, j)
    poset = PlanePoset(n, mask)
    poset.__dict__["word"] = word
    return poset


def psi_inverse(poset: PlanePoset) -> Permutation:
    """The unique linear extension putting ``i`` before ``j`` iff ``i <_h j``."""
    n = poset.n
    word = [0] * n
    for v in range(1, n + 1):
        before = sum(1 for u in range(1, v) if poset.is_h(u, v))
        before += sum(1 for u in range(v + 1, n + 1) if not poset.is_h(v, u))
        word[before] = v
    return Permutation(tuple(word))


def restrict(poset: PlanePoset, subset: Iterable[int]) -> PlanePoset:
    """Plane subposet on ``subset``, relabeled to {1..|subset|}."""
    elems = sorted(set(subset))
    if elems and (elems[0] < 1 or elems[-1] > poset.n):
        raise PlanePosetError(f"subset {elems} not contained in 1..{poset.n}")
    mask = 0
    for b, y in enumerate(elems, start=1):
        for a, x in enumerate(elems[: b - 1], start=1):
            if poset.is_h(x, y):
                mask |= _pair_bit(a, b)
    return PlanePoset(len(elems), mask)


def iota(poset: PlanePoset) -> PlanePoset:
    """Exchange the two partial orders."""
    return PlanePoset(poset.n, poset.mask ^ full_mask(poset.n))


def _shifted_union(p: PlanePoset, q: PlanePoset, cross_h: bool) -> PlanePoset:
    a, n = p.n, p.n + q.n
    mask = p.mask
    for j in range(1, q.n + 1):
        for i in range(1, j):
            if q.is_h(i, j):
                mask |= _pair_bit(i + a, j + a)
    if cross_h:
        for y in range(a + 1, n + 1):
            for x in range(1, a + 1):
                mask |= _pair_bit(x, y)
    return PlanePoset(n, mask)


def compose(p: PlanePoset, q: PlanePoset) -> PlanePoset:
    """The product ``PQ``: every element of ``p`` is r-below every element of ``q``."""
    return _shifted_union(p, q, cross_h=False)


def under(p: PlanePoset, q: PlanePoset) -> PlanePoset:
    """The product ``P |> Q``: every element of ``p`` is h-below every element of ``q``."""
    return _shifted_union(p, q, cross_h=True)


def level(poset: PlanePoset) -> int:
    """Number of r-related pairs."""
    return num_pairs(poset.n) - poset.mask.bit_count()


def h_count_cross(poset: PlanePoset, left: Iterable[int], right: Iterable[int]) -> int:
    right = list(right)
    return sum(1 for x in left for y in right if x < y and poset.is_h(x, y))


def is_h_ideal(poset: PlanePoset, subset: Iterable[int]) -> bool:
    s = set(subset)
    return all(y in s for x in s for y in range(x + 1, poset.n + 1) if poset.is_h(x, y))


def is_r_ideal(poset: PlanePoset, subset: Iterable[int]) -> bool:
    s = set(subset)
    return all(y in s for x in s for y in range(x + 1, poset.n + 1) if not poset.is_h(x, y))


def is_biideal(poset: PlanePoset, subset: Iterable[int]) -> bool:
    s = set(subset)
    return is_h_ideal(poset, s) and is_r_ideal(poset, s)


def biideals(poset: PlanePoset) -> list[frozenset[int]]:
    """Biideals are the up-sets of the total order, i.e. the suffixes."""
    n = poset.n
    return [frozenset(range(k + 1, n + 1)) for k in range(n, -1, -1)]


def is_plane_forest(poset: PlanePoset) -> bool:
    """True iff no triple ``i<j<k`` restricts to the pattern Psi(213)."""
    n, h = poset.n, poset.is_h
    for k in range(3, n + 1):
        for j in range(2, k):
            if not h(j, k):
                continue
            for i in range(1, j):
                if h(i, k) and not h(i, j):
                    return False
    return True


def iter_posets(n: int, max_n: int | None = DEFAULT_MAX_N) -> Iterator[PlanePoset]:
    check_guard(n, max_n)
    for word in itertools.permutations(range(1, n + 1)):
        yield psi(word)


def enumerate_posets(n: int, max_n: int | None = DEFAULT_MAX_N) -> list[PlanePoset]:
    """All n! plane posets of cardinality ``n``, in lex order of their words."""
    return list(iter_posets(n, max_n))


def chain(n: int) -> PlanePoset:
    return PlanePoset(n, full_mask(n))


def antichain(n: int) -> PlanePoset:
    return PlanePoset(n, 0)


EMPTY = PlanePoset(0, 0)
POINT = PlanePoset(1, 0)
