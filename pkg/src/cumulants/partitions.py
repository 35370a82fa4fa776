"""Set partitions, integer partitions, multi-indexes and multi-index partitions.

All values are immutable and all operations are pure functions, so everything
here is safe to use concurrently.  Enumeration orders are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    AlgebraConsistencyError,
    BoundsError,
    DimensionError,
    EmptyTargetError,
    ParseError,
)

#: Largest ground set accepted by the enumeration routines.  Bell(12) is about
#: 4.2 million partitions, which is the practical ceiling for in-memory lists.
MAX_GROUND_SET = 12

MultiIndex = tuple[int, ...]
Blocks = tuple[tuple[int, ...], ...]

CANONICAL_FORMS = ("cr1", "cr2")


def _cr2_sort(blocks) -> Blocks:
    """Blocks in lexicographic order (equals min-element order for disjoint blocks)."""
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def _cr1_sort(blocks) -> Blocks:
    """Blocks by decreasing cardinality, ties broken lexicographically."""
    return tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: (-len(b), b)))


class SetPartition:
    """A partition of {1, ..., n} into disjoint nonempty blocks.

    Instances are stored in one of two canonical layouts and remember which:

    * ``cr1``: elements increasing inside each block; blocks ordered by
      decreasing cardinality, equal sizes broken lexicographically.
    * ``cr2``: elements increasing inside each block; blocks in lexicographic
      order (the default).

    Equality and hashing ignore the layout: two instances are equal when they
    describe the same partition of the same ground set.
    """

    __slots__ = ("n", "blocks", "form")

    def __init__(self, n: int, blocks, form: str = "cr2"):
        if form not in CANONICAL_FORMS:
            raise ValueError(f"unknown canonical form {form!r}")
        blocks = [tuple(sorted(b)) for b in blocks]
        seen = [False] * (n + 1)
        count = 0
        for block in blocks:
            if not block:
                raise ValueError("empty block")
            for e in block:
                if not isinstance(e, int) or e < 1 or e > n:
                    raise ValueError(f"element {e!r} outside 1..{n}")
                if seen[e]:
                    raise ValueError(f"element {e} appears twice")
                seen[e] = True
                count += 1
        if count != n:
            missing = [e for e in range(1, n + 1) if not seen[e]]
            raise ValueError(f"elements {missing} not covered")
        self.n = n
        self.blocks = _cr1_sort(blocks) if form == "cr1" else _cr2_sort(blocks)
        self.form = form

    @classmethod
    def _from_key(cls, n: int, key: Blocks, form: str = "cr2") -> "SetPartition":
        """Trusted constructor: ``key`` must already be canonical for ``form``."""
        self = object.__new__(cls)
        self.n = n
        self.blocks = key
        self.form = form
        return self

    @classmethod
    def parse(cls, text: str) -> "SetPartition":
        """Parse ``1|2,3,4`` (comma form) or ``1|234`` (compact digit form).

        A comma anywhere selects comma form for the whole string, so
        single-element blocks of two-digit elements stay unambiguous; the
        compact form is only usable while every element is a single digit.
        """
        comma_form = "," in text
        tokens = [t.strip() for t in text.strip().split("|")]
        blocks: list[tuple[int, ...]] = []
        for tok in tokens:
            if not tok:
                raise ParseError(f"empty block in {text!r}")
            if comma_form:
                try:
                    block = tuple(int(e) for e in tok.split(","))
                except ValueError:
                    raise ParseError(f"bad element in block {tok!r}") from None
            elif tok.isdigit():
                block = tuple(int(ch) for ch in tok)
            else:
                raise ParseError(f"bad block {tok!r}")
            blocks.append(block)
        n = sum(len(b) for b in blocks)
        try:
            return cls(n, blocks)
        except ValueError as exc:
            raise ParseError(f"{text!r} is not a partition of [{n}]: {exc}") from None

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def canonical(self, form: str = "cr2") -> "SetPartition":
        """Return this partition in the requested canonical layout (idempotent)."""
        if form not in CANONICAL_FORMS:
            raise ValueError(f"unknown canonical form {form!r}")
        if form == self.form:
            return self
        key = _cr1_sort(self.blocks) if form == "cr1" else _cr2_sort(self.blocks)
        return SetPartition._from_key(self.n, key, form)

    def cr2_key(self) -> Blocks:
        return self.blocks if self.form == "cr2" else _cr2_sort(self.blocks)

    def sort_key(self) -> str:
        """Deterministic total-order key: the comma-rendered cr2 text."""
        return "|".join(",".join(str(e) for e in b) for b in self.cr2_key())

    def render(self) -> str:
        """Text form; compact digits when n <= 9, comma-separated otherwise."""
        if self.n <= 9:
            return "|".join("".join(str(e) for e in b) for b in self.blocks)
        return "|".join(",".join(str(e) for e in b) for b in self.blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.n == other.n and self.cr2_key() == other.cr2_key()

    def __hash__(self) -> int:
        return hash((self.n, self.cr2_key()))

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"SetPartition({self.render()!r})"


@dataclass(frozen=True)
class IntegerPartition:
    """Weakly decreasing positive integers; the block-size type of a set partition."""

    parts: tuple[int, ...]

    def __init__(self, parts):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if not parts or any(p < 1 for p in parts):
            raise ValueError("parts must be positive")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def _iter_partition_keys(elements: Sequence[int]) -> Iterator[Blocks]:
    """Yield every partition of ``elements`` as a tuple of blocks.

    Blocks are ordered by first occurrence, which is min-element (cr2) order
    when the input is sorted.  Enumeration follows restricted growth strings,
    so the order is deterministic.
    """
    els = list(elements)
    n = len(els)
    if n == 0:
        yield ()
        return
    rgs = [0] * n
    maxi = [0] * n
    while True:
        nblocks = maxi[n - 1] + 1
        blocks: list[list[int]] = [[] for _ in range(nblocks)]
        for j, g in enumerate(rgs):
            blocks[g].append(els[j])
        yield tuple(tuple(b) for b in blocks)
        j = n - 1
        while j > 0 and rgs[j] == maxi[j - 1] + 1:
            j -= 1
        if j == 0:
            return
        rgs[j] += 1
        maxi[j] = maxi[j - 1] if maxi[j - 1] >= rgs[j] else rgs[j]
        for t in range(j + 1, n):
            rgs[t] = 0
            maxi[t] = maxi[j]


def enumerate_partitions(n: int, m: int | None = None, limit: int = MAX_GROUND_SET) -> list[SetPartition]:
    """All partitions of [n] (restricted to m blocks when given), in cr2 text order.

    The result has Bell(n) entries, or Stirling2(n, m) with the restriction.
    """
    if not 1 <= n <= limit:
        raise BoundsError(f"n must be in 1..{limit}, got {n}")
    if m is not None and not 1 <= m <= n:
        raise BoundsError(f"m must be in 1..{n}, got {m}")
    keys = _iter_partition_keys(range(1, n + 1))
    if m is not None:
        keys = (k for k in keys if len(k) == m)
    out = [SetPartition._from_key(n, k) for k in keys]
    out.sort(key=SetPartition.sort_key)
    return out


def _join_key(n: int, a: Blocks, b: Blocks) -> Blocks:
    """cr2 block key of the finest partition coarser than both block families."""
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for blocks in (a, b):
        for block in blocks:
            r0 = find(block[0])
            for e in block[1:]:
                r = find(e)
                if r != r0:
                    parent[r] = r0
    groups: dict[int, list[int]] = {}
    for e in range(1, n + 1):
        groups.setdefault(find(e), []).append(e)
    return tuple(sorted(tuple(g) for g in groups.values()))


def join(p: SetPartition, q: SetPartition) -> SetPartition:
    """Least upper bound in the refinement order: the finest common coarsening."""
    if p.n != q.n:
        raise DimensionError(f"ground sets differ: {p.n} vs {q.n}")
    return SetPartition._from_key(p.n, _join_key(p.n, p.blocks, q.blocks))


def is_complementary(p: SetPartition, q: SetPartition) -> bool:
    """True when the join of the two partitions is the one-block partition.

    This is the ground-truth test against which all listing algorithms are
    validated.
    """
    if p.n != q.n:
        raise DimensionError(f"ground sets differ: {p.n} vs {q.n}")
    return len(_join_key(p.n, p.blocks, q.blocks)) == 1


def canonicalize(p: SetPartition, form: str = "cr2") -> SetPartition:
    """Rewrite ``p`` in the requested canonical layout."""
    return p.canonical(form)


def block_type(p: SetPartition) -> IntegerPartition:
    """Decreasing list of block cardinalities, an integer partition of n."""
    return IntegerPartition(len(b) for b in p.blocks)


_BELL_CACHE: list[int] = [1]
_BELL_ROW: list[int] = [1]


def bell_number(n: int) -> int:
    """n-th Bell number by the triangle recurrence, exact."""
    if n < 0:
        raise BoundsError("n must be >= 0")
    global _BELL_ROW
    while len(_BELL_CACHE) <= n:
        row = [_BELL_ROW[-1]]
        for x in _BELL_ROW:
            row.append(row[-1] + x)
        _BELL_ROW = row
        _BELL_CACHE.append(row[0])
    return _BELL_CACHE[n]


def multi_index_order(i: MultiIndex) -> int:
    """Sum of the entries."""
    return sum(i)


def multi_index_factorial(i: MultiIndex) -> int:
    """Product of the entrywise factorials."""
    out = 1
    for e in i:
        out *= math.factorial(e)
    return out


def _check_multi_index(i) -> MultiIndex:
    i = tuple(int(e) for e in i)
    if any(e < 0 for e in i):
        raise ValueError(f"negative entry in multi-index {i}")
    return i


@dataclass(frozen=True)
class MultiIndexPartition:
    """An unordered collection of nonzero multi-index columns summing to a target.

    ``columns`` holds the distinct columns in strictly decreasing lexicographic
    order and ``multiplicities`` the matching repeat counts, so the encoded
    matrix has ``length`` columns in total.
    """

    columns: tuple[MultiIndex, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if not self.columns:
            raise ValueError("at least one column required")
        if len(self.columns) != len(self.multiplicities):
            raise ValueError("columns and multiplicities lengths differ")
        arity = len(self.columns[0])
        for col in self.columns:
            if len(col) != arity:
                raise DimensionError("columns have mixed arities")
            if any(e < 0 for e in col):
                raise ValueError("negative entry")
            if not any(col):
                raise ValueError("zero column")
        for a, b in zip(self.columns, self.columns[1:]):
            if not a > b:
                raise ValueError("columns must be strictly decreasing")
        if any(r < 1 for r in self.multiplicities):
            raise ValueError("multiplicities must be >= 1")

    @classmethod
    def from_columns(cls, cols) -> "MultiIndexPartition":
        """Build from an iterable of columns, merging repeats."""
        counts: dict[MultiIndex, int] = {}
        for col in cols:
            col = _check_multi_index(col)
            counts[col] = counts.get(col, 0) + 1
        ordered = sorted(counts, reverse=True)
        return cls(tuple(ordered), tuple(counts[c] for c in ordered))

    @classmethod
    def parse(cls, text: str) -> "MultiIndexPartition":
        """Parse ``1,0,0|0,1,1^2``: columns split by ``|``, optional ``^r`` repeats."""
        cols = []
        for tok in text.strip().split("|"):
            tok = tok.strip()
            mult = 1
            if "^" in tok:
                tok, _, m = tok.partition("^")
                try:
                    mult = int(m)
                except ValueError:
                    raise ParseError(f"bad multiplicity {m!r}") from None
                if mult < 1:
                    raise ParseError(f"multiplicity must be >= 1, got {mult}")
            try:
                col = tuple(int(e) for e in tok.split(","))
            except ValueError:
                raise ParseError(f"bad column {tok!r}") from None
            cols.extend([col] * mult)
        try:
            return cls.from_columns(cols)
        except (ValueError, DimensionError) as exc:
            raise ParseError(f"{text!r}: {exc}") from None

    @property
    def arity(self) -> int:
        return len(self.columns[0])

    @property
    def target(self) -> MultiIndex:
        total = [0] * self.arity
        for col, r in zip(self.columns, self.multiplicities):
            for k, e in enumerate(col):
                total[k] += r * e
        return tuple(total)

    @property
    def length(self) -> int:
        return sum(self.multiplicities)

    def expanded(self) -> list[MultiIndex]:
        """Columns with multiplicities written out, in canonical order."""
        out = []
        for col, r in zip(self.columns, self.multiplicities):
            out.extend([col] * r)
        return out

    def __str__(self) -> str:
        return "|".join(
            ",".join(str(e) for e in col) + (f"^{r}" if r > 1 else "")
            for col, r in zip(self.columns, self.multiplicities)
        )


def _columns_at_most(remaining: MultiIndex, bound: MultiIndex) -> Iterator[MultiIndex]:
    """Nonzero columns <= remaining entrywise and <= bound in tuple order, descending."""
    arity = len(remaining)

    def rec(k: int, prefix: tuple[int, ...], tied: bool) -> Iterator[MultiIndex]:
        if k == arity:
            if any(prefix):
                yield prefix
            return
        top = min(remaining[k], bound[k]) if tied else remaining[k]
        for e in range(top, -1, -1):
            yield from rec(k + 1, prefix + (e,), tied and e == bound[k])

    yield from rec(0, (), True)


def enumerate_multiindex_partitions(i, limit: int = MAX_GROUND_SET) -> list[MultiIndexPartition]:
    """All multi-index partitions of the target ``i``, in deterministic order.

    Columns within each partition are weakly decreasing; partitions are emitted
    with the lexicographically largest column sequences first.  For the all-ones
    target of length n the count equals Bell(n).
    """
    i = _check_multi_index(i)
    order = sum(i)
    if order == 0:
        raise EmptyTargetError("target multi-index has no nonzero entry")
    if order > limit:
        raise BoundsError(f"|i| must be <= {limit}, got {order}")
    out: list[MultiIndexPartition] = []
    acc: list[MultiIndex] = []

    def rec(remaining: MultiIndex, bound: MultiIndex):
        if not any(remaining):
            out.append(MultiIndexPartition.from_columns(acc))
            return
        for col in _columns_at_most(remaining, bound):
            acc.append(col)
            rec(tuple(r - c for r, c in zip(remaining, col)), col)
            acc.pop()

    rec(i, i)
    return out


def subdivision_coefficient(mip: MultiIndexPartition) -> int:
    """Multinomial weight of a multi-index partition.

    Equals target! divided by the product over distinct columns of
    (column!)^multiplicity * multiplicity!.  Always a positive integer; it
    counts the distinct ways to realize the partition on labeled positions.
    """
    num = multi_index_factorial(mip.target)
    den = 1
    for col, r in zip(mip.columns, mip.multiplicities):
        den *= multi_index_factorial(col) ** r * math.factorial(r)
    q, rem = divmod(num, den)
    if rem:
        raise AlgebraConsistencyError(f"non-integer coefficient for {mip}")
    return q
