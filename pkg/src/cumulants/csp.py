"""Five interchangeable algorithms listing complementary set partitions.

Two partitions are complementary when their join is the one-block partition.
Every algorithm returns the same set, ordered by the cr2 text key:

* ``twoblock``   builds the non-complementary partitions from two-block splits
                 of the input's blocks and subtracts them from the full lattice;
* ``graph``      tests connectivity of the union of the two clique covers with
                 union-find;
* ``laplacian``  tests the same connectivity through the integer rank of the
                 graph Laplacian;
* ``nullspace``  works on block-indicator matrices and checks that the column
                 spans meet only in the all-ones line, after cheap pruning;
* ``stafford``   expands the joint cumulant of block products symbolically and
                 reads the complementary partitions off the surviving terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from time import perf_counter

from .errors import AlgebraConsistencyError, IncompatibleTypeError
from .indicator import IndicatorMatrix
from .partitions import (
    Blocks,
    SetPartition,
    _iter_partition_keys,
    bell_number,
    block_type,
)

ALGORITHM_NAMES = ("twoblock", "graph", "laplacian", "nullspace", "stafford")


@dataclass
class CspResult:
    """Output container: the input, the algorithm used, the sorted list, the wall time."""

    input: SetPartition
    algorithm: str
    complementary: tuple[SetPartition, ...]
    elapsed: float


def _key_str(key: Blocks) -> str:
    return "|".join(",".join(str(e) for e in b) for b in key)


def _finish(p: SetPartition, name: str, keys, t0: float) -> CspResult:
    frag: dict[tuple[int, ...], str] = {}

    def key_str(key: Blocks) -> str:
        parts = []
        for b in key:
            s = frag.get(b)
            if s is None:
                s = frag[b] = ",".join(map(str, b))
            parts.append(s)
        return "|".join(parts)

    keys = sorted(keys, key=key_str)
    parts = tuple(SetPartition._from_key(p.n, k) for k in keys)
    return CspResult(p, name, parts, perf_counter() - t0)


def _mask_block(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _iter_partition_codes(elements):
    """Partition codes along the restricted-growth walk.

    The group masks are maintained incrementally (a step only touches the
    changed suffix, amortized O(1) positions) and the code is re-summed over
    the live groups, which number far fewer than the elements.
    """
    els = list(elements)
    n = len(els)
    if n == 0:
        yield 0
        return
    bits = [1 << e for e in els]
    full = 0
    for b in bits:
        full |= b
    rgs = [0] * n
    maxi = [0] * n
    masks = [0] * (n + 1)
    masks[0] = full
    last = n - 1
    while True:
        code = 0
        for g in range(maxi[last] + 1):
            code += 1 << masks[g]
        yield code
        j = last
        while j > 0 and rgs[j] == maxi[j - 1] + 1:
            j -= 1
        if j == 0:
            return
        gj = rgs[j]
        bj = bits[j]
        masks[gj] ^= bj
        masks[gj + 1] |= bj
        rgs[j] = gj + 1
        for t in range(j + 1, n):
            gt = rgs[t]
            if gt:
                bt = bits[t]
                masks[gt] ^= bt
                masks[0] |= bt
                rgs[t] = 0
        mj = maxi[j - 1] if maxi[j - 1] >= gj + 1 else gj + 1
        for t in range(j, n):
            maxi[t] = mj


def _side_codes(elements: list[int]) -> list[int]:
    """Partition codes of a side of a split; tiny sides hand-rolled."""
    if len(elements) == 1:
        return [1 << (1 << elements[0])]
    if len(elements) == 2:
        b1 = 1 << elements[0]
        b2 = 1 << elements[1]
        return [1 << (b1 | b2), (1 << b1) + (1 << b2)]
    if len(elements) == 3:
        b1 = 1 << elements[0]
        b2 = 1 << elements[1]
        b3 = 1 << elements[2]
        return [
            1 << (b1 | b2 | b3),
            (1 << (b1 | b2)) + (1 << b3),
            (1 << (b1 | b3)) + (1 << b2),
            (1 << (b2 | b3)) + (1 << b1),
            (1 << b1) + (1 << b2) + (1 << b3),
        ]
    return list(_iter_partition_codes(elements))


def _two_block_excluded_codes(blocks: Blocks) -> set[int]:
    """Code-keyed set of the partitions built from every two-block split: each
    side of a split is partitioned independently and the two halves are glued.
    A glued partition's code is the sum of the side codes, so every pair costs
    one integer addition.  Overlapping splits produce the same partition,
    hence the set."""
    m = len(blocks)
    excluded: set[int] = set()
    add = excluded.add
    for s in range(1, 1 << (m - 1)):
        side2 = []
        side1 = [blocks[0]]
        for j in range(1, m):
            (side2 if (s >> (j - 1)) & 1 else side1).append(blocks[j])
        a1 = sorted(e for b in side1 for e in b)
        a2 = sorted(e for b in side2 for e in b)
        if len(a1) < len(a2):
            a1, a2 = a2, a1
        inner = _side_codes(a2)
        if len(inner) == 1:
            c2 = inner[0]
            for c1 in _iter_partition_codes(a1):
                add(c1 + c2)
        else:
            for c1 in _iter_partition_codes(a1):
                for c2 in inner:
                    add(c1 + c2)
    return excluded


def _decode_partition_code(code: int) -> list[int]:
    """Block masks back out of a partition code."""
    masks = []
    while code:
        low = code & -code
        masks.append(low.bit_length() - 1)
        code ^= low
    return masks


def _two_block_excluded_keys(blocks: Blocks) -> set[Blocks]:
    """Block-tuple view of the excluded family (for the non-timing callers)."""
    cache: dict[int, tuple[int, ...]] = {}
    out = set()
    for code in _two_block_excluded_codes(blocks):
        converted = []
        for mask in _decode_partition_code(code):
            block = cache.get(mask)
            if block is None:
                block = cache[mask] = _mask_block(mask)
            converted.append(block)
        converted.sort()
        out.add(tuple(converted))
    return out


def csp_twoblock(p: SetPartition) -> CspResult:
    """Full lattice minus the partitions generated from two-block splits."""
    t0 = perf_counter()
    n = p.n
    blocks = p.cr2_key()
    if len(blocks) == 1:
        keys = list(_iter_partition_keys(range(1, n + 1)))
        return _finish(p, "twoblock", keys, t0)
    excluded = _two_block_excluded_codes(blocks)
    # Candidate walk inlined with incrementally maintained group masks: one
    # visit per partition of [n] is the hot loop.
    survivors: list[tuple[int, ...]] = []
    append = survivors.append
    contains = excluded.__contains__
    bits = [0] + [1 << e for e in range(1, n + 1)]
    full = (1 << (n + 1)) - 2
    rgs = [0] * n
    maxi = [0] * n
    masks = [0] * (n + 1)
    masks[0] = full
    last = n - 1
    while True:
        ngroups = maxi[last] + 1
        code = 0
        for g in range(ngroups):
            code += 1 << masks[g]
        if not contains(code):
            append(tuple(masks[:ngroups]))
        j = last
        while j > 0 and rgs[j] == maxi[j - 1] + 1:
            j -= 1
        if j == 0:
            break
        gj = rgs[j]
        bj = bits[j + 1]
        masks[gj] ^= bj
        masks[gj + 1] |= bj
        rgs[j] = gj + 1
        for t in range(j + 1, n):
            gt = rgs[t]
            if gt:
                bt = bits[t + 1]
                masks[gt] ^= bt
                masks[0] |= bt
                rgs[t] = 0
        mj = maxi[j - 1] if maxi[j - 1] >= gj + 1 else gj + 1
        for t in range(j, n):
            maxi[t] = mj
    cache: dict[int, tuple[int, ...]] = {}
    keys = []
    for mask_key in survivors:
        converted = []
        for mask in mask_key:
            block = cache.get(mask)
            if block is None:
                block = cache[mask] = _mask_block(mask)
            converted.append(block)
        converted.sort()
        keys.append(tuple(converted))
    return _finish(p, "twoblock", keys, t0)


def _path_edges(blocks: Blocks) -> list[tuple[int, int]]:
    """A spanning path per block; connectivity-equivalent to the full cliques."""
    edges = []
    for b in blocks:
        for i in range(len(b) - 1):
            edges.append((b[i], b[i + 1]))
    return edges


def csp_graph(p: SetPartition) -> CspResult:
    """Union-find connectivity of the combined clique covers."""
    t0 = perf_counter()
    n = p.n
    p_edges = _path_edges(p.cr2_key())
    out = []
    for key in _iter_partition_keys(range(1, n + 1)):
        parent = list(range(n + 1))
        comps = n
        for a, b in p_edges:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a != b:
                parent[b] = a
                comps -= 1
        for block in key:
            a = block[0]
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            for b in block[1:]:
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a != b:
                    parent[b] = a
                    comps -= 1
        if comps == 1:
            out.append(key)
    return _finish(p, "graph", out, t0)


def _clique_edges(blocks: Blocks) -> set[tuple[int, int]]:
    edges = set()
    for b in blocks:
        for i in range(len(b)):
            for j in range(i + 1, len(b)):
                edges.add((b[i], b[j]))
    return edges


def _laplacian_connected(n: int, edges: set[tuple[int, int]]) -> bool:
    lap = [[0] * n for _ in range(n)]
    for a, b in edges:
        lap[a - 1][a - 1] += 1
        lap[b - 1][b - 1] += 1
        lap[a - 1][b - 1] -= 1
        lap[b - 1][a - 1] -= 1
    return _integer_rank_inline(lap) == n - 1


def _integer_rank_inline(m: list[list[int]]) -> int:
    # Bareiss elimination, kept local to avoid call overhead in the hot loop.
    nr = len(m)
    nc = len(m[0])
    rank = 0
    prev = 1
    for col in range(nc):
        piv = None
        for r in range(rank, nr):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        pivot = pr[col]
        for r in range(rank + 1, nr):
            row = m[r]
            f = row[col]
            for c in range(col + 1, nc):
                row[c] = (pivot * row[c] - f * pr[c]) // prev
            row[col] = 0
        prev = pivot
        rank += 1
        if rank == nr:
            break
    return rank


def csp_laplacian(p: SetPartition) -> CspResult:
    """Rank test on the Laplacian of the combined clique covers: rank n-1 means connected."""
    t0 = perf_counter()
    n = p.n
    p_cliques = _clique_edges(p.cr2_key())
    out = []
    for key in _iter_partition_keys(range(1, n + 1)):
        edges = p_cliques | _clique_edges(key)
        if _laplacian_connected(n, edges):
            out.append(key)
    return _finish(p, "laplacian", out, t0)


def csp_nullspace(p: SetPartition) -> CspResult:
    """Span-intersection test on indicator matrices with three pruning filters.

    A candidate is discarded without linear algebra when (a) it shares a block
    with the input, (b) one side has a block that is a union of the other
    side's blocks, or (c) the block counts force the span intersection to have
    dimension at least 2.  Filters (a) and (b) never apply to the all-ones
    column, which would be a false positive.
    """
    t0 = perf_counter()
    n = p.n
    blocks = p.cr2_key()
    m = len(blocks)
    if m == 1:
        keys = list(_iter_partition_keys(range(1, n + 1)))
        return _finish(p, "nullspace", keys, t0)
    block_id = [0] * (n + 1)
    for j, b in enumerate(blocks):
        for e in b:
            block_id[e] = j
    sizes = [len(b) for b in blocks]
    p_blocks = set(blocks)
    out = []
    for key in _iter_partition_keys(range(1, n + 1)):
        mt = len(key)
        if m + mt >= n + 2:
            continue
        shared = False
        for b in key:
            if b in p_blocks:
                shared = True
                break
        if shared:
            continue
        cand_id = [0] * (n + 1)
        for j, b in enumerate(key):
            for e in b:
                cand_id[e] = j
        cand_sizes = [len(b) for b in key]
        skip = False
        for b in key:
            if len(b) == n:
                continue
            touched = {block_id[e] for e in b}
            if sum(sizes[j] for j in touched) == len(b):
                skip = True
                break
        if not skip:
            for b in blocks:
                touched = {cand_id[e] for e in b}
                if sum(cand_sizes[j] for j in touched) == len(b):
                    skip = True
                    break
        if skip:
            continue
        rows = []
        for t in range(1, n + 1):
            row = [0] * (m + mt)
            row[block_id[t]] = 1
            row[m + cand_id[t]] = -1
            rows.append(row)
        if m + mt - _integer_rank_inline(rows) == 1:
            out.append(key)
    return _finish(p, "nullspace", out, t0)


def csp_stafford(p: SetPartition) -> CspResult:
    """Symbolic route: write the joint cumulant of the block products as a signed
    sum of joint moments, expand every joint moment back into cumulant products,
    and collect.  Surviving terms are indexed by the complementary partitions
    and must all carry coefficient one; anything else signals a bug."""
    t0 = perf_counter()
    blocks = p.cr2_key()
    m = len(blocks)
    part_cache: dict[tuple[int, ...], list[Blocks]] = {}

    def parts_of(elems: tuple[int, ...]) -> list[Blocks]:
        got = part_cache.get(elems)
        if got is None:
            got = list(_iter_partition_keys(elems))
            part_cache[elems] = got
        return got

    coeffs: dict[Blocks, int] = {}
    for sigma in _iter_partition_keys(range(m)):
        fold = len(sigma)
        sign = math.factorial(fold - 1)
        if (fold - 1) % 2:
            sign = -sign
        merged = [tuple(sorted(e for j in c for e in blocks[j])) for c in sigma]
        lists = [parts_of(a) for a in merged]
        for combo in product(*lists):
            allb: list[tuple[int, ...]] = []
            for part in combo:
                allb.extend(part)
            key = tuple(sorted(allb))
            coeffs[key] = coeffs.get(key, 0) + sign
    out = []
    for key, c in coeffs.items():
        if c == 0:
            continue
        if c != 1:
            raise AlgebraConsistencyError(
                f"coefficient {c} for {_key_str(key)}; expected 1"
            )
        out.append(key)
    return _finish(p, "stafford", out, t0)


CSP_ALGORITHMS = {
    "twoblock": csp_twoblock,
    "graph": csp_graph,
    "laplacian": csp_laplacian,
    "nullspace": csp_nullspace,
    "stafford": csp_stafford,
}


def count_not_complementary(p: SetPartition) -> int:
    """Number of partitions not complementary to ``p`` by inclusion-exclusion
    over the two-block splits of its blocks.

    Each split contributes the partitions refining its two-set coarsening, and
    an intersection of splits contributes the partitions refining the common
    coarsening, whose count is a product of Bell numbers.  For up to 15 splits
    the subsets are enumerated literally; beyond that the subsets are grouped
    by their common coarsening, which turns the sum into one over the set
    partitions of the block indexes with at least two parts, weighted by
    (-1)^parts * (parts-1)!.  Both evaluations are the same sum.
    """
    blocks = p.cr2_key()
    m = len(blocks)
    if m == 1:
        return 0
    sizes = [len(b) for b in blocks]
    nsplits = (1 << (m - 1)) - 1
    if nsplits <= 15:
        masks = []
        for s in range(1, 1 << (m - 1)):
            mask = 0
            for j in range(1, m):
                if (s >> (j - 1)) & 1:
                    mask |= 1 << j
            masks.append(mask)
        total = 0
        for chosen in range(1, 1 << nsplits):
            selected = [masks[i] for i in range(nsplits) if (chosen >> i) & 1]
            groups: dict[tuple[int, ...], int] = {}
            for j in range(m):
                pattern = tuple((mk >> j) & 1 for mk in selected)
                groups[pattern] = groups.get(pattern, 0) + sizes[j]
            term = 1
            for size in groups.values():
                term *= bell_number(size)
            total += term if bin(chosen).count("1") % 2 else -term
        return total
    total = 0
    for rho in _iter_partition_keys(range(m)):
        parts = len(rho)
        if parts < 2:
            continue
        term = math.factorial(parts - 1)
        if parts % 2:
            term = -term
        for c in rho:
            term *= bell_number(sum(sizes[j] for j in c))
        total += term
    return total


def swap_transfer(
    source: SetPartition, source_csp, target: SetPartition
) -> list[SetPartition]:
    """Transport a complementary list along the element relabeling that carries
    ``source`` onto ``target``; both must have the same block-size type."""
    if block_type(source) != block_type(target):
        raise IncompatibleTypeError(
            f"block types differ: {block_type(source)} vs {block_type(target)}"
        )
    src_blocks = source.canonical("cr1").blocks
    tgt_blocks = target.canonical("cr1").blocks
    relabel = [0] * (source.n + 1)
    for bs, bt in zip(src_blocks, tgt_blocks):
        for es, et in zip(bs, bt):
            relabel[es] = et
    out = []
    for q in source_csp:
        mapped = [tuple(sorted(relabel[e] for e in b)) for b in q.cr2_key()]
        out.append(SetPartition._from_key(target.n, tuple(sorted(mapped))))
    out.sort(key=SetPartition.sort_key)
    return out


def csp_twoblock_onevec(mat: IndicatorMatrix) -> list[IndicatorMatrix]:
    """Two-block algorithm phrased on indicator matrices.

    For every two-block split of the column indexes, the excluded matrices are
    the column-concatenations of an indicator matrix of each side's combined
    support; the complement within all indicator matrices of the same order is
    the complementary family.  Agrees with transporting ``csp_twoblock``
    through the indicator encoding.
    """
    n = mat.n
    supports = tuple(
        tuple(t + 1 for t in range(n) if col[t]) for col in mat.columns
    )
    if len(supports) == 1:
        excluded: set[Blocks] = set()
    else:
        excluded = _two_block_excluded_keys(supports)
    keys = [k for k in _iter_partition_keys(range(1, n + 1)) if k not in excluded]
    keys.sort(key=_key_str)
    out = []
    for key in keys:
        cols = []
        for b in key:
            col = [0] * n
            for e in b:
                col[e - 1] = 1
            cols.append(tuple(col))
        out.append(IndicatorMatrix(n, tuple(sorted(cols, reverse=True))))
    return out
