"""Exact symbolic algebra of moments and cumulants.

Expressions are integer-coefficient linear combinations of products of indexed
symbols (kappa for cumulants, mu for moments).  A product is stored as a
multiset of multi-indexes, so ``2 κ[1,1] κ[0,1]`` is the term with coefficient
2 and factor key (((1,1),1), ((0,1),1)).  Everything is exact; there is no
floating point in this module.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product

from .csp import CSP_ALGORITHMS, _two_block_excluded_keys, csp_twoblock_onevec
from .errors import DimensionError
from .indicator import (
    IndicatorMatrix,
    collapse_indicator,
    labeling_rule,
    to_dummy_indicator,
)
from .partitions import (
    Blocks,
    MultiIndex,
    MultiIndexPartition,
    SetPartition,
    _check_multi_index,
    _iter_partition_keys,
    enumerate_multiindex_partitions,
    subdivision_coefficient,
)

Term = tuple[tuple[MultiIndex, int], ...]

_SYMBOL_CHARS = {"kappa": "κ", "mu": "μ"}


def _term(factors) -> Term:
    """Canonical factor key: (multi-index, multiplicity) pairs, decreasing."""
    counts: dict[MultiIndex, int] = {}
    for mi, mult in factors:
        counts[mi] = counts.get(mi, 0) + mult
    return tuple(sorted(counts.items(), reverse=True))


class Polynomial:
    """Integer-coefficient combination of products of indexed symbols."""

    __slots__ = ("arity", "symbol", "terms")

    def __init__(self, arity: int, terms: dict[Term, int] | None = None, symbol: str = "kappa"):
        if symbol not in _SYMBOL_CHARS:
            raise ValueError(f"unknown symbol {symbol!r}")
        clean: dict[Term, int] = {}
        if terms:
            for key, c in terms.items():
                if c:
                    clean[key] = c
        self.arity = arity
        self.symbol = symbol
        self.terms = clean

    @classmethod
    def zero(cls, arity: int, symbol: str = "kappa") -> "Polynomial":
        return cls(arity, {}, symbol)

    @classmethod
    def one(cls, arity: int, symbol: str = "kappa") -> "Polynomial":
        return cls(arity, {(): 1}, symbol)

    @classmethod
    def single(cls, mi: MultiIndex, symbol: str = "kappa") -> "Polynomial":
        mi = tuple(mi)
        return cls(len(mi), {_term([(mi, 1)]): 1}, symbol)

    @classmethod
    def from_multi_index_partition(
        cls, mip: MultiIndexPartition, symbol: str = "kappa", coeff: int = 1
    ) -> "Polynomial":
        key = tuple(zip(mip.columns, mip.multiplicities))
        return cls(mip.arity, {key: coeff}, symbol)

    def _check_compatible(self, other: "Polynomial"):
        if self.arity != other.arity:
            raise DimensionError(f"arities differ: {self.arity} vs {other.arity}")
        if self.symbol != other.symbol:
            raise ValueError(f"symbols differ: {self.symbol} vs {other.symbol}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return Polynomial(self.arity, out, self.symbol)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.arity, {k: -c for k, c in self.terms.items()}, self.symbol)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, k: int) -> "Polynomial":
        return Polynomial(self.arity, {key: k * c for key, c in self.terms.items()}, self.symbol)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out: dict[Term, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = _term(list(k1) + list(k2))
                out[key] = out.get(key, 0) + c1 * c2
        return Polynomial(self.arity, out, self.symbol)

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.arity, self.symbol)
        for _ in range(e):
            out = out * self
        return out

    def substitute(self, fn, symbol: str) -> "Polynomial":
        """Replace every factor by ``fn(multi_index)`` (a polynomial in the new
        symbol), expand and collect."""
        out = Polynomial.zero(self.arity, symbol)
        for key, coeff in self.terms.items():
            term_poly = Polynomial.one(self.arity, symbol)
            for mi, mult in key:
                term_poly = term_poly * (fn(mi) ** mult)
            out = out + term_poly.scale(coeff)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.symbol == other.symbol
            and self.terms == other.terms
        )

    def __len__(self) -> int:
        return len(self.terms)

    def pretty(self) -> str:
        sym = _SYMBOL_CHARS[self.symbol]
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms, reverse=True):
            c = self.terms[key]
            factors = " ".join(
                f"{sym}[{','.join(str(e) for e in mi)}]" + (f"^{mult}" if mult > 1 else "")
                for mi, mult in key
            )
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = factors
            else:
                body = f"{mag} {factors}"
            bits.append(("-" if c < 0 else "+", body))

        sign, body = bits[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in bits[1:]:
            out += f" {sign} {body}"
        return out

    def json_terms(self) -> list[dict]:
        out = []
        for key in sorted(self.terms, reverse=True):
            factors = []
            for mi, mult in key:
                factors.extend([list(mi)] * mult)
            out.append({"coeff": self.terms[key], "factors": factors})
        return out

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"Polynomial({self.pretty()!r})"


def _indicator_multi_index(block: tuple[int, ...], n: int) -> MultiIndex:
    col = [0] * n
    for e in block:
        col[e - 1] = 1
    return tuple(col)


def _partition_key_term(key: Blocks, n: int) -> Term:
    return _term([(_indicator_multi_index(b, n), 1) for b in key])


@lru_cache(maxsize=None)
def _moments_to_cumulants_cached(i: MultiIndex) -> Polynomial:
    terms: dict[Term, int] = {}
    for mip in enumerate_multiindex_partitions(i):
        key = tuple(zip(mip.columns, mip.multiplicities))
        terms[key] = subdivision_coefficient(mip)
    return Polynomial(len(i), terms, "kappa")


def moments_to_cumulants(i) -> Polynomial:
    """The moment of order ``i`` written in cumulants: the sum over all
    multi-index partitions of ``i`` weighted by their subdivision coefficients."""
    return _moments_to_cumulants_cached(_check_multi_index(i))


@lru_cache(maxsize=None)
def _cumulants_to_moments_cached(i: MultiIndex) -> Polynomial:
    terms: dict[Term, int] = {}
    for mip in enumerate_multiindex_partitions(i):
        key = tuple(zip(mip.columns, mip.multiplicities))
        length = mip.length
        sign = math.factorial(length - 1)
        if (length - 1) % 2:
            sign = -sign
        terms[key] = sign * subdivision_coefficient(mip)
    return Polynomial(len(i), terms, "mu")


def cumulants_to_moments(i) -> Polynomial:
    """The cumulant of order ``i`` written in moments, with the alternating
    factorial signs; formally inverse to ``moments_to_cumulants``."""
    return _cumulants_to_moments_cached(_check_multi_index(i))


def generalized_cumulant(p: SetPartition, algorithm: str = "twoblock") -> Polynomial:
    """Joint cumulant of the blockwise products, as a cumulant polynomial.

    One term per complementary partition: the product of the joint cumulants
    of its blocks, each encoded by the block's 0/1 indicator multi-index.  All
    coefficients are 1.  The complementary enumerator is selectable for
    differential testing.
    """
    result = CSP_ALGORITHMS[algorithm](p)
    n = p.n
    terms: dict[Term, int] = {}
    for q in result.complementary:
        terms[_partition_key_term(q.blocks, n)] = 1
    return Polynomial(n, terms, "kappa")


def generalized_cumulant_subtractive(p: SetPartition) -> Polynomial:
    """Same output as ``generalized_cumulant``, computed as the sum over the
    whole partition lattice minus the sum over the non-complementary family."""
    n = p.n
    full: dict[Term, int] = {}
    for key in _iter_partition_keys(range(1, n + 1)):
        full[_partition_key_term(key, n)] = 1
    poly = Polynomial(n, full, "kappa")
    blocks = p.cr2_key()
    if len(blocks) > 1:
        t_terms: dict[Term, int] = {}
        for key in _two_block_excluded_keys(blocks):
            t_terms[_partition_key_term(key, n)] = 1
        poly = poly - Polynomial(n, t_terms, "kappa")
    return poly


def generalized_multivariate_cumulant(mip: MultiIndexPartition) -> Polynomial:
    """Generalized cumulant with repeated variables, in multivariate cumulants.

    The multi-index partition is expanded over distinct dummy variables, the
    complementary indicator matrices are enumerated, and each one is collapsed
    back onto the original variables; collapses that coincide accumulate their
    counts as the term coefficients.
    """
    labeling = labeling_rule(mip.target)
    mat = to_dummy_indicator(mip)
    counts: dict[MultiIndexPartition, int] = {}
    for comp in csp_twoblock_onevec(mat):
        collapsed = collapse_indicator(comp, labeling)
        counts[collapsed] = counts.get(collapsed, 0) + 1
    terms: dict[Term, int] = {}
    for collapsed, c in counts.items():
        terms[tuple(zip(collapsed.columns, collapsed.multiplicities))] = c
    return Polynomial(mip.arity, terms, "kappa")


def generalized_multivariate_cumulant_subtractive(mip: MultiIndexPartition) -> Polynomial:
    """Same output as ``generalized_multivariate_cumulant`` by the subtractive
    route: the full moment expansion minus the non-complementary side.

    The non-complementary side is an inclusion-exclusion over the two-block
    splits of the expanded columns.  Subsets of splits with the same common
    coarsening contribute identical products, so the sum is grouped by that
    coarsening: partitions of the column indexes with at least two parts,
    weighted by (-1)^parts (parts-1)!, each part contributing the moment
    expansion of its summed columns.
    """
    cols = mip.expanded()
    length = len(cols)
    arity = mip.arity
    full = moments_to_cumulants(mip.target)
    if length == 1:
        return full
    t_sum = Polynomial.zero(arity, "kappa")
    for rho in _iter_partition_keys(range(length)):
        parts = len(rho)
        if parts < 2:
            continue
        weight = math.factorial(parts - 1)
        if parts % 2:
            weight = -weight
        prod_poly = Polynomial.one(arity, "kappa")
        for group in rho:
            merged = tuple(sum(cols[q][k] for q in group) for k in range(arity))
            prod_poly = prod_poly * moments_to_cumulants(merged)
        t_sum = t_sum + prod_poly.scale(weight)
    return full - t_sum


def _refinement_keys(blocks: Blocks):
    """All partitions refining the given blocks (per-block partitions combined)."""
    lists = [list(_iter_partition_keys(b)) for b in blocks]
    for combo in product(*lists):
        allb: list[tuple[int, ...]] = []
        for part in combo:
            allb.extend(part)
        yield tuple(sorted(allb))


def _coarsening_keys(blocks: Blocks):
    """All partitions the given one refines (groupings of whole blocks)."""
    m = len(blocks)
    for grouping in _iter_partition_keys(range(m)):
        yield tuple(
            sorted(tuple(sorted(e for j in g for e in blocks[j])) for g in grouping)
        )


def generalized_cumulant_in_moments(mat: IndicatorMatrix) -> Polynomial:
    """The generalized cumulant as a signed sum of joint-moment products.

    The sum runs over the coarsenings of the encoded partition (exactly the
    matrices whose column span sits inside the input's span: their columns are
    0/1-combinations of the input's columns), with coefficient
    (-1)^(blocks-1) (blocks-1)!.  Substituting the cumulant expansion of each
    moment factor and collecting reproduces ``generalized_cumulant``.
    """
    n = mat.n
    blocks = tuple(
        tuple(t + 1 for t in range(n) if col[t]) for col in mat.columns
    )
    terms: dict[Term, int] = {}
    for key in _coarsening_keys(blocks):
        length = len(key)
        sign = math.factorial(length - 1)
        if (length - 1) % 2:
            sign = -sign
        terms[_partition_key_term(key, n)] = sign
    return Polynomial(n, terms, "mu")


def moment_product_expansion(mat: IndicatorMatrix) -> Polynomial:
    """Product of the blockwise joint moments written in cumulants: one term of
    coefficient 1 per partition refining the encoded partition."""
    n = mat.n
    blocks = tuple(
        tuple(t + 1 for t in range(n) if col[t]) for col in mat.columns
    )
    terms: dict[Term, int] = {}
    for key in _refinement_keys(blocks):
        terms[_partition_key_term(key, n)] = 1
    return Polynomial(n, terms, "kappa")


def alternating_coarsening_sum(mat: IndicatorMatrix) -> int:
    """Sum of (-1)^(blocks-1) (blocks-1)! over the coarsenings of the encoded
    partition: 1 for the one-block partition, 0 for everything else."""
    total = 0
    for grouping in _iter_partition_keys(range(mat.m)):
        length = len(grouping)
        sign = math.factorial(length - 1)
        if (length - 1) % 2:
            sign = -sign
        total += sign
    return total
