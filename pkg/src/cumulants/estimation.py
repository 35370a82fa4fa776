"""Unbiased estimation of generalized multivariate cumulants from sample data.

Estimators are symbolic rational expressions in the sample size N and in power
sums S_t = sum_l prod_j X_{j,l}^{t_j}.  Coefficients are integer polynomials
in N over a falling-factorial denominator N(N-1)...(N-r+1), where r is the
largest number of power-sum factors in any monomial; this canonical form is
kept exact until a single final float conversion at evaluation time.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

from .errors import (
    AlgebraConsistencyError,
    DimensionError,
    InsufficientSampleError,
    ParseError,
)
from .indicator import IndicatorMatrix, labeling_rule, to_dummy_indicator
from .algebra import cumulants_to_moments, Polynomial
from .partitions import (
    MultiIndex,
    MultiIndexPartition,
    _check_multi_index,
    _iter_partition_keys,
)

# ---------------------------------------------------------------------------
# Integer polynomials in the symbol N, stored as ascending coefficient tuples.

NPoly = tuple[int, ...]


def _npoly_trim(p) -> NPoly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _npoly_add(a: NPoly, b: NPoly) -> NPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] += c
    return _npoly_trim(out)


def _npoly_mul(a: NPoly, b: NPoly) -> NPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _npoly_trim(out)


def _npoly_scale(a: NPoly, k: int) -> NPoly:
    if k == 0:
        return ()
    return tuple(k * c for c in a)


def _npoly_div_linear(p: NPoly, root: int) -> NPoly:
    """Exact division by (N - root); raises when the remainder is nonzero."""
    if not p:
        return ()
    acc = 0
    down = []
    for a in reversed(p):
        acc = a + root * acc
        down.append(acc)
    if down[-1] != 0:
        raise AlgebraConsistencyError(f"polynomial not divisible by (N - {root})")
    return _npoly_trim(reversed(down[:-1]))


def _npoly_eval(p: NPoly, value: int) -> int:
    out = 0
    for c in reversed(p):
        out = out * value + c
    return out


def _npoly_render(p: NPoly) -> tuple[int, str]:
    """Sign and body for display; the body has a positive leading coefficient."""
    deg = len(p) - 1
    sign = 1 if p[-1] > 0 else -1
    q = [sign * c for c in p]

    def frag(c: int, k: int) -> str:
        if k == 0:
            return str(c)
        n_part = "N" if k == 1 else f"N^{k}"
        return n_part if c == 1 else f"{c} {n_part}"

    nonzero = [(k, q[k]) for k in range(deg, -1, -1) if q[k]]
    if len(nonzero) == 1:
        k, c = nonzero[0]
        return sign, frag(c, k)
    body = frag(nonzero[0][1], nonzero[0][0])
    for k, c in nonzero[1:]:
        body += f" {'-' if c < 0 else '+'} {frag(abs(c), k)}"
    return sign, f"({body})"


# ---------------------------------------------------------------------------

Mono = tuple[tuple[MultiIndex, int], ...]


def _mono(labels) -> Mono:
    counts: dict[MultiIndex, int] = {}
    for lab, mult in labels:
        counts[lab] = counts.get(lab, 0) + mult
    return tuple(sorted(counts.items(), reverse=True))


class PowerSumPolynomial:
    """Rational-in-N combination of power-sum monomials, in canonical form.

    ``terms`` maps a power-sum monomial (multiset of labels) to an integer
    polynomial in N; the shared denominator is the falling factorial of
    ``order``.  On construction the order is lowered to the largest factor
    count actually present, cancelling (N - j) factors exactly.
    """

    __slots__ = ("arity", "order", "terms")

    def __init__(self, arity: int, order: int, terms: dict[Mono, NPoly]):
        clean: dict[Mono, NPoly] = {}
        for mono, poly in terms.items():
            poly = _npoly_trim(poly)
            if poly:
                clean[mono] = poly
        need = max((sum(m for _, m in mono) for mono in clean), default=0)
        while order > need:
            order -= 1
            clean = {m: _npoly_div_linear(p, order) for m, p in clean.items()}
        self.arity = arity
        self.order = order
        self.terms = clean

    @classmethod
    def zero(cls, arity: int) -> "PowerSumPolynomial":
        return cls(arity, 0, {})

    def _raised_terms(self, target_order: int) -> dict[Mono, NPoly]:
        """Numerators rewritten over the falling factorial of ``target_order``."""
        factor: NPoly = (1,)
        for j in range(self.order, target_order):
            factor = _npoly_mul(factor, (-j, 1))
        return {m: _npoly_mul(p, factor) for m, p in self.terms.items()}

    def __add__(self, other: "PowerSumPolynomial") -> "PowerSumPolynomial":
        if self.arity != other.arity:
            raise DimensionError(f"arities differ: {self.arity} vs {other.arity}")
        order = max(self.order, other.order)
        out = self._raised_terms(order)
        for mono, poly in other._raised_terms(order).items():
            out[mono] = _npoly_add(out.get(mono, ()), poly)
        return PowerSumPolynomial(self.arity, order, out)

    def __sub__(self, other: "PowerSumPolynomial") -> "PowerSumPolynomial":
        return self + other.scale(-1)

    def scale(self, k: int) -> "PowerSumPolynomial":
        return PowerSumPolynomial(
            self.arity, self.order, {m: _npoly_scale(p, k) for m, p in self.terms.items()}
        )

    def relabel(self, fn, arity: int) -> "PowerSumPolynomial":
        """Apply ``fn`` to every power-sum label, merging collisions."""
        out: dict[Mono, NPoly] = {}
        for mono, poly in self.terms.items():
            new = _mono((tuple(fn(lab)), mult) for lab, mult in mono)
            out[new] = _npoly_add(out.get(new, ()), poly)
        return PowerSumPolynomial(arity, self.order, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSumPolynomial):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.order == other.order
            and self.terms == other.terms
        )

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms, reverse=True):
            sign, coeff = _npoly_render(self.terms[mono])
            factors = " ".join(
                f"S[{','.join(str(e) for e in lab)}]" + (f"^{m}" if m > 1 else "")
                for lab, m in mono
            )
            body = factors if coeff == "1" else f"{coeff} {factors}"
            bits.append(("-" if sign < 0 else "+", body))
        sign, body = bits[0]
        num = ("-" if sign == "-" else "") + body
        for sign, body in bits[1:]:
            num += f" {sign} {body}"
        if self.order == 0:
            return num
        den = "N" + "".join(f"(N-{j})" for j in range(1, self.order))
        if len(bits) > 1 or bits[0][0] == "-":
            num = f"({num})"
        return f"{num} / {den}"

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"PowerSumPolynomial({self.pretty()!r})"


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampleMatrix:
    """N observations (rows) of n real variables (columns)."""

    rows: tuple[tuple[float, ...], ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("need at least one row and one column")
        width = len(self.rows[0])
        for r, row in enumerate(self.rows, start=1):
            if len(row) != width:
                raise ValueError(f"row {r} has {len(row)} columns, expected {width}")
            for c, x in enumerate(row, start=1):
                if not math.isfinite(x):
                    raise ValueError(f"non-finite entry at row {r}, column {c}")

    @classmethod
    def from_rows(cls, rows, names=None) -> "SampleMatrix":
        return cls(tuple(tuple(float(x) for x in row) for row in rows),
                   tuple(names) if names else None)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def num_cols(self) -> int:
        return len(self.rows[0])


def load_csv(path, has_header: bool = False) -> SampleMatrix:
    """Read a rectangular numeric CSV; parse errors carry row/column coordinates."""
    names = None
    rows: list[tuple[float, ...]] = []
    width = None
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for lineno, record in enumerate(reader, start=1):
            if not record:
                continue
            if has_header and lineno == 1:
                names = tuple(cell.strip() for cell in record)
                width = len(names)
                continue
            if width is None:
                width = len(record)
            if len(record) != width:
                raise ParseError(
                    f"row {lineno} has {len(record)} fields, expected {width}"
                )
            vals = []
            for col, cell in enumerate(record, start=1):
                try:
                    vals.append(float(cell))
                except ValueError:
                    raise ParseError(
                        f"non-numeric value {cell.strip()!r} at row {lineno}, column {col}"
                    ) from None
            rows.append(tuple(vals))
    if not rows:
        raise ParseError("no data rows")
    return SampleMatrix(tuple(rows), names)


def power_sum(data: SampleMatrix, t) -> float:
    """S_t = sum over rows of the product of entries raised to t, with 0^0 = 1."""
    t = _check_multi_index(t)
    if len(t) != data.num_cols:
        raise DimensionError(f"label arity {len(t)} != {data.num_cols} columns")
    active = [(j, e) for j, e in enumerate(t) if e]
    if not active:
        return float(data.num_rows)
    return math.fsum(
        math.prod(row[j] ** e for j, e in active) for row in data.rows
    )


def distinct_index_expansion(factors) -> PowerSumPolynomial:
    """Unbiased estimator of a product of raw moments, in power sums.

    For factors a_1..a_r this represents the average of
    prod_j X_{.,l_j}^{a_j} over pairwise-distinct row indexes l_1..l_r: the
    sum over the partitions of the factor positions, each block contributing
    the power sum of its summed labels and a (-1)^(size-1) (size-1)! weight,
    all over the falling factorial of order r.
    """
    factors = [_check_multi_index(a) for a in factors]
    if not factors:
        raise ValueError("need at least one factor")
    arity = len(factors[0])
    for a in factors:
        if len(a) != arity:
            raise DimensionError("factors have mixed arities")
    r = len(factors)
    terms: dict[Mono, NPoly] = {}
    for key in _iter_partition_keys(range(r)):
        coeff = 1
        labels = []
        for block in key:
            size = len(block)
            w = math.factorial(size - 1)
            coeff *= -w if (size - 1) % 2 else w
            labels.append(
                (tuple(sum(factors[j][k] for j in block) for k in range(arity)), 1)
            )
        mono = _mono(labels)
        terms[mono] = _npoly_add(terms.get(mono, ()), (coeff,))
    return PowerSumPolynomial(arity, r, terms)


def polykay(mip: MultiIndexPartition) -> PowerSumPolynomial:
    """Unbiased estimator of a product of cumulants (a multivariate polykay).

    Each cumulant factor is expanded into moments, the expansions are
    multiplied formally, and every moment monomial is replaced by its
    distinct-index estimator; collecting gives the unique symmetric unbiased
    estimator in power sums.
    """
    arity = mip.arity
    mp = Polynomial.one(arity, "mu")
    for col, rep in zip(mip.columns, mip.multiplicities):
        mp = mp * (cumulants_to_moments(col) ** rep)
    total = PowerSumPolynomial.zero(arity)
    for key, coeff in mp.terms.items():
        factor_list: list[MultiIndex] = []
        for mi, mult in key:
            factor_list.extend([mi] * mult)
        total = total + distinct_index_expansion(factor_list).scale(coeff)
    return total


def generalized_cumulant_estimator(mat: IndicatorMatrix) -> PowerSumPolynomial:
    """Unbiased estimator of the generalized cumulant encoded by ``mat``.

    The blockwise products are treated as one dummy variable per column, the
    joint-cumulant estimator over those m variables is built, and every
    power-sum label is pushed back through the columns (label entries are
    binary, so the pushed labels stay binary).
    """
    m = mat.m
    joint = MultiIndexPartition(((1,) * m,), (1,))
    est = polykay(joint)

    def push(label):
        return tuple(
            sum(label[j] * mat.columns[j][t] for j in range(m)) for t in range(mat.n)
        )

    return est.relabel(push, mat.n)


def generalized_multivariate_cumulant_estimator(
    mip: MultiIndexPartition,
) -> PowerSumPolynomial:
    """Unbiased estimator of a generalized multivariate cumulant.

    The multi-index partition is expanded over distinct dummy variables, the
    generalized-cumulant estimator is built there, and the dummy power-sum
    labels are aggregated back onto the original variables.
    """
    mat = to_dummy_indicator(mip)
    est = generalized_cumulant_estimator(mat)
    bounds = labeling_rule(mip.target).bounds()
    arity = mip.arity

    def collapse(label):
        return tuple(
            sum(label[t] for t in range(bounds[k], bounds[k + 1]))
            for k in range(arity)
        )

    return est.relabel(collapse, arity)


def evaluate(expr: PowerSumPolynomial, data: SampleMatrix) -> float:
    """Evaluate on a sample: exact integer coefficient arithmetic, power sums in
    compensated floating point, one final division."""
    if expr.arity != data.num_cols:
        raise DimensionError(
            f"expression arity {expr.arity} != {data.num_cols} data columns"
        )
    n_obs = data.num_rows
    if n_obs < expr.order:
        raise InsufficientSampleError(
            f"need at least {expr.order} observations, got {n_obs}"
        )
    den = 1
    for j in range(expr.order):
        den *= n_obs - j
    cache: dict[MultiIndex, float] = {}

    def ps(label: MultiIndex) -> float:
        got = cache.get(label)
        if got is None:
            got = power_sum(data, label)
            cache[label] = got
        return got

    pieces = []
    for mono, poly in expr.terms.items():
        val = 1.0
        for lab, mult in mono:
            val *= ps(lab) ** mult
        pieces.append(_npoly_eval(poly, n_obs) * val)
    return math.fsum(pieces) / den
