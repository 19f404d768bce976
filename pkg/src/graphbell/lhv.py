"""
Deterministic local-hidden-variable evaluation.

Every classical variable of an expression is a bit of an integer counter
(bit set means value -1), so a term's value is the parity of the counter
masked by the term's variable mask. Maximising ``|sum_t c_t (-1)**popcount(m_t & a)|``
over all counters ``a`` is exhaustive: the counter range is split into
contiguous blocks on the high bits, and inside a block the low bits are
handled at once by a fast Walsh-Hadamard transform, which evaluates the
signed sum for every low-bit pattern.

Variable ``j`` (in sorted variable order) sits at bit ``nvars - 1 - j``, so
counter order is lexicographic order of the assignment with +1 before -1.
Ties are broken towards the smallest counter, independently of how the range
is split into blocks or how many workers process them.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple

import numpy as np

from .bell import BellInequality, TwoSettingExpression
from .errors import GraphBellError, GuardError, ResourceError
from .graph import Graph, graph_state_expectation
from .pauli import PauliSum

FLOAT_TOL = 1e-9
MAX_VARIABLES = 34
BLOCK_BITS = 20
MAX_FACET_PARTIES = 5

Assignment = dict


@dataclass
class BoundsReport:
    classical_max: float
    quantum_value: float | None = None
    violation: float | None = None
    argmax: Assignment = field(default_factory=dict)
    lemma1_used: bool = False

    def to_dict(self) -> dict:
        def key(v):
            if isinstance(v[0], int) and isinstance(v[1], str):
                return f"{v[1]}{v[0]}"
            return f"{'AB'[v[1]]}{v[0] + 1}"

        return {
            "classical_max": _num(self.classical_max),
            "quantum_value": _num(self.quantum_value),
            "violation": _num(self.violation),
            "argmax": {key(v): s for v, s in self.argmax.items()},
            "lemma1_used": self.lemma1_used,
        }


def _num(v):
    if v is None:
        return None
    v = float(v)
    return int(v) if v.is_integer() else v


# ---------------------------------------------------------------------------
# enumeration kernel
# ---------------------------------------------------------------------------


def _popcount_parity(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a) & 1


def _fwht(u: np.ndarray) -> np.ndarray:
    """In-place unnormalised Walsh-Hadamard transform (length a power of two)."""
    h = 1
    size = u.shape[0]
    while h < size:
        v = u.reshape(-1, 2, h)
        a = v[:, 0, :].copy()
        v[:, 0, :] += v[:, 1, :]
        np.subtract(a, v[:, 1, :], out=v[:, 1, :])
        h *= 2
    return u


class _Kernel:
    def __init__(self, masks, coeffs, nvars, block_bits=BLOCK_BITS):
        self.integral = all(isinstance(c, (int, np.integer)) or float(c).is_integer() for c in coeffs)
        self.dtype = np.int64 if self.integral else np.float64
        self.tol = 0 if self.integral else FLOAT_TOL
        self.nvars = nvars
        self.lo_bits = min(nvars, block_bits)
        self.hi_bits = nvars - self.lo_bits
        masks = np.array(masks, dtype=np.uint64)
        lo_mask = np.uint64((1 << self.lo_bits) - 1)
        self.m_lo = (masks & lo_mask).astype(np.int64)
        self.m_hi = masks >> np.uint64(self.lo_bits)
        self.coeffs = np.array([int(c) if self.integral else float(c) for c in coeffs], dtype=self.dtype)

    def block_values(self, h: int) -> np.ndarray:
        sign = 1 - 2 * _popcount_parity(self.m_hi & np.uint64(h)).astype(self.dtype)
        u = np.zeros(1 << self.lo_bits, dtype=self.dtype)
        np.add.at(u, self.m_lo, self.coeffs * sign)
        return np.abs(_fwht(u))

    def block_max(self, h: int):
        vals = self.block_values(h)
        return vals.max()

    def first_at_least(self, h: int, threshold) -> int:
        vals = self.block_values(h)
        return int(np.flatnonzero(vals >= threshold)[0])

    def run(self, workers: int | None = None):
        nblocks = 1 << self.hi_bits
        workers = workers or 1
        if workers > 1 and nblocks > 1:
            with ThreadPoolExecutor(max_workers=workers) as ex:
                maxima = list(ex.map(self.block_max, range(nblocks)))
        else:
            maxima = [self.block_max(h) for h in range(nblocks)]
        best = max(maxima)
        threshold = best - self.tol
        h = next(k for k, m in enumerate(maxima) if m >= threshold)
        lo = self.first_at_least(h, threshold)
        value = int(best) if self.integral else float(best)
        return value, (h << self.lo_bits) | lo


def _max_abs(masks, coeffs, nvars, workers=None) -> tuple[float, int]:
    if nvars > MAX_VARIABLES:
        raise ResourceError(f"{nvars} variables exceed the enumeration cap of {MAX_VARIABLES}")
    if not masks:
        return 0, 0
    return _Kernel(masks, coeffs, nvars).run(workers)


def _decode(counter: int, variables) -> Assignment:
    k = len(variables)
    return {v: (-1 if counter >> (k - 1 - j) & 1 else 1) for j, v in enumerate(variables)}


def default_workers() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# Pauli-level evaluation
# ---------------------------------------------------------------------------


def pauli_variables(b: PauliSum, pin_z: bool = False) -> list[tuple[int, str]]:
    """Sorted (qubit, letter) variables occurring in ``b``; Z dropped when pinned."""
    out = set()
    for _, p in b:
        for q in p.support():
            letter = p.letter(q)
            if not (pin_z and letter == "Z"):
                out.add((q, letter))
    return sorted(out)


def classical_value(b: PauliSum, a: Mapping[tuple[int, str], int]) -> float:
    """Value of ``b`` with every Pauli letter replaced by its assigned +-1."""
    total = 0
    for c, p in b:
        v = c
        for q in p.support():
            key = (q, p.letter(q))
            try:
                v *= a[key]
            except KeyError:
                raise GraphBellError(f"no value assigned to {key[1]}{key[0]}") from None
        total += v
    return total


def _check_stabilizer_sum(b: PauliSum, graph: Graph | None) -> None:
    if graph is None:
        raise GuardError("the Z=+1 restriction needs the graph the operator was built from")
    for c, p in b:
        signed = p if c > 0 else -p
        if graph_state_expectation(graph, signed) != 1:
            raise GuardError(f"term {c:+g}*{p.letters} is not a stabilizer element of the graph state")


def classical_max(
    b: PauliSum,
    use_lemma1: bool = False,
    graph: Graph | None = None,
    workers: int | None = None,
) -> BoundsReport:
    """Exact maximum of ``|classical_value(b, a)|`` over all +-1 assignments.

    With ``use_lemma1`` every Z variable is pinned to +1, which is valid for
    sums of stabilizer elements of ``graph`` (checked); the maximum is the
    same but the search space shrinks.
    """
    if use_lemma1:
        _check_stabilizer_sum(b, graph)
    variables = pauli_variables(b, pin_z=use_lemma1)
    index = {v: j for j, v in enumerate(variables)}
    k = len(variables)
    masks, coeffs = [], []
    for c, p in b:
        m = 0
        for q in p.support():
            letter = p.letter(q)
            if use_lemma1 and letter == "Z":
                continue
            m |= 1 << (k - 1 - index[(q, letter)])
        masks.append(m)
        coeffs.append(c)
    value, counter = _max_abs(masks, coeffs, k, workers)
    argmax = _decode(counter, variables)
    if use_lemma1:
        argmax.update({(q, "Z"): 1 for q, letter in pauli_variables(b) if letter == "Z"})
        argmax = dict(sorted(argmax.items()))
    return BoundsReport(classical_max=value, argmax=argmax, lemma1_used=use_lemma1)


# ---------------------------------------------------------------------------
# setting-level evaluation
# ---------------------------------------------------------------------------


def settings_value(e: TwoSettingExpression, a: Mapping[tuple[int, int], int]) -> float:
    total = 0
    for c, choice in e.terms:
        v = c
        for p, s in enumerate(choice):
            v *= a[(p, s)]
        total += v
    return total


def classical_max_settings(e: TwoSettingExpression, workers: int | None = None) -> BoundsReport:
    """Exhaustive local maximum over the 2**(2P) setting assignments.

    Variables are ``(party, setting)`` with 0-based party index.
    """
    variables = [(p, s) for p in range(e.parties) for s in (0, 1)]
    k = len(variables)
    masks = []
    for _, choice in e.terms:
        m = 0
        for p, s in enumerate(choice):
            m |= 1 << (k - 1 - (2 * p + s))
        masks.append(m)
    value, counter = _max_abs(masks, [c for c, _ in e.terms], k, workers)
    return BoundsReport(classical_max=value, argmax=_decode(counter, variables))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def violation_report(
    b: BellInequality,
    quantum_value: float | None = None,
    use_lemma1: bool = False,
    graph: Graph | None = None,
    workers: int | None = None,
) -> BoundsReport:
    """Local maximum of ``b`` (computed, not taken from its bound) and the ratio.

    ``quantum_value`` defaults to the inequality's own value on its graph
    state. The local maximum is taken over Pauli letters or over settings
    according to ``b.lhv_level``.
    """
    if quantum_value is None:
        quantum_value = b.quantum_value
    if b.lhv_level == "pauli" and b.pauli_form is not None:
        report = classical_max(b.pauli_form, use_lemma1=use_lemma1, graph=graph, workers=workers)
    else:
        report = classical_max_settings(b.expression, workers=workers)
    if report.classical_max == 0:
        raise GraphBellError("local maximum is zero; the ratio is undefined")
    report.quantum_value = quantum_value
    if quantum_value is not None:
        report.violation = quantum_value / report.classical_max
    return report


# ---------------------------------------------------------------------------
# facets of the full-correlation polytope
# ---------------------------------------------------------------------------


class FacetResult(NamedTuple):
    saturating_count: int
    affine_rank: int
    is_facet: bool


def correlation_vector(parties: int, assignment: Mapping[tuple[int, int], int]) -> tuple[int, ...]:
    """Products of the chosen setting values, one coordinate per choice vector."""
    out = []
    for choice in itertools.product((0, 1), repeat=parties):
        v = 1
        for p, s in enumerate(choice):
            v *= assignment[(p, s)]
        out.append(v)
    return tuple(out)


def _rank(rows: list[list[int]]) -> int:
    """Exact rank by Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def facet_test(e: TwoSettingExpression, bound) -> FacetResult:
    """Is ``expression <= bound`` a facet of the full-correlation polytope?

    Collects the deterministic correlation vectors attaining ``+bound`` exactly
    and checks that their affine hull has dimension ``2**P - 1``.
    """
    P = e.parties
    if P > MAX_FACET_PARTIES:
        raise ResourceError(f"facet test limited to {MAX_FACET_PARTIES} parties, got {P}")
    if not e.is_integral() or not float(bound).is_integer():
        raise GraphBellError("facet test needs integer coefficients and bound")
    bound = int(bound)
    coeffs = e.as_dict()
    variables = [(p, s) for p in range(P) for s in (0, 1)]
    points = set()
    for values in itertools.product((1, -1), repeat=2 * P):
        a = dict(zip(variables, values))
        vec = correlation_vector(P, a)
        val = sum(int(coeffs.get(ch, 0)) * x for ch, x in zip(itertools.product((0, 1), repeat=P), vec))
        if val == bound:
            points.add(vec)
    points = sorted(points)
    if not points:
        return FacetResult(0, -1, False)
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    rank = _rank(diffs) if diffs else 0
    return FacetResult(len(points), rank, rank == (1 << P) - 1)
