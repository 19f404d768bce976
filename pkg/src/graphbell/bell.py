"""
Two-setting Bell inequalities built from graph-state stabilizers.

A :class:`BellInequality` carries the inequality at two levels:

* ``expression``: an abstract full-correlation polynomial over parties, each
  choosing setting 0 or 1 (``A``/``B``, or ``Q``/``W`` for the rotated party
  of the Ardehali construction);
* ``pauli_form``: the Bell operator as a real-weighted Pauli sum on the
  qubits of the graph.

When the qubits can be split into parties so that each setting is a single
multi-qubit observable, ``layout`` and ``observables`` hold that split and
expanding ``expression`` through ``observables`` reproduces ``pauli_form``.
The constructor checks this.

Constructions available: the vertex-neighborhood operator ``g_i prod(1 + g_j)``
(:func:`theorem1_operator`), the triangle operator (:func:`fc3_operator`),
products of compatible inequalities (:func:`composite`), chain, ring and star
composites, the greedy block packer, Ardehali-type variants, conditioning on
Z outcomes, and the eight four-qubit cluster-state inequalities
(:func:`lc4_set`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import CompositionError, ConstructionError, GraphBellError
from .graph import Graph, family, graph_state_expectation, is_independent_set, stabilizer_element
from .pauli import PauliString, PauliSum

SQRT2 = math.sqrt(2.0)
COEFF_ATOL = 1e-12


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


def mermin_bound(m: int) -> int:
    """Local bound of the m-party Mermin expression."""
    if m < 1:
        raise GraphBellError("party count must be >= 1")
    return 2 ** ((m - 1) // 2) if m % 2 else 2 ** (m // 2)


def ardehali_bound(m: int) -> int:
    """Local bound of the m-party Ardehali expression."""
    if m < 1:
        raise GraphBellError("party count must be >= 1")
    return 2 ** ((m + 1) // 2) if m % 2 else 2 ** (m // 2)


# ---------------------------------------------------------------------------
# abstract expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoSettingExpression:
    """Sum of ``coeff * prod_p V[p, choice[p]]`` over distinct choice vectors."""

    parties: int
    terms: tuple[tuple[float, tuple[int, ...]], ...]

    def __post_init__(self):
        if self.parties < 1:
            raise GraphBellError("an expression needs at least one party")
        seen = set()
        for c, choice in self.terms:
            if len(choice) != self.parties or any(s not in (0, 1) for s in choice):
                raise GraphBellError(f"bad choice vector {choice} for {self.parties} parties")
            if choice in seen:
                raise GraphBellError(f"duplicate choice vector {choice}")
            if c == 0:
                raise GraphBellError(f"zero coefficient on {choice}")
            seen.add(choice)
        object.__setattr__(self, "terms", tuple(sorted(self.terms, key=lambda t: t[1])))

    def as_dict(self) -> dict[tuple[int, ...], float]:
        return {choice: c for c, choice in self.terms}

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or float(c).is_integer() for c, _ in self.terms)

    def product(self, other: "TwoSettingExpression") -> "TwoSettingExpression":
        """Expression on the concatenated party list."""
        return TwoSettingExpression(
            self.parties + other.parties,
            tuple((c1 * c2, ch1 + ch2) for c1, ch1 in self.terms for c2, ch2 in other.terms),
        )

    def __str__(self):
        names = "AB"
        parts = []
        for c, choice in self.terms:
            word = "".join(f"{names[s]}{p + 1}" for p, s in enumerate(choice))
            parts.append(f"{c:+g}*{word}")
        return " ".join(parts)


def mermin_pattern(m: int) -> TwoSettingExpression:
    """Terms with an odd number of B settings, sign (-1)**((#B - 1) / 2)."""
    terms = []
    for choice in itertools.product((0, 1), repeat=m):
        k = sum(choice)
        if k % 2:
            terms.append(((-1) ** ((k - 1) // 2), choice))
    return TwoSettingExpression(m, tuple(terms))


def ardehali_pattern(m: int) -> TwoSettingExpression:
    """Ardehali expression; party 1 measures Q (setting 0) or W (setting 1).

    ``(Q - W) * F + (Q + W) * G`` where ``F`` collects the terms of the other
    parties with an even number of B settings, sign ``-(-1)**(k/2)``, and
    ``G`` those with an odd number, sign ``(-1)**((k-1)/2)``.
    """
    if m < 2:
        raise GraphBellError("the Ardehali expression needs at least two parties")
    terms = []
    for rest in itertools.product((0, 1), repeat=m - 1):
        k = sum(rest)
        if k % 2 == 0:
            f = -((-1) ** (k // 2))
            terms += [(f, (0,) + rest), (-f, (1,) + rest)]
        else:
            g = (-1) ** ((k - 1) // 2)
            terms += [(g, (0,) + rest), (g, (1,) + rest)]
    return TwoSettingExpression(m, tuple(terms))


def chsh_pattern() -> TwoSettingExpression:
    """A1A2 + A1B2 + B1A2 - B1B2."""
    return TwoSettingExpression(2, ((1, (0, 0)), (1, (0, 1)), (1, (1, 0)), (-1, (1, 1))))


def single_term_pattern(parties: int, choice: Sequence[int] | None = None) -> TwoSettingExpression:
    choice = tuple(choice) if choice is not None else (0,) * parties
    return TwoSettingExpression(parties, ((1, choice),))


# ---------------------------------------------------------------------------
# party layouts and observables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartyLayout:
    parties: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        norm = []
        for qubits in self.parties:
            qs = tuple(sorted(qubits))
            if not qs:
                raise GraphBellError("empty party")
            if seen & set(qs):
                raise GraphBellError(f"parties overlap on {sorted(seen & set(qs))}")
            seen |= set(qs)
            norm.append(qs)
        object.__setattr__(self, "parties", tuple(norm))

    def __len__(self):
        return len(self.parties)

    def mask(self, p: int) -> int:
        m = 0
        for q in self.parties[p]:
            m |= 1 << (q - 1)
        return m


@dataclass(frozen=True)
class ObservableMap:
    """``observables[p][s]`` is the observable of party ``p`` for setting ``s``."""

    observables: tuple[tuple[PauliSum, PauliSum], ...]

    def __getitem__(self, key):
        p, s = key
        return self.observables[p][s]

    def __len__(self):
        return len(self.observables)

    def check(self, layout: PartyLayout) -> None:
        if len(self.observables) != len(layout):
            raise GraphBellError("observable map and layout disagree on the party count")
        for p, pair in enumerate(self.observables):
            allowed = layout.mask(p)
            for s, obs in enumerate(pair):
                if obs.support_mask & ~allowed:
                    raise GraphBellError(f"observable ({p + 1}, {s}) leaves party {p + 1}")
                if not (obs * obs).isclose(PauliSum.identity(obs.n), atol=1e-9):
                    raise GraphBellError(f"observable ({p + 1}, {s}) does not square to identity")


def expand(expression: TwoSettingExpression, observables: ObservableMap) -> PauliSum:
    """Substitute each party-setting variable by its observable."""
    n = observables[0, 0].n
    acc: dict = {}
    for c, choice in expression.terms:
        term = PauliSum.identity(n, c)
        for p, s in enumerate(choice):
            term = term * observables[p, s]
        for tc, tp in term:
            key = (tp.x_mask, tp.z_mask)
            acc[key] = acc.get(key, 0) + tc
    return PauliSum._from_acc(n, acc)


# ---------------------------------------------------------------------------
# the inequality record
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BellInequality:
    """A Bell inequality ``|<expression>| <= classical_bound``.

    ``lhv_level`` says where local hidden variables live: ``"pauli"`` means
    every qubit letter is a classical variable, so the local maximum is taken
    over ``pauli_form``; ``"settings"`` means the variables are the party
    settings (needed when a setting is a rotated observable such as Q or W).
    ``anchors`` lists, per party, a qubit whose letter identifies the setting
    and the letter meaning setting 1.
    """

    n: int
    expression: TwoSettingExpression
    classical_bound: float
    pauli_form: PauliSum | None = None
    layout: PartyLayout | None = None
    observables: ObservableMap | None = None
    quantum_value: float | None = None
    lhv_level: str = "pauli"
    anchors: tuple[tuple[int, str], ...] | None = None
    label: str = ""

    def __post_init__(self):
        if self.lhv_level not in ("pauli", "settings"):
            raise GraphBellError(f"unknown lhv level {self.lhv_level!r}")
        if (self.layout is None) != (self.observables is None):
            raise GraphBellError("layout and observables come together")
        if self.layout is not None:
            if len(self.layout) != self.expression.parties:
                raise GraphBellError("layout and expression disagree on the party count")
            self.observables.check(self.layout)
            if self.pauli_form is not None:
                if not expand(self.expression, self.observables).isclose(self.pauli_form, COEFF_ATOL):
                    raise GraphBellError("expression expanded through observables differs from pauli_form")

    @property
    def parties(self) -> int:
        return self.expression.parties

    @property
    def violation(self) -> float | None:
        if self.quantum_value is None:
            return None
        return self.quantum_value / self.classical_bound

    def to_dict(self) -> dict:
        """JSON-ready record; qubits are 1-based."""
        terms = []
        if self.pauli_form is not None:
            terms = [{"coeff": _json_number(c), "pauli": p.letters} for c, p in self.pauli_form]
        return {
            "label": self.label,
            "n": self.n,
            "parties": [list(q) for q in self.layout.parties] if self.layout else None,
            "terms": terms,
            "classical_bound": _json_number(self.classical_bound),
            "quantum_value": _json_number(self.quantum_value),
            "violation": _json_number(self.violation),
        }


def _json_number(v):
    if v is None:
        return None
    if isinstance(v, int) or float(v).is_integer():
        return int(v)
    return float(v)


# ---------------------------------------------------------------------------
# deriving settings and parties from a Pauli form
# ---------------------------------------------------------------------------


def _choices_from_anchors(pf: PauliSum, anchors) -> list[tuple[int, ...]]:
    choices = []
    for q, bl in anchors:
        used = pf.letters_on(q)
        if len(used) != 2 or bl not in used:
            raise ConstructionError(f"qubit {q} must carry exactly two letters, one being {bl}")
    for _, p in pf:
        ch = []
        for q, bl in anchors:
            letter = p.letter(q)
            if letter == "I":
                raise ConstructionError(f"qubit {q} is idle in term {p.letters}")
            ch.append(1 if letter == bl else 0)
        choices.append(tuple(ch))
    return choices


def _expression_from_anchors(pf: PauliSum, anchors) -> TwoSettingExpression:
    choices = _choices_from_anchors(pf, anchors)
    try:
        return TwoSettingExpression(len(anchors), tuple((c, ch) for (c, _), ch in zip(pf, choices)))
    except GraphBellError as exc:
        raise ConstructionError(f"anchors do not determine the settings: {exc}") from None


def _derive_layout(pf: PauliSum, anchors):
    """Attach every non-anchor qubit to the first party whose setting fixes its letter.

    Returns ``(layout, observables)`` or ``(None, None)`` when some qubit's
    letter depends jointly on several parties.
    """
    choices = _choices_from_anchors(pf, anchors)
    owner = {q: p for p, (q, _) in enumerate(anchors)}
    strings = [p for _, p in pf]
    for v in pf.support():
        if v in owner:
            continue
        col = [s.letter(v) for s in strings]
        for p in range(len(anchors)):
            seen: dict[int, str] = {}
            if all(seen.setdefault(ch[p], lv) == lv for ch, lv in zip(choices, col)):
                owner[v] = p
                break
        else:
            return None, None
    layout = PartyLayout(tuple(tuple(q for q in owner if owner[q] == p) for p in range(len(anchors))))
    obs = []
    for p in range(len(anchors)):
        pmask = layout.mask(p)
        pair = []
        for s in (0, 1):
            t = next((k for k, ch in enumerate(choices) if ch[p] == s), None)
            if t is None:
                return None, None
            src = strings[t]
            local = PauliString(pf.n, src.x_mask & pmask, src.z_mask & pmask)
            pair.append(PauliSum.from_terms(pf.n, [(1, local)]))
        obs.append(tuple(pair))
    return layout, ObservableMap(tuple(obs))


def _z_product(n: int, qubits: Iterable[int]) -> int:
    m = 0
    for q in qubits:
        m |= 1 << (q - 1)
    return m


def _graph_quantum_value(g: Graph, pf: PauliSum):
    return sum(c * graph_state_expectation(g, p) for c, p in pf)


# ---------------------------------------------------------------------------
# vertex-neighborhood inequalities
# ---------------------------------------------------------------------------


def _check_theorem1_args(g: Graph, i: int, I: Iterable[int]) -> tuple[int, ...]:
    g.check_vertex(i)
    I = tuple(sorted(set(I)))
    if not I:
        raise ConstructionError("I must contain at least one neighbor")
    for j in I:
        g.check_vertex(j)
    nb = set(g.neighbors(i))
    outside = [j for j in I if j not in nb]
    if outside:
        raise ConstructionError(f"vertices {outside} are not neighbors of {i}")
    if not is_independent_set(g, I):
        raise ConstructionError(f"I={list(I)} is not an independent set: two of its vertices share an edge")
    return I


def theorem1_operator(g: Graph, i: int, I: Iterable[int]) -> BellInequality:
    """Bell operator ``g_i * prod_{j in I} (1 + g_j)`` for an independent ``I`` within N(i).

    The expansion has ``2**|I|`` stabilizer terms; the graph state reaches
    ``2**|I|`` and local models reach at most ``mermin_bound(|I| + 1)``.
    """
    I = _check_theorem1_args(g, i, I)
    n = g.n
    pf = PauliSum.from_terms(
        n, ((1, stabilizer_element(g, (i,) + sub)) for r in range(len(I) + 1) for sub in itertools.combinations(I, r))
    )
    core = set(I) | {i}
    reduced = [tuple(v for v in g.neighbors(k) if v not in core) for k in (i,) + I]
    anchors = ((i, "X"),) + tuple((j, "Y") for j in I)

    flat = [v for red in reduced for v in red]
    if len(flat) == len(set(flat)):
        zi = _z_product(n, reduced[0])
        pairs = [
            (
                PauliSum.from_terms(n, [(1, PauliString(n, 1 << (i - 1), zi | 1 << (i - 1)))]),
                PauliSum.from_terms(n, [(1, PauliString(n, 1 << (i - 1), zi))]),
            )
        ]
        for j, red in zip(I, reduced[1:]):
            bit = 1 << (j - 1)
            pairs.append(
                (
                    PauliSum.from_terms(n, [(1, PauliString(n, 0, bit))]),
                    PauliSum.from_terms(n, [(1, PauliString(n, bit, bit | _z_product(n, red)))]),
                )
            )
        layout = PartyLayout(tuple((k,) + red for k, red in zip((i,) + I, reduced)))
        observables = ObservableMap(tuple(pairs))
    else:
        layout, observables = _derive_layout(pf, anchors)

    return BellInequality(
        n=n,
        expression=_expression_from_anchors(pf, anchors),
        classical_bound=mermin_bound(len(I) + 1),
        pauli_form=pf,
        layout=layout,
        observables=observables,
        quantum_value=_graph_quantum_value(g, pf),
        anchors=anchors,
        label=f"B({i},{{{','.join(map(str, I))}}})",
    )


def fc3_operator(g: Graph, t: Sequence[int]) -> BellInequality:
    """``g_a + g_b + g_c + g_a g_b g_c`` for a triangle ``(a, b, c)``; bound 2, quantum value 4."""
    t = tuple(t)
    if len(t) != 3 or len(set(t)) != 3:
        raise ConstructionError("need three distinct vertices")
    for v in t:
        g.check_vertex(v)
    for a, b in itertools.combinations(t, 2):
        if not g.has_edge(a, b):
            raise ConstructionError(f"vertices {a} and {b} are not adjacent; {t} is not a triangle")
    n = g.n
    pf = PauliSum.from_terms(n, [(1, stabilizer_element(g, (v,))) for v in t] + [(1, stabilizer_element(g, t))])
    anchors = tuple((v, "X") for v in t)
    reduced = [tuple(u for u in g.neighbors(v) if u not in t) for v in t]
    flat = [u for red in reduced for u in red]
    if len(flat) == len(set(flat)):
        pairs = []
        for v, red in zip(t, reduced):
            bit = 1 << (v - 1)
            pairs.append(
                (
                    PauliSum.from_terms(n, [(1, PauliString(n, 0, bit))]),
                    PauliSum.from_terms(n, [(1, PauliString(n, bit, _z_product(n, red)))]),
                )
            )
        layout = PartyLayout(tuple((v,) + red for v, red in zip(t, reduced)))
        observables = ObservableMap(tuple(pairs))
    else:
        layout, observables = _derive_layout(pf, anchors)
    return BellInequality(
        n=n,
        expression=_expression_from_anchors(pf, anchors),
        classical_bound=2,
        pauli_form=pf,
        layout=layout,
        observables=observables,
        quantum_value=_graph_quantum_value(g, pf),
        anchors=anchors,
        label=f"FC3({','.join(map(str, t))})",
    )


def basic_inequality(g: Graph) -> BellInequality:
    """A two-setting inequality violated by a factor of two by any nontrivial graph state.

    Uses the first vertex of degree >= 2: a pair of non-adjacent neighbors
    gives a vertex-neighborhood operator, otherwise the first neighbor pair
    closes a triangle and the triangle operator is used.
    """
    for i in range(1, g.n + 1):
        nb = g.neighbors(i)
        if len(nb) < 2:
            continue
        for j, k in itertools.combinations(nb, 2):
            if not g.has_edge(j, k):
                return theorem1_operator(g, i, (j, k))
        return fc3_operator(g, (i, nb[0], nb[1]))
    raise ConstructionError("graph has no vertex with two neighbors")


# ---------------------------------------------------------------------------
# composites
# ---------------------------------------------------------------------------


def composition_conflicts(parts: Sequence[BellInequality]) -> list[tuple[int, list[set[str]]]]:
    """Qubits touched by several parts that do not all use one common letter."""
    n = parts[0].n
    bad = []
    for q in range(1, n + 1):
        used = [p.pauli_form.letters_on(q) for p in parts]
        used = [u for u in used if u]
        if len(used) < 2:
            continue
        if any(len(u) != 1 for u in used) or any(u != used[0] for u in used):
            bad.append((q, used))
    return bad


def composite(parts: Sequence[BellInequality], g: Graph | None = None) -> BellInequality:
    """Product of Bell inequalities whose qubit variables do not clash.

    A qubit may be shared only if every part acting on it uses the same single
    letter there. Bounds and quantum values multiply. With ``g`` the quantum
    value is recomputed on the graph state as a check.
    """
    parts = list(parts)
    if not parts:
        raise ConstructionError("nothing to compose")
    if len(parts) == 1:
        return parts[0]
    n = parts[0].n
    for p in parts:
        if p.pauli_form is None:
            raise ConstructionError(f"part {p.label or '?'} has no Pauli form")
        if p.n != n:
            raise CompositionError("parts act on different qubit counts")
    bad = composition_conflicts(parts)
    if bad:
        desc = "; ".join(f"qubit {q} carries {'/'.join('{' + ''.join(sorted(u)) + '}' for u in used)}" for q, used in bad)
        raise CompositionError(f"incompatible overlap: {desc}", [q for q, _ in bad])

    pf = parts[0].pauli_form
    expr = parts[0].expression
    for p in parts[1:]:
        pf = pf * p.pauli_form
        expr = expr.product(p.expression)

    bound = math.prod(p.classical_bound for p in parts)
    qv = None
    if g is not None:
        qv = _graph_quantum_value(g, pf)
    elif all(p.quantum_value is not None for p in parts):
        qv = math.prod(p.quantum_value for p in parts)

    anchors = None
    if all(p.anchors is not None for p in parts):
        anchors = tuple(a for p in parts for a in p.anchors)

    layout = observables = None
    if all(p.layout is not None for p in parts):
        qubit_lists = [q for p in parts for party in p.layout.parties for q in party]
        if len(qubit_lists) == len(set(qubit_lists)):
            layout = PartyLayout(tuple(party for p in parts for party in p.layout.parties))
            observables = ObservableMap(tuple(pair for p in parts for pair in p.observables.observables))
    if layout is None and anchors is not None:
        layout, observables = _derive_layout(pf, anchors)

    return BellInequality(
        n=n,
        expression=expr,
        classical_bound=bound,
        pauli_form=pf,
        layout=layout,
        observables=observables,
        quantum_value=qv,
        lhv_level="settings" if any(p.lhv_level == "settings" for p in parts) else "pauli",
        anchors=anchors,
        label=" * ".join(p.label for p in parts),
    )


def lc_block_centers(n: int) -> list[int]:
    """Centers 2, 6, 10, ... not exceeding n - 1."""
    return list(range(2, n, 4))


def lc_composite(n: int) -> BellInequality:
    """Chain composite: blocks ``B(i, {i-1, i+1})`` at i = 2, 6, 10, ... <= n - 1."""
    if n < 3:
        raise ConstructionError("linear cluster composite needs n >= 3")
    g = family("LC", n)
    blocks = [theorem1_operator(g, i, (i - 1, i + 1)) for i in lc_block_centers(n)]
    return composite(blocks, g)


def rc_block_centers(n: int) -> list[int]:
    return [2 + 4 * k for k in range(max(1, n // 4))]


def family_composite(name: str, n: int) -> BellInequality:
    """Composite inequality for the LC, RC or ST family on n qubits."""
    name = name.upper()
    if n < 3:
        raise ConstructionError("family composites need n >= 3")
    if name == "LC":
        return lc_composite(n)
    if name == "RC":
        g = family("RC", n)
        if n == 3:
            return fc3_operator(g, (1, 2, 3))
        blocks = [theorem1_operator(g, i, (i - 1, i % n + 1)) for i in rc_block_centers(n)]
        return composite(blocks, g)
    if name == "ST":
        g = family("ST", n)
        return theorem1_operator(g, 1, range(2, n + 1))
    raise GraphBellError(f"no composite rule for family {name!r}")


def select_blocks(g: Graph) -> list[tuple[int, tuple[int, ...]]]:
    """Greedy vertex-order packing of vertex-neighborhood blocks.

    A vertex qualifies when it is unused and has at least two unused,
    pairwise non-adjacent neighbors. Its block takes a maximal independent
    subset of those neighbors (greedy, ascending). The block's vertices and
    all their neighbors are then marked used.
    """
    used = 0
    blocks = []
    for i in range(1, g.n + 1):
        if used >> (i - 1) & 1:
            continue
        chosen: list[int] = []
        for j in g.neighbors(i):
            if used >> (j - 1) & 1:
                continue
            if all(not g.has_edge(j, k) for k in chosen):
                chosen.append(j)
        if len(chosen) < 2:
            continue
        blocks.append((i, tuple(chosen)))
        for v in [i] + chosen:
            used |= 1 << (v - 1)
            used |= g.adj[v - 1]
    return blocks


def greedy_composite(g: Graph) -> BellInequality:
    blocks = select_blocks(g)
    if not blocks:
        raise ConstructionError("no vertex with two independent neighbors")
    return composite([theorem1_operator(g, i, I) for i, I in blocks], g)


# ---------------------------------------------------------------------------
# Ardehali-type variant
# ---------------------------------------------------------------------------


def ardehali_expression(g: Graph, i: int, I: Iterable[int]) -> BellInequality:
    """Ardehali-type inequality for vertex ``i`` and independent neighbors ``I`` (|I| >= 2).

    Party 1 measures ``Q = (A - B)/sqrt2`` or ``W = (A + B)/sqrt2``. The Bell
    operator equals sqrt2 times the vertex-neighborhood operator, so the graph
    state reaches ``2**|I| * sqrt2`` against the local bound
    ``ardehali_bound(|I| + 1)``.
    """
    base = theorem1_operator(g, i, I)
    m = base.parties
    if m < 3:
        raise ConstructionError("the Ardehali construction needs at least two neighbors in I")
    layout = observables = None
    if base.observables is not None:
        a1, b1 = base.observables.observables[0]
        q = (a1 - b1).scale(1 / SQRT2)
        w = (a1 + b1).scale(1 / SQRT2)
        observables = ObservableMap(((q, w),) + base.observables.observables[1:])
        layout = base.layout
    return BellInequality(
        n=base.n,
        expression=ardehali_pattern(m),
        classical_bound=ardehali_bound(m),
        pauli_form=base.pauli_form.scale(SQRT2),
        layout=layout,
        observables=observables,
        quantum_value=base.quantum_value * SQRT2,
        lhv_level="settings",
        label="Ardehali" + base.label[1:],
    )


# ---------------------------------------------------------------------------
# conditioning on Z outcomes
# ---------------------------------------------------------------------------


def _condition_sum(pf: PauliSum, outcomes: Mapping[int, int]) -> PauliSum:
    cmask = _z_product(pf.n, outcomes)
    terms = []
    for c, p in pf:
        f = 1
        for q, r in outcomes.items():
            if p.z_mask >> (q - 1) & 1:
                f *= r
        terms.append((c * f, PauliString(pf.n, p.x_mask, p.z_mask & ~cmask)))
    return PauliSum.from_terms(pf.n, terms)


def condition_on_z(b: BellInequality, outcomes: Mapping[int, int]) -> BellInequality:
    """Substitute measured Z outcomes (+-1) on the given qubits.

    Each conditioned qubit must carry only Z or identity in every term. The
    qubit count is kept; conditioned qubits become identity.
    """
    if b.pauli_form is None:
        raise ConstructionError("conditioning needs a Pauli form")
    outcomes = dict(outcomes)
    for q, r in outcomes.items():
        if not 1 <= q <= b.n:
            raise ConstructionError(f"qubit {q} outside 1..{b.n}")
        if r not in (1, -1):
            raise ConstructionError(f"outcome for qubit {q} must be +1 or -1, got {r}")
        extra = b.pauli_form.letters_on(q) - {"Z"}
        if extra:
            raise ConstructionError(f"qubit {q} carries {sorted(extra)}; only Z can be conditioned")
    pf = _condition_sum(b.pauli_form, outcomes)
    label = f"{b.label}|Z" + ",".join(f"{q}={r:+d}" for q, r in sorted(outcomes.items()))

    if b.observables is not None:
        pairs = tuple(tuple(_condition_sum(o, outcomes) for o in pair) for pair in b.observables.observables)
        parties = []
        for p, qs in enumerate(b.layout.parties):
            kept = tuple(q for q in qs if q not in outcomes)
            if not kept:
                raise ConstructionError(f"conditioning removes every qubit of party {p + 1}")
            parties.append(kept)
        return BellInequality(
            n=b.n,
            expression=b.expression,
            classical_bound=b.classical_bound,
            pauli_form=pf,
            layout=PartyLayout(tuple(parties)),
            observables=ObservableMap(pairs),
            quantum_value=b.quantum_value,
            lhv_level=b.lhv_level,
            anchors=b.anchors,
            label=label,
        )
    if b.anchors is None:
        raise ConstructionError("cannot recover the settings after conditioning")
    layout, observables = _derive_layout(pf, b.anchors)
    return BellInequality(
        n=b.n,
        expression=_expression_from_anchors(pf, b.anchors),
        classical_bound=b.classical_bound,
        pauli_form=pf,
        layout=layout,
        observables=observables,
        quantum_value=b.quantum_value,
        lhv_level=b.lhv_level,
        anchors=b.anchors,
        label=label,
    )


# ---------------------------------------------------------------------------
# four-qubit cluster state
# ---------------------------------------------------------------------------

# signed terms (qubit 1 first) and per-party (anchor qubit, letter of setting 1)
_LC4_BASE = (
    (("XIXZ", "ZYYZ", "XIYY", "-ZYXY"), ((1, "Z"), (3, "X"), (4, "Y"))),
    (("IZXZ", "ZYYZ", "IZYY", "-ZYXY"), ((3, "X"), (2, "Y"), (4, "Y"))),
    (("XIXZ", "-YXYZ", "XIYY", "YXXY"), ((1, "Y"), (3, "Y"), (4, "Z"))),
    (("IZXZ", "-YXYZ", "IZYY", "YXXY"), ((2, "X"), (3, "Y"), (4, "Z"))),
)
LC4_SWAP = {1: 4, 2: 3, 3: 2, 4: 1}


def _from_pauli_form(pf: PauliSum, anchors, bound, label, g: Graph | None = None) -> BellInequality:
    layout, observables = _derive_layout(pf, anchors)
    return BellInequality(
        n=pf.n,
        expression=_expression_from_anchors(pf, anchors),
        classical_bound=bound,
        pauli_form=pf,
        layout=layout,
        observables=observables,
        quantum_value=_graph_quantum_value(g, pf) if g is not None else None,
        anchors=tuple(anchors),
        label=label,
    )


def lc4_set() -> list[BellInequality]:
    """The eight two-setting inequalities for the four-qubit linear cluster state.

    Members 1-4 are the listed ones; members 5-8 are the same with qubits
    1<->4 and 2<->3 exchanged. Each has local bound 2 and value 4 on |LC_4>.
    """
    g = family("LC", 4)
    out = []
    for k, (strings, anchors) in enumerate(_LC4_BASE, start=1):
        out.append(_from_pauli_form(PauliSum.from_strings(strings), anchors, 2, f"LC4#{k}", g))
    for k, (strings, anchors) in enumerate(_LC4_BASE, start=5):
        pf = PauliSum.from_strings(strings).permute(LC4_SWAP)
        swapped = tuple((LC4_SWAP[q], bl) for q, bl in anchors)
        out.append(_from_pauli_form(pf, swapped, 2, f"LC4#{k}", g))
    return out
