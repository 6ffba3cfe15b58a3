"""Finite-state exploration of a level set L(y) = {x in [0,1] : T(x) = y}.

Fixing digits eps_1..eps_j of x pins the prefix value v_j and slope D_j; the
suffix t must then satisfy T(t) + D_j * t = R with R = (y - v_j) * 2^j.  So a
partial preimage is summarised by the state (D, R), which steps by

    eps = 0:  (D + 1, 2R)          eps = 1:  (D - 1, 2R - D - 1)

and is feasible iff  min(0, D) <= R <= g(D) := max(0, D) + (2/3) 2^-|D|,
the exact two-sided envelope of t -> T(t) + D t on [0, 1].  For supported
ordinates (denominator 2^k or 3 * 2^k) the residues land, from depth 2n on
(n the ordinate depth), on a fixed lattice: integers for dyadic y, exact
thirds otherwise.  Collapsing states past that depth closes the walk into a
finite graph, and the shape of that graph decides the cardinality of L(y):

* a state with R = g(D) (max ray) or a cycle cluster with more internal
  edges than states pumps a Cantor set of suffixes -> uncountable;
* a state with R = 0, D >= 0 (zero ray: the suffix 000... works, i.e. y is
  attained at a dyadic point) or a cycle that can be left -> countably
  infinite (pump the cycle);
* otherwise every infinite feasible path threads a fixed set of exit-free
  simple cycles and L(y) is finite, with one eventually periodic preimage
  per root-to-cycle path, reconstructed exactly.

States with R = D and D <= -1 admit only the all-ones suffix, the
non-canonical twin of a dyadic expansion counted elsewhere; they are dead
ends and are the only feasible dead ends.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Iterator, Optional, Union

from .rationals import ordinate_depth, require_supported

ZERO = Fraction(0)
TWO_THIRDS = Fraction(2, 3)

DEFAULT_MAX_STATES = 100_000
DEFAULT_MAX_SLOPE = 64

State = tuple[int, Fraction]


class BudgetExceededError(RuntimeError):
    """Exploration hit the state or slope budget before the graph closed."""


def envelope_max(slope: int) -> Fraction:
    """g(D) = max over [0,1] of T(t) + D t, exactly: max(0, D) + (2/3) 2^-|D|.

    The maximiser is the Kahane point nearest 1 (D < 0: nearest 0); g obeys
    the one-step recursion g(D) = max(g(D+1)/2, (D + 1 + g(D-1))/2) and the
    symmetry g(-D) = g(D) - D.
    """
    return max(0, slope) + TWO_THIRDS / (1 << abs(slope))


def envelope_min(slope: int) -> Fraction:
    """Min over [0,1] of T(t) + D t: 0 for D >= 0 (at t=0), else D (at t=1)."""
    return Fraction(min(0, slope))


def is_feasible(state: State) -> bool:
    slope, residue = state
    return envelope_min(slope) <= residue <= envelope_max(slope)


def step(state: State, bit: int) -> State:
    """Advance (D, R) by one digit: R doubles, minus (D + 1) when bit = 1."""
    slope, residue = state
    if bit == 0:
        return slope + 1, 2 * residue
    return slope - 1, 2 * residue - slope - 1


@dataclass
class StateNode:
    slope: int
    residue: Fraction
    depth: int  # depth of first discovery (lattice nodes keep the smallest)
    on_lattice: bool
    is_zero_ray: bool
    is_ones_ray: bool
    is_max_ray: bool
    edges: dict[int, "Key"] = field(default_factory=dict)

    @property
    def is_terminal(self) -> bool:
        return self.is_zero_ray or self.is_ones_ray


# Pre-lattice states carry their depth; collapsed states are keyed (D, R).
Key = Union[tuple[int, int, Fraction], tuple[int, Fraction]]


@dataclass
class StateGraph:
    ordinate: Fraction
    lattice_depth: int
    root: Optional[Key]
    nodes: dict[Key, StateNode]
    closed: bool
    budget_reason: Optional[str] = None

    @property
    def states_explored(self) -> int:
        return len(self.nodes)


def close_graph(
    y: Fraction,
    *,
    max_states: int = DEFAULT_MAX_STATES,
    max_slope: int = DEFAULT_MAX_SLOPE,
) -> StateGraph:
    """Breadth-first closure of the feasible states of a supported ordinate.

    Stops early (closed=False) if more than ``max_states`` states appear or
    some slope exceeds ``max_slope`` in absolute value; analysis then reports
    Indeterminate rather than guessing.  Terminal rays are kept as nodes but
    never expanded.
    """
    y = require_supported(y)
    lattice_depth = 2 * ordinate_depth(y) if 0 <= y <= TWO_THIRDS else 0

    def make_key(depth: int, state: State) -> Key:
        if depth < lattice_depth:
            return (depth, state[0], state[1])
        return state

    def make_node(depth: int, state: State) -> StateNode:
        slope, residue = state
        return StateNode(
            slope=slope,
            residue=residue,
            depth=depth,
            on_lattice=depth >= lattice_depth,
            is_zero_ray=residue == 0 and slope >= 0,
            is_ones_ray=residue == slope and slope <= -1,
            is_max_ray=residue == envelope_max(slope),
        )

    root_state: State = (0, y)
    if not is_feasible(root_state):
        return StateGraph(y, lattice_depth, None, {}, closed=True)

    root_key = make_key(0, root_state)
    nodes: dict[Key, StateNode] = {root_key: make_node(0, root_state)}
    queue: deque[tuple[Key, int, State]] = deque([(root_key, 0, root_state)])
    reason: Optional[str] = None

    while queue and reason is None:
        key, depth, state = queue.popleft()
        node = nodes[key]
        if node.is_terminal:
            continue
        for bit in (0, 1):
            child = step(state, bit)
            if not is_feasible(child):
                continue
            if abs(child[0]) > max_slope:
                reason = "slope"
                break
            child_key = make_key(depth + 1, child)
            if child_key not in nodes:
                if len(nodes) >= max_states:
                    reason = "states"
                    break
                nodes[child_key] = make_node(depth + 1, child)
                queue.append((child_key, depth + 1, child))
            node.edges[bit] = child_key
    return StateGraph(y, lattice_depth, root_key, nodes, closed=reason is None, budget_reason=reason)


class Verdict(Enum):
    FINITE = "finite"
    COUNTABLY_INFINITE = "countably-infinite"
    UNCOUNTABLE = "uncountable"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class PreimagePath:
    """An eventually periodic binary expansion of one preimage.

    The empty period means an all-zeros tail; x = 1 is carried as the pure
    period (1,).  ``abs_slopes`` is the |D_j| profile used to group preimages
    into local level sets.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def digit(self, i: int) -> int:
        q = len(self.preperiod)
        if i <= q:
            return self.preperiod[i - 1]
        if not self.period:
            return 0
        return self.period[(i - q - 1) % len(self.period)]

    def value(self) -> Fraction:
        q = len(self.preperiod)
        acc = 0
        for b in self.preperiod:
            acc = (acc << 1) | b
        x = Fraction(acc, 1 << q) if q else ZERO
        if self.period:
            p = len(self.period)
            cyc = 0
            for b in self.period:
                cyc = (cyc << 1) | b
            x += Fraction(cyc, (1 << p) - 1) / (1 << q)
        return x

    def abs_slopes(self, count: int) -> tuple[int, ...]:
        out = []
        d = 0
        for i in range(1, count + 1):
            d += 1 if self.digit(i) == 0 else -1
            out.append(abs(d))
        return tuple(out)


@dataclass(frozen=True)
class LevelSetReport:
    ordinate: Fraction
    verdict: Verdict
    cardinality: Optional[int] = None
    preimages: Optional[tuple[Fraction, ...]] = None
    paths: Optional[tuple[PreimagePath, ...]] = None
    n_local: Optional[int] = None
    witness: Optional[str] = None
    witness_preimage: Optional[Fraction] = None
    diagnostics: dict = field(default_factory=dict)


def _live_children(graph: StateGraph, key: Key) -> Iterator[Key]:
    """Successors that are not all-ones dead ends, in digit order."""
    node = graph.nodes[key]
    for bit in (0, 1):
        child = node.edges.get(bit)
        if child is not None and not graph.nodes[child].is_ones_ray:
            yield child


def _strong_components(graph: StateGraph) -> list[list[Key]]:
    """Tarjan over the no-dead-end subgraph; emitted children-first."""
    index: dict[Key, int] = {}
    low: dict[Key, int] = {}
    on_stack: set[Key] = set()
    stack: list[Key] = []
    comps: list[list[Key]] = []
    counter = 0

    for start in graph.nodes:
        if start in index or graph.nodes[start].is_ones_ray:
            continue
        work: list[tuple[Key, Iterator[Key]]] = [(start, _live_children(graph, start))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, _live_children(graph, w)))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def _live_set(graph: StateGraph, cycle_nodes: set[Key]) -> set[Key]:
    """Keys with at least one infinite canonical continuation.

    Infinite paths in a finite graph must reach a cycle or stop on the
    all-zeros ray, so live = can-reach(cycles | zero rays).
    """
    seeds = set(cycle_nodes)
    seeds.update(k for k, n in graph.nodes.items() if n.is_zero_ray)
    preds: dict[Key, list[Key]] = {k: [] for k in graph.nodes}
    for key in graph.nodes:
        if graph.nodes[key].is_ones_ray:
            continue
        for child in _live_children(graph, key):
            preds[child].append(key)
    live = set(seeds)
    frontier = deque(seeds)
    while frontier:
        k = frontier.popleft()
        for p in preds[k]:
            if p not in live:
                live.add(p)
                frontier.append(p)
    return live


def _state_label(node: StateNode) -> str:
    return f"(D={node.slope}, R={node.residue})"


def _dyadic_witness(graph: StateGraph) -> Optional[Fraction]:
    """Digits of a shortest root-to-zero-ray path, as a dyadic preimage."""
    if graph.root is None:
        return None
    seen = {graph.root: (None, None)}  # key -> (parent, bit)
    queue = deque([graph.root])
    target = None
    while queue:
        key = queue.popleft()
        if graph.nodes[key].is_zero_ray:
            target = key
            break
        for bit in (0, 1):
            child = graph.nodes[key].edges.get(bit)
            if child is not None and child not in seen:
                seen[child] = (key, bit)
                queue.append(child)
    if target is None:
        return None
    bits: list[int] = []
    key = target
    while seen[key][0] is not None:
        parent, bit = seen[key]
        bits.append(bit)
        key = parent
    bits.reverse()
    acc = 0
    for b in bits:
        acc = (acc << 1) | b
    return Fraction(acc, 1 << len(bits)) if bits else ZERO


def _finite_paths(
    graph: StateGraph, live: set[Key], cycle_nodes: set[Key]
) -> list[PreimagePath]:
    """Every root-to-cycle path as an eventually periodic expansion.

    Only called once the verdict is Finite, so cycles are exit-free and
    simple and the DAG part is revisit-free; bit-0-first exploration emits
    preimages already in increasing numeric order.
    """
    paths: list[PreimagePath] = []
    prefix: list[int] = []

    def ride_cycle(entry: Key) -> tuple[int, ...]:
        digits: list[int] = []
        key = entry
        while True:
            nexts = [
                (bit, child)
                for bit, child in sorted(graph.nodes[key].edges.items())
                if child in live
            ]
            assert len(nexts) == 1, "finite-verdict cycle must be a simple loop"
            bit, key = nexts[0]
            digits.append(bit)
            if key == entry:
                return tuple(digits)

    def descend(key: Key) -> None:
        if key in cycle_nodes:
            paths.append(PreimagePath(tuple(prefix), ride_cycle(key)))
            return
        node = graph.nodes[key]
        if node.is_zero_ray:  # unreachable under a Finite verdict; kept exact
            paths.append(PreimagePath(tuple(prefix), ()))
            return
        for bit in (0, 1):
            child = node.edges.get(bit)
            if child is None or child not in live:
                continue
            prefix.append(bit)
            descend(child)
            prefix.pop()

    if graph.root is not None and graph.root in live:
        descend(graph.root)
    return paths


def analyze(graph: StateGraph) -> LevelSetReport:
    """Turn a closed state graph into a verdict (and exact preimages if finite).

    The ordinate 0 is special-cased: its zero ray would read as "dyadic point
    attained", but 0 is attained only at the endpoints, so L(0) = {0, 1}.
    """
    y = graph.ordinate
    diagnostics: dict = {
        "states": graph.states_explored,
        "lattice_depth": graph.lattice_depth,
        "closed": graph.closed,
    }
    if graph.budget_reason:
        diagnostics["budget_reason"] = graph.budget_reason

    if y == 0:
        paths = (PreimagePath((), ()), PreimagePath((), (1,)))
        return LevelSetReport(
            ordinate=y,
            verdict=Verdict.FINITE,
            cardinality=2,
            preimages=(ZERO, Fraction(1)),
            paths=paths,
            diagnostics=diagnostics,
        )
    if graph.root is None:  # y outside [0, 2/3]
        return LevelSetReport(
            ordinate=y,
            verdict=Verdict.FINITE,
            cardinality=0,
            preimages=(),
            paths=(),
            n_local=0,
            diagnostics=diagnostics,
        )
    if not graph.closed:
        return LevelSetReport(
            ordinate=y,
            verdict=Verdict.INDETERMINATE,
            witness=f"budget exceeded ({graph.budget_reason})",
            diagnostics=diagnostics,
        )

    comps = _strong_components(graph)
    nontrivial = [c for c in comps if len(c) > 1]
    cycle_nodes = {k for comp in nontrivial for k in comp}
    live = _live_set(graph, cycle_nodes)
    diagnostics["cycles"] = len(nontrivial)
    diagnostics["live_states"] = len(live)

    for key, node in graph.nodes.items():
        if node.is_max_ray:
            return LevelSetReport(
                ordinate=y,
                verdict=Verdict.UNCOUNTABLE,
                witness=f"max-envelope state {_state_label(node)} reached",
                diagnostics=diagnostics,
            )
    comp_of: dict[Key, int] = {}
    for i, comp in enumerate(comps):
        for k in comp:
            comp_of[k] = i
    for comp in nontrivial:
        members = set(comp)
        inner = sum(
            1 for k in comp for child in _live_children(graph, k) if child in members
        )
        if inner > len(comp):
            labels = ", ".join(_state_label(graph.nodes[k]) for k in sorted(comp, key=str))
            return LevelSetReport(
                ordinate=y,
                verdict=Verdict.UNCOUNTABLE,
                witness=f"branching cycle cluster {{{labels}}}",
                diagnostics=diagnostics,
            )

    zero_rays = [k for k, n in graph.nodes.items() if n.is_zero_ray]
    if zero_rays:
        witness_x = _dyadic_witness(graph)
        return LevelSetReport(
            ordinate=y,
            verdict=Verdict.COUNTABLY_INFINITE,
            witness="attained at a dyadic point",
            witness_preimage=witness_x,
            diagnostics=diagnostics,
        )
    for comp in nontrivial:
        members = set(comp)
        for k in comp:
            for child in _live_children(graph, k):
                if child not in members and child in live:
                    return LevelSetReport(
                        ordinate=y,
                        verdict=Verdict.COUNTABLY_INFINITE,
                        witness=(
                            f"cycle through {_state_label(graph.nodes[k])} "
                            f"can be left towards {_state_label(graph.nodes[child])}"
                        ),
                        witness_preimage=leftmost_preimage(y, graph=graph),
                        diagnostics=diagnostics,
                    )

    # Finite: count root-to-cycle paths over the condensation (children-first
    # order from Tarjan makes a single pass enough).
    counts: dict[Key, int] = {}
    for comp in comps:
        if len(comp) > 1:
            for k in comp:
                counts[k] = 1
            continue
        (k,) = comp
        if k not in live:
            counts[k] = 0
        elif graph.nodes[k].is_zero_ray:
            counts[k] = 1
        else:
            counts[k] = sum(counts[c] for c in _live_children(graph, k) if c in live)
    total = counts.get(graph.root, 0)
    path_list = _finite_paths(graph, live, cycle_nodes)
    assert len(path_list) == total, "path enumeration disagrees with path count"
    preimages = tuple(p.value() for p in path_list)
    assert all(a < b for a, b in zip(preimages, preimages[1:])), "preimages not sorted"
    return LevelSetReport(
        ordinate=y,
        verdict=Verdict.FINITE,
        cardinality=total,
        preimages=preimages,
        paths=tuple(path_list),
        diagnostics=diagnostics,
    )


def reconstruct_preimages(graph: StateGraph) -> list[Fraction]:
    """Exact preimage list of a Finite ordinate (see :func:`analyze`)."""
    report = analyze(graph)
    if report.verdict is not Verdict.FINITE:
        raise ValueError(f"level set of {graph.ordinate} is not finite: {report.verdict.value}")
    return list(report.preimages)


def leftmost_preimage(
    y: Fraction,
    *,
    graph: Optional[StateGraph] = None,
    max_states: int = DEFAULT_MAX_STATES,
    max_slope: int = DEFAULT_MAX_SLOPE,
) -> Fraction:
    """min L(y), exactly, by steering left whenever the 0-digit child is live.

    The walk either stops on the all-zeros ray (dyadic answer) or revisits a
    collapsed state, closing an eventually periodic expansion, e.g.
    leftmost(1/2) = 1/6 = 0.0(01) and leftmost(2/3) = 1/3 = 0.(01).
    """
    y = require_supported(y)
    if not 0 <= y <= TWO_THIRDS:
        raise ValueError(f"level set of {y} is empty")
    if y == 0:
        return ZERO
    if graph is None:
        graph = close_graph(y, max_states=max_states, max_slope=max_slope)
    if not graph.closed:
        raise BudgetExceededError(
            f"state graph for {y} did not close ({graph.budget_reason})"
        )
    comps = _strong_components(graph)
    cycle_nodes = {k for comp in comps if len(comp) > 1 for k in comp}
    live = _live_set(graph, cycle_nodes)

    digits: list[int] = []
    first_seen: dict[Key, int] = {}
    key = graph.root
    assert key is not None and key in live
    while True:
        node = graph.nodes[key]
        if node.is_zero_ray:
            return PreimagePath(tuple(digits), ()).value()
        if key in first_seen:
            start = first_seen[key]
            return PreimagePath(tuple(digits[:start]), tuple(digits[start:])).value()
        first_seen[key] = len(digits)
        for bit in (0, 1):
            child = node.edges.get(bit)
            if child is not None and child in live:
                digits.append(bit)
                key = child
                break
        else:
            raise AssertionError("live state with no live successor")


def local_profile_window(paths: list[PreimagePath]) -> int:
    """Digits needed to compare |D| profiles: max preperiod + 3 * lcm(periods).

    Machine preimages have drift-free cycles, so each |D_j| tail is periodic
    with period dividing the lcm; three full periods past the longest
    preperiod pin equality of eventually periodic integer sequences.
    """
    if not paths:
        return 1
    q = max((len(p.preperiod) for p in paths), default=0)
    p = lcm(*(len(p.period) or 1 for p in paths))
    return q + 3 * p


def group_by_profile(paths: list[PreimagePath]) -> list[list[PreimagePath]]:
    """Partition preimage paths by their |D_j| profile (local level sets)."""
    window = local_profile_window(paths)
    groups: dict[tuple[int, ...], list[PreimagePath]] = {}
    for path in paths:
        groups.setdefault(path.abs_slopes(window), []).append(path)
    return list(groups.values())


def classify(
    y: Fraction,
    *,
    max_states: int = DEFAULT_MAX_STATES,
    max_slope: int = DEFAULT_MAX_SLOPE,
) -> LevelSetReport:
    """Full classification of L(y) for a supported ordinate.

    Finite verdicts come back with exact sorted preimages, their expansions,
    and the number of local level sets (profile classes).  Ordinates outside
    [0, 2/3] are Finite(0); blown budgets give Indeterminate, never a guess.
    """
    y = require_supported(y)
    if not 0 <= y <= TWO_THIRDS:
        graph = StateGraph(y, 0, None, {}, closed=True)
        return analyze(graph)
    report = analyze(close_graph(y, max_states=max_states, max_slope=max_slope))
    if report.verdict is Verdict.FINITE and report.paths is not None:
        report = replace(report, n_local=len(group_by_profile(list(report.paths))))
    return report
