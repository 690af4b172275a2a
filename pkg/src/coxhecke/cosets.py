"""Double cosets for infinite dihedral special subgroups, and the
interaction graph whose connectivity pins down central symbols.

For a pair s, t with m(s,t) = infinity, D = <s, t> is infinite dihedral
and every double coset DwD has a unique shortest representative w0.  The
coset is non-degenerate when w0 fails to commute with s or with t.  The
graph on the group joins w to ws and sw whenever some t makes the coset
of w non-degenerate; restricted to a metric ball it decomposes into one
large component plus isolated vertices, which this module verifies
empirically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .coxeter import LEFT, RIGHT, CoxeterSystem, Element, DEFAULT_MAX_BALL
from .errors import CapacityError, DomainError, InputError


@dataclass(frozen=True)
class InfinitePair:
    """An ordered pair of generators with m(s,t) = infinity."""
    system: CoxeterSystem
    s: int
    t: int

    @staticmethod
    def of(system: CoxeterSystem, s, t) -> "InfinitePair":
        s = system.generator_index(s)
        t = system.generator_index(t)
        if s == t:
            raise InputError("the two generators must be distinct")
        if system.commutes(s, t):
            raise InputError(
                f"generators {system.names[s]}, {system.names[t]} commute; "
                "an infinite dihedral pair is required")
        return InfinitePair(system, s, t)


@dataclass(frozen=True)
class DoubleCosetInfo:
    """Shortest representative of DwD and its degeneracy data."""
    pair: InfinitePair
    w0: Element
    commutes_s: bool
    commutes_t: bool

    @property
    def nondegenerate(self) -> bool:
        return not (self.commutes_s and self.commutes_t)


def shortest_rep(system: CoxeterSystem, pair: InfinitePair, w: Element,
                 strip_order: str = "left-first") -> DoubleCosetInfo:
    """Greedy descent stripping to the minimal element of DwD.

    Left descents in {s, t} are removed before right ones, smaller index
    first; uniqueness of the minimal representative makes the outcome
    independent of this order (tested with the reversed order).
    """
    system._check_own(w)
    gens = sorted((pair.s, pair.t))
    sides = (LEFT, RIGHT) if strip_order == "left-first" else (RIGHT, LEFT)
    cur = w
    while True:
        for side in sides:
            descents = (system.left_descents(cur) if side == LEFT
                        else system.right_descents(cur))
            hit = next((g for g in gens if g in descents), None)
            if hit is not None:
                cur, _ = system.mult_gen(cur, hit, side)
                break
        else:
            break
    return DoubleCosetInfo(
        pair=pair, w0=cur,
        commutes_s=system.commutes_with_gen(cur, pair.s),
        commutes_t=system.commutes_with_gen(cur, pair.t),
    )


def dihedral_words(pair: InfinitePair, max_len: int) -> Iterator[tuple[int, ...]]:
    """All alternating words in {s, t} of length at most max_len.

    These are exactly the reduced words of the infinite dihedral subgroup,
    one per element.
    """
    yield ()
    for first in (pair.s, pair.t):
        second = pair.t if first == pair.s else pair.s
        word: tuple[int, ...] = ()
        for k in range(max_len):
            word = word + (first if k % 2 == 0 else second,)
            yield word


def brute_force_min_rep(system: CoxeterSystem, pair: InfinitePair, w: Element,
                        bound: int, max_products: int = 2 * 10**6) -> Element:
    """Oracle for shortest_rep: minimize |d w d'| over dihedral d, d'.

    Enumerates all products with |d|, |d'| <= bound; the bound must leave
    room to strip w from both sides.
    """
    system._check_own(w)
    if bound < len(w) + 2:
        raise InputError("bound must be at least |w| + 2")
    count = (2 * bound + 1) ** 2
    if count > max_products:
        raise CapacityError(f"would enumerate {count} products")
    best = w
    for d in dihedral_words(pair, bound):
        dw = system.multiply(system.normalize(d), w)
        for d2 in dihedral_words(pair, bound):
            cand = system.multiply(dw, system.normalize(d2))
            if cand.sort_key() < best.sort_key():
                best = cand
    return best


def coset_elements(system: CoxeterSystem, info: DoubleCosetInfo,
                   radius: int) -> set[Element]:
    """All elements of the double coset with length at most radius."""
    out: set[Element] = set()
    w0 = info.w0
    room = radius - len(w0)
    if room < 0:
        return out
    for d in dihedral_words(info.pair, room):
        dw = system.multiply(system.normalize(d), w0)
        if len(dw) > radius:
            continue
        for d2 in dihedral_words(info.pair, room):
            cand = system.multiply(dw, system.normalize(d2))
            if len(cand) <= radius:
                out.add(cand)
    return out


def _noncommuting_partners(system: CoxeterSystem, s: int) -> Iterable[int]:
    return (t for t in range(system.n) if t != s and not system.commutes(s, t))


def edge_generators(system: CoxeterSystem, w: Element) -> list[int]:
    """Generators s for which w gains edges to ws and sw: some t with
    m(s,t) = infinity makes the coset of w non-degenerate."""
    out = []
    for s in range(system.n):
        for t in _noncommuting_partners(system, s):
            pair = InfinitePair(system, s, t)
            if shortest_rep(system, pair, w).nondegenerate:
                out.append(s)
                break
    return out


def gamma_neighbors(system: CoxeterSystem, w: Element) -> set[Element]:
    """Neighbors of w in the interaction graph: ws and sw over the edge
    generators of w."""
    out: set[Element] = set()
    for s in edge_generators(system, w):
        out.add(system.mult_gen(w, s, RIGHT)[0])
        out.add(system.mult_gen(w, s, LEFT)[0])
    return out


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


@dataclass(frozen=True)
class GammaBallGraph:
    """The interaction graph restricted to a metric ball.

    Vertices are the ball elements in canonical order; edges are unordered
    index pairs, kept only when both endpoints lie in the ball.  Component
    labels are contiguous integers in order of first appearance.
    """
    system: CoxeterSystem
    radius: int
    vertices: tuple[Element, ...]
    edges: frozenset[tuple[int, int]]
    component_label: tuple[int, ...]

    @property
    def n_components(self) -> int:
        return max(self.component_label) + 1 if self.component_label else 0

    def component_of(self, w: Element) -> int:
        return self.component_label[self.vertices.index(w)]

    def components(self) -> list[list[Element]]:
        out: list[list[Element]] = [[] for _ in range(self.n_components)]
        for v, lab in zip(self.vertices, self.component_label):
            out[lab].append(v)
        return out

    def isolated_vertices(self) -> list[Element]:
        touched = set()
        for i, j in self.edges:
            touched.add(i)
            touched.add(j)
        return [v for k, v in enumerate(self.vertices) if k not in touched]

    def write_edge_list(self, stream):
        """One 'u v' pair per line using canonical word strings."""
        for i, j in sorted(self.edges):
            stream.write(f"{self.vertices[i]} {self.vertices[j]}\n")


def build_gamma_ball(system: CoxeterSystem, radius: int,
                     max_elements: int = DEFAULT_MAX_BALL) -> GammaBallGraph:
    """Construct the ball-restricted interaction graph.

    Scans every vertex, attaches its edges, and drops edges leaving the
    ball; the resulting edge set is symmetric by construction and tested
    to be consistent with rescanning from the other endpoint.
    """
    ball = system.ball(radius, max_elements)
    index = {w: i for i, w in enumerate(ball)}
    edges: set[tuple[int, int]] = set()
    for i, w in enumerate(ball):
        for s in edge_generators(system, w):
            for side in (LEFT, RIGHT):
                other, _ = system.mult_gen(w, s, side)
                j = index.get(other)
                if j is not None and j != i:
                    edges.add((min(i, j), max(i, j)))
    uf = _UnionFind(len(ball))
    for i, j in edges:
        uf.union(i, j)
    roots: dict[int, int] = {}
    labels = []
    for i in range(len(ball)):
        r = uf.find(i)
        labels.append(roots.setdefault(r, len(roots)))
    return GammaBallGraph(system, radius, tuple(ball), frozenset(edges),
                          tuple(labels))


@dataclass(frozen=True)
class ComponentReport:
    """Outcome of the ball-level connectivity verification."""
    radius: int
    slack: int
    passed: bool
    exceptional: tuple[Element, ...]
    n_components: int
    big_component_size: int
    core_size: int
    failures: tuple[Element, ...]

    def summary(self) -> str:
        exc = ", ".join(str(w) for w in self.exceptional) or "none"
        status = "pass" if self.passed else "FAIL"
        return (f"{status}: radius {self.radius} slack {self.slack}; "
                f"{self.n_components} components on the ball; expected "
                f"isolated vertices [{exc}]; core of {self.core_size} "
                f"vertices in one component of size {self.big_component_size}")


def verify_component_structure(system: CoxeterSystem, radius: int,
                               slack: int = 2,
                               max_elements: int = DEFAULT_MAX_BALL) -> ComponentReport:
    """Check that all short-enough vertices share one component.

    Every vertex of length <= radius - slack must lie in a single
    component, except the identity and, when the group is Z2 * Z2^k, the
    generator of the Z2 free factor.  Connectivity paths may leave small
    balls, hence the slack.  This is an empirical check on a finite ball,
    not a proof.
    """
    if not system.irreducible or system.is_finite():
        raise DomainError("component verification needs an irreducible "
                          "infinite system")
    if system.n < 3:
        raise DomainError("component verification needs at least 3 "
                          "generators; with 2 the graph has no edges")
    graph = build_gamma_ball(system, radius, max_elements)
    exceptional = [system.identity]
    z2gen = system.free_z2_factor_generator()
    if z2gen is not None:
        exceptional.append(system.element([z2gen]))

    core = [w for w in graph.vertices
            if len(w) <= radius - slack and w not in exceptional]
    labels = {w: graph.component_label[i] for i, w in enumerate(graph.vertices)}
    big_label = None
    failures = []
    for w in core:
        if big_label is None:
            big_label = labels[w]
        elif labels[w] != big_label:
            failures.append(w)
    for w in exceptional:
        # expected isolated: no edges at all inside the ball
        i = graph.vertices.index(w)
        if any(i in e for e in graph.edges):
            failures.append(w)
    big_size = sum(1 for v, lab in zip(graph.vertices, graph.component_label)
                   if lab == big_label) if big_label is not None else 0
    return ComponentReport(
        radius=radius, slack=slack, passed=not failures,
        exceptional=tuple(exceptional), n_components=graph.n_components,
        big_component_size=big_size, core_size=len(core),
        failures=tuple(failures),
    )
