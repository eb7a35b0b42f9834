"""Based multigraphs with oriented edges, walks, and the cycle-space calculus.

A multigraph stores a finite vertex set, a set of edges (parallel edges and
self-loops allowed), and a distinguished base vertex.  Every edge carries a
reference orientation tail -> head; a walk letter ``(edge_id, sign)`` means
the edge traversed with (+1) or against (-1) that orientation.  Vertex and
edge identifiers are opaque strings ordered lexicographically.

All values are immutable after construction and every operation is a pure
function, so everything here is safe for concurrent use.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .fields import Field, QQ

Letter = tuple[str, int]
Word = tuple[Letter, ...]
Chain1 = dict[str, object]  # edge id -> scalar, zero coefficients omitted
Chain0 = dict[str, object]  # vertex id -> scalar, zero coefficients omitted


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Multigraph:
    vertices: frozenset[str]
    edges: tuple[Edge, ...]
    basepoint: str

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        seen = set()
        for e in self.edges:
            if not e.id:
                raise ValueError("empty edge id")
            if e.id in seen:
                raise ValueError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            if e.tail not in self.vertices or e.head not in self.vertices:
                raise ValueError(f"edge {e.id!r} has an endpoint outside the vertex set")
        if self.basepoint not in self.vertices:
            raise ValueError(f"basepoint {self.basepoint!r} is not a vertex")

    @classmethod
    def from_triples(
        cls,
        basepoint: str,
        triples: Iterable[tuple[str, str, str]],
        extra_vertices: Iterable[str] = (),
    ) -> Multigraph:
        """Build a graph from ``(edge_id, tail, head)`` triples.

        The vertex set is inferred from the endpoints, the basepoint, and
        ``extra_vertices`` (for isolated vertices).
        """
        edges = tuple(Edge(i, t, h) for i, t, h in triples)
        vertices = {basepoint, *extra_vertices}
        for e in edges:
            vertices.add(e.tail)
            vertices.add(e.head)
        return cls(frozenset(vertices), edges, basepoint)

    @cached_property
    def _edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def edge(self, eid: str) -> Edge:
        try:
            return self._edge_map[eid]
        except KeyError:
            raise ValueError(f"unknown edge id {eid!r}") from None

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)  # already sorted

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def degree(self, v: str) -> int:
        d = 0
        for e in self.edges:
            if e.tail == v:
                d += 1
            if e.head == v:
                d += 1
        return d

    def incident(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.tail == v or e.head == v]

    def cyclomatic_number(self) -> int:
        if not is_connected(self):
            raise ValueError("cyclomatic number requires a connected graph")
        return self.n_edges - self.n_vertices + 1


def rebase(g: Multigraph, v: str) -> Multigraph:
    return replace(g, basepoint=v)


# ---------------------------------------------------------------------------
# connectivity and bridges


def _adjacency(g: Multigraph) -> dict[str, list[Edge]]:
    adj: dict[str, list[Edge]] = {v: [] for v in g.vertices}
    for e in g.edges:
        adj[e.tail].append(e)
        if not e.is_loop:
            adj[e.head].append(e)
    return adj


def is_connected(g: Multigraph) -> bool:
    adj = _adjacency(g)
    seen = {g.basepoint}
    queue = deque([g.basepoint])
    while queue:
        v = queue.popleft()
        for e in adj[v]:
            w = e.head if e.tail == v else e.tail
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(g.vertices)


def bridges(g: Multigraph) -> set[str]:
    """Edge ids whose removal disconnects their component.

    Self-loops are never bridges; a parallel edge never is either, because
    its twin serves as a back edge in the depth-first search.
    """
    adj = _adjacency(g)
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    out: set[str] = set()
    counter = 0
    for root in sorted(g.vertices):
        if root in disc:
            continue
        # Iterative DFS carrying the edge id used to enter each vertex.
        stack: list[tuple[str, Optional[str], int]] = [(root, None, 0)]
        disc[root] = low[root] = counter
        counter += 1
        while stack:
            v, in_edge, idx = stack.pop()
            edges_v = adj[v]
            if idx < len(edges_v):
                stack.append((v, in_edge, idx + 1))
                e = edges_v[idx]
                if e.is_loop or e.id == in_edge:
                    continue
                w = e.head if e.tail == v else e.tail
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, e.id, 0))
                else:
                    low[v] = min(low[v], disc[w])
            elif in_edge is not None:
                # Retreat along in_edge; propagate low to the parent.
                parent, _, _ = stack[-1]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    out.add(in_edge)
    return out


def is_two_edge_connected(g: Multigraph) -> bool:
    """Connected with no bridge.  A single vertex with any loops qualifies."""
    return is_connected(g) and not bridges(g)


# ---------------------------------------------------------------------------
# spanning trees and fundamental cycles


def spanning_tree(g: Multigraph) -> frozenset[str]:
    """Deterministic tree rooted at the basepoint.

    At every expansion step the frontier edge (one endpoint reached, the
    other not) with the smallest id is taken, so the result depends only on
    the graph.  Loops never qualify.
    """
    if not is_connected(g):
        raise ValueError("spanning tree requires a connected graph")
    reached = {g.basepoint}
    tree: set[str] = set()
    while len(reached) < len(g.vertices):
        candidate = None
        for e in g.edges:  # sorted by id
            if (e.tail in reached) != (e.head in reached):
                candidate = e
                break
        assert candidate is not None  # connected, so a frontier edge exists
        tree.add(candidate.id)
        reached.add(candidate.tail if candidate.head in reached else candidate.head)
    return frozenset(tree)


def random_spanning_tree(g: Multigraph, rng: random.Random) -> frozenset[str]:
    """Uniformly shuffled Kruskal; used to test tree-independence downstream."""
    if not is_connected(g):
        raise ValueError("spanning tree requires a connected graph")
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    edges = [e for e in g.edges if not e.is_loop]
    rng.shuffle(edges)
    tree: set[str] = set()
    for e in edges:
        a, b = find(e.tail), find(e.head)
        if a != b:
            parent[a] = b
            tree.add(e.id)
    return frozenset(tree)


def tree_path(g: Multigraph, tree: frozenset[str], start: str, end: str) -> Word:
    """The unique walk from ``start`` to ``end`` inside the tree edges."""
    if start == end:
        return ()
    adj: dict[str, list[Edge]] = {v: [] for v in g.vertices}
    for eid in tree:
        e = g.edge(eid)
        adj[e.tail].append(e)
        adj[e.head].append(e)
    prev: dict[str, Letter] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == end:
            break
        for e in adj[v]:
            w = e.head if e.tail == v else e.tail
            if w not in seen:
                seen.add(w)
                prev[w] = (e.id, 1 if e.tail == v else -1)
                queue.append(w)
    if end not in seen:
        raise ValueError(f"no tree path from {start!r} to {end!r}")
    letters: list[Letter] = []
    v = end
    while v != start:
        eid, sign = prev[v]
        letters.append((eid, sign))
        e = g.edge(eid)
        v = e.tail if (sign == 1) else e.head
    return tuple(reversed(letters))


def fundamental_cycles(g: Multigraph, tree: frozenset[str] | None = None) -> list[Word]:
    """Closed walks at the basepoint, one per non-tree edge, in id order.

    For a non-tree edge e = (x, y) the walk is
    (tree path basepoint -> x) e (tree path y -> basepoint).
    A self-loop contributes itself conjugated by the path to its vertex.
    """
    if tree is None:
        tree = spanning_tree(g)
    cycles: list[Word] = []
    for e in g.edges:
        if e.id in tree:
            continue
        to_tail = tree_path(g, tree, g.basepoint, e.tail)
        back = tree_path(g, tree, e.head, g.basepoint)
        cycles.append(to_tail + ((e.id, 1),) + back)
    return cycles


# ---------------------------------------------------------------------------
# walks and chains


def inverse_word(word: Word) -> Word:
    return tuple((eid, -sign) for eid, sign in reversed(word))


def signed_endpoints(g: Multigraph, letter: Letter) -> tuple[str, str]:
    """(start, end) of a single-letter traversal."""
    eid, sign = letter
    e = g.edge(eid)
    return (e.tail, e.head) if sign == 1 else (e.head, e.tail)


def walk_endpoints(g: Multigraph, word: Word) -> tuple[str, str]:
    """Endpoints of a walk; raises if consecutive letters do not meet."""
    if not word:
        raise ValueError("empty word has no endpoints")
    start, at = signed_endpoints(g, word[0])
    for letter in word[1:]:
        a, b = signed_endpoints(g, letter)
        if a != at:
            raise ValueError(f"letters do not concatenate at {at!r} (next letter starts at {a!r})")
        at = b
    return start, at


def is_closed_walk(g: Multigraph, word: Word, at: str | None = None) -> bool:
    base = g.basepoint if at is None else at
    if not word:
        return True
    try:
        start, end = walk_endpoints(g, word)
    except ValueError:
        return False
    return start == base and end == base


def walk_chain(word: Word, field: Field = QQ) -> Chain1:
    """Signed edge-count chain of a word: each letter adds sign * (edge)."""
    out: Chain1 = {}
    for eid, sign in word:
        c = field.add(out.get(eid, field.zero), field.from_int(sign))
        if c == field.zero:
            out.pop(eid, None)
        else:
            out[eid] = c
    return out


def boundary(chain: Chain1, g: Multigraph, field: Field = QQ) -> Chain0:
    """Linear extension of (edge e) -> head(e) - tail(e); loops map to zero."""
    out: Chain0 = {}

    def bump(v, c):
        s = field.add(out.get(v, field.zero), c)
        if s == field.zero:
            out.pop(v, None)
        else:
            out[v] = s

    for eid, c in chain.items():
        e = g.edge(eid)  # unknown ids raise here
        if e.is_loop:
            continue
        bump(e.head, c)
        bump(e.tail, field.neg(c))
    return out


def vertex_difference(x: str, y: str, field: Field = QQ) -> Chain0:
    """The 0-chain x - y (empty when x == y)."""
    if x == y:
        return {}
    return {x: field.one, y: field.neg(field.one)}


def cycle_space(g: Multigraph, field: Field = QQ):
    """Canonical (rref) basis of the kernel of the boundary map.

    Coordinates follow sorted edge ids; the rank is the cyclomatic number.
    Computed from the incidence matrix; the span of fundamental-cycle chains
    is the same subspace, which the tests check independently.
    """
    from .linalg import Matrix, nullspace

    if not is_connected(g):
        raise ValueError("cycle space requires a connected graph")
    verts = sorted(g.vertices)
    eids = g.edge_ids
    one, zero = field.one, field.zero
    rows = []
    for v in verts:
        row = []
        for e in g.edges:
            if e.is_loop:
                row.append(zero)
            elif e.head == v:
                row.append(one)
            elif e.tail == v:
                row.append(field.neg(one))
            else:
                row.append(zero)
        rows.append(tuple(row))
    incidence = Matrix(field, len(eids), tuple(rows))
    return nullspace(incidence)


def chain_vector(chain: Chain1, edge_order: tuple[str, ...], field: Field) -> tuple:
    """Flatten a 1-chain into coordinates over ``edge_order``."""
    index = {eid: i for i, eid in enumerate(edge_order)}
    row = [field.zero] * len(edge_order)
    for eid, c in chain.items():
        row[index[eid]] = c
    return tuple(row)


# ---------------------------------------------------------------------------
# edge bijections and the brute-force isomorphism oracle


@dataclass(frozen=True)
class EdgeBijection:
    """Orientation-respecting edge correspondence with a sign per edge.

    ``(source, target, sign)``: sign -1 means the source edge maps onto the
    target edge with reversed orientation.
    """

    pairs: tuple[tuple[str, str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))
        seen_src, seen_dst = set(), set()
        for src, dst, sign in self.pairs:
            if sign not in (1, -1):
                raise ValueError(f"sign for {src!r} must be +1 or -1, got {sign}")
            if src in seen_src:
                raise ValueError(f"duplicate source edge {src!r}")
            if dst in seen_dst:
                raise ValueError(f"duplicate target edge {dst!r}")
            seen_src.add(src)
            seen_dst.add(dst)

    @classmethod
    def from_dict(cls, mapping: Mapping[str, tuple[str, int]]) -> EdgeBijection:
        return cls(tuple((s, d, sg) for s, (d, sg) in mapping.items()))

    @classmethod
    def identity(cls, g: Multigraph) -> EdgeBijection:
        return cls(tuple((eid, eid, 1) for eid in g.edge_ids))

    @cached_property
    def _map(self) -> dict[str, tuple[str, int]]:
        return {src: (dst, sign) for src, dst, sign in self.pairs}

    def image(self, eid: str) -> tuple[str, int]:
        try:
            return self._map[eid]
        except KeyError:
            raise ValueError(f"edge {eid!r} is not in the bijection's domain") from None

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(src for src, _, _ in self.pairs)

    @property
    def codomain(self) -> frozenset[str]:
        return frozenset(dst for _, dst, _ in self.pairs)

    def inverse(self) -> EdgeBijection:
        return EdgeBijection(tuple((dst, src, sign) for src, dst, sign in self.pairs))

    def compose(self, then: EdgeBijection) -> EdgeBijection:
        """First self, then ``then``; signs multiply."""
        out = []
        for src, mid, s1 in self.pairs:
            dst, s2 = then.image(mid)
            out.append((src, dst, s1 * s2))
        return EdgeBijection(tuple(out))

    def apply_word(self, word: Word) -> Word:
        return tuple((self._map[eid][0], sign * self._map[eid][1]) for eid, sign in word)


def validate_edge_bijection(phi: EdgeBijection, g: Multigraph, g2: Multigraph) -> None:
    if phi.domain != frozenset(g.edge_ids):
        raise ValueError("bijection domain does not match the source edge set")
    if phi.codomain != frozenset(g2.edge_ids):
        raise ValueError("bijection codomain does not match the target edge set")


def phi_is_isomorphism(g: Multigraph, g2: Multigraph, phi: EdgeBijection) -> dict[str, str] | None:
    """Vertex witness that ``phi`` is a basepoint-preserving graph isomorphism.

    Every edge forces its endpoints' images (sign +1: tail to tail and head
    to head; sign -1: crossed), so the map is propagated edge by edge and
    checked for consistency and bijectivity.  Returns the vertex map, or
    None when no witness exists.
    """
    validate_edge_bijection(phi, g, g2)
    if len(g.vertices) != len(g2.vertices):
        return None
    psi: dict[str, str] = {g.basepoint: g2.basepoint}
    for e in g.edges:
        dst, sign = phi.image(e.id)
        e2 = g2.edge(dst)
        want = ((e.tail, e2.tail), (e.head, e2.head)) if sign == 1 else ((e.tail, e2.head), (e.head, e2.tail))
        for x, y in want:
            if psi.setdefault(x, y) != y:
                return None
    # Vertices untouched by edges are unconstrained; pair them off in order.
    left = sorted(g.vertices - psi.keys())
    right = sorted(g2.vertices - set(psi.values()))
    if len(set(psi.values())) != len(psi):
        return None
    if len(left) != len(right):
        return None
    psi.update(zip(left, right))
    return psi


__all__ = [
    "Edge",
    "Multigraph",
    "EdgeBijection",
    "Letter",
    "Word",
    "rebase",
    "is_connected",
    "bridges",
    "is_two_edge_connected",
    "spanning_tree",
    "random_spanning_tree",
    "tree_path",
    "fundamental_cycles",
    "inverse_word",
    "signed_endpoints",
    "walk_endpoints",
    "is_closed_walk",
    "walk_chain",
    "boundary",
    "vertex_difference",
    "cycle_space",
    "chain_vector",
    "validate_edge_bijection",
    "phi_is_isomorphism",
]
