"""Concrete graphs: graph6 I/O, strong-regularity checks and local structure."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, SrgError
from .exactlin import RatMatrix
from .params import SrgParams, cosine_sequence, spectrum, validate_params


class MalformedHeader(InputError):
    pass


class TruncatedBitVector(InputError):
    pass


class TrailingGarbage(InputError):
    pass


class TooLarge(InputError):
    pass


class NotRegular(SrgError):
    pass


class NotStronglyRegular(SrgError):
    def __init__(self, message: str, witness: tuple[int, int]):
        super().__init__(message)
        self.witness = witness


class Degenerate(SrgError):
    pass


class NotDegreeTwo(SrgError):
    def __init__(self, vertex: int, degree: int):
        super().__init__(f"vertex {vertex} has degree {degree} in the neighborhood, not 2")
        self.vertex = vertex
        self.degree = degree


class NotDistanceTwo(InputError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` stored as neighbor sets."""

    n: int
    adj: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise InputError(f"loop at vertex {i}")
            nbrs[i].add(j)
            nbrs[j].add(i)
        return cls(n, tuple(frozenset(s) for s in nbrs))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence]) -> "Graph":
        n = len(rows)
        for i in range(n):
            if rows[i][i]:
                raise InputError(f"loop at vertex {i}")
            for j in range(i):
                if bool(rows[i][j]) != bool(rows[j][i]):
                    raise InputError(f"asymmetric adjacency at ({i}, {j})")
        return cls.from_edges(n, ((i, j) for i in range(n) for j in range(i) if rows[i][j]))

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adj[i]

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in range(j) if i in self.adj[j]]

    def adjacency_matrix(self) -> list[list[int]]:
        return [[int(j in self.adj[i]) for j in range(self.n)] for i in range(self.n)]

    def complement(self) -> "Graph":
        every = set(range(self.n))
        return Graph(self.n, tuple(frozenset(every - s - {i}) for i, s in enumerate(self.adj)))


# -- graph6 -----------------------------------------------------------------

_HEADER = ">>graph6<<"


def _decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise MalformedHeader("empty graph6 string")
    if any(not 63 <= c <= 126 for c in data):
        raise MalformedHeader("graph6 bytes must lie in 63..126")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedHeader("truncated 8-byte size header")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise MalformedHeader("truncated 4-byte size header")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 record (optional ``>>graph6<<`` prefix and newline allowed)."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    if data.startswith(_HEADER.encode()):
        data = data[len(_HEADER):]
    n, offset = _decode_size(data)
    body = data[offset:]
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(body) < nbytes:
        raise TruncatedBitVector(f"need {nbytes} data bytes for n={n}, got {len(body)}")
    if len(body) > nbytes:
        raise TrailingGarbage(f"{len(body) - nbytes} unexpected bytes after the bit vector")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def write_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = [n + 63]
    elif n <= 258047:
        head = [126] + [63 + ((n >> s) & 63) for s in (12, 6, 0)]
    else:
        raise TooLarge(f"n={n} exceeds the 4-byte graph6 size header")
    bits = [int(i in g.adj[j]) for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [
        63 + int("".join(map(str, bits[i : i + 6])), 2) for i in range(0, len(bits), 6)
    ]
    return bytes(head + body).decode("ascii")


def parse_json_graph(text: str) -> Graph:
    """Decode ``{"n": int, "edges": [[i, j], ...]}``."""
    try:
        obj = json.loads(text)
        n = obj["n"]
        edges = obj["edges"]
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad JSON adjacency list: {exc}") from None
    if not isinstance(n, int) or n < 0:
        raise InputError("'n' must be a nonnegative integer")
    return Graph.from_edges(n, edges)


def load_graph(text: str) -> Graph:
    """Parse either a JSON adjacency list or a single graph6 line."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return parse_json_graph(stripped)
    lines = [ln for ln in stripped.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise InputError(f"expected exactly one graph6 record, found {len(lines)}")
    return parse_graph6(lines[0].strip())


# -- strong regularity ------------------------------------------------------


def verify_srg(g: Graph) -> SrgParams:
    n = g.n
    if n < 2:
        raise Degenerate("need at least two vertices")
    k = g.degree(0)
    for i in range(n):
        if g.degree(i) != k:
            raise NotRegular(f"vertex 0 has degree {k} but vertex {i} has degree {g.degree(i)}")
    if k == 0:
        raise Degenerate("empty graph")
    if k == n - 1:
        raise Degenerate("complete graph: mu is undefined")
    lam = mu = None
    lam_pair = mu_pair = None
    for i in range(n):
        for j in range(i + 1, n):
            c = len(g.adj[i] & g.adj[j])
            if j in g.adj[i]:
                if lam is None:
                    lam, lam_pair = c, (i, j)
                elif c != lam:
                    raise NotStronglyRegular(
                        f"adjacent pairs {lam_pair} and {(i, j)} have {lam} and {c} "
                        "common neighbours",
                        (i, j),
                    )
            else:
                if mu is None:
                    mu, mu_pair = c, (i, j)
                elif c != mu:
                    raise NotStronglyRegular(
                        f"non-adjacent pairs {mu_pair} and {(i, j)} have {mu} and {c} "
                        "common neighbours",
                        (i, j),
                    )
    assert lam is not None and mu is not None
    if mu == 0:
        raise Degenerate("mu = 0: disjoint union of cliques")
    if mu == k:
        raise Degenerate("mu = k: complete multipartite graph")
    return validate_params(n, k, lam, mu)


def representation_gram(g: Graph, theta: int) -> RatMatrix:
    """Gram matrix ``I + w1*A + w2*(J - I - A)`` of the unit-vector representation."""
    params = verify_srg(g)
    cs = cosine_sequence(params, theta)
    one, w1, w2 = cs.w0, cs.w1, cs.w2
    return RatMatrix(
        [
            [one if i == j else (w1 if j in g.adj[i] else w2) for j in range(g.n)]
            for i in range(g.n)
        ]
    )


def representation_rank_expected(g: Graph, theta: int) -> int:
    return spectrum(verify_srg(g)).multiplicity(theta)


# -- local structure --------------------------------------------------------


@dataclass(frozen=True)
class NeighborhoodDecomposition:
    center: int
    cycles: tuple[tuple[int, ...], ...]

    @property
    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]


@dataclass(frozen=True)
class MarkedCycle:
    """A cycle of length ``t`` with marked positions (neighbours of an outside vertex)."""

    t: int
    marks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "marks", tuple(sorted({m % self.t for m in self.marks})))

    @property
    def s(self) -> int:
        return len(self.marks)


def neighborhood_cycles(g: Graph, u: int) -> NeighborhoodDecomposition:
    """Split the induced subgraph on the neighbours of ``u`` into its cycles.

    Each cycle starts at its smallest unvisited vertex and heads first to the
    smaller of that vertex's two neighbours.
    """
    nbhd = g.adj[u]
    local = {x: sorted(g.adj[x] & nbhd) for x in nbhd}
    for x in sorted(local):
        if len(local[x]) != 2:
            raise NotDegreeTwo(x, len(local[x]))
    seen: set[int] = set()
    cycles = []
    for start in sorted(local):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        prev, cur = start, local[start][0]
        while cur != start:
            cycle.append(cur)
            seen.add(cur)
            a, b = local[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(tuple(cycle))
    return NeighborhoodDecomposition(u, tuple(cycles))


def mu_marks(g: Graph, u: int, w: int) -> list[MarkedCycle]:
    """Positions on each neighbourhood cycle of ``u`` that are adjacent to ``w``."""
    if w == u or g.has_edge(u, w):
        raise NotDistanceTwo(f"vertex {w} is not at distance 2 from {u}")
    dec = neighborhood_cycles(g, u)
    return [
        MarkedCycle(len(c), tuple(i for i, x in enumerate(c) if x in g.adj[w]))
        for c in dec.cycles
    ]


# -- small named graphs used by tests and the CLI ---------------------------


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def paley(q: int) -> Graph:
    """Paley graph on the integers mod a prime ``q`` congruent to 1 mod 4."""
    squares = {(x * x) % q for x in range(1, q)}
    return Graph.from_edges(q, [(i, j) for i in range(q) for j in range(i) if (i - j) % q in squares])


def rook(m: int) -> Graph:
    """The ``m x m`` rook's graph (line graph of ``K_{m,m}``)."""
    cells = [(a, b) for a in range(m) for b in range(m)]
    return Graph.from_edges(
        m * m,
        [
            (i, j)
            for i, (a, b) in enumerate(cells)
            for j, (c, d) in enumerate(cells)
            if i < j and (a == c or b == d)
        ],
    )


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i)])

