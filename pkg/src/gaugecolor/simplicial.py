"""Colored simplicial complexes and the fractal lattice family.

A simplex is a sorted tuple of vertex ids.  A :class:`ColoredComplex`
stores only its maximal ``d``-simplices; every other simplex is a face of
one of them.  Qubits live on the maximal simplices, in stored order.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import defaultdict, deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .report import Report

Simplex = tuple[int, ...]

LEMMA4_EXHAUSTIVE_LIMIT = 10_000
LEMMA4_SAMPLE_SIZE = 10_000


def simplex(vertices: Iterable[int]) -> Simplex:
    s = tuple(sorted(set(vertices)))
    if not s:
        raise ValueError("a simplex needs at least one vertex")
    return s


def faces(s: Simplex, k: int) -> list[Simplex]:
    """All ``k``-faces of ``s``, lexicographically ordered."""
    if not 0 <= k <= len(s) - 1:
        raise ValueError(f"k={k} outside 0..{len(s) - 1}")
    return list(itertools.combinations(s, k + 1))


@dataclass(frozen=True, eq=False)
class ColoredComplex:
    d: int
    vertex_colors: Mapping[int, int]
    maximal: tuple[Simplex, ...]
    boundary_vertices: frozenset[int] = field(default_factory=frozenset)
    # vertex of each color on the outer simplex; set by build_fractal, used for nesting
    outer: Simplex | None = None

    def color(self, s: Iterable[int]) -> frozenset[int]:
        return frozenset(self.vertex_colors[v] for v in s)

    @property
    def n_qubits(self) -> int:
        return len(self.maximal)

    @cached_property
    def qubit_index(self) -> dict[Simplex, int]:
        return {s: i for i, s in enumerate(self.maximal)}

    @cached_property
    def _vertex_mask(self) -> dict[int, int]:
        """Vertex -> bitmask of the maximal simplices containing it."""
        masks: dict[int, int] = defaultdict(int)
        for i, s in enumerate(self.maximal):
            for v in s:
                masks[v] |= 1 << i
        return dict(masks)

    @cached_property
    def _facet_cofaces(self) -> dict[Simplex, list[int]]:
        out: dict[Simplex, list[int]] = defaultdict(list)
        for i, s in enumerate(self.maximal):
            for f in itertools.combinations(s, len(s) - 1):
                out[f].append(i)
        return dict(out)

    @cached_property
    def all_simplices(self) -> dict[int, list[Simplex]]:
        """Every simplex of the complex grouped by dimension (sorted)."""
        out: dict[int, set[Simplex]] = defaultdict(set)
        for s in self.maximal:
            for k in range(len(s)):
                out[k].update(itertools.combinations(s, k + 1))
        return {k: sorted(v) for k, v in out.items()}

    def contains(self, s: Simplex) -> bool:
        return self.mask(s) != 0

    def is_boundary(self, s: Iterable[int]) -> bool:
        return all(v in self.boundary_vertices for v in s)

    def mask(self, s: Iterable[int]) -> int:
        """Bitmask (bit ``i`` = qubit ``i``) of maximal simplices containing ``s``."""
        m = -1
        for v in s:
            m &= self._vertex_mask.get(v, 0)
        return max(m, 0)

    def support(self, s: Simplex) -> list[int]:
        """Sorted qubit indices of the maximal simplices containing ``s``."""
        m = self.mask(s)
        return [i for i in range(self.n_qubits) if (m >> i) & 1]


def _mask_to_set(L: ColoredComplex, m: int) -> frozenset[Simplex]:
    return frozenset(L.maximal[i] for i in range(L.n_qubits) if (m >> i) & 1)


def build_fractal(d: int, level: int) -> ColoredComplex:
    """Member ``level`` of the nested fractal family in dimension ``d``.

    Level 1 places a single colored ``d``-simplex inside an outer simplex and
    fills the gap: for every proper face of the outer simplex one ``d``-simplex
    joins it to the face of the inner complex carrying the complementary colors.
    Level ``i+1`` repeats this with level ``i`` as the inner complex.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    if level < 1:
        raise ValueError("level must be at least 1")
    colors = {v: v for v in range(d + 1)}
    maximal: list[Simplex] = [tuple(range(d + 1))]
    inner = tuple(range(d + 1))
    for _ in range(level):
        base = len(colors)
        tau = tuple(base + c for c in range(d + 1))
        colors.update({v: c for c, v in enumerate(tau)})
        for size in range(1, d + 1):
            for rho in itertools.combinations(range(d + 1), size):
                omega = [inner[c] for c in range(d + 1) if c not in rho]
                maximal.append(simplex([tau[c] for c in rho] + omega))
        inner = tau
    return ColoredComplex(
        d=d,
        vertex_colors=colors,
        maximal=tuple(maximal),
        boundary_vertices=frozenset(inner),
        outer=inner,
    )


def single_simplex(d: int) -> ColoredComplex:
    """One bare ``d``-simplex; every proper face is on the boundary."""
    s = tuple(range(d + 1))
    return ColoredComplex(d=d, vertex_colors={v: v for v in s}, maximal=(s,),
                          boundary_vertices=frozenset(s), outer=s)


def interior_simplices(L: ColoredComplex, k: int) -> list[Simplex]:
    """Interior ``k``-simplices (not contained in the boundary), sorted."""
    if not 0 <= k <= L.d:
        raise ValueError(f"k={k} outside 0..{L.d}")
    if k == L.d:
        return sorted(L.maximal)
    return [s for s in L.all_simplices.get(k, []) if not L.is_boundary(s)]


def _require_interior(L: ColoredComplex, s: Simplex) -> None:
    if not L.contains(s):
        raise ValueError(f"{s} is not a simplex of the complex")
    if L.is_boundary(s):
        raise ValueError(f"{s} lies on the boundary")


def qubits_on(L: ColoredComplex, s: Simplex) -> frozenset[Simplex]:
    """Maximal simplices containing the interior simplex ``s``."""
    s = simplex(s)
    _require_interior(L, s)
    return _mask_to_set(L, L.mask(s))


def smallest_containing_simplex(L: ColoredComplex, a: Simplex, b: Simplex) -> Simplex | None:
    """Smallest simplex containing both ``a`` and ``b``, if they share a qubit.

    Built as in the intersection argument: inside any common maximal simplex,
    take the face carrying colors ``color(a) | color(b)``.
    """
    a, b = simplex(a), simplex(b)
    _require_interior(L, a)
    _require_interior(L, b)
    common = L.mask(a) & L.mask(b)
    if not common:
        return None
    eps = L.maximal[_lowbit(common)]
    wanted = L.color(a) | L.color(b)
    return tuple(v for v in eps if L.vertex_colors[v] in wanted)


def disjoint_union_decomposition(L: ColoredComplex, s: Simplex, colors: Iterable[int]) -> list[Simplex]:
    """Simplices containing ``s`` whose color set is exactly ``colors``.

    Their qubit sets partition the qubits of ``s``.
    """
    s = simplex(s)
    _require_interior(L, s)
    C = frozenset(colors)
    if not L.color(s) <= C or not C <= frozenset(range(L.d + 1)):
        raise ValueError(f"need color({s}) <= {sorted(C)} <= Z_{L.d + 1}")
    out = set()
    m = L.mask(s)
    for i in range(L.n_qubits):
        if (m >> i) & 1:
            out.add(tuple(v for v in L.maximal[i] if L.vertex_colors[v] in C))
    return sorted(out)


def _lowbit(x: int) -> int:
    return (x & -x).bit_length() - 1


def adjacency(L: ColoredComplex) -> dict[int, list[int]]:
    """Qubit adjacency through shared interior (d-1)-faces."""
    adj: dict[int, list[int]] = {i: [] for i in range(L.n_qubits)}
    for f, cof in L._facet_cofaces.items():
        if L.is_boundary(f):
            continue
        for i, j in itertools.combinations(cof, 2):
            adj[i].append(j)
            adj[j].append(i)
    return {i: sorted(v) for i, v in adj.items()}


def _seed_order(L: ColoredComplex) -> list[int]:
    interior_vertices = sorted(v for v in L.vertex_colors if v not in L.boundary_vertices)
    first = []
    if interior_vertices:
        v0 = interior_vertices[0]
        first = [min(range(L.n_qubits), key=lambda i: (v0 not in L.maximal[i], L.maximal[i]))]
    return first + sorted(range(L.n_qubits), key=lambda i: L.maximal[i])


def bipartition_indices(L: ColoredComplex) -> tuple[list[int], list[int]]:
    """Two-color the qubits by BFS; raises ``ValueError`` on an odd cycle."""
    adj = adjacency(L)
    side: dict[int, int] = {}
    for seed in _seed_order(L):
        if seed in side:
            continue
        side[seed] = 0
        queue = deque([seed])
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                if j not in side:
                    side[j] = 1 - side[i]
                    queue.append(j)
                elif side[j] == side[i]:
                    raise ValueError(
                        f"qubit adjacency graph is not bipartite: {L.maximal[i]} and "
                        f"{L.maximal[j]} share a facet but landed on the same side"
                    )
    T = [i for i in range(L.n_qubits) if side[i] == 0]
    Tc = [i for i in range(L.n_qubits) if side[i] == 1]
    return T, Tc


def bipartition_qubits(L: ColoredComplex) -> tuple[frozenset[Simplex], frozenset[Simplex]]:
    T, Tc = bipartition_indices(L)
    return frozenset(L.maximal[i] for i in T), frozenset(L.maximal[i] for i in Tc)


def validate(L: ColoredComplex) -> list[dict]:
    """Violations of the lattice conditions (empty list when the complex is valid)."""
    problems: list[dict] = []
    palette = set(range(L.d + 1))
    for v, c in L.vertex_colors.items():
        if c not in palette:
            problems.append({"check": "coloring", "vertex": v, "color": c})
    for s in L.maximal:
        if len(s) != L.d + 1 or len(set(s)) != len(s):
            problems.append({"check": "dimension", "simplex": s})
            continue
        missing = [v for v in s if v not in L.vertex_colors]
        if missing:
            problems.append({"check": "coloring", "simplex": s, "uncolored": missing})
            continue
        for u, v in itertools.combinations(s, 2):
            if L.vertex_colors[u] == L.vertex_colors[v]:
                problems.append({"check": "coloring", "edge": (u, v), "color": L.vertex_colors[u]})
    if len(set(L.maximal)) != len(L.maximal):
        problems.append({"check": "dimension", "duplicate_maximal": True})
    if problems:
        return problems
    boundary_facets = set()
    for f, cof in L._facet_cofaces.items():
        if len(cof) > 2:
            problems.append({"check": "boundary", "facet": f, "cofaces": len(cof)})
        elif len(cof) == 1:
            boundary_facets.add(f)
            if not L.is_boundary(f):
                problems.append({"check": "boundary", "facet": f, "cofaces": 1, "marked": "interior"})
        elif L.is_boundary(f):
            problems.append({"check": "boundary", "facet": f, "cofaces": 2, "marked": "boundary"})
    touched = {v for f in boundary_facets for v in f}
    for v in sorted(L.boundary_vertices - touched):
        problems.append({"check": "boundary", "vertex": v, "reason": "marked boundary but on no boundary facet"})
    return problems


def _color_sets_over(L: ColoredComplex, s: Simplex) -> list[frozenset[int]]:
    base = L.color(s)
    rest = sorted(set(range(L.d + 1)) - base)
    return [base | frozenset(extra) for r in range(len(rest) + 1)
            for extra in itertools.combinations(rest, r)]


def verify_lemmas(L: ColoredComplex, seed: int = 0) -> Report:
    """Exhaustively check the combinatorial lattice lemmas.

    Covers coloring and boundary consistency, even support of every interior
    simplex below the top dimension, the intersection property for every
    interior pair, the disjoint-union partition for (simplex, color set)
    pairs (sampled with ``seed`` past a size limit) and bipartiteness of the
    qubit adjacency graph.
    """
    rep = Report(check="lattice_lemmas", passed=True, params={"d": L.d, "qubits": L.n_qubits})
    counts: dict[str, int] = defaultdict(int)

    for p in validate(L):
        rep.add_witness(**p)
        counts[p["check"]] += 1
    if not rep.passed:
        rep.details["checked"] = dict(counts)
        return rep

    lower = [s for k in range(L.d) for s in interior_simplices(L, k)]
    for s in lower:
        counts["even_support"] += 1
        w = L.mask(s).bit_count()
        if w % 2:
            rep.add_witness(check="even_support", simplex=s, weight=w)

    pool = lower + list(L.maximal)
    for a, b in itertools.combinations_with_replacement(pool, 2):
        common = L.mask(a) & L.mask(b)
        counts["intersection"] += 1
        if not common:
            continue
        tau = smallest_containing_simplex(L, a, b)
        if tau != simplex(a + b) or L.mask(tau) != common or L.color(tau) != L.color(a) | L.color(b):
            rep.add_witness(check="intersection", a=a, b=b, tau=tau)

    pairs = [(s, C) for s in lower for C in _color_sets_over(L, s)]
    sampled = len(pairs) > LEMMA4_EXHAUSTIVE_LIMIT
    if sampled:
        pairs = random.Random(seed).sample(pairs, LEMMA4_SAMPLE_SIZE)
    for s, C in pairs:
        counts["disjoint_union"] += 1
        parts = disjoint_union_decomposition(L, s, C)
        union = 0
        ok = True
        for p in parts:
            m = L.mask(p)
            if union & m or L.color(p) != C:
                ok = False
            union |= m
        if not ok or union != L.mask(s):
            rep.add_witness(check="disjoint_union", simplex=s, colors=sorted(C), parts=parts)

    try:
        T, _ = bipartition_indices(L)
        Tset = set(T)
        for f in interior_simplices(L, L.d - 1):
            counts["bipartition"] += 1
            on_T = sum(1 for i in L.support(f) if i in Tset)
            if on_T != 1:
                rep.add_witness(check="bipartition", facet=f, qubits_in_T=on_T)
    except ValueError as exc:
        rep.add_witness(check="bipartition", error=str(exc))

    rep.details["checked"] = dict(counts)
    rep.details["disjoint_union_sampled"] = sampled
    return rep


def to_json(L: ColoredComplex) -> str:
    data = {
        "d": L.d,
        "vertices": [
            {"id": v, "color": L.vertex_colors[v], "boundary": v in L.boundary_vertices}
            for v in sorted(L.vertex_colors)
        ],
        "maximal": [list(s) for s in L.maximal],
    }
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def from_json(text: str, check: bool = True) -> ColoredComplex:
    """Parse the lattice JSON format; with ``check`` the lattice conditions are enforced."""
    data = json.loads(text)
    d = int(data["d"])
    colors = {int(v["id"]): int(v["color"]) for v in data["vertices"]}
    boundary = frozenset(int(v["id"]) for v in data["vertices"] if v.get("boundary"))
    maximal = tuple(tuple(int(u) for u in s) for s in data["maximal"])
    if any(list(s) != sorted(s) for s in maximal):
        maximal = tuple(simplex(s) for s in maximal)
    outer = None
    if len({colors.get(v) for v in boundary}) == d + 1 == len(boundary):
        outer = tuple(sorted(boundary, key=colors.__getitem__))
    L = ColoredComplex(d=d, vertex_colors=colors, maximal=maximal, boundary_vertices=boundary, outer=outer)
    if check:
        problems = validate(L)
        if problems:
            raise ValueError(f"invalid lattice: {problems[:5]}")
    return L

