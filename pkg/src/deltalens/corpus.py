"""Seeded generators of valid lenses, plus the fixed regression fixtures.

Every generator draws from a single :class:`random.Random` seeded with
the configuration seed, so ``(family, seed, size)`` determines the
instance.  Instances are valid by construction; the test-suite checks
that anyway.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .category import (
    InternalCategory,
    from_table,
    free_on_acyclic_graph,
    identity_label,
    monoid_category,
    walking_arrow,
)
from .diagnostics import ConfigError
from .finset import FinFn, FinSet, product
from .functor import InternalFunctor, functor_from_maps
from .lens import InternalLens, dopf_lens, identity_lens, monoid_section_lens, vwb_lens

FAMILIES = ("free-acyclic-lens", "copresheaf-dopf", "codiscrete-vwb", "monoid-section")
MAX_ATTEMPTS = 200


@dataclass(frozen=True)
class GenConfig:
    family: str
    seed: int
    size: int
    morphism_bound: int = 24

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.size < 1 or self.morphism_bound < 1:
            raise ConfigError("size and morphism bound must be positive")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.family == "monoid-section" and self.size != 1:
            raise ConfigError("monoid-section instances have exactly one object; use size 1")
        if self.family == "codiscrete-vwb" and self.morphism_bound < 1:
            raise ConfigError("morphism bound too small")


@dataclass(frozen=True)
class Graph:
    """A finite acyclic graph ``(vertices, [(edge, source, target)])``."""

    vertices: tuple
    edges: tuple = ()

    def category(self, name: str = "") -> InternalCategory:
        return free_on_acyclic_graph(self.vertices, self.edges, name)


@dataclass(frozen=True)
class Instance:
    config: GenConfig
    lens: InternalLens
    source_graph: Graph | None = field(default=None, compare=False)
    view_graph: Graph | None = field(default=None, compare=False)


def gen(config: GenConfig) -> Instance:
    rng = random.Random(config.seed)
    if config.family == "free-acyclic-lens":
        base = random_dag(rng, max(1, min(3, config.size)), "b", "u", config.morphism_bound)
        lens, graph = free_lens_over(base, rng, config.size, config.morphism_bound, "a", "m", name="L")
        return Instance(config, lens, graph, base)
    if config.family == "copresheaf-dopf":
        return Instance(config, copresheaf_lens(rng, config.size, config.morphism_bound))
    if config.family == "codiscrete-vwb":
        return Instance(config, product_vwb_lens(rng, config.size, config.morphism_bound))
    return Instance(config, monoid_lens(rng, config.morphism_bound))


# -- free categories and functors between them --------------------------


def random_dag(rng: random.Random, max_vertices: int, vprefix: str, eprefix: str, bound: int) -> Graph:
    """Random acyclic graph whose free category has at most ``bound`` arrows."""
    for _ in range(MAX_ATTEMPTS):
        n = rng.randint(min(2, max_vertices), max_vertices)
        vertices = tuple(f"{vprefix}{i}" for i in range(n))
        edges = []
        density = rng.choice((0.3, 0.5, 0.8))
        for i in range(n):
            for j in range(i + 1, n):
                for _ in range(rng.choice((1, 1, 1, 2))):
                    if rng.random() < density:
                        edges.append((f"{eprefix}{len(edges)}", vertices[i], vertices[j]))
        if n > 1 and not edges:
            edges.append((f"{eprefix}0", vertices[0], vertices[-1]))
        graph = Graph(vertices, tuple(edges))
        if path_count(graph) <= bound:
            return graph
    raise ConfigError("could not draw a base graph within the morphism bound")


def path_count(graph: Graph) -> int:
    """Number of arrows of the free category (identities included)."""
    out: dict = {v: [] for v in graph.vertices}
    for _, s, t in graph.edges:
        out[s].append(t)
    memo: dict = {}

    def from_vertex(v) -> int:
        if v not in memo:
            memo[v] = 1 + sum(from_vertex(t) for t in out[v])
        return memo[v]

    return sum(from_vertex(v) for v in graph.vertices)


def path_edges(C: InternalCategory, m) -> list:
    """Edge sequence of an arrow of a free category."""
    return [] if C.is_identity(m) else m.split(";")


def free_functor(
    C: InternalCategory, D: InternalCategory, vertex_map: dict, edge_map: dict, name: str = ""
) -> InternalFunctor:
    """Extend a graph morphism (edges to arrows of ``D``) to the free ``C``."""

    def image(m):
        result = D.ident(vertex_map[C.dom(m)])
        for e in path_edges(C, m):
            result = D.then(result, edge_map[e])
        return result

    return functor_from_maps(C, D, vertex_map, {m: image(m) for m in C.arrows}, name)


def free_lens_over(
    base: Graph,
    rng: random.Random,
    max_objects: int,
    bound: int,
    vprefix: str,
    eprefix: str,
    name: str = "",
) -> tuple[InternalLens, Graph]:
    """Random lens ``A => B`` with ``B`` free on ``base`` and ``A`` free.

    One lift edge is chosen per (object, base edge); lifts of paths are
    the concatenations.  ``mode`` controls which further edges appear:
    none (a discrete opfibration), vertical edges over sinks of the base
    (still a split opfibration), or anything.
    """
    B = base.category("B")
    sinks = {v for v in base.vertices if not any(s == v for _, s, _ in base.edges)}
    for _ in range(MAX_ATTEMPTS):
        copies = {b: 1 for b in base.vertices}
        room = max(0, max_objects - len(base.vertices))
        for _ in range(rng.randint(0, room)):
            copies[rng.choice(base.vertices)] += 1
        fibre: dict = {}
        over: dict = {}
        for b in base.vertices:
            for _ in range(copies[b]):
                a = f"{vprefix}{len(over)}"
                over[a] = b
                fibre.setdefault(b, []).append(a)
        mode = rng.choice(("discrete", "sink-vertical", "mixed", "mixed"))
        edges: list = []
        image: dict = {}
        chosen: dict = {}

        def add(src, tgt, arrow) -> str:
            e = f"{eprefix}{len(edges)}"
            edges.append((e, src, tgt))
            image[e] = arrow
            return e

        for a in over:
            for e, s, t in base.edges:
                if s == over[a]:
                    chosen[(a, e)] = add(a, rng.choice(fibre[t]), e)
        if mode != "discrete":
            for b, objs in fibre.items():
                if mode == "sink-vertical" and b not in sinks:
                    continue
                for i, x in enumerate(objs):
                    for y in objs[i + 1:]:
                        if rng.random() < 0.5:
                            add(x, y, identity_label(b))
        if mode == "mixed":
            for a in over:
                for u in B.out_arrows(over[a]):
                    if not B.is_identity(u) and rng.random() < 0.4:
                        add(a, rng.choice(fibre[B.cod(u)]), u)
        graph = Graph(tuple(over), tuple(edges))
        if path_count(graph) > bound:
            continue
        A = graph.category("A")
        f = free_functor(A, B, over, image, "f")
        target = {e: t for e, _, t in edges}
        lifts = {}
        for a in over:
            for u in B.out_arrows(over[a]):
                if B.is_identity(u):
                    continue
                at, path = a, []
                for e in path_edges(B, u):
                    step = chosen[(at, e)]
                    path.append(step)
                    at = target[step]
                lifts[(a, u)] = ";".join(path)
        return InternalLens.from_lifts(f, lifts, name), graph
    raise ConfigError("could not draw a lens within the morphism bound")


def free_lens_chain(seed: int, size: int = 6, bound: int = 24, length: int = 2) -> list[InternalLens]:
    """Composable lenses ``[L1, L2, ...]`` with ``L1: A => B``, ``L2: B => C``, ..."""
    rng = random.Random(seed)
    levels = [("c", "w"), ("b", "u"), ("a", "m"), ("x", "n")]
    graph = random_dag(rng, 2, *levels[0], bound)
    chain = []
    for depth in range(1, length + 1):
        vp, ep = levels[depth]
        cap = min(size, len(graph.vertices) + 2)
        lens, graph = free_lens_over(graph, rng, cap, bound, vp, ep, f"L{length - depth + 1}")
        chain.append(lens)
    chain.reverse()
    return chain


def random_functor_into(
    B: InternalCategory, rng: random.Random, max_vertices: int = 3, bound: int = 24, name: str = "g"
) -> InternalFunctor:
    """Functor from a random free category into ``B``."""
    for _ in range(MAX_ATTEMPTS):
        n = rng.randint(1, max_vertices)
        vertices = [f"c{i}" for i in range(n)]
        vmap = {v: rng.choice(B.objects.elements) for v in vertices}
        edges, emap = [], {}
        for i in range(n):
            for j in range(i + 1, n):
                hom = B.hom(vmap[vertices[i]], vmap[vertices[j]])
                if hom and rng.random() < 0.6:
                    e = f"k{len(edges)}"
                    edges.append((e, vertices[i], vertices[j]))
                    emap[e] = rng.choice(hom)
        graph = Graph(tuple(vertices), tuple(edges))
        if path_count(graph) > bound:
            continue
        return free_functor(graph.category("C"), B, vmap, emap, name)
    raise ConfigError("could not draw a functor within the morphism bound")


# -- categories of elements ----------------------------------------------


def elements_category(B: InternalCategory, sets: dict, action: dict, name: str = "El") -> InternalFunctor:
    """Projection from the category of elements of a copresheaf on ``B``.

    ``sets[b]`` lists the elements over ``b`` and ``action[(u, x)]`` is
    the image of ``x`` under ``u``; it must be functorial.  The arrow over
    ``u`` at ``x`` is labelled ``u@x`` (or ``1_x`` for identities).
    """
    base_of = {x: b for b in B.objects for x in sets[b]}
    objects = [x for b in B.objects for x in sets[b]]

    def label(u, x):
        return identity_label(x) if B.is_identity(u) else f"{u}@{x}"

    arrows, under = {}, {}
    for u in B.arrows:
        for x in sets[B.dom(u)]:
            m = label(u, x)
            arrows[m] = (x, action[(u, x)])
            under[m] = (u, x)
    ident = {x: identity_label(x) for x in objects}

    def comp(pair):
        (u, x), (v, _) = under[pair[0]], under[pair[1]]
        return label(B.then(u, v), x)

    E = from_table(objects, arrows, ident, comp, name)
    return functor_from_maps(E, B, base_of, {m: under[m][0] for m in E.arrows}, "p")


def copresheaf_lens(rng: random.Random, size: int, bound: int) -> InternalLens:
    for _ in range(MAX_ATTEMPTS):
        graph = random_dag(rng, max(1, min(3, size)), "b", "u", bound)
        B = graph.category("B")
        room = max(0, size - len(graph.vertices))
        counts = {b: 1 for b in graph.vertices}
        for _ in range(rng.randint(0, room)):
            counts[rng.choice(graph.vertices)] += 1
        sets = {b: [f"{b}_{i}" for i in range(counts[b])] for b in graph.vertices}
        on_edge = {(e, x): rng.choice(sets[t]) for e, s, t in graph.edges for x in sets[s]}
        action = {}
        for u in B.arrows:
            for x in sets[B.dom(u)]:
                y = x
                for e in path_edges(B, u):
                    y = on_edge[(e, y)]
                action[(u, x)] = y
        if sum(len(sets[B.dom(u)]) for u in B.arrows) > bound:
            continue
        return dopf_lens(elements_category(B, sets, action, "A"))
    raise ConfigError("could not draw a copresheaf within the morphism bound")


# -- very well-behaved and monoid examples --------------------------------


def product_vwb_lens(rng: random.Random, size: int, bound: int) -> InternalLens:
    """Product projection ``C x V -> V`` under shuffled source labels."""
    options = [(c, v) for c in range(1, size + 1) for v in range(1, size + 1) if c * v <= size and (c * v) ** 2 <= bound]
    if not options:
        raise ConfigError("morphism bound too small for a codiscrete lens")
    c, v = rng.choice(options)
    view = FinSet(f"v{i}" for i in range(v))
    cells = [(i, j) for i in range(c) for j in range(v)]
    rng.shuffle(cells)
    source = FinSet(f"s{k}" for k in range(len(cells)))
    located = dict(zip(source, cells))
    at = {cell: s for s, cell in located.items()}
    get = FinFn.of(source, view, lambda s: f"v{located[s][1]}")
    put = FinFn.of(product(source, view).apex, source, lambda sv: at[(located[sv[0]][0], int(sv[1][1:]))])
    return vwb_lens(get, put, "L")


_MONOIDS = {
    "trivial": (["e"], lambda x, y: "e"),
    "z2": (["e", "s"], lambda x, y: "e" if x == y else "s"),
    "idem": (["e", "s"], lambda x, y: "s" if "s" in (x, y) else "e"),
    "z3": (["e", "r", "rr"], lambda x, y: ["e", "r", "rr"][(len(x.strip("e")) + len(y.strip("e"))) % 3]),
}


def monoid_lens(rng: random.Random, bound: int) -> InternalLens:
    """Projection ``K x M -> M`` with the section ``m |-> (e, m)``."""
    k_name, m_name = rng.choice(list(_MONOIDS)), rng.choice(list(_MONOIDS))
    k_elems, k_mul = _MONOIDS[k_name]
    m_elems, m_mul = _MONOIDS[m_name]
    if len(k_elems) * len(m_elems) > bound:
        k_elems, k_mul = _MONOIDS["trivial"]
    pair = {(k, m): f"{k}.{m}" for k in k_elems for m in m_elems}
    split = {v: km for km, v in pair.items()}

    def mul(x, y):
        (k1, m1), (k2, m2) = split[x], split[y]
        return pair[(k_mul(k1, k2), m_mul(m1, m2))]

    A = monoid_category(list(pair.values()), mul, pair[("e", "e")], "A")
    B = monoid_category(m_elems, m_mul, "e", "B")
    f = functor_from_maps(A, B, {"*": "*"}, {x: split[x][1] for x in A.arrows}, "f")
    s = functor_from_maps(B, A, {"*": "*"}, {m: pair[("e", m)] for m in B.arrows}, "s")
    return monoid_section_lens(f, s, "L")


# -- fixtures -------------------------------------------------------------


def fork_lens() -> InternalLens:
    """``A`` has two arrows over ``u: x -> y`` from ``a0``; only ``m`` is chosen."""
    B = free_on_acyclic_graph(["x", "y"], [("u", "x", "y")], "B")
    A = free_on_acyclic_graph(["a0", "a1", "a1'"], [("m", "a0", "a1"), ("m'", "a0", "a1'")], "A")
    f = functor_from_maps(
        A,
        B,
        {"a0": "x", "a1": "y", "a1'": "y"},
        {"1_a0": "1_x", "1_a1": "1_y", "1_a1'": "1_y", "m": "u", "m'": "u"},
        "f",
    )
    return InternalLens.from_lifts(f, {("a0", "u"): "m"}, "Fork")


def walking_arrow_identity_lens() -> InternalLens:
    L = identity_lens(walking_arrow("A"))
    return InternalLens(L.functor, L.cofunctor, "Id")


def acceptance_corpus(total: int = 240) -> list[Instance]:
    """The mixed corpus used by the equivalence suite."""
    out = []
    for i in range(total):
        family = "free-acyclic-lens" if i % 3 else "copresheaf-dopf"
        size = 2 + i % 5
        out.append(gen(GenConfig(family, 1000 + i, size)))
    return out
