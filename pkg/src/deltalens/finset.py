"""Finite sets, total functions and canonical pullbacks.

Everything else in the package is a diagram of :class:`FinFn` values, so
all equalities are strict: two sets are equal when they list the same
labels in the same order, and two maps are equal when they have equal
boundaries and the same lookup table.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any, Union

from .diagnostics import CarrierMismatch, ConeError, NotBijective, StructureError

# A label is a string or a pair of labels.
Label = Union[str, tuple]


def check_label(x: Any) -> None:
    if isinstance(x, str):
        return
    if isinstance(x, tuple) and len(x) == 2:
        check_label(x[0])
        check_label(x[1])
        return
    raise StructureError(f"not a label (string or pair of labels): {x!r}")


@dataclass(frozen=True)
class FinSet:
    elements: tuple
    name: str = field(default="", compare=False)
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        elements = tuple(self.elements)
        index: dict = {}
        for i, x in enumerate(elements):
            check_label(x)
            if x in index:
                raise StructureError(f"duplicate label {x!r} in {self.name or 'finite set'}")
            index[x] = i
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: Any) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def index(self, x: Label) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise StructureError(f"{x!r} is not an element of {self.name or self.elements!r}") from None

    def named(self, name: str) -> FinSet:
        return FinSet(self.elements, name)

    def subset(self, keep: Callable[[Label], bool], name: str = "") -> FinSet:
        return FinSet((x for x in self.elements if keep(x)), name)

    def __repr__(self) -> str:
        if self.name:
            return f"FinSet({self.name}: {list(self.elements)!r})"
        return f"FinSet({list(self.elements)!r})"


@dataclass(frozen=True)
class FinFn:
    """A total function, stored as the tuple of images in domain order."""

    dom: FinSet
    cod: FinSet
    images: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        images = tuple(self.images)
        if len(images) != len(self.dom):
            raise StructureError(
                f"map {self.name or ''} has {len(images)} images for {len(self.dom)} elements"
            )
        for x, y in zip(self.dom.elements, images):
            if y not in self.cod:
                raise StructureError(
                    f"map {self.name or ''} sends {x!r} to {y!r}, not in {self.cod.name or 'codomain'}"
                )
        object.__setattr__(self, "images", images)

    @classmethod
    def of(
        cls,
        dom: FinSet,
        cod: FinSet,
        rule: Mapping | Callable[[Label], Label],
        name: str = "",
    ) -> FinFn:
        """Build from a mapping (which must cover ``dom``) or a callable."""
        if isinstance(rule, Mapping):
            missing = [x for x in dom if x not in rule]
            if missing:
                raise StructureError(f"map {name} undefined on {missing[0]!r}")
            return cls(dom, cod, tuple(rule[x] for x in dom), name)
        return cls(dom, cod, tuple(rule(x) for x in dom), name)

    def __call__(self, x: Label) -> Label:
        return self.images[self.dom.index(x)]

    def items(self):
        return zip(self.dom.elements, self.images)

    def as_dict(self) -> dict:
        return dict(self.items())

    def named(self, name: str) -> FinFn:
        return FinFn(self.dom, self.cod, self.images, name)

    def __repr__(self) -> str:
        body = ", ".join(f"{x!r}: {y!r}" for x, y in self.items())
        return f"FinFn({self.name + ': ' if self.name else ''}{{{body}}})"


def identity(s: FinSet) -> FinFn:
    return FinFn(s, s, s.elements, f"1_{s.name}" if s.name else "")


def compose_fn(g: FinFn, f: FinFn) -> FinFn:
    """``g`` after ``f``."""
    if f.cod != g.dom:
        raise CarrierMismatch("cannot compose", f.cod, g.dom)
    lookup = g.dom._index
    return FinFn(f.dom, g.cod, tuple(g.images[lookup[y]] for y in f.images))


def compose(*maps: FinFn) -> FinFn:
    """Right-to-left composite: ``compose(h, g, f)`` is h after g after f."""
    if not maps:
        raise ValueError("compose needs at least one map")
    result = maps[-1]
    for g in reversed(maps[:-1]):
        result = compose_fn(g, result)
    return result


@dataclass(frozen=True)
class Pullback:
    """The canonical pullback of ``left`` and ``right``.

    The apex lists every pair ``(x, y)`` with ``left(x) == right(y)``,
    ordered by the position of ``x`` and then of ``y``.
    """

    apex: FinSet
    p0: FinFn
    p1: FinFn
    left: FinFn
    right: FinFn


def pullback(f: FinFn, g: FinFn, name: str = "") -> Pullback:
    if f.cod != g.cod:
        raise CarrierMismatch("pullback legs have different codomains", f.cod, g.cod)
    fibres: dict = defaultdict(list)
    for y, z in zip(g.dom.elements, g.images):
        fibres[z].append(y)
    pairs = [(x, y) for x, z in zip(f.dom.elements, f.images) for y in fibres.get(z, ())]
    if not name and f.dom.name and g.dom.name:
        name = f"({f.dom.name} x {g.dom.name})"
    apex = FinSet(pairs, name)
    p0 = FinFn(apex, f.dom, tuple(x for x, _ in pairs))
    p1 = FinFn(apex, g.dom, tuple(y for _, y in pairs))
    return Pullback(apex, p0, p1, f, g)


_POINT = FinSet(("*",), "1")


def terminal() -> FinSet:
    return _POINT


def to_terminal(s: FinSet) -> FinFn:
    return FinFn(s, _POINT, ("*",) * len(s))


def product(x: FinSet, y: FinSet, name: str = "") -> Pullback:
    """Binary product, computed as the pullback over the one-point set."""
    return pullback(to_terminal(x), to_terminal(y), name)


def mediate(q0: FinFn, q1: FinFn, pb: Pullback) -> FinFn:
    """The unique map into ``pb.apex`` whose projections are ``q0``, ``q1``."""
    if q0.dom != q1.dom:
        raise CarrierMismatch("cone legs have different domains", q0.dom, q1.dom)
    if q0.cod != pb.left.dom:
        raise CarrierMismatch("first cone leg misses the pullback", q0.cod, pb.left.dom)
    if q1.cod != pb.right.dom:
        raise CarrierMismatch("second cone leg misses the pullback", q1.cod, pb.right.dom)
    left, right = pb.left, pb.right
    for w, a, b in zip(q0.dom.elements, q0.images, q1.images):
        if left(a) != right(b):
            raise ConeError("cone does not commute", w)
    return FinFn(q0.dom, pb.apex, tuple(zip(q0.images, q1.images)))


def is_injective(f: FinFn) -> bool:
    return len(set(f.images)) == len(f.images)


def is_surjective(f: FinFn) -> bool:
    return len(set(f.images)) == len(f.cod)


def is_bijection(f: FinFn) -> bool:
    return len(f.dom) == len(f.cod) and is_injective(f)


def bijection_defect(f: FinFn) -> tuple[str, Any] | None:
    """``None`` for a bijection, else ``("collision", (x, x'))`` or ``("missed", y)``."""
    seen: dict = {}
    for x, y in f.items():
        if y in seen:
            return "collision", (seen[y], x)
        seen[y] = x
    for y in f.cod:
        if y not in seen:
            return "missed", y
    return None


def inverse(f: FinFn) -> FinFn:
    defect = bijection_defect(f)
    if defect is not None:
        kind, witness = defect
        raise NotBijective(f"map is not a bijection ({kind})", witness)
    back = {y: x for x, y in f.items()}
    return FinFn(f.cod, f.dom, tuple(back[y] for y in f.cod))


def preimage_counts(f: FinFn) -> dict:
    """Number of preimages of every codomain element, zeros included."""
    counts = dict.fromkeys(f.cod.elements, 0)
    for y in f.images:
        counts[y] += 1
    return counts


def swap(pb: Pullback) -> FinFn:
    """The comparison from ``pb`` to the pullback with the legs exchanged."""
    flipped = pullback(pb.right, pb.left)
    return mediate(pb.p1, pb.p0, flipped)


def all_maps(dom: FinSet, cod: FinSet) -> Iterable[FinFn]:
    """Every function ``dom -> cod``; exponential, for tiny sets only."""
    for images in itertools.product(cod.elements, repeat=len(dom)):
        yield FinFn(dom, cod, images)
