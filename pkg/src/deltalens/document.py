"""Line-oriented text format for categories, functors, cofunctors and lenses.

::

    category B
      objects: x y
      arrow u : x -> y
    end

    lens L : A -> B
      obj a0 |-> x
      arr m |-> u
      lift a0 u = m
    end

Identities are implicit and named ``1_<object>``.  Composites must be
listed for every composable pair of nonidentity arrows (``compose g . f
= h`` means g after f) and may not be listed for pairs with an identity.
Functor-style blocks omit identity arrows, and lens blocks omit lifts of
identities.  ``#`` starts a comment.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .category import InternalCategory, from_table, identity_label
from .cofunctor import InternalCofunctor
from .diagnostics import DeltaLensError
from .functor import InternalFunctor, functor_from_maps
from .lens import InternalLens

KINDS = ("category", "functor", "cofunctor", "lens")


class ParseError(DeltaLensError, ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class Document:
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    cofunctors: dict = field(default_factory=dict)
    lenses: dict = field(default_factory=dict)
    order: list = field(default_factory=list)

    def table(self, kind: str) -> dict:
        return {
            "category": self.categories,
            "functor": self.functors,
            "cofunctor": self.cofunctors,
            "lens": self.lenses,
        }[kind]

    def add(self, kind: str, name: str, value) -> None:
        table = self.table(kind)
        if name in table:
            raise ValueError(f"duplicate {kind} name {name!r}")
        table[name] = value
        self.order.append((kind, name))

    def lookup(self, name: str):
        """``(kind, value)`` for a name, searching every kind."""
        found = [(k, self.table(k)[name]) for k in KINDS if name in self.table(k)]
        if not found:
            raise KeyError(name)
        return found[0]

    def category_name(self, C: InternalCategory) -> str:
        for name, D in self.categories.items():
            if D is C:
                return name
        for name, D in self.categories.items():
            if D == C:
                return name
        raise KeyError(f"category {C.name or C!r} is not part of the document")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Document):
            return NotImplemented
        return self.order == other.order and all(self.table(k) == other.table(k) for k in KINDS)


# -- tokens ---------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


def tokenize(line: str, number: int) -> list[Token]:
    body = line.split("#", 1)[0]
    tokens, i = [], 0
    while i < len(body):
        if body[i].isspace():
            i += 1
            continue
        j = i
        while j < len(body) and not body[j].isspace():
            j += 1
        tokens.append(Token(body[i:j], number, i + 1))
        i = j
    return tokens


def _expect(tokens: list[Token], pattern: list, where: Token) -> list[Token]:
    """Match ``pattern`` (literals or ``None`` for a name) and return the names."""
    if len(tokens) != len(pattern):
        at = tokens[min(len(tokens), len(pattern)) - 1] if tokens else where
        shape = " ".join(p if p else "<name>" for p in pattern)
        raise ParseError(f"expected '{shape}'", at.line, at.column)
    names = []
    for tok, p in zip(tokens, pattern):
        if p is None:
            if tok.text in ("->", "-|>", "|->", "=", ".", ":"):
                raise ParseError(f"expected a name, found {tok.text!r}", tok.line, tok.column)
            names.append(tok)
        elif tok.text != p:
            raise ParseError(f"expected {p!r}, found {tok.text!r}", tok.line, tok.column)
    return names


# -- parsing --------------------------------------------------------------


def parse(text: str) -> Document:
    doc = Document()
    lines = [tokenize(raw, n) for n, raw in enumerate(text.splitlines(), start=1)]
    i = 0
    while i < len(lines):
        toks = lines[i]
        if not toks:
            i += 1
            continue
        head = toks[0]
        if head.text not in KINDS:
            raise ParseError(f"unknown keyword {head.text!r}", head.line, head.column)
        body, j = [], i + 1
        while j < len(lines) and not (lines[j] and lines[j][0].text == "end" and len(lines[j]) == 1):
            if lines[j]:
                if lines[j][0].text in KINDS:
                    t = lines[j][0]
                    raise ParseError(f"block {toks[1].text if len(toks) > 1 else head.text} is not closed by 'end'", t.line, t.column)
                body.append(lines[j])
            j += 1
        if j == len(lines):
            raise ParseError("missing 'end'", head.line, head.column)
        end = lines[j][0]
        if head.text == "category":
            name = _expect(toks, ["category", None], head)[0]
            value = _parse_category(name.text, body, end)
        else:
            arrow = "-|>" if head.text == "cofunctor" else "->"
            name, src, dst = _expect(toks, [head.text, None, ":", None, arrow, None], head)
            left = _resolve(doc, src)
            right = _resolve(doc, dst)
            if head.text == "functor":
                value = _parse_functor(name.text, left, right, body, end)
            elif head.text == "lens":
                value = _parse_lens(name.text, left, right, body, end)
            else:
                value = _parse_cofunctor(name.text, left, right, body, end)
        if name.text in doc.table(head.text):
            raise ParseError(f"duplicate {head.text} name {name.text!r}", name.line, name.column)
        doc.add(head.text, name.text, value)
        i = j + 1
    return doc


def _resolve(doc: Document, tok: Token) -> InternalCategory:
    if tok.text not in doc.categories:
        raise ParseError(f"unknown category {tok.text!r}", tok.line, tok.column)
    return doc.categories[tok.text]


def _check_name(tok: Token) -> None:
    if tok.text.startswith("1_"):
        raise ParseError(f"names starting with '1_' are reserved for identities: {tok.text!r}", tok.line, tok.column)


def _parse_category(name: str, body: list, end: Token) -> InternalCategory:
    objects: list = []
    arrows: dict = {}
    comps: dict = {}
    where: dict = {}
    for toks in body:
        key = toks[0]
        if key.text == "objects:":
            for tok in toks[1:]:
                _check_name(tok)
                if tok.text in objects:
                    raise ParseError(f"duplicate object {tok.text!r}", tok.line, tok.column)
                objects.append(tok.text)
        elif key.text == "arrow":
            arrow, src, dst = _expect(toks, ["arrow", None, ":", None, "->", None], key)
            _check_name(arrow)
            if arrow.text in arrows:
                raise ParseError(f"duplicate arrow {arrow.text!r}", arrow.line, arrow.column)
            for tok in (src, dst):
                if tok.text not in objects:
                    raise ParseError(f"unknown object {tok.text!r}", tok.line, tok.column)
            arrows[arrow.text] = (src.text, dst.text)
        elif key.text == "compose":
            g, f, h = _expect(toks, ["compose", None, ".", None, "=", None], key)
            for tok in (g, f):
                if tok.text.startswith("1_"):
                    raise ParseError("composites involving identities are implicit", tok.line, tok.column)
            for tok in (g, f, h):
                if tok.text not in arrows and tok.text not in {identity_label(x) for x in objects}:
                    raise ParseError(f"unknown arrow {tok.text!r}", tok.line, tok.column)
            if arrows[f.text][1] != arrows[g.text][0]:
                raise ParseError(f"{g.text} . {f.text} is not composable", g.line, g.column)
            pair = (f.text, g.text)
            if pair in comps:
                raise ParseError(f"duplicate composite {g.text} . {f.text}", g.line, g.column)
            comps[pair] = h.text
            where[pair] = h
        else:
            raise ParseError(f"unknown keyword {key.text!r} in category", key.line, key.column)
    ident = {x: identity_label(x) for x in objects}
    table = {ident[x]: (x, x) for x in objects}
    for m, dc in arrows.items():
        if m in table:
            raise ParseError(f"arrow {m!r} clashes with an identity", end.line, end.column)
        table[m] = dc
    identities = set(ident.values())
    for f, (_, b) in arrows.items():
        for g, (c, _) in arrows.items():
            if b == c and (f, g) not in comps:
                raise ParseError(f"missing composition entry 'compose {g} . {f} = ...'", end.line, end.column)

    def comp(pair):
        f, g = pair
        if f in identities:
            return g
        if g in identities:
            return f
        return comps[pair]

    for pair, h in comps.items():
        want = (arrows[pair[0]][0], arrows[pair[1]][1])
        if table[h] != want:
            tok = where[pair]
            raise ParseError(f"composite {tok.text!r} has the wrong endpoints", tok.line, tok.column)
    return from_table(objects, table, ident, comp, name)


def _object(C: InternalCategory, tok: Token) -> str:
    if tok.text not in C.objects:
        raise ParseError(f"unknown object {tok.text!r}", tok.line, tok.column)
    return tok.text


def _arrow(C: InternalCategory, tok: Token, allow_identity: bool = False) -> str:
    if tok.text not in C.arrows:
        raise ParseError(f"unknown arrow {tok.text!r}", tok.line, tok.column)
    if not allow_identity and C.is_identity(tok.text):
        raise ParseError("identity arrows are implicit", tok.line, tok.column)
    return tok.text


def _maps(src, dst, body, end, obj_kw="obj", allow_lifts=False, allow_arrows=True):
    """Collect ``obj``/``base``, ``arr`` and ``lift`` lines."""
    objects, arrows, lifts = {}, {}, {}
    for toks in body:
        key = toks[0]
        if key.text == obj_kw:
            a, x = _expect(toks, [obj_kw, None, "|->", None], key)
            a_ = _object(src, a)
            if a_ in objects:
                raise ParseError(f"object {a.text!r} mapped twice", a.line, a.column)
            objects[a_] = _object(dst, x)
        elif key.text == "arr" and allow_arrows:
            m, n = _expect(toks, ["arr", None, "|->", None], key)
            m_ = _arrow(src, m)
            if m_ in arrows:
                raise ParseError(f"arrow {m.text!r} mapped twice", m.line, m.column)
            arrows[m_] = _arrow(dst, n, allow_identity=True)
        elif key.text == "lift" and allow_lifts:
            a, u, m = _expect(toks, ["lift", None, None, "=", None], key)
            req = (a.text, u.text)
            if req in lifts:
                raise ParseError(f"lift of {u.text!r} at {a.text!r} given twice", a.line, a.column)
            lifts[req] = (a, u, m)
        else:
            raise ParseError(f"unknown keyword {key.text!r}", key.line, key.column)
    for a in src.objects:
        if a not in objects:
            raise ParseError(f"no image given for object {a!r}", end.line, end.column)
    return objects, arrows, lifts


def _functor_from(name, src, dst, objects, arrows, end) -> InternalFunctor:
    full = {}
    for m in src.arrows:
        if src.is_identity(m):
            full[m] = dst.ident(objects[src.dom(m)])
        elif m in arrows:
            full[m] = arrows[m]
        else:
            raise ParseError(f"no image given for arrow {m!r}", end.line, end.column)
    return functor_from_maps(src, dst, objects, full, name)


def _lift_table(lifted, base_cat, base, lifts, end) -> dict:
    """Check lift lines against the requests ``(a, u)`` they must cover."""
    table = {}
    for a, u, m in lifts.values():
        _object(lifted, a)
        _arrow(base_cat, u)
        if base_cat.dom(u.text) != base[a.text]:
            raise ParseError(f"arrow {u.text!r} does not start at the image of {a.text!r}", u.line, u.column)
        table[(a.text, u.text)] = _arrow(lifted, m, allow_identity=True)
    for a in lifted.objects:
        for u in base_cat.out_arrows(base[a]):
            if not base_cat.is_identity(u) and (a, u) not in table:
                raise ParseError(f"no lift given for {u!r} at {a!r}", end.line, end.column)
    return table


def _parse_functor(name, A, B, body, end) -> InternalFunctor:
    objects, arrows, _ = _maps(A, B, body, end)
    return _functor_from(name, A, B, objects, arrows, end)


def _parse_lens(name, A, B, body, end) -> InternalLens:
    objects, arrows, lifts = _maps(A, B, body, end, allow_lifts=True)
    F = _functor_from(name, A, B, objects, arrows, end)
    return InternalLens.from_lifts(F, _lift_table(A, B, objects, lifts, end), name)


def _parse_cofunctor(name, B, A, body, end) -> InternalCofunctor:
    base, _, lifts = _maps(A, B, body, end, obj_kw="base", allow_lifts=True, allow_arrows=False)
    return InternalCofunctor.from_lifts(B, A, base, _lift_table(A, B, base, lifts, end), name)


# -- printing -------------------------------------------------------------


def render(label) -> str:
    if isinstance(label, tuple):
        return f"({render(label[0])},{render(label[1])})"
    return label


def print_category(name: str, C: InternalCategory) -> str:
    out = [f"category {name}"]
    if len(C.objects):
        out.append("  objects: " + " ".join(render(x) for x in C.objects))
    for m in C.nonidentity_arrows():
        out.append(f"  arrow {render(m)} : {render(C.dom(m))} -> {render(C.cod(m))}")
    for (f, g), h in C.comp.items():
        if not C.is_identity(f) and not C.is_identity(g):
            out.append(f"  compose {render(g)} . {render(f)} = {render(h)}")
    out.append("end")
    return "\n".join(out)


def _functor_lines(F: InternalFunctor, obj_kw: str = "obj") -> list[str]:
    out = [f"  {obj_kw} {render(a)} |-> {render(x)}" for a, x in F.on_objects.items()]
    out += [f"  arr {render(m)} |-> {render(n)}" for m, n in F.on_arrows.items() if not F.src.is_identity(m)]
    return out


def _lift_lines(phi: InternalCofunctor) -> list[str]:
    return [
        f"  lift {render(a)} {render(u)} = {render(m)}"
        for (a, u), m in phi.lift.items()
        if not phi.src.is_identity(u)
    ]


def print_functor(name: str, F: InternalFunctor, doc: Document) -> str:
    head = f"functor {name} : {doc.category_name(F.src)} -> {doc.category_name(F.dst)}"
    return "\n".join([head, *_functor_lines(F), "end"])


def print_lens(name: str, L: InternalLens, doc: Document) -> str:
    head = f"lens {name} : {doc.category_name(L.src)} -> {doc.category_name(L.dst)}"
    return "\n".join([head, *_functor_lines(L.functor), *_lift_lines(L.cofunctor), "end"])


def print_cofunctor(name: str, phi: InternalCofunctor, doc: Document) -> str:
    head = f"cofunctor {name} : {doc.category_name(phi.src)} -|> {doc.category_name(phi.dst)}"
    base = [f"  base {render(a)} |-> {render(x)}" for a, x in phi.base.items()]
    return "\n".join([head, *base, *_lift_lines(phi), "end"])


def print_document(doc: Document) -> str:
    blocks = []
    for kind, name in doc.order:
        value = doc.table(kind)[name]
        if kind == "category":
            blocks.append(print_category(name, value))
        elif kind == "functor":
            blocks.append(print_functor(name, value, doc))
        elif kind == "lens":
            blocks.append(print_lens(name, value, doc))
        else:
            blocks.append(print_cofunctor(name, value, doc))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


# -- making arbitrary values printable ------------------------------------


def printable_category(C: InternalCategory) -> tuple[InternalCategory, dict, dict]:
    """Relabel ``C`` with string labels and ``1_<object>`` identities.

    Returns the new category with the object and arrow renamings.
    """
    obj = {x: render(x) for x in C.objects}
    idents = set(C.ident.images)
    arr = {}
    for m in C.arrows:
        arr[m] = identity_label(obj[C.dom(m)]) if m in idents else render(m)
    if len(set(arr.values())) != len(arr) or len(set(obj.values())) != len(obj):
        raise ValueError("labels collide after rendering")
    objects = [obj[x] for x in C.objects]
    # identities first, in object order, as the parser produces them
    order = [C.ident(x) for x in C.objects] + [m for m in C.arrows if m not in idents]
    arrows = {arr[m]: (obj[C.dom(m)], obj[C.cod(m)]) for m in order}
    ident = {obj[x]: arr[C.ident(x)] for x in C.objects}
    back = {v: k for k, v in arr.items()}
    D = from_table(objects, arrows, ident, lambda p: arr[C.comp((back[p[0]], back[p[1]]))], C.name)
    return D, obj, arr


def printable_lens(L: InternalLens) -> tuple[InternalCategory, InternalCategory, InternalLens]:
    A, a_obj, a_arr = printable_category(L.src)
    B, b_obj, b_arr = printable_category(L.dst)
    F = functor_from_maps(
        A,
        B,
        {a_obj[x]: b_obj[y] for x, y in L.functor.on_objects.items()},
        {a_arr[m]: b_arr[n] for m, n in L.functor.on_arrows.items()},
        L.functor.name,
    )
    lifts = {(a_obj[a], b_arr[u]): a_arr[m] for (a, u), m in L.lift.items()}
    return A, B, InternalLens.from_lifts(F, lifts, L.name)


def lens_document(L: InternalLens, source: str = "A", view: str = "B", name: str = "L") -> Document:
    A, B, M = printable_lens(L)
    doc = Document()
    doc.add("category", source, A)
    doc.add("category", view, B)
    doc.add("lens", name, M)
    return doc
