"""Workspace files: a small declaration language for bases, categories,
functors, presheaves, weights and monoidal structures.

    # comments run to the end of the line
    base FinSet;
    category A over FinSet {
      objects 0, 1;
      arrow f : 0 -> 1;
    }
    presheaf Y0 on A = Y(0);
    presheaf F on A { support 0, 1; value 0 = {x, y}; value 1 = {z}; act f : z |-> x; }
    category N = DiscreteNat;
    monoidal xor2 on Z2 = xor;

Atoms are identifiers, integers, ``*`` or double-quoted strings.  Arrow labels
are unique within a category.  ``act`` names an arrow ``u: b -> b2`` either by
label or as ``b -> b2`` (optionally ``via`` a label) and maps the value at b2
to the value at b.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .base import BOOL2, FINSET, STAR, base_by_name
from .category import (
    FAMILIES, EnrichedFunctor, FiniteCategory, builtin_procedural, identity_functor, validate_category,
    validate_functor,
)
from .config import DEFAULT_BOUNDS, Bounds
from .errors import CommandError, ParseError, SpcalcError, ValidationError
from .presheaf import SmallPresheaf, Weight, empty_presheaf, representable

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<mapsto>\|->) | (?P<arrow>->) | (?P<le><=)
  | (?P<number>-?\d+(?![A-Za-z_]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_'.]*)
  | (?P<sym>[{}();,=:*])
""", re.VERBOSE)

KINDS = ("base", "category", "functor", "presheaf", "weight", "monoidal")
BUILTIN_CATEGORIES = ("DiscreteNat", "OmegaChain", "op(DiscreteNat)", "op(OmegaChain)")
BUILTIN_MONOIDALS = ("xor", "max", "min", "meet")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            tok = m.group()
            out.append(Token("sym" if kind in ("mapsto", "arrow", "le") else kind, tok, line, m.start() - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# ---------------------------------------------------------------------------


@dataclass
class Workspace:
    bases: dict = field(default_factory=dict)
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    presheaves: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)
    monoidals: dict = field(default_factory=dict)
    bounds: Bounds = DEFAULT_BOUNDS
    order: list = field(default_factory=list)  # (kind, name) in declaration order
    sources: dict = field(default_factory=dict)  # name -> builtin expression, for printing

    def table(self, kind):
        return getattr(self, {"category": "categories", "presheaf": "presheaves"}.get(kind, kind + "s"))

    def declared(self, name):
        return any(name == n for _, n in self.order)

    def add(self, kind, name, value, source=None):
        if self.declared(name):
            raise ValidationError(f"{name!r} is declared twice")
        self.table(kind)[name] = value
        self.order.append((kind, name))
        if source is not None:
            self.sources[name] = source

    def base(self, name):
        if name in self.bases:
            return self.bases[name]
        try:
            return base_by_name(name)
        except SpcalcError:
            raise CommandError(f"unknown base {name!r}") from None

    def category(self, name, base=None):
        if name in self.categories:
            return self.categories[name]
        inner = re.fullmatch(r"op\((.+)\)", name)
        if inner:
            return self.category(inner.group(1), base).opposite()
        if name in FAMILIES and FAMILIES[name].builder is not None:
            return builtin_procedural(name, base or FINSET)
        raise CommandError(f"unknown category {name!r}")

    def lookup(self, kind, name):
        tab = self.table(kind)
        if name not in tab:
            raise CommandError(f"unknown {kind} {name!r}")
        return tab[name]

    def structure(self):
        """A comparable summary, used for round-trip checks."""
        out = []
        for kind, name in self.order:
            v = self.table(kind)[name]
            if kind == "base":
                out.append((kind, name, v.name))
            elif kind == "category":
                out.append((kind, name, v.structure() if v.is_finite else self.sources.get(name)))
            elif kind == "presheaf":
                out.append((kind, name, v.structure()))
            elif kind == "weight":
                out.append((kind, name, v.variance, tuple(sorted((repr(c), v.values[c].carrier) for c in v.values)),
                            tuple(sorted((repr(key), tuple(sorted(m.items(), key=repr))) for key, m in v.action.items()))))
            elif kind == "functor":
                src = v.source
                omap = tuple((a, v(a)) for a in src.objects())
                amap = tuple((a, b, u, v.fmap(a, b, u)) for a in src.objects() for b in src.objects()
                             for u in src.hom(a, b).carrier)
                out.append((kind, name, src.name, v.target.name, omap, amap))
            elif kind == "monoidal":
                out.append((kind, name, self.sources.get(name)))
        return (tuple(out), self.bounds)


# ---------------------------------------------------------------------------


def _atom_value(tok):
    if tok.kind == "number":
        return int(tok.text)
    if tok.kind == "string":
        return json.loads(tok.text)
    return tok.text


class Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.ws = Workspace()

    # token helpers

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, expected=(), tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col, expected)

    def at(self, *texts):
        return self.tok.kind in ("sym", "ident") and self.tok.text in texts

    def expect(self, text):
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"found {found!r}", (repr(text),))
        self.i += 1

    def accept(self, text):
        if self.at(text):
            self.i += 1
            return True
        return False

    def name(self, what="name"):
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"found {tok.text or 'end of input'!r}", (what,))
        self.i += 1
        return tok.text

    def atom(self):
        tok = self.tok
        if tok.kind in ("ident", "number", "string"):
            self.i += 1
            return _atom_value(tok)
        if tok.kind == "sym" and tok.text == "*":
            self.i += 1
            return STAR
        raise self.error(f"found {tok.text or 'end of input'!r}", ("atom",))

    def atoms(self):
        out = [self.atom()]
        while self.accept(","):
            out.append(self.atom())
        return out

    def set_literal(self):
        """``{a, b}`` or a count ``n`` meaning {0..n-1}."""
        if self.tok.kind == "number":
            n = int(self.tok.text)
            self.i += 1
            return list(range(n))
        self.expect("{")
        if self.accept("}"):
            return []
        out = self.atoms()
        self.expect("}")
        return out

    def ref(self, kind):
        tok = self.tok
        name = self.name(f"{kind} name")
        if kind == "category" and name == "op" and self.accept("("):
            inner = self.ref("category")
            self.expect(")")
            return inner.opposite()
        try:
            if kind == "category":
                return self.ws.category(name)
            if kind == "base":
                return self.ws.base(name)
            return self.ws.lookup(kind, name)
        except CommandError:
            raise self.error(f"unknown {kind} {name!r}", tok=tok) from None

    # declarations

    def parse(self):
        while self.tok.kind != "eof":
            tok = self.tok
            if not self.at(*KINDS, "bounds"):
                raise self.error(f"found {tok.text!r}", KINDS + ("bounds",))
            kw = tok.text
            self.i += 1
            try:
                getattr(self, "decl_" + kw)()
            except (ParseError, ValidationError):
                raise
            except SpcalcError as e:
                raise ValidationError(f"line {tok.line}: {e}") from None
        return self.ws

    def decl_bounds(self):
        parts = []
        while not self.at(";"):
            key = self.name("bound name")
            self.expect("=")
            tok = self.tok
            if tok.kind != "number":
                raise self.error("bounds are integers", ("integer",))
            self.i += 1
            parts.append(f"{key}={tok.text}")
            if not self.accept(","):
                break
        self.expect(";")
        try:
            self.ws.bounds = Bounds.parse(",".join(parts))
        except CommandError as e:
            raise ValidationError(str(e)) from None

    def decl_base(self):
        name = self.name("base name")
        target = name
        if self.accept("="):
            target = self.name("base name")
        self.expect(";")
        try:
            b = base_by_name(target)
        except SpcalcError:
            raise self.error(f"unknown base {target!r}", ("FinSet", "Bool2")) from None
        self.ws.add("base", name, b, source=target)

    def decl_category(self):
        name = self.name("category name")
        base = FINSET
        if self.accept("over"):
            base = self.ref("base")
        if self.accept("="):
            k, source = self.category_expr(name, base)
            self.expect(";")
            self.ws.add("category", name, k, source=source)
            return
        self.expect("{")
        k = self.category_body(name, base)
        report = validate_category(k)
        if not report.ok:
            raise ValidationError(f"category {name}: {report.failures[0]}")
        self.ws.add("category", name, k)

    def category_expr(self, name, base):
        tok = self.tok
        head = self.name("category expression")
        if head == "op":
            self.expect("(")
            start = self.i
            inner = self.ref("category")
            text = "".join(t.text for t in self.toks[start:self.i])
            self.expect(")")
            return inner.opposite(), f"op({text})"
        if head in ("DiscreteNat", "OmegaChain"):
            return builtin_procedural(head, base), f"{head} over {base.name}"
        if head == "chain":
            self.expect("(")
            n = self.atom()
            self.expect(")")
            return FiniteCategory.chain(base, n, name=name), None
        if head == "terminal":
            return FiniteCategory.terminal(base, name=name), None
        if head == "arrow":
            return FiniteCategory.arrow(base, name=name), None
        raise self.error(f"unknown category expression {head!r}",
                         ("DiscreteNat", "OmegaChain", "op", "chain", "terminal", "arrow"), tok=tok)

    def category_body(self, name, base):
        objects, ids, arrows, comps, leq = [], {}, {}, {}, []
        while not self.accept("}"):
            tok = self.tok
            if self.accept("objects"):
                objects += self.atoms()
            elif self.accept("identity"):
                a = self.atom()
                self.expect("=")
                ids[a] = self.name("arrow label")
            elif self.accept("arrow"):
                lab = self.name("arrow label")
                self.expect(":")
                a = self.atom()
                self.expect("->")
                b = self.atom()
                if lab in arrows:
                    raise self.error(f"arrow {lab!r} declared twice", tok=tok)
                arrows[lab] = (a, b)
            elif self.accept("compose"):
                g = self.name("arrow label")
                f = self.name("arrow label")
                self.expect("=")
                comps[(g, f)] = (self.name("arrow label"), tok)
            elif self.accept("leq"):
                while True:
                    a = self.atom()
                    self.expect("<=")
                    leq.append((a, self.atom()))
                    if not self.accept(","):
                        break
            else:
                raise self.error(f"found {tok.text!r}", ("objects", "identity", "arrow", "compose", "leq", "}"))
            self.expect(";")
        for a, b in list(arrows.values()) + leq:
            for x in (a, b):
                if x not in objects:
                    raise ValidationError(f"category {name}: {x!r} is not a declared object")
        if leq:
            if arrows or comps:
                raise ValidationError(f"category {name}: mix of leq and explicit arrows")
            rel = set(leq) | {(a, a) for a in objects}
            changed = True
            while changed:
                changed = False
                for (a, b), (c, d) in [(p, q) for p in list(rel) for q in list(rel)]:
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
            return FiniteCategory.from_preorder(base, objects, lambda a, b: (a, b) in rel, name=name)
        homs = {}
        for a in objects:
            ids.setdefault(a, f"id_{a}")
            homs.setdefault((a, a), []).append(ids[a])
        labels = {ids[a]: (a, a) for a in objects}
        for lab, (a, b) in arrows.items():
            if lab in labels:
                raise ValidationError(f"category {name}: label {lab!r} is used twice")
            labels[lab] = (a, b)
            homs.setdefault((a, b), []).append(lab)
        composition = {}
        for (g, f), (h, tok) in comps.items():
            for lab in (g, f, h):
                if lab not in labels:
                    raise ParseError(f"unknown arrow {lab!r}", tok.line, tok.col)
            (a, b), (b2, c) = labels[f], labels[g]
            if b != b2 or labels[h] != (a, c):
                raise ValidationError(f"category {name}: composite {g} o {f} = {h} is ill-typed")
            composition[(a, b, c, g, f)] = h
        return FiniteCategory(base, objects, {k: tuple(v) for k, v in homs.items()}, composition, ids, name=name)

    def _arrow_spec(self, k):
        """``label`` or ``a -> b [via label]``; returns (b, b2, u)."""
        tok = self.tok
        first = self.atom()
        if self.accept("->"):
            b2 = self.atom()
            if self.accept("via"):
                u = self.name("arrow label")
            else:
                h = k.hom(first, b2).carrier
                if len(h) != 1:
                    raise self.error(f"hom({first!r}, {b2!r}) has {len(h)} arrows; name one with 'via'", tok=tok)
                u = h[0]
            if u not in k.hom(first, b2).carrier:
                raise self.error(f"{u!r} is not an arrow {first!r} -> {b2!r}", tok=tok)
            return first, b2, u
        for a in k.objects():
            for b in k.objects():
                if first in k.hom(a, b).carrier:
                    return a, b, first
        raise self.error(f"unknown arrow {first!r}", tok=tok)

    def _maps(self):
        out = {}
        if self.at(";"):
            return out
        while True:
            x = self.atom()
            self.expect("|->")
            out[x] = self.atom()
            if not self.accept(","):
                return out

    def decl_presheaf(self):
        name = self.name("presheaf name")
        self.expect("on")
        k = self.ref("category")
        if self.accept("="):
            tok = self.tok
            head = self.name("presheaf expression")
            if head == "Y":
                self.expect("(")
                a = self.atom()
                self.expect(")")
                if not k.has_object(a):
                    raise self.error(f"{a!r} is not an object of {k.name}", tok=tok)
                f = representable(k, a, name=name)
                src = ("Y", a)
            elif head == "empty":
                f = empty_presheaf(k, name=name)
                src = ("empty",)
            else:
                raise self.error(f"unknown presheaf expression {head!r}", ("Y", "empty"), tok=tok)
            self.expect(";")
            self.ws.add("presheaf", name, f, source=src)
            return
        self.expect("{")
        support, values, action = [], {}, {}
        while not self.accept("}"):
            tok = self.tok
            if self.accept("support"):
                support += self.atoms()
            elif self.accept("value"):
                b = self.atom()
                self.expect("=")
                values[b] = self.set_literal()
            elif self.accept("act"):
                key = self._arrow_spec(k)
                self.expect(":")
                action[key] = self._maps()
            else:
                raise self.error(f"found {tok.text!r}", ("support", "value", "act", "}"))
            self.expect(";")
        for b in support:
            if not k.has_object(b):
                raise ValidationError(f"presheaf {name}: {b!r} is not an object of {k.name}")
            values.setdefault(b, [])
        base = k.base
        if base.truncate:
            values = {b: ([STAR] if v else []) for b, v in values.items()}
            action = {key: {STAR: STAR} for key, m in action.items() if m}
        self.ws.add("presheaf", name, SmallPresheaf(k, support, values, action, name=name))

    def decl_weight(self):
        name = self.name("weight name")
        self.expect("on")
        c = self.ref("category")
        variance = "contra"
        if self.at("co", "contra"):
            variance = self.name()
        if self.accept("="):
            self.expect("unit")
            self.expect(";")
            self.ws.add("weight", name, Weight.unit(c, variance, name=name))
            return
        self.expect("{")
        values, action = {}, {}
        while not self.accept("}"):
            tok = self.tok
            if self.accept("value"):
                x = self.atom()
                self.expect("=")
                values[x] = self.set_literal()
            elif self.accept("act"):
                key = self._arrow_spec(c)
                self.expect(":")
                action[key] = self._maps()
            else:
                raise self.error(f"found {tok.text!r}", ("value", "act", "}"))
            self.expect(";")
        self.ws.add("weight", name, Weight(c, values, action, variance, name=name))

    def decl_functor(self):
        name = self.name("functor name")
        self.expect(":")
        src = self.ref("category")
        self.expect("->")
        tgt = self.ref("category")
        if self.accept("="):
            self.expect("identity")
            self.expect(";")
            if src is not tgt:
                raise ValidationError(f"functor {name}: identity needs equal source and target")
            self.ws.add("functor", name, identity_functor(src))
            return
        self.expect("{")
        omap, amap = {}, {}
        while not self.accept("}"):
            if self.accept("arrow"):
                u = self.name("arrow label")
                self.expect("|->")
                amap[u] = self.atom()
            else:
                a = self.atom()
                self.expect("|->")
                omap[a] = self.atom()
            self.expect(";")
        for a in src.objects():
            if a not in omap:
                raise ValidationError(f"functor {name}: no image for {a!r}")
        fun = EnrichedFunctor(src, tgt, omap, (lambda a, b, u: amap[u]) if amap else None, name=name)
        report = validate_functor(fun)
        if not report.ok:
            raise ValidationError(f"functor {name}: {report.failures[0]}")
        fun.arrow_table = dict(amap)
        self.ws.add("functor", name, fun)

    def decl_monoidal(self):
        from .day import MonoidalStructure, max_structure, min_structure, xor_structure

        name = self.name("monoidal name")
        self.expect("on")
        k = self.ref("category")
        if self.accept("="):
            tok = self.tok
            head = self.name("monoidal expression")
            self.expect(";")
            if head == "xor":
                m = xor_structure()
                if list(k.objects()) != [0, 1] or not k.is_finite:
                    raise ValidationError(f"monoidal {name}: xor needs the discrete category on 0, 1")
                m = MonoidalStructure(k, m._obj, unit=0, name=name)
            elif head == "max":
                m = max_structure(k)
            elif head == "min":
                m = min_structure(k)
            elif head == "meet":
                m = _meet(k, name)
            else:
                raise self.error(f"unknown monoidal expression {head!r}", BUILTIN_MONOIDALS, tok=tok)
            m.name = name
            src = head
        else:
            self.expect("{")
            table, unit = {}, None
            while not self.accept("}"):
                if self.accept("unit"):
                    unit = self.atom()
                else:
                    a = self.atom()
                    self.expect("*")
                    b = self.atom()
                    self.expect("=")
                    table[(a, b)] = self.atom()
                self.expect(";")

            def tensor(a, b, table=table):
                if (a, b) not in table:
                    raise ValidationError(f"monoidal {name}: no entry for {a!r} * {b!r}")
                return table[(a, b)]

            m = MonoidalStructure(k, tensor, unit=unit, name=name)
            src = ("table", tuple(sorted(table.items(), key=repr)), unit)
        failures = m.validate(self.ws.bounds)
        if failures:
            raise ValidationError(f"monoidal {name}: {failures[0]}")
        self.ws.add("monoidal", name, m, source=src)


def _meet(k, name):
    from .day import meet_structure

    if not k.is_finite:
        raise ValidationError(f"monoidal {name}: meet needs a finite lattice")
    objs = list(k.objects())

    def le(a, b):
        return bool(k.hom(a, b).carrier)

    def meet(a, b):
        lower = [c for c in objs if le(c, a) and le(c, b)]
        top = [c for c in lower if all(le(d, c) for d in lower)]
        if not top:
            raise ValidationError(f"monoidal {name}: {a!r} and {b!r} have no meet")
        return top[0]

    tops = [c for c in objs if all(le(d, c) for d in objs)]
    return meet_structure(k, meet, tops[0] if tops else None, name=name)


def parse_workspace(text):
    return Parser(text).parse()


def load_workspace(path):
    with open(path, encoding="utf-8") as fh:
        return parse_workspace(fh.read())


# ---------------------------------------------------------------------------
# printing


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_'.]*\Z")
_RESERVED = {"objects", "identity", "arrow", "compose", "leq", "support", "value", "act", "via", "on", "over",
             "unit", "co", "contra"} | set(KINDS)


def fmt_atom(x):
    if x == STAR:
        return "*"
    if isinstance(x, bool):
        raise ValueError(f"cannot print {x!r}")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, str) and _IDENT.match(x) and x not in _RESERVED:
        return x
    if isinstance(x, str):
        return json.dumps(x)
    raise ValueError(f"cannot print {x!r} as an atom")


def _fmt_set(xs):
    return "{" + ", ".join(fmt_atom(x) for x in xs) + "}"


def _thin_star(k):
    return all(h == (STAR,) for a in k.objects() for b in k.objects() for h in [k.hom(a, b).carrier] if h)


def _arrow_ref(k, b, b2, u):
    if _thin_star(k):
        return f"{fmt_atom(b)} -> {fmt_atom(b2)}"
    return fmt_atom(u)


def print_workspace(ws):
    names = {id(k): n for n, k in ws.categories.items()}

    def ref(k):
        return _cat_ref(k, names)

    lines = []
    if ws.bounds != DEFAULT_BOUNDS:
        lines.append("bounds " + ", ".join(f"{k}={v}" for k, v in ws.bounds.to_json().items()) + ";")
    for kind, name in ws.order:
        v = ws.table(kind)[name]
        src = ws.sources.get(name)
        if kind == "base":
            lines.append(f"base {name} = {src};" if src != name else f"base {name};")
        elif kind == "category":
            lines.append(_print_category(name, v, src))
        elif kind == "presheaf":
            lines.append(_print_presheaf(name, v, src, ref))
        elif kind == "weight":
            lines.append(_print_weight(name, v, ref))
        elif kind == "functor":
            lines.append(_print_functor(name, v, ref))
        elif kind == "monoidal":
            lines.append(_print_monoidal(name, v, src, ref))
    return "\n".join(lines) + "\n"


def _cat_ref(k, names):
    if id(k) in names:
        return names[id(k)]
    op = getattr(k, "_op", None)
    if op is not None and id(op) in names:
        return f"op({names[id(op)]})"
    m = re.fullmatch(r"op\((.+)\)", k.name)
    if m:
        return f"op({m.group(1)})"
    return k.name


def _print_category(name, k, src):
    if src is not None:
        if src.startswith("op("):
            return f"category {name} = {src};"
        head, _, base = src.partition(" over ")
        return f"category {name} over {base} = {head};"
    objs = list(k.objects())
    out = [f"category {name} over {k.base.name} {{", f"  objects {', '.join(fmt_atom(a) for a in objs)};"]
    if _thin_star(k) and all(k.identity(a) == STAR for a in objs):
        pairs = [f"{fmt_atom(a)} <= {fmt_atom(b)}" for a in objs for b in objs if a != b and k.hom(a, b).carrier]
        if pairs:
            out.append(f"  leq {', '.join(pairs)};")
        out.append("}")
        return "\n".join(out)
    for a in objs:
        if k.identity(a) != f"id_{a}":
            out.append(f"  identity {fmt_atom(a)} = {fmt_atom(k.identity(a))};")
    for a in objs:
        for b in objs:
            for u in k.hom(a, b).carrier:
                if not (a == b and u == k.identity(a)):
                    out.append(f"  arrow {fmt_atom(u)} : {fmt_atom(a)} -> {fmt_atom(b)};")
    for (a, b, c, g, f), h in sorted(k.composition_table().items(), key=repr):
        if f != k.identity(a) and g != k.identity(b):
            out.append(f"  compose {fmt_atom(g)} {fmt_atom(f)} = {fmt_atom(h)};")
    out.append("}")
    return "\n".join(out)


def _print_presheaf(name, f, src, ref):
    k = f.ambient
    head = f"presheaf {name} on {ref(k)}"
    if src is not None:
        return f"{head} = Y({fmt_atom(src[1])});" if src[0] == "Y" else f"{head} = empty;"
    out = [head + " {"]
    if f.support:
        out.append(f"  support {', '.join(fmt_atom(b) for b in f.support)};")
    for b in f.support:
        out.append(f"  value {fmt_atom(b)} = {_fmt_set(f.values[b].carrier)};")
    for (b, b2, u), m in f.action.items():
        if b == b2 and u == k.identity(b):
            continue
        maps = ", ".join(f"{fmt_atom(x)} |-> {fmt_atom(y)}" for x, y in m.items())
        out.append(f"  act {_arrow_ref(k, b, b2, u)} : {maps};")
    out.append("}")
    return "\n".join(out)


def _print_weight(name, w, ref):
    c = w.domain
    out = [f"weight {name} on {ref(c)} {w.variance} {{"]
    for x in c.objects():
        out.append(f"  value {fmt_atom(x)} = {_fmt_set(w.values[x].carrier)};")
    for (x, x2, u), m in w.action.items():
        if x == x2 and u == c.identity(x):
            continue
        maps = ", ".join(f"{fmt_atom(p)} |-> {fmt_atom(q)}" for p, q in m.items())
        out.append(f"  act {_arrow_ref(c, x, x2, u)} : {maps};")
    out.append("}")
    return "\n".join(out)


def _print_functor(name, fun, ref):
    src, tgt = fun.source, fun.target
    out = [f"functor {name} : {ref(src)} -> {ref(tgt)} {{"]
    for a in src.objects():
        out.append(f"  {fmt_atom(a)} |-> {fmt_atom(fun(a))};")
    for u, v in getattr(fun, "arrow_table", {}).items():
        out.append(f"  arrow {fmt_atom(u)} |-> {fmt_atom(v)};")
    out.append("}")
    return "\n".join(out)


def _print_monoidal(name, m, src, ref):
    head = f"monoidal {name} on {ref(m.k)}"
    if isinstance(src, str):
        return f"{head} = {src};"
    _, table, unit = src
    out = [head + " {"]
    if unit is not None:
        out.append(f"  unit {fmt_atom(unit)};")
    for (a, b), c in table:
        out.append(f"  {fmt_atom(a)} * {fmt_atom(b)} = {fmt_atom(c)};")
    out.append("}")
    return "\n".join(out)


__all__ = [
    "Workspace", "Parser", "tokenize", "parse_workspace", "load_workspace", "print_workspace", "fmt_atom",
    "BOOL2", "BUILTIN_CATEGORIES",
]
