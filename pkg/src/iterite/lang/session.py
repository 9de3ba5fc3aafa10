"""Evaluation of expressions and commands against a session environment."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .. import universe as U
from ..config import Caps, get_caps, using_caps
from ..elgroupoid import el
from ..errors import IndexOutOfRange, IoError, IteriteError, ParseError, UnboundIdentifier
from ..gset import regular_gset, trivial_gset
from ..permgroup import Perm, coset_action, subgroup_generated
from ..terms import (Bg, Coset, Empty, Expo, FuzzyNat, Ident, Pair, Reg, Replace, Sep0, Sep1,
                     Triv, Tuple, Union, Vn)
from .syntax import Help, Let, Load, Query, Save, command_text, expr_text, parse

__all__ = ["Session", "Outcome", "build", "evaluate", "HELP_TEXT"]

HELP_TEXT = """\
Expressions
  {}  or  ∅                      empty set
  {a, b, ...}_0 / {a, b, ...}_1  unordered tupling at level 0 (set) or 1 (multiset)
  pair(a, b)                     Wiener ordered pair
  union0(a)  union1(a)           union of the members of a
  vn N   fuzzy N                 von Neumann numeral / N copies of {} at level 1
  bg(N; (0 1), (0 1 2))          classifying element of the group generated on N points
  exp(a, b)                      all graphs of maps El a -> El b (discrete El only)
  sep0(a; i, j, ...)             keep El components i, j, ... of a
  sep1(a; i = FIBER, ...)        attach a fiber to El component i; FIBER is
                                 triv N | reg | coset(perm, ...) over its stabilizer
  replace0(a; i = e, ...)        {e_i | i in El a}_0 (and replace1 for level 1)
Commands
  let NAME = EXPR
  eq A B | idcount A B | mult Z X
  aut X | el X | canon X | rank X | pi0 X | card X
  save PATH | load PATH | help
El component indices follow the order printed by `el`."""


@dataclass
class Binding:
    value: U.MSet
    expr: object  # identifiers inlined


def _inline(expr, env):
    if isinstance(expr, Ident):
        if expr.name not in env:
            err = UnboundIdentifier(f"unbound identifier {expr.name!r}")
            err.span = expr.span
            raise err
        return env[expr.name].expr
    if isinstance(expr, Tuple):
        return Tuple(expr.level, tuple(_inline(i, env) for i in expr.items), span=expr.span)
    if isinstance(expr, Pair):
        return Pair(_inline(expr.left, env), _inline(expr.right, env), span=expr.span)
    if isinstance(expr, Union):
        return Union(expr.level, _inline(expr.arg, env), span=expr.span)
    if isinstance(expr, Expo):
        return Expo(_inline(expr.base, env), _inline(expr.target, env), span=expr.span)
    if isinstance(expr, Sep0):
        return Sep0(_inline(expr.arg, env), expr.keep, span=expr.span)
    if isinstance(expr, Sep1):
        return Sep1(_inline(expr.arg, env), expr.specs, span=expr.span)
    if isinstance(expr, Replace):
        return Replace(expr.level, _inline(expr.arg, env),
                       tuple((k, _inline(v, env)) for k, v in expr.assignments), span=expr.span)
    return expr


def _component(x, k):
    orbits = U.el_orbits(x)
    if not 0 <= k < len(orbits):
        raise IndexOutOfRange(f"El component {k} does not exist ({len(orbits)} components)")
    return orbits[k]


def _fiber(o, spec):
    H = o.stabilizer.as_group()
    if isinstance(spec, Triv):
        return trivial_gset(H, spec.count)
    if isinstance(spec, Reg):
        return regular_gset(H)
    if isinstance(spec, Coset):
        perms = [Perm.from_cycles(c, H.degree) for c in spec.gens]
        return coset_action(H, subgroup_generated(H, perms))
    raise TypeError(f"unknown fiber spec {spec!r}")


def evaluate(expr, env=None) -> U.MSet:
    """Evaluate an expression; ``env`` maps names to bindings (or to MSet values)."""
    env = env or {}
    try:
        return _eval(expr, env)
    except IteriteError as err:
        if err.span is None:
            err.span = getattr(expr, "span", None)
        raise


def _eval(e, env):
    try:
        return _dispatch(e, env)
    except IteriteError as err:
        if err.span is None:
            err.span = getattr(e, "span", None)
        raise


def _dispatch(e, env):
    if isinstance(e, Empty):
        return U.empty()
    if isinstance(e, Tuple):
        return U.tup(e.level, [_eval(i, env) for i in e.items])
    if isinstance(e, Pair):
        return U.pair(_eval(e.left, env), _eval(e.right, env))
    if isinstance(e, Union):
        return U.union(e.level, _eval(e.arg, env))
    if isinstance(e, Vn):
        return U.vn(e.k)
    if isinstance(e, FuzzyNat):
        return U.fuzzy_nat(e.k)
    if isinstance(e, Ident):
        if e.name not in env:
            raise UnboundIdentifier(f"unbound identifier {e.name!r}")
        bound = env[e.name]
        return bound.value if isinstance(bound, Binding) else bound
    if isinstance(e, Bg):
        gens = [Perm.from_cycles(c, e.degree) for c in e.gens]
        return U.classifying_space(gens, e.degree)
    if isinstance(e, Expo):
        return U.expo(_eval(e.base, env), _eval(e.target, env))
    if isinstance(e, Sep0):
        x = _eval(e.arg, env)
        return U.separate0(x, e.keep)
    if isinstance(e, Sep1):
        x = _eval(e.arg, env)
        return U.separate1(x, {k: _fiber(_component(x, k), spec) for k, spec in e.specs})
    if isinstance(e, Replace):
        x = _eval(e.arg, env)
        return U.replace(e.level, x, {k: _eval(v, env) for k, v in e.assignments})
    raise TypeError(f"not an expression: {e!r}")


def build(expr) -> U.MSet:
    """Evaluate a closed expression (no identifiers)."""
    return evaluate(expr, {})


@dataclass
class Outcome:
    command: str
    text: str
    data: object

    def json_line(self) -> str:
        return json.dumps({"command": self.command, "result": self.data},
                          sort_keys=True, ensure_ascii=False)


def _ratio(q) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass
class Session:
    env: dict[str, Binding] = field(default_factory=dict)
    caps: Caps = field(default_factory=get_caps)
    history: list[str] = field(default_factory=list)

    def evaluate(self, expr) -> U.MSet:
        with using_caps(self.caps):
            return evaluate(expr, self.env)

    def bind(self, name: str, expr) -> U.MSet:
        resolved = _inline(expr, self.env)
        value = self.evaluate(expr)
        self.env[name] = Binding(value, resolved)
        return value

    def run(self, text: str, line: int = 1) -> Outcome | None:
        cmd = parse(text, line)
        if cmd is None:
            return None
        return self.execute(cmd)

    def execute(self, cmd) -> Outcome:
        self.history.append(command_text(cmd))
        with using_caps(self.caps):
            return self._execute(cmd)

    def _execute(self, cmd) -> Outcome:
        label = command_text(cmd)
        if isinstance(cmd, Let):
            x = self.bind(cmd.name, cmd.expr)
            return Outcome(label, f"{cmd.name} = {x.code}",
                           {"name": cmd.name, "code": x.code, "element": U.to_json(x)})
        if isinstance(cmd, Save):
            self.save(cmd.path)
            return Outcome(label, f"saved {len(self.env)} bindings to {cmd.path}",
                           {"path": cmd.path, "bindings": len(self.env)})
        if isinstance(cmd, Load):
            loaded = Session.load(cmd.path, self.caps)
            self.env.update(loaded.env)
            return Outcome(label, f"loaded {len(loaded.env)} bindings from {cmd.path}",
                           {"path": cmd.path, "bindings": len(loaded.env)})
        if isinstance(cmd, Help):
            return Outcome(label, HELP_TEXT, HELP_TEXT)
        if isinstance(cmd, Query):
            return self._query(label, cmd.kind, [self.evaluate(a) for a in cmd.args])
        raise TypeError(f"not a command: {cmd!r}")

    def _query(self, label, kind, args):
        if kind == "eq":
            v = U.eq(*args)
            return Outcome(label, "true" if v else "false", v)
        if kind in ("idcount", "mult", "rank", "pi0"):
            fn = {"idcount": U.id_count, "mult": U.mult, "rank": U.rank,
                  "pi0": lambda x: len(U.el_orbits(x))}[kind]
            v = fn(*args)
            return Outcome(label, str(v), v)
        (x,) = args
        if kind == "aut":
            G = U.aut(x)
            return Outcome(label, str(G.order),
                           {"order": G.order, "degree": G.degree,
                            "generators": [str(g) for g in G.generators]})
        if kind == "el":
            d = el(x)
            comps = ", ".join(f"{c.child_code}@{c.stabilizer_order}" for c in d.components)
            return Outcome(label, f"pi0={d.pi0} card={_ratio(d.cardinality)} [{comps}]",
                           d.to_json())
        if kind == "canon":
            return Outcome(label, x.code, x.code)
        if kind == "card":
            q = el(x).cardinality
            return Outcome(label, _ratio(q), _ratio(q))
        raise ValueError(f"unknown query {kind!r}")

    # -- persistence ---------------------------------------------------------

    def dumps(self) -> str:
        return "".join(f"let {name} = {expr_text(b.expr)}\n" for name, b in self.env.items())

    def save(self, path) -> None:
        try:
            Path(path).write_text(self.dumps(), encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot write {path}: {exc.strerror or exc}") from None

    @classmethod
    def loads(cls, text: str, caps: Caps | None = None) -> "Session":
        session = cls(caps=caps or get_caps())
        for lineno, line in enumerate(text.splitlines(), start=1):
            cmd = parse(line, lineno)
            if cmd is None:
                continue
            if not isinstance(cmd, Let):
                raise ParseError("session files may only contain let commands", lineno, 1,
                                 ["let"])
            session.bind(cmd.name, cmd.expr)
        return session

    @classmethod
    def load(cls, path, caps: Caps | None = None) -> "Session":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot read {path}: {exc.strerror or exc}") from None
        return cls.loads(text, caps)
