"""Line-oriented text formats: relation files, stage traces, families, K surrogates.

Relation file (``#`` starts a comment)::

    rel NAME = id | idn NAT | kernel FUNEXPR
             | frompairs [ (a,b)@s, ... ] | funrange FUNEXPR
             | product NAME NAME | coproduct NAME NAME
             | coeq NAME FUNEXPR FUNEXPR | closure NAME [ (a,b), ... ]
             | coceer seed=[ [..],[..] ] trace=FILE

In a coceer seed, the class ``[*]`` collects every unlisted number; without it
unlisted numbers are singletons.  ``trace=`` paths are relative to the file.

Stage trace: one event per line, ``merge x y @s``, ``isolate x @s`` or ``enumU x @s``.

Family: header ``family E=<k> horizon=<h>``, then ``keep e x`` / ``extract e x @s``.

K surrogate: header ``kbar horizon=<h>``, then ``enum x @s``.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Callable

from .constructions import CoCeFamily, KbarSurrogate
from .core_rel import (
    ClosureOf,
    Coequalizer,
    Coproduct,
    EnumU,
    ExplicitList,
    FromPairs,
    FunRange,
    IdAll,
    IdN,
    Isolate,
    Kernel,
    Merge,
    Product,
    RelationSpec,
    StageTrace,
    coceer,
    seed_from_classes,
)
from .errors import ParseError
from .funlang import parse, parse_sequence


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


# -- traces -------------------------------------------------------------------

_EVENT = re.compile(r"^(merge)\s+(\d+)\s+(\d+)\s*@\s*(\d+)$|^(isolate|enumU)\s+(\d+)\s*@\s*(\d+)$", re.IGNORECASE)


def parse_trace(text: str) -> StageTrace:
    events = []
    for lineno, line in _lines(text):
        m = _EVENT.match(line)
        if m is None:
            raise ParseError(f"bad trace event {line!r}", lineno)
        if m.group(1):
            events.append(Merge(int(m.group(2)), int(m.group(3)), int(m.group(4))))
        elif m.group(5).lower() == "isolate":
            events.append(Isolate(int(m.group(6)), int(m.group(7))))
        else:
            events.append(EnumU(int(m.group(6)), int(m.group(7))))
    try:
        return StageTrace(tuple(events))
    except ValueError as err:
        raise ParseError(str(err)) from None


def format_trace(trace: StageTrace) -> str:
    out = []
    for ev in trace.events:
        if isinstance(ev, Merge):
            out.append(f"merge {ev.x} {ev.y} @{ev.stage}")
        elif isinstance(ev, Isolate):
            out.append(f"isolate {ev.x} @{ev.stage}")
        else:
            out.append(f"enumU {ev.x} @{ev.stage}")
    return "".join(line + "\n" for line in out)


# -- families and K surrogates ------------------------------------------------


def _header(line: str, word: str, keys: tuple[str, ...], lineno: int) -> dict[str, int]:
    parts = line.split()
    if not parts or parts[0].lower() != word:
        raise ParseError(f"expected a '{word}' header", lineno)
    found = {}
    for part in parts[1:]:
        k, _, v = part.partition("=")
        if k not in keys or not v.isdigit():
            raise ParseError(f"bad header field {part!r}", lineno)
        found[k] = int(v)
    missing = [k for k in keys if k not in found]
    if missing:
        raise ParseError(f"header lacks {', '.join(missing)}", lineno)
    return found


_KEEP = re.compile(r"^keep\s+(\d+)\s+(\d+)$", re.IGNORECASE)
_EXTRACT = re.compile(r"^extract\s+(\d+)\s+(\d+)\s*@\s*(\d+)$", re.IGNORECASE)
_ENUM = re.compile(r"^enum\s+(\d+)\s*@\s*(\d+)$", re.IGNORECASE)


def parse_family(text: str) -> CoCeFamily:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty family file")
    head = _header(lines[0][1], "family", ("E", "horizon"), lines[0][0])
    kept, extracted = [], []
    for lineno, line in lines[1:]:
        if m := _KEEP.match(line):
            kept.append((int(m.group(1)), int(m.group(2))))
        elif m := _EXTRACT.match(line):
            extracted.append((int(m.group(1)), int(m.group(2)), int(m.group(3))))
        else:
            raise ParseError(f"bad family line {line!r}", lineno)
    return CoCeFamily(head["E"], head["horizon"], tuple(extracted), tuple(kept))


def format_family(fam: CoCeFamily) -> str:
    out = [f"family E={fam.E} horizon={fam.horizon}"]
    out += [f"keep {e} {x}" for e, x in fam.kept]
    out += [f"extract {e} {x} @{t}" for e, x, t in fam.extractions]
    return "\n".join(out) + "\n"


def parse_kbar(text: str) -> KbarSurrogate:
    lines = list(_lines(text))
    if not lines:
        raise ParseError("empty K surrogate file")
    head = _header(lines[0][1], "kbar", ("horizon",), lines[0][0])
    enum = []
    for lineno, line in lines[1:]:
        m = _ENUM.match(line)
        if m is None:
            raise ParseError(f"bad enumeration line {line!r}", lineno)
        enum.append((int(m.group(1)), int(m.group(2))))
    return KbarSurrogate(tuple(enum), head["horizon"])


# -- relation files -----------------------------------------------------------

_DEF = re.compile(r"^rel\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(\w+)\s*(.*)$", re.IGNORECASE)
_STAMPED = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*@\s*(\d+)")
_PLAIN = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_INLINE = re.compile(r"^(?:id|idn\s*(\d+))$", re.IGNORECASE)


def _bracketed(body: str, lineno: int) -> str:
    body = body.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("expected a bracketed list", lineno)
    return body[1:-1]


def _parse_pairs(inner: str, pattern: re.Pattern, lineno: int) -> list[tuple[int, ...]]:
    items = [m.groups() for m in pattern.finditer(inner)]
    leftover = pattern.sub("", inner).replace(",", "").strip()
    if leftover:
        raise ParseError(f"unreadable pair list near {leftover!r}", lineno)
    return [tuple(int(v) for v in item) for item in items]


def parse_seed(body: str, lineno: int = 1):
    """``[[0],[3,5],[*]]`` to a seed label function."""
    inner = _bracketed(body, lineno)
    classes, rest = [], False
    for m in re.finditer(r"\[([^\[\]]*)\]", inner):
        members = [p.strip() for p in m.group(1).split(",") if p.strip()]
        if members == ["*"]:
            rest = True
        elif all(p.isdigit() for p in members):
            classes.append([int(p) for p in members])
        else:
            raise ParseError(f"bad seed class [{m.group(1)}]", lineno)
    return seed_from_classes(classes, rest=rest)


def resolve_relation(token: str, env: dict[str, RelationSpec]) -> RelationSpec:
    """A defined name, or one of the inline shorthands ``id`` and ``idnK``."""
    if token in env:
        return env[token]
    m = _INLINE.match(token.strip())
    if m:
        return IdAll() if m.group(1) is None else IdN(int(m.group(1)))
    raise KeyError(f"unknown relation {token!r}")


def parse_relfile(text: str, base_dir: Path | str = ".", loader: Callable[[Path], str] | None = None) -> dict[str, RelationSpec]:
    base = Path(base_dir)
    read = loader or (lambda p: p.read_text())
    env: dict[str, RelationSpec] = {}

    def ref(token: str, lineno: int) -> RelationSpec:
        try:
            return resolve_relation(token, env)
        except KeyError:
            raise ParseError(f"unknown relation {token!r}", lineno) from None

    for lineno, line in _lines(text):
        m = _DEF.match(line)
        if m is None:
            raise ParseError(f"expected 'rel NAME = ...', found {line!r}", lineno)
        name, form, body = m.group(1), m.group(2).lower(), m.group(3).strip()
        try:
            if form == "id":
                rel: RelationSpec = IdAll()
            elif form == "idn":
                rel = IdN(int(body))
            elif form == "kernel":
                rel = Kernel(parse(body))
            elif form == "frompairs":
                items = _parse_pairs(_bracketed(body, lineno), _STAMPED, lineno)
                rel = FromPairs(ExplicitList(tuple(items)))
            elif form == "funrange":
                rel = FromPairs(FunRange(parse(body)))
            elif form in ("product", "coproduct"):
                parts = body.split()
                if len(parts) != 2:
                    raise ParseError(f"{form} takes two relation names", lineno)
                cls = Product if form == "product" else Coproduct
                rel = cls(ref(parts[0], lineno), ref(parts[1], lineno))
            elif form == "coeq":
                head, _, rest = body.partition(" ")
                funs = parse_sequence(rest)
                if len(funs) != 2:
                    raise ParseError(f"coeq takes a relation and two functions, got {len(funs)} functions", lineno)
                rel = Coequalizer(ref(head, lineno), funs[0], funs[1])
            elif form == "closure":
                head, _, rest = body.partition(" ")
                pairs = _parse_pairs(_bracketed(rest, lineno), _PLAIN, lineno)
                rel = ClosureOf(ref(head, lineno), tuple(pairs))
            elif form == "coceer":
                sm = re.match(r"^seed\s*=\s*(\[.*\])\s+trace\s*=\s*(\S+)$", body)
                if sm is None:
                    raise ParseError("coceer expects seed=[...] trace=FILE", lineno)
                seed = parse_seed(sm.group(1), lineno)
                rel = coceer(seed, parse_trace(read(base / sm.group(2))))
            else:
                raise ParseError(f"unknown relation form {form!r}", lineno)
        except ParseError as err:
            if err.line == 1 and lineno != 1:
                raise ParseError(err.message, lineno, err.col) from None
            raise
        except ValueError as err:
            raise ParseError(str(err), lineno) from None
        if name in env:
            raise ParseError(f"relation {name!r} defined twice", lineno)
        env[name] = rel
    return env
