"""Reader for the shipped ``.nabla`` theory files.

Each non-blank line is one declaration::

    sort i
    const J M : i
    var x : i
    def name params := body            # abbreviation (catalog syntax)
    <kind> name := formula             # rule, fact, variant, postulate, argument, reduct
    model name := (model ...)          # finite model in the model file format

``#`` starts a comment.  Later lines may use earlier declarations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..models import FiniteModel, parse_model
from ..syntax import Catalog, Term, Type, default_catalog, parse_formula, parse_type

__all__ = ["Theory", "TheoryFileError", "load_theory", "read_theory", "data_path"]

FORMULA_KINDS = ("rule", "fact", "variant", "postulate", "argument", "reduct")

_ITEM_RE = re.compile(r"^(?P<kind>\w+)\s+(?P<name>[^\s:]+)\s*:=\s*(?P<body>.+)$")


class TheoryFileError(ValueError):
    def __init__(self, message: str, line: int, source: str = "<theory>"):
        self.line = line
        super().__init__(f"{source}:{line}: {message}")


@dataclass
class Theory:
    """Declarations and named formulas from one theory file."""

    sorts: list[str] = field(default_factory=list)
    consts: dict[str, Type] = field(default_factory=dict)
    variables: dict[str, Type] = field(default_factory=dict)
    catalog: Catalog = field(default_factory=default_catalog)
    lexicon: list[str] = field(default_factory=list)
    items: dict[str, list[tuple[str, Term]]] = field(default_factory=dict)
    models: dict[str, FiniteModel] = field(default_factory=dict)

    def of(self, kind: str) -> list[tuple[str, Term]]:
        return self.items.get(kind, [])

    def get(self, kind: str, name: str) -> Term:
        for n, t in self.of(kind):
            if n == name:
                return t
        raise KeyError(f"no {kind} named {name!r}")

    def parse(self, text: str) -> Term:
        return parse_formula(text, sorts=self.sorts, consts=self.consts, variables=self.variables, catalog=self.catalog)


def read_theory(text: str, source: str = "<theory>") -> Theory:
    th = Theory()
    defs: list[str] = []

    def flush_defs() -> None:
        if defs:
            th.catalog = th.catalog.extend("\n".join(defs), consts=th.consts, sorts=th.sorts)
            defs.clear()

    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        try:
            if word == "sort":
                th.sorts += rest.split()
            elif word in ("const", "var"):
                names, sep, ty = rest.partition(":")
                if not sep:
                    raise TheoryFileError(f"expected '{word} names : type'", no, source)
                t = parse_type(ty.strip(), sorts=th.sorts)
                target = th.consts if word == "const" else th.variables
                for n in names.split():
                    target[n] = t
            elif word == "def":
                defs.append(rest)
                th.lexicon.append(rest.split()[0])
            else:
                flush_defs()
                m = _ITEM_RE.match(line)
                if m is None:
                    raise TheoryFileError(f"cannot read {line!r}", no, source)
                kind, name, body = m.group("kind"), m.group("name"), m.group("body")
                if kind == "model":
                    th.models[name] = parse_model(body)
                elif kind in FORMULA_KINDS:
                    th.items.setdefault(kind, []).append((name, th.parse(body)))
                else:
                    raise TheoryFileError(f"unknown declaration kind {kind!r}", no, source)
        except TheoryFileError:
            raise
        except Exception as e:  # parse and type errors, with the line attached
            raise TheoryFileError(str(e), no, source) from e
    flush_defs()
    return th


def data_path(name: str) -> Path:
    return Path(str(resources.files("nabla.corpus").joinpath("data").joinpath(name)))


def load_theory(name: str) -> Theory:
    """Load a shipped theory (``medical``, ``attitudes``) or a file path."""
    p = Path(name)
    if not p.exists():
        p = data_path(name if name.endswith(".nabla") else name + ".nabla")
    return read_theory(p.read_text(encoding="utf-8"), str(p.name))
