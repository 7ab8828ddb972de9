"""Simple types: the formula type ``o``, declared sorts, and function types."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union


@dataclass(frozen=True)
class Base:
    """A base type: ``o`` or a declared sort such as ``i``."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Fun:
    arg: "Type"
    res: "Type"

    def __str__(self) -> str:
        left = f"({self.arg})" if isinstance(self.arg, Fun) else str(self.arg)
        return f"{left}>{self.res}"


@dataclass(frozen=True)
class TVar:
    """Schematic type variable; only appears in catalog definitions."""

    name: str

    def __str__(self) -> str:
        return f"'{self.name}"


Type = Union[Base, Fun, TVar]

O = Base("o")


def fun(*types: Type) -> Type:
    """``fun(a, b, c)`` is ``a>b>c``."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Fun(t, result)
    return result


def arrow_parts(t: Type) -> tuple[list[Type], Type]:
    args: list[Type] = []
    while isinstance(t, Fun):
        args.append(t.arg)
        t = t.res
    return args, t


def subst_type(t: Type, sub: Mapping[str, Type]) -> Type:
    if isinstance(t, TVar):
        return sub.get(t.name, t)
    if isinstance(t, Fun):
        return Fun(subst_type(t.arg, sub), subst_type(t.res, sub))
    return t


def type_vars(t: Type) -> list[str]:
    out: list[str] = []

    def walk(u: Type) -> None:
        if isinstance(u, TVar):
            if u.name not in out:
                out.append(u.name)
        elif isinstance(u, Fun):
            walk(u.arg)
            walk(u.res)

    walk(t)
    return out


def match_type(pattern: Type, target: Type, sub: dict[str, Type]) -> bool:
    """One-way matching of a schematic type; extends ``sub`` in place."""
    if isinstance(pattern, TVar):
        bound = sub.get(pattern.name)
        if bound is None:
            sub[pattern.name] = target
            return True
        return bound == target
    if isinstance(pattern, Fun):
        return (
            isinstance(target, Fun)
            and match_type(pattern.arg, target.arg, sub)
            and match_type(pattern.res, target.res, sub)
        )
    return pattern == target


def sorts_of(t: Type) -> set[str]:
    if isinstance(t, Base):
        return set() if t == O else {t.name}
    if isinstance(t, Fun):
        return sorts_of(t.arg) | sorts_of(t.res)
    return set()
