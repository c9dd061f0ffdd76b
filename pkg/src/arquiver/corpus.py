"""The standard desk-scale algebras used across tests and the acceptance run."""

from __future__ import annotations

from .algebra import Algebra, Quiver, Relation
from .linalg import DEFAULT_PRIME


def a2(p: int = DEFAULT_PRIME) -> Algebra:
    """Linear A2: vertex 1 -> vertex 2 along arrow a, no relations."""
    return Algebra(Quiver(2, [("a", 1, 2)]), [], p)


def a3(p: int = DEFAULT_PRIME) -> Algebra:
    """Linear A3: 1 -a-> 2 -b-> 3, no relations."""
    return Algebra(Quiver(3, [("a", 1, 2), ("b", 2, 3)]), [], p)


def kronecker(p: int = DEFAULT_PRIME) -> Algebra:
    """The Kronecker quiver: two parallel arrows 1 -> 2."""
    return Algebra(Quiver(2, [("a", 1, 2), ("b", 1, 2)]), [], p)


def loop(p: int = DEFAULT_PRIME) -> Algebra:
    """One vertex with a loop x and the relation x^2 = 0."""
    return Algebra(Quiver(1, [("x", 1, 1)]), [Relation([(1, ("x", "x"))])], p)


def corpus(p: int = DEFAULT_PRIME) -> dict[str, Algebra]:
    return {"a2": a2(p), "a3": a3(p), "kronecker": kronecker(p), "loop": loop(p)}
