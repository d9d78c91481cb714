"""Backtracking search for assignments under functional constraints.

Almost every finite end in the engine (natural transformations, pointwise
limits, cones) has the same shape: one variable per element of a source
carrier, and constraints of the form ``value[dst] == fn(value[src])``.
Assigning ``src`` forces ``dst``, so propagation does most of the work and
the search only branches on genuinely free variables.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Hashable, Iterable

from .errors import SizeBoundExceeded

DEFAULT_BUDGET = 10**6


def solve_functional(
    variables: list,
    domains: dict,
    constraints: Iterable[tuple[Hashable, Hashable, Callable]],
    groups: dict | None = None,
    budget: int | None = DEFAULT_BUDGET,
    first: bool = False,
) -> list[dict]:
    """Enumerate all assignments satisfying every ``(src, dst, fn)`` constraint.

    ``groups`` maps a variable to a group key; variables sharing a key must
    take pairwise distinct values (used for bijectivity).  Raises
    SizeBoundExceeded when more than ``budget`` candidate assignments are
    tried.
    """
    out_edges = defaultdict(list)
    for src, dst, fn in constraints:
        out_edges[src].append((dst, fn))
    domsets = {v: set(domains[v]) for v in variables}
    assignment: dict = {}
    used = defaultdict(set)
    results: list[dict] = []
    nodes = 0

    def undo(trail):
        for v in reversed(trail):
            x = assignment.pop(v)
            if groups is not None and groups.get(v) is not None:
                used[groups[v]].discard(x)

    def assign(var, val, trail):
        stack = [(var, val)]
        while stack:
            v, x = stack.pop()
            if v in assignment:
                if assignment[v] != x:
                    return False
                continue
            if x not in domsets[v]:
                return False
            if groups is not None:
                g = groups.get(v)
                if g is not None:
                    if x in used[g]:
                        return False
                    used[g].add(x)
            assignment[v] = x
            trail.append(v)
            for dst, fn in out_edges[v]:
                stack.append((dst, fn(x)))
        return True

    def rec(i):
        nonlocal nodes
        while i < len(variables) and variables[i] in assignment:
            i += 1
        if i == len(variables):
            results.append(dict(assignment))
            return first
        v = variables[i]
        for x in domains[v]:
            nodes += 1
            if budget is not None and nodes > budget:
                raise SizeBoundExceeded(f"search exceeded budget of {budget} candidate assignments")
            trail: list = []
            if assign(v, x, trail) and rec(i + 1):
                return True
            undo(trail)
        return False

    rec(0)
    return results


def solve_relational(
    variables: list,
    domains: dict,
    check: Callable[[dict, Hashable], bool],
    budget: int | None = DEFAULT_BUDGET,
) -> list[dict]:
    """Plain backtracking where ``check(partial, var)`` validates the newly
    assigned ``var`` against everything assigned before it."""
    assignment: dict = {}
    results: list[dict] = []
    nodes = 0

    def rec(i):
        nonlocal nodes
        if i == len(variables):
            results.append(dict(assignment))
            return
        v = variables[i]
        for x in domains[v]:
            nodes += 1
            if budget is not None and nodes > budget:
                raise SizeBoundExceeded(f"search exceeded budget of {budget} candidate assignments")
            assignment[v] = x
            if check(assignment, v):
                rec(i + 1)
            del assignment[v]

    rec(0)
    return results
