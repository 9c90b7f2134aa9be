"""Structural analyses of a grammar's nonterminal graph.

The derivability preorder has Y below X whenever X derives a sentential
form containing Y.  Its strong components, their heights in the component
order, and which components can pump on both sides drive the decision
procedures.
"""

from __future__ import annotations

from dataclasses import dataclass

from lexorder.grammar import Grammar


def derives_relation(g: Grammar) -> dict[str, frozenset[str]]:
    """For each nonterminal X, the set of Y occurring in forms derived from X.

    Reflexive and transitive.  ``Y in derives_relation(g)[X]`` says X
    derives some sentential form with Y in it.
    """
    direct: dict[str, set[str]] = {nt: set() for nt in g.nonterminals}
    for rule in g.rules:
        for sym in rule.rhs:
            if sym in g.nonterminals:
                direct[rule.lhs].add(sym)

    closure: dict[str, frozenset[str]] = {}
    for nt in g.nonterminals:
        seen = {nt}
        stack = [nt]
        while stack:
            cur = stack.pop()
            for nxt in direct[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        closure[nt] = frozenset(seen)
    return closure


@dataclass(frozen=True)
class StrongComponent:
    """A strong component of the derivability preorder.

    ``height`` counts the components on a longest descending chain starting
    here, inclusively; components that derive nothing further have height 1.
    ``recursive`` says some member derives a form containing itself again,
    which for a component means it has more than one member or a member
    mentions itself in one of its rule bodies.
    """

    members: tuple[str, ...]
    height: int
    recursive: bool


def strong_components(g: Grammar) -> tuple[StrongComponent, ...]:
    """All strong components, sorted by member names."""
    rel = derives_relation(g)
    component_of: dict[str, tuple[str, ...]] = {}
    for nt in sorted(g.nonterminals):
        if nt in component_of:
            continue
        members = tuple(
            sorted(m for m in rel[nt] if nt in rel[m])
        )
        for m in members:
            component_of[m] = members

    self_loop = {
        r.lhs for r in g.rules if r.lhs in r.rhs
    }

    comps = sorted(set(component_of.values()))
    heights: dict[tuple[str, ...], int] = {}

    def height(members: tuple[str, ...]) -> int:
        if members in heights:
            return heights[members]
        below = set()
        for x in members:
            for rule in g.rules_by_lhs.get(x, ()):
                for sym in rule.rhs:
                    if sym in g.nonterminals:
                        child = component_of[sym]
                        if child != members:
                            below.add(child)
        heights[members] = 1 + max(
            (height(child) for child in below), default=0
        )
        return heights[members]

    out = []
    for members in comps:
        recursive = len(members) > 1 or members[0] in self_loop
        out.append(StrongComponent(members, height(members), recursive))
    return tuple(out)


def left_corner_acyclic(g: Grammar) -> bool:
    """No derivation rewrites a nonterminal back to its own left corner.

    For epsilon-free grammars this says exactly that no X derives a form
    starting with X again.
    """
    succ: dict[str, set[str]] = {nt: set() for nt in g.nonterminals}
    for rule in g.rules:
        if rule.rhs and rule.rhs[0] in g.nonterminals:
            succ[rule.lhs].add(rule.rhs[0])
    for start in g.nonterminals:
        seen: set[str] = set()
        stack = list(succ[start])
        while stack:
            cur = stack.pop()
            if cur == start:
                return False
            if cur not in seen:
                seen.add(cur)
                stack.extend(succ[cur])
    return True


def sandwich_set(g: Grammar, members) -> frozenset[str]:
    """Nonterminals derivable strictly left of a component member.

    Z belongs when some member derives a form  p Z q Y r  with Y again in
    the component.  Such a configuration arises exactly from a rule, itself
    reachable from the component, whose body holds two nonterminals A before
    B with Z derivable from A and a member derivable from B.
    """
    rel = derives_relation(g)
    component = set(members)
    reachable_from_component = set()
    for m in component:
        reachable_from_component |= rel[m]

    found: set[str] = set()
    for rule in g.rules:
        if rule.lhs not in reachable_from_component:
            continue
        nts = [s for s in rule.rhs if s in g.nonterminals]
        for i, left in enumerate(nts):
            if any(rel[right] & component for right in nts[i + 1:]):
                found |= rel[left]
    return frozenset(found)
