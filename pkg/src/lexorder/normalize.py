"""Normalization pipeline bringing grammars into analysis shape.

The order-theoretic decision procedures assume a grammar over the binary
alphabet with no useless nonterminals, no empty-word rules, no unit cycles,
no left recursion, and every nonterminal generating at least two words.
Each stage here preserves the generated language exactly, except that
removing empty-word rules drops the empty word itself; whether it was
present is reported separately, since dropping it changes neither
scatteredness nor well-orderedness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from lexorder.grammar import Grammar, Rule, dedupe_rules, encode_binary


class EmptyLanguageError(ValueError):
    """The grammar generates no nonempty word."""

    def __init__(self, had_epsilon: bool):
        self.had_epsilon = had_epsilon
        detail = "only the empty word" if had_epsilon else "no word at all"
        super().__init__(f"the grammar generates {detail}")


@dataclass(frozen=True)
class NormalizedGrammar:
    """Pipeline output.

    ``degenerate_word`` is set when the whole language is that single word;
    the grammar field then holds the pre-inlining grammar unchanged.
    ``singleton_substitutions`` maps each inlined nonterminal to its word.
    """

    grammar: Grammar
    had_epsilon: bool
    singleton_substitutions: dict[str, str] = field(default_factory=dict)
    degenerate_word: str | None = None

    @property
    def is_degenerate(self) -> bool:
        return self.degenerate_word is not None


def remove_useless(g: Grammar) -> Grammar:
    """Drop unproductive and unreachable nonterminals and their rules."""
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            if rule.lhs not in productive and all(
                g.is_terminal(s) or s in productive for s in rule.rhs
            ):
                productive.add(rule.lhs)
                changed = True
    if g.start not in productive:
        raise EmptyLanguageError(had_epsilon=False)

    alive_rules = [
        r
        for r in g.rules
        if r.lhs in productive
        and all(g.is_terminal(s) or s in productive for s in r.rhs)
    ]
    by_lhs: dict[str, list[Rule]] = {}
    for r in alive_rules:
        by_lhs.setdefault(r.lhs, []).append(r)

    reachable = {g.start}
    frontier = [g.start]
    while frontier:
        nt = frontier.pop()
        for rule in by_lhs.get(nt, ()):
            for sym in rule.rhs:
                if sym in g.nonterminals and sym not in reachable:
                    reachable.add(sym)
                    frontier.append(sym)

    rules = tuple(r for r in alive_rules if r.lhs in reachable)
    return Grammar(g.alphabet, frozenset(reachable), rules, g.start)


def nullable_set(g: Grammar) -> set[str]:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            if rule.lhs not in nullable and all(s in nullable for s in rule.rhs):
                nullable.add(rule.lhs)
                changed = True
    return nullable


def remove_epsilon(g: Grammar) -> tuple[Grammar, bool]:
    """Remove empty-word rules; report whether the language contained it.

    Raises :class:`EmptyLanguageError` when nothing but the empty word was
    generated.
    """
    nullable = nullable_set(g)
    had_epsilon = g.start in nullable

    rules: list[Rule] = []
    for rule in g.rules:
        optional = [i for i, s in enumerate(rule.rhs) if s in nullable]
        for dropped in itertools.chain.from_iterable(
            itertools.combinations(optional, k) for k in range(len(optional) + 1)
        ):
            body = tuple(
                s for i, s in enumerate(rule.rhs) if i not in set(dropped)
            )
            if not body or body == (rule.lhs,):
                continue
            rules.append(Rule(rule.lhs, body))
    rules = dedupe_rules(rules)

    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for rule in rules:
            if rule.lhs not in productive and all(
                g.is_terminal(s) or s in productive for s in rule.rhs
            ):
                productive.add(rule.lhs)
                changed = True
    if g.start not in productive:
        raise EmptyLanguageError(had_epsilon=had_epsilon)

    return Grammar(g.alphabet, g.nonterminals, rules, g.start), had_epsilon


def collapse_unit_cycles(g: Grammar) -> Grammar:
    """Merge unit-rule cycles and eliminate all unit rules by closure.

    Expects an epsilon-free grammar.  Nonterminals on a common unit cycle
    generate the same language and are merged into one representative, the
    start symbol when present, otherwise the least name.
    """
    unit_succ: dict[str, set[str]] = {nt: set() for nt in g.nonterminals}
    for r in g.rules:
        if len(r.rhs) == 1 and r.rhs[0] in g.nonterminals:
            unit_succ[r.lhs].add(r.rhs[0])

    rename: dict[str, str] = {}
    for members in _cycle_classes(g.nonterminals, unit_succ):
        rep = g.start if g.start in members else min(members)
        for nt in members:
            rename[nt] = rep

    def mapped(sym: str) -> str:
        return rename.get(sym, sym)

    merged = []
    for r in g.rules:
        body = tuple(mapped(s) for s in r.rhs)
        if body == (mapped(r.lhs),):
            continue
        merged.append(Rule(mapped(r.lhs), body))
    merged = dedupe_rules(merged)
    nonterminals = frozenset(mapped(nt) for nt in g.nonterminals)
    start = mapped(g.start)

    by_lhs: dict[str, list[Rule]] = {nt: [] for nt in nonterminals}
    for r in merged:
        by_lhs[r.lhs].append(r)

    def unit_reachable(nt: str) -> list[str]:
        seen = {nt}
        stack = [nt]
        while stack:
            cur = stack.pop()
            for r in by_lhs[cur]:
                if len(r.rhs) == 1 and r.rhs[0] in nonterminals:
                    if r.rhs[0] not in seen:
                        seen.add(r.rhs[0])
                        stack.append(r.rhs[0])
        return sorted(seen)

    closed = []
    for nt in sorted(nonterminals):
        for src in unit_reachable(nt):
            for r in by_lhs[src]:
                if len(r.rhs) == 1 and r.rhs[0] in nonterminals:
                    continue
                closed.append(Rule(nt, r.rhs))
    # keep original ordering for rules that survive unchanged
    ordered = [r for r in merged if not (len(r.rhs) == 1 and r.rhs[0] in nonterminals)]
    extra = [r for r in closed if r not in set(ordered)]
    return Grammar(g.alphabet, nonterminals, dedupe_rules(ordered + extra), start)


def _cycle_classes(nodes, succ) -> list[set[str]]:
    """Nontrivial strongly connected classes of a successor map."""
    closure: dict[str, set[str]] = {}
    for n in nodes:
        seen: set[str] = set()
        stack = list(succ.get(n, ()))
        while stack:
            m = stack.pop()
            if m not in seen:
                seen.add(m)
                stack.extend(succ.get(m, ()))
        closure[n] = seen
    classes = []
    assigned: set[str] = set()
    for n in sorted(nodes):
        if n in assigned:
            continue
        members = {m for m in closure[n] if n in closure[m]} | (
            {n} if n in closure[n] else set()
        )
        if len(members) > 1 or n in closure[n]:
            members.add(n)
            classes.append(members)
            assigned |= members
    return classes


def eliminate_left_recursion(g: Grammar) -> Grammar:
    """Remove left recursion by ordered substitution.

    Expects an epsilon-free grammar without unit rules.  Bodies whose head
    is an earlier nonterminal are expanded until the head is a terminal or a
    later one; immediate left recursion is then split off into a fresh
    repetition nonterminal.  The split uses the epsilon-free variant, so no
    empty-word rules appear and none need re-eliminating.
    """
    order = sorted(g.nonterminals)
    index = {nt: i for i, nt in enumerate(order)}
    prods: dict[str, list[tuple[str, ...]]] = {nt: [] for nt in order}
    for r in g.rules:
        prods[r.lhs].append(r.rhs)

    taken = set(order)

    def fresh(base: str) -> str:
        name = base + "'"
        while name in taken:
            name += "'"
        taken.add(name)
        return name

    tails: dict[str, list[tuple[str, ...]]] = {}
    for i, nt in enumerate(order):
        while True:
            expandable = [
                b
                for b in prods[nt]
                if b and b[0] in index and index[b[0]] < i
            ]
            if not expandable:
                break
            body = expandable[0]
            prods[nt].remove(body)
            for replacement in prods[body[0]]:
                candidate = replacement + body[1:]
                if candidate not in prods[nt]:
                    prods[nt].append(candidate)

        recursive = [b[1:] for b in prods[nt] if b and b[0] == nt]
        if not recursive:
            continue
        rest = [b for b in prods[nt] if not b or b[0] != nt]
        if not rest:
            # all alternatives loop back, so this nonterminal derives nothing
            prods[nt] = []
            continue
        repeat = fresh(nt)
        prods[nt] = rest + [b + (repeat,) for b in rest]
        tails[repeat] = recursive + [b + (repeat,) for b in recursive]

    prods.update(tails)
    rules = dedupe_rules(
        Rule(nt, body) for nt in prods for body in prods[nt]
    )
    return Grammar(g.alphabet, frozenset(prods), rules, g.start)


def count_words_saturating(g: Grammar, nt: str) -> int:
    """How many words ``nt`` generates, saturating at 2.

    Expects an epsilon-free grammar.  Returns 0, 1, or 2, the last meaning
    two or more.
    """
    counts = {x: 0 for x in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for x in g.nonterminals:
            total = 0
            for rule in g.rules_by_lhs.get(x, ()):
                product = 1
                for sym in rule.rhs:
                    product *= 1 if g.is_terminal(sym) else counts[sym]
                    if product >= 2:
                        break
                total += product
                if total >= 2:
                    break
            total = min(total, 2)
            if total != counts[x]:
                counts[x] = total
                changed = True
    return counts[nt]


def inline_singletons(
    g: Grammar,
) -> tuple[Grammar, dict[str, str], str | None]:
    """Substitute nonterminals that generate exactly one word.

    Expects a useless-free, epsilon-free grammar.  Returns the rewritten
    grammar, the substitution mapping, and the single generated word when
    the start symbol itself is a singleton (in which case the grammar is
    returned unchanged).
    """
    singles = {
        nt for nt in g.nonterminals if count_words_saturating(g, nt) == 1
    }
    if not singles:
        return g, {}, None

    words: dict[str, str] = {}
    while len(words) < len(singles):
        progressed = False
        for nt in sorted(singles - set(words)):
            for rule in g.rules_by_lhs[nt]:
                if all(
                    g.is_terminal(s) or s in words for s in rule.rhs
                ):
                    words[nt] = "".join(
                        s if g.is_terminal(s) else words[s] for s in rule.rhs
                    )
                    progressed = True
                    break
        assert progressed, "singleton resolution stalled"

    if g.start in singles:
        return g, words, words[g.start]

    rules = []
    for rule in g.rules:
        if rule.lhs in singles:
            continue
        body = []
        for sym in rule.rhs:
            if sym in singles:
                body.extend(words[sym])
            else:
                body.append(sym)
        rules.append(Rule(rule.lhs, tuple(body)))
    grammar = Grammar(
        g.alphabet,
        frozenset(g.nonterminals - singles),
        dedupe_rules(rules),
        g.start,
    )
    return grammar, words, None


def normalize_pipeline(g: Grammar) -> NormalizedGrammar:
    """Run the full pipeline.

    Stages: binary re-encoding, useless removal, empty-word removal, unit
    cycle collapse, left recursion elimination, useless removal again, and
    singleton inlining.  Raises :class:`EmptyLanguageError` when no nonempty
    word is generated.
    """
    binary = encode_binary(g)
    trimmed = remove_useless(binary)
    no_eps, had_epsilon = remove_epsilon(trimmed)
    no_units = collapse_unit_cycles(no_eps)
    no_left = eliminate_left_recursion(no_units)
    clean = remove_useless(no_left)
    final, substitutions, degenerate = inline_singletons(clean)
    return NormalizedGrammar(
        grammar=final,
        had_epsilon=had_epsilon,
        singleton_substitutions=substitutions,
        degenerate_word=degenerate,
    )
