"""Independent verification oracle.

Everything here is deliberately separate from the decision procedures: an
Earley recognizer, exhaustive bounded enumeration, a breadth-first search
for density witnesses, certificate verifiers, and a seeded random grammar
generator.  The only shared code is the grammar data model and the word
comparison, which define the objects under test.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from lexorder.grammar import BINARY, Grammar, OrderedAlphabet, Rule, dedupe_rules
from lexorder.wordalg import lex_less, prefix_incomparable

DEFAULT_QUEUE_LIMIT = 200_000


def earley_member(g: Grammar, start: str, word) -> bool:
    """Earley recognition of ``word`` from the nonterminal ``start``.

    Handles empty-word rules; completions at a position are replayed for
    items predicted after them.
    """
    symbols = list(word)
    n = len(symbols)
    rules = g.rules
    by_lhs: dict[str, list[int]] = {}
    for idx, rule in enumerate(rules):
        by_lhs.setdefault(rule.lhs, []).append(idx)

    # item: (rule index, dot, origin)
    charts: list[set[tuple[int, int, int]]] = [set() for _ in range(n + 1)]
    empty_done: list[set[str]] = [set() for _ in range(n + 1)]

    def push(pos: int, item: tuple[int, int, int], agenda: list) -> None:
        if item not in charts[pos]:
            charts[pos].add(item)
            agenda.append(item)

    agenda: list[tuple[int, int, int]] = []
    for idx in by_lhs.get(start, ()):
        push(0, (idx, 0, 0), agenda)

    for pos in range(n + 1):
        if pos > 0:
            agenda = list(charts[pos])
        while agenda:
            idx, dot, origin = agenda.pop()
            rule = rules[idx]
            if dot == len(rule.rhs):
                if origin == pos:
                    empty_done[pos].add(rule.lhs)
                for pidx, pdot, porigin in list(charts[origin]):
                    prule = rules[pidx]
                    if pdot < len(prule.rhs) and prule.rhs[pdot] == rule.lhs:
                        push(pos, (pidx, pdot + 1, porigin), agenda)
                continue
            sym = rule.rhs[dot]
            if sym in g.nonterminals:
                for cidx in by_lhs.get(sym, ()):
                    push(pos, (cidx, 0, pos), agenda)
                if sym in empty_done[pos]:
                    push(pos, (idx, dot + 1, origin), agenda)
            elif pos < n and symbols[pos] == sym:
                push(pos + 1, (idx, dot + 1, origin), agenda)

    return any(
        rules[idx].lhs == start and dot == len(rules[idx].rhs) and origin == 0
        for idx, dot, origin in charts[n]
    )


def min_lengths(g: Grammar) -> dict[str, int | None]:
    """Shortest generated length per nonterminal, None for unproductive."""
    best: dict[str, int | None] = {nt: None for nt in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            total = 0
            for sym in rule.rhs:
                if g.is_terminal(sym):
                    total += 1
                elif best[sym] is None:
                    total = None
                    break
                else:
                    total += best[sym]
            if total is not None and (
                best[rule.lhs] is None or total < best[rule.lhs]
            ):
                best[rule.lhs] = total
                changed = True
    return best


def enumerate_words(
    g: Grammar, max_len: int, *, queue_limit: int = DEFAULT_QUEUE_LIMIT
) -> list[tuple[str, ...]]:
    """All words of the language up to ``max_len`` letters, sorted.

    The sort is the lexicographic order induced by the declared letter
    order, with prefixes before their extensions.  Exhaustive: bottom-up
    by word length, with a same-length fixpoint so rules where a single
    symbol carries the whole length are chased to closure.
    """
    nonterminals = g.nonterminals
    by_len: dict[str, list[set[tuple[str, ...]]]] = {
        nt: [set() for _ in range(max_len + 1)] for nt in nonterminals
    }
    total = 0

    def pieces(rhs: tuple[str, ...], want: int) -> set[tuple[str, ...]]:
        # words of exactly `want` letters readable off this body suffix
        if not rhs:
            return {()} if want == 0 else set()
        head, rest = rhs[0], rhs[1:]
        if head not in nonterminals:
            if want == 0:
                return set()
            return {(head,) + tail for tail in pieces(rest, want - 1)}
        out: set[tuple[str, ...]] = set()
        for split in range(want + 1):
            heads = by_len[head][split]
            if not heads:
                continue
            tails = pieces(rest, want - split)
            out.update(h + t for h in heads for t in tails)
        return out

    for length in range(max_len + 1):
        changed = True
        while changed:
            changed = False
            for rule in g.rules:
                fresh = pieces(rule.rhs, length) - by_len[rule.lhs][length]
                if fresh:
                    by_len[rule.lhs][length] |= fresh
                    total += len(fresh)
                    if total > queue_limit:
                        raise RuntimeError(
                            f"enumeration exceeded {queue_limit} words"
                        )
                    changed = True

    rank = {letter: i for i, letter in enumerate(g.alphabet.letters)}
    collected = [w for bucket in by_len[g.start] for w in bucket]
    return sorted(collected, key=lambda w: tuple(rank[c] for c in w))


def enumerate_binary(g: Grammar, max_len: int, **kwargs) -> list[str]:
    """Like :func:`enumerate_words` but rendering binary words as strings."""
    return ["".join(w) for w in enumerate_words(g, max_len, **kwargs)]


def _recursive_nonterminals(g: Grammar) -> list[str]:
    direct: dict[str, set[str]] = {nt: set() for nt in g.nonterminals}
    for rule in g.rules:
        for sym in rule.rhs:
            if sym in g.nonterminals:
                direct[rule.lhs].add(sym)
    out = []
    for nt in sorted(g.nonterminals):
        seen: set[str] = set()
        stack = list(direct[nt])
        hit = False
        while stack:
            cur = stack.pop()
            if cur == nt:
                hit = True
                break
            if cur not in seen:
                seen.add(cur)
                stack.extend(direct[cur])
        if hit:
            out.append(nt)
    return out


def _embedding_prefix_stream(g, nt, depth, *, prefix_cap, queue_limit):
    """Yield the prefixes of :func:`self_embedding_prefixes` as found."""
    nonterminals = g.nonterminals
    rules_by_lhs = g.rules_by_lhs
    found: set[str] = set()
    seen = {(nt,)}
    # frontier entries carry the leftmost nonterminal position; everything
    # before it is terminal, so child scans can start there
    frontier: list[tuple[tuple[str, ...], int]] = [((nt,), 0)]
    visited = 1
    for _ in range(depth):
        if not frontier:
            return
        nxt: list[tuple[tuple[str, ...], int]] = []
        for form, spot in frontier:
            for rule in rules_by_lhs.get(form[spot], ()):
                grown = form[:spot] + rule.rhs + form[spot + 1:]
                if grown in seen:
                    continue
                seen.add(grown)
                head = next(
                    (i for i in range(spot, len(grown)) if grown[i] in nonterminals),
                    None,
                )
                if head is None or head > prefix_cap:
                    continue
                if grown[head] == nt:
                    prefix = "".join(grown[:head])
                    if prefix not in found:
                        found.add(prefix)
                        yield prefix
                visited += 1
                if visited > queue_limit:
                    return
                nxt.append((grown, head))
        frontier = nxt


def self_embedding_prefixes(
    g: Grammar,
    nt: str,
    depth: int,
    *,
    prefix_cap: int = 64,
    queue_limit: int = DEFAULT_QUEUE_LIMIT,
) -> list[str]:
    """Terminal prefixes w of forms  w nt p  derivable from ``nt``.

    Breadth-first over leftmost derivations, up to ``depth`` rewriting
    steps.  Forms are abandoned once their terminal prefix exceeds
    ``prefix_cap`` letters.
    """
    return list(
        _embedding_prefix_stream(
            g, nt, depth, prefix_cap=prefix_cap, queue_limit=queue_limit
        )
    )


def find_quasidense_witness(
    g: Grammar,
    depth: int,
    *,
    prefix_cap: int = 64,
    queue_limit: int = DEFAULT_QUEUE_LIMIT,
) -> tuple[str, str, str] | None:
    """Search for (X, u, v) with X deriving both  u X p  and  v X q  where
    u and v are prefix-incomparable.

    Such a triple certifies that the language ordering is not scattered.
    Returns the first one found in deterministic order, or None within the
    given bounds.
    """
    for nt in _recursive_nonterminals(g):
        stream = _embedding_prefix_stream(
            g, nt, depth, prefix_cap=prefix_cap, queue_limit=queue_limit
        )
        collected: list[str] = []
        for prefix in stream:
            for earlier in collected:
                if prefix_incomparable(earlier, prefix):
                    u, v = earlier, prefix
                    return (nt, u, v) if lex_less(u, v) else (nt, v, u)
            collected.append(prefix)
    return None


def derives_self_embedding(
    g: Grammar,
    nt: str,
    prefix: str,
    *,
    depth: int | None = None,
    queue_limit: int = DEFAULT_QUEUE_LIMIT,
) -> bool:
    """Bounded check that ``nt`` derives a form  prefix nt p.

    The zero-step derivation witnesses the empty prefix.  Forms whose
    terminal prefix stops being a prefix of the target are discarded, so
    the search space stays narrow.
    """
    if prefix == "":
        return True
    if depth is None:
        depth = 2 * max(1, len(g.nonterminals)) * (len(prefix) + 2)
    target = tuple(prefix)
    seen = {(nt,)}
    frontier: list[tuple[str, ...]] = [(nt,)]
    visited = 1
    for _ in range(depth):
        if not frontier:
            return False
        nxt: list[tuple[str, ...]] = []
        for form in frontier:
            spot = next(
                (i for i, s in enumerate(form) if s in g.nonterminals), None
            )
            if spot is None:
                continue
            for rule in g.rules_by_lhs.get(form[spot], ()):
                grown = form[:spot] + rule.rhs + form[spot + 1:]
                if grown in seen:
                    continue
                head = next(
                    (i for i, s in enumerate(grown) if s in g.nonterminals),
                    None,
                )
                terminal_prefix = grown[: len(grown) if head is None else head]
                if terminal_prefix[: len(target)] != target[: len(terminal_prefix)]:
                    continue
                if head is None:
                    continue
                if (
                    len(terminal_prefix) == len(target)
                    and grown[head] == nt
                ):
                    return True
                if len(terminal_prefix) > len(target):
                    continue
                seen.add(grown)
                visited += 1
                if visited > queue_limit:
                    return False
                nxt.append(grown)
        frontier = nxt
    return False


def verify_witness(
    g: Grammar,
    nt: str,
    u: str,
    v: str,
    *,
    depth: int | None = None,
    queue_limit: int = DEFAULT_QUEUE_LIMIT,
) -> bool:
    """Confirm a density witness: incomparable prefixes, both derivable."""
    if not prefix_incomparable(u, v):
        return False
    if nt not in g.nonterminals:
        return False
    return derives_self_embedding(
        g, nt, u, depth=depth, queue_limit=queue_limit
    ) and derives_self_embedding(g, nt, v, depth=depth, queue_limit=queue_limit)


def verify_decreasing(g: Grammar, nt: str, words) -> bool:
    """Confirm a strictly decreasing sequence of members of L(nt)."""
    words = list(words)
    if len(words) < 2 or nt not in g.nonterminals:
        return False
    for earlier, later in zip(words, words[1:]):
        if not lex_less(later, earlier):
            return False
    return all(earley_member(g, nt, w) for w in words)


def random_grammar(
    seed: int,
    *,
    max_nonterminals: int = 5,
    max_rules: int = 4,
    max_body: int = 4,
    nonterminal_weight: float = 0.33,
) -> Grammar:
    """Deterministic random grammar over the binary alphabet.

    No validity promise beyond well-formedness: rules may be useless, the
    empty body may occur, recursion of every flavor is possible.  The
    normalization pipeline repairs or rejects.
    """
    rng = random.Random(seed)
    count = rng.randint(1, max_nonterminals)
    names = [f"N{i}" for i in range(count)]
    lengths = list(range(max_body + 1))
    weights = [1] + [3] * max_body

    rules = []
    for name in names:
        for _ in range(rng.randint(1, max_rules)):
            size = rng.choices(lengths, weights)[0]
            body = tuple(
                rng.choice(names)
                if rng.random() < nonterminal_weight
                else rng.choice("01")
                for _ in range(size)
            )
            rules.append(Rule(name, body))
    return Grammar(BINARY, frozenset(names), dedupe_rules(rules), names[0])


@dataclass
class OracleReport:
    """Outcome of the independent cross checks for one grammar."""

    enumerated: list[str] = field(default_factory=list)
    witness_found: tuple[str, str, str] | None = None
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(ok for _, ok in self.checks)
