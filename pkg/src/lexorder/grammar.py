"""Grammar data model, file format, validation and binary re-encoding.

The file format is line oriented.  ``#`` starts a comment that runs to the
end of the line.  A grammar needs one ``alphabet:`` line listing the letters
in increasing order, one ``start:`` line, and any number of rule lines::

    # words 0^n 1^n
    alphabet: 0 < 1
    start: S
    S -> 0 S 1 | 0 1

Symbols are whitespace-separated tokens.  Every token that appears on the
left of ``->`` is a nonterminal; every other token in a rule body must be a
declared letter.  The keyword ``eps`` denotes the empty body, unless ``eps``
itself is a declared symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

EPSILON_KEYWORD = "eps"


class GrammarError(ValueError):
    """An invalid grammar value (undeclared symbols, bad alphabet, ...)."""


class GrammarParseError(GrammarError):
    """A syntax or declaration error in grammar file text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class OrderedAlphabet:
    """Terminal alphabet; the position of a letter is its rank in the order."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise GrammarError("alphabet must contain at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise GrammarError("alphabet letters must be distinct")
        for letter in self.letters:
            if not letter or letter == "<":
                raise GrammarError(f"invalid alphabet letter {letter!r}")

    def __contains__(self, letter: object) -> bool:
        return letter in self.letters

    def rank(self, letter: str) -> int:
        return self.letters.index(letter)


BINARY = OrderedAlphabet(("0", "1"))


@dataclass(frozen=True)
class Rule:
    """One production.  An empty ``rhs`` is the empty-word rule."""

    lhs: str
    rhs: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.lhs} -> {' '.join(self.rhs) if self.rhs else EPSILON_KEYWORD}"


@dataclass(frozen=True, eq=False)
class Grammar:
    """A context-free grammar over an ordered alphabet.

    Rules keep their construction order, which makes every downstream
    analysis deterministic, but two grammars compare equal whenever they
    have the same alphabet, nonterminals, start symbol and rule set.
    """

    alphabet: OrderedAlphabet
    nonterminals: frozenset[str]
    rules: tuple[Rule, ...]
    start: str

    def __post_init__(self):
        overlap = self.nonterminals & set(self.alphabet.letters)
        if overlap:
            raise GrammarError(
                f"symbols {sorted(overlap)} are both letters and nonterminals"
            )
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not declared")
        for rule in self.rules:
            if rule.lhs not in self.nonterminals:
                raise GrammarError(f"rule for undeclared nonterminal {rule.lhs!r}")
            for sym in rule.rhs:
                if sym not in self.nonterminals and sym not in self.alphabet:
                    raise GrammarError(f"undeclared symbol {sym!r} in {rule}")
        seen = set()
        for rule in self.rules:
            if rule in seen:
                raise GrammarError(f"duplicate rule {rule}")
            seen.add(rule)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grammar):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.nonterminals == other.nonterminals
            and self.start == other.start
            and frozenset(self.rules) == frozenset(other.rules)
        )

    def __hash__(self) -> int:
        return hash(
            (self.alphabet, self.nonterminals, frozenset(self.rules), self.start)
        )

    @cached_property
    def rules_by_lhs(self) -> dict[str, tuple[Rule, ...]]:
        grouped: dict[str, list[Rule]] = {nt: [] for nt in self.nonterminals}
        for rule in self.rules:
            grouped[rule.lhs].append(rule)
        return {nt: tuple(body) for nt, body in grouped.items()}

    def is_terminal(self, sym: str) -> bool:
        return sym in self.alphabet

    def replace(self, **changes) -> Grammar:
        fields = {
            "alphabet": self.alphabet,
            "nonterminals": self.nonterminals,
            "rules": self.rules,
            "start": self.start,
        }
        fields.update(changes)
        return Grammar(**fields)


def dedupe_rules(rules) -> tuple[Rule, ...]:
    """Drop duplicate rules, keeping first occurrences in order."""
    seen = set()
    out = []
    for rule in rules:
        if rule not in seen:
            seen.add(rule)
            out.append(rule)
    return tuple(out)


def parse_grammar(text: str) -> Grammar:
    """Parse grammar file text.  Raises :class:`GrammarParseError`."""
    alphabet: OrderedAlphabet | None = None
    start: str | None = None
    raw_rules: list[tuple[str, tuple[str, ...], int]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            if alphabet is not None:
                raise GrammarParseError("duplicate alphabet declaration", lineno)
            alphabet = _parse_alphabet(line[len("alphabet:"):], lineno)
        elif line.startswith("start:"):
            if start is not None:
                raise GrammarParseError("duplicate start declaration", lineno)
            tokens = line[len("start:"):].split()
            if len(tokens) != 1:
                raise GrammarParseError(
                    "start declaration needs exactly one symbol", lineno
                )
            start = tokens[0]
        else:
            lhs_text, arrow, rhs_text = line.partition("->")
            if not arrow:
                raise GrammarParseError(
                    f"expected 'X -> body' or a declaration, got {line!r}", lineno
                )
            lhs_tokens = lhs_text.split()
            if len(lhs_tokens) != 1:
                raise GrammarParseError(
                    "rule needs exactly one symbol left of '->'", lineno
                )
            for body_text in rhs_text.split("|"):
                body = tuple(body_text.split())
                if not body:
                    raise GrammarParseError(
                        f"empty alternative in rule for {lhs_tokens[0]!r}"
                        f" (use '{EPSILON_KEYWORD}' for the empty word)",
                        lineno,
                    )
                raw_rules.append((lhs_tokens[0], body, lineno))

    if alphabet is None:
        raise GrammarParseError("missing alphabet declaration")
    if start is None:
        raise GrammarParseError("missing start declaration")
    if not raw_rules:
        raise GrammarParseError("grammar has no rules")

    nonterminals = frozenset(lhs for lhs, _, _ in raw_rules)
    if start not in nonterminals:
        raise GrammarParseError(f"start symbol {start!r} has no rules")

    declared = nonterminals | set(alphabet.letters)
    rules = []
    for lhs, body, lineno in raw_rules:
        if body == (EPSILON_KEYWORD,) and EPSILON_KEYWORD not in declared:
            body = ()
        for sym in body:
            if sym not in declared:
                raise GrammarParseError(f"undeclared symbol {sym!r}", lineno)
        rules.append(Rule(lhs, body))

    try:
        return Grammar(alphabet, nonterminals, dedupe_rules(rules), start)
    except GrammarError as exc:
        raise GrammarParseError(str(exc)) from exc


def _parse_alphabet(text: str, lineno: int) -> OrderedAlphabet:
    letters = []
    expect_letter = True
    for token in text.split():
        if expect_letter:
            if token == "<":
                raise GrammarParseError("expected a letter, found '<'", lineno)
            letters.append(token)
        elif token != "<":
            raise GrammarParseError(
                f"expected '<' between letters, found {token!r}", lineno
            )
        expect_letter = not expect_letter
    if expect_letter:
        raise GrammarParseError("alphabet declaration ends with '<'", lineno)
    if not letters:
        raise GrammarParseError("alphabet declaration lists no letters", lineno)
    try:
        return OrderedAlphabet(tuple(letters))
    except GrammarError as exc:
        raise GrammarParseError(str(exc), lineno) from exc


def format_grammar(g: Grammar) -> str:
    """Render a grammar in the file format.  Inverse of :func:`parse_grammar`.

    Nonterminals without rules have no line to live on and are dropped;
    parsed grammars never contain them.
    """
    lines = [
        "alphabet: " + " < ".join(g.alphabet.letters),
        f"start: {g.start}",
    ]
    order = [g.start] + sorted(g.nonterminals - {g.start})
    for nt in order:
        rules = g.rules_by_lhs.get(nt, ())
        if not rules:
            continue
        bodies = " | ".join(
            " ".join(r.rhs) if r.rhs else EPSILON_KEYWORD for r in rules
        )
        lines.append(f"{nt} -> {bodies}")
    return "\n".join(lines) + "\n"


def validate(g: Grammar) -> list[str]:
    """Diagnose the conditions the normalization pipeline repairs.

    Returns a list of human-readable findings: unreachable or unproductive
    nonterminals, empty-word rules, unit cycles, and left recursion.  An
    empty list means the grammar is already in analysis shape.
    """
    findings = []

    productive = _productive(g)
    reachable = _reachable(g)
    for nt in sorted(g.nonterminals - reachable):
        findings.append(f"unreachable: {nt}")
    for nt in sorted(g.nonterminals - productive):
        findings.append(f"unproductive: {nt}")

    for nt in sorted({r.lhs for r in g.rules if not r.rhs}):
        findings.append(f"epsilon-rule: {nt}")

    unit_edges = {
        (r.lhs, r.rhs[0])
        for r in g.rules
        if len(r.rhs) == 1 and r.rhs[0] in g.nonterminals
    }
    for nt in sorted(_on_cycle(g.nonterminals, unit_edges)):
        findings.append(f"unit-cycle: {nt}")

    nullable = _nullable(g)
    corner_edges = set()
    for rule in g.rules:
        for sym in rule.rhs:
            if sym in g.nonterminals:
                corner_edges.add((rule.lhs, sym))
                if sym not in nullable:
                    break
            else:
                break
    for nt in sorted(_on_cycle(g.nonterminals, corner_edges)):
        findings.append(f"left-recursive: {nt}")

    return findings


def _productive(g: Grammar) -> set[str]:
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            if rule.lhs in productive:
                continue
            if all(g.is_terminal(s) or s in productive for s in rule.rhs):
                productive.add(rule.lhs)
                changed = True
    return productive


def _reachable(g: Grammar) -> set[str]:
    reachable = {g.start}
    frontier = [g.start]
    while frontier:
        nt = frontier.pop()
        for rule in g.rules_by_lhs.get(nt, ()):
            for sym in rule.rhs:
                if sym in g.nonterminals and sym not in reachable:
                    reachable.add(sym)
                    frontier.append(sym)
    return reachable


def _nullable(g: Grammar) -> set[str]:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            if rule.lhs not in nullable and all(s in nullable for s in rule.rhs):
                nullable.add(rule.lhs)
                changed = True
    return nullable


def _on_cycle(nodes: frozenset[str], edges: set[tuple[str, str]]) -> set[str]:
    """Nodes lying on some directed cycle of the given edge set."""
    succ: dict[str, set[str]] = {n: set() for n in nodes}
    for a, b in edges:
        succ[a].add(b)

    def reaches(src: str, dst: str) -> bool:
        seen = set()
        stack = [src]
        while stack:
            n = stack.pop()
            for m in succ[n]:
                if m == dst:
                    return True
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        return False

    return {n for n in nodes if reaches(n, n)}


def letter_codes(alphabet: OrderedAlphabet) -> dict[str, str]:
    """Fixed-width binary code for each letter, in declared order.

    Width is max(1, ceil(log2 k)) so that codes of distinct letters compare
    exactly like the letters themselves, letter by letter.
    """
    k = len(alphabet.letters)
    width = max(1, (k - 1).bit_length())
    return {a: format(i, f"0{width}b") for i, a in enumerate(alphabet.letters)}


def encode_word(word, alphabet: OrderedAlphabet) -> str:
    codes = letter_codes(alphabet)
    return "".join(codes[letter] for letter in word)


def encode_binary(g: Grammar) -> Grammar:
    """Re-encode terminals over the two-letter alphabet ``0 < 1``.

    The encoding is strictly order preserving, so every order-theoretic
    property of the language is unchanged.  Nonterminals named ``0`` or
    ``1`` are renamed to stay disjoint from the new alphabet.
    """
    codes = letter_codes(g.alphabet)

    rename: dict[str, str] = {}
    taken = set(g.nonterminals) | {"0", "1"}
    for nt in sorted(g.nonterminals & {"0", "1"}):
        fresh = nt + "_nt"
        while fresh in taken:
            fresh += "_"
        rename[nt] = fresh
        taken.add(fresh)

    def map_symbol(sym: str):
        if sym in g.nonterminals:
            return (rename.get(sym, sym),)
        return tuple(codes[sym])

    rules = [
        Rule(rename.get(r.lhs, r.lhs), sum((map_symbol(s) for s in r.rhs), ()))
        for r in g.rules
    ]
    nonterminals = frozenset(rename.get(nt, nt) for nt in g.nonterminals)
    return Grammar(
        BINARY, nonterminals, dedupe_rules(rules), rename.get(g.start, g.start)
    )
