"""Deciding order properties of a context-free language.

The lexicographic order of a language is scattered exactly when no
recursive nonterminal can grow two prefix-incomparable self-embedding
prefixes: all the words w with X =>+ w X p must be powers of one primitive
period.  Two independent routes check this on the normalized grammar:

* the equation route builds, per recursive component, candidate affix
  pairs abstracting the spine languages and the languages sandwiched left
  of the spine, then verifies a finite system of composition laws over
  them.  The laws are sound on their own: whenever any tables satisfy
  them, every self-embedding prefix stays on the periodic track.

* the automaton route intersects each spine language with the complement
  of period*, a plain product emptiness check.

A scattered order still fails to be a well-order when some member word
deviates upward from the periodic track: prepending the self-embedding
prefix then drops the word lexicographically, forever.  That is again a
product emptiness check, and its failure yields an explicit strictly
decreasing family of words.  Negative verdicts always carry such a
machine-checkable certificate; the quasi-dense one is found by the
independent search in :mod:`lexorder.oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from lexorder.grammar import Grammar, Rule, dedupe_rules
from lexorder.normalize import (
    EmptyLanguageError,
    NormalizedGrammar,
    normalize_pipeline,
)
from lexorder.oracle import (
    find_quasidense_witness,
    verify_decreasing,
    verify_witness,
)
from lexorder.structure import StrongComponent, sandwich_set, strong_components
from lexorder.wordalg import (
    UNDEFINED,
    AffixPair,
    NotPeriodicFactorError,
    chain_eval,
    containing_pairs,
    otimes,
    pair_language_member,
    pair_of_word,
    primitive_root,
)

ALGORITHMS = ("fast", "naive", "both")


class NotRecursiveError(ValueError):
    """Spine machinery asked about a nonterminal that never recurs."""


class AmbiguousCoverPairError(ValueError):
    """Several affix pairs cover the observed words equally well.

    After singleton inlining every analyzed nonterminal generates two
    distinct words, and two distinct words shorter than the period never
    share a pair, so this cannot fire on pipeline output.  It is kept as a
    guarded escape hatch: the caller falls back to the automaton route.
    """

    def __init__(self, nonterminal: str, period: str, pairs):
        self.nonterminal = nonterminal
        self.period = period
        self.pairs = tuple(pairs)
        super().__init__(
            f"{len(self.pairs)} pairs over {period!r} cover {nonterminal}"
        )


class ResourceLimitError(RuntimeError):
    """A configured search bound was exhausted before an answer."""


class DisagreementError(RuntimeError):
    """The two routes returned different verdicts; one of them is buggy."""

    def __init__(self, fast_verdict: bool, naive_verdict: bool):
        self.fast_verdict = fast_verdict
        self.naive_verdict = naive_verdict
        super().__init__(
            f"equation route says scattered={fast_verdict}, "
            f"automaton route says scattered={naive_verdict}"
        )


@dataclass(frozen=True)
class Limits:
    """Caps on the searches; exceeding one raises ResourceLimitError."""

    max_period_len: int = 4096
    max_search_depth: int = 4096
    queue_limit: int = 200_000


# ---------------------------------------------------------------------------
# automata over the binary alphabet


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton; transitions[q] = (on 0, on 1)."""

    transitions: tuple[tuple[int, int], ...]
    start: int
    accepting: frozenset[int]

    def step(self, state: int, letter: str) -> int:
        return self.transitions[state][0 if letter == "0" else 1]

    def accepts(self, word: str) -> bool:
        state = self.start
        for letter in word:
            state = self.step(state, letter)
        return state in self.accepting


def dfa_complement_power(period: str) -> Dfa:
    """Accepts exactly the words that are not powers of the period.

    States 0..n-1 track the position inside the period, state n is the
    mismatch sink.  A word is a power exactly when it ends at position 0
    without ever mismatching.
    """
    n = len(period)
    sink = n
    transitions = []
    for i in range(n):
        hit = (i + 1) % n
        transitions.append((hit, sink) if period[i] == "0" else (sink, hit))
    transitions.append((sink, sink))
    accepting = frozenset(range(1, n)) | {sink}
    return Dfa(tuple(transitions), 0, accepting)


def dfa_upward_deviation(period: str) -> Dfa:
    """Accepts the words strictly above some power of the period.

    Such a word follows the periodic continuation for a while and then
    shows a 1 where the period has a 0; the first difference settles the
    strict comparison, so one accepting and one rejecting sink suffice.
    For the period 1 nothing ever deviates upward and the language is
    empty.
    """
    n = len(period)
    accept, reject = n, n + 1
    transitions = []
    for i in range(n):
        hit = (i + 1) % n
        if period[i] == "0":
            transitions.append((hit, accept))
        else:
            transitions.append((reject, hit))
    transitions.append((accept, accept))
    transitions.append((reject, reject))
    return Dfa(tuple(transitions), 0, frozenset({accept}))


def cfg_dfa_intersect(g: Grammar, dfa: Dfa, start_symbol: str) -> str | None:
    """Least word of L(start_symbol) the automaton accepts, or None.

    Saturates, per nonterminal, the state pairs its words can drive the
    automaton through, keeping a minimal witness under length-then-letter
    order.  Witness keys only ever shrink, so the loop terminates, and the
    empty-bodied rules of spine grammars need no special case.
    """
    states = range(len(dfa.transitions))

    def better(old: str | None, new: str) -> bool:
        return old is None or (len(new), new) < (len(old), old)

    through: dict[str, dict[tuple[int, int], str]] = {
        nt: {} for nt in g.nonterminals
    }
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            frontier = {(q, q): "" for q in states}
            for sym in rule.rhs:
                grown: dict[tuple[int, int], str] = {}
                if g.is_terminal(sym):
                    for (q0, q1), w in frontier.items():
                        key = (q0, dfa.step(q1, sym))
                        word = w + sym
                        if better(grown.get(key), word):
                            grown[key] = word
                else:
                    for (q0, q1), w in frontier.items():
                        for (a, b), tail in through[sym].items():
                            if a != q1:
                                continue
                            key = (q0, b)
                            word = w + tail
                            if better(grown.get(key), word):
                                grown[key] = word
                frontier = grown
            target = through[rule.lhs]
            for key, word in frontier.items():
                if better(target.get(key), word):
                    target[key] = word
                    changed = True

    hits = [
        w
        for (q0, q1), w in through[start_symbol].items()
        if q0 == dfa.start and q1 in dfa.accepting
    ]
    return min(hits, key=lambda w: (len(w), w)) if hits else None


# ---------------------------------------------------------------------------
# spine grammars


@dataclass(frozen=True)
class SpineGrammar:
    """Grammar of the terminal prefixes along a threaded derivation.

    The language is  {w : source =>+ w target q}, plus the empty word when
    source equals target.  Marked copies of the component members carry the
    thread: each member occurrence in a member rule yields one marked rule
    keeping everything left of the occurrence and dropping everything right
    of it.  ``spine_rules`` maps each marked rule back to the base rule and
    the occurrence position it came from; the end rule is not in the map.
    """

    grammar: Grammar
    start: str
    source: str
    target: str
    spine_rules: dict[Rule, tuple[Rule, int]]


def build_spine(g: Grammar, members, source: str, target: str) -> SpineGrammar:
    member_set = set(members)
    suffix = "~"
    while any(m + suffix in g.nonterminals for m in members):
        suffix += "~"
    mark = {m: m + suffix for m in members}

    rules = list(g.rules)
    spine_rules: dict[Rule, tuple[Rule, int]] = {}
    for rule in g.rules:
        if rule.lhs not in member_set:
            continue
        for i, sym in enumerate(rule.rhs):
            if sym in member_set:
                marked = Rule(mark[rule.lhs], rule.rhs[:i] + (mark[sym],))
                # identical marked bodies can arise from different base
                # rules; any one of them witnesses the same prefix
                if marked not in spine_rules:
                    spine_rules[marked] = (rule, i)
                    rules.append(marked)
    rules.append(Rule(mark[target], ()))

    grammar = Grammar(
        g.alphabet,
        frozenset(g.nonterminals | set(mark.values())),
        dedupe_rules(rules),
        mark[source],
    )
    return SpineGrammar(grammar, mark[source], source, target, spine_rules)


# ---------------------------------------------------------------------------
# least words, with enough bookkeeping to replay a derivation


class ShortestWords:
    """Least word and least nonempty word of every nonterminal.

    Words compare by length first, then letter order.  For each optimum
    the achieving rule is kept; the nonempty track also records which body
    position was forced to expand to a nonempty word (None when the plain
    least expansion of the body is already nonempty).  Both are enough to
    replay a derivation of the optimum.
    """

    def __init__(self, g: Grammar):
        self.grammar = g
        self.least: dict[str, str | None] = {nt: None for nt in g.nonterminals}
        self.least_nonempty: dict[str, str | None] = dict(self.least)
        self.least_rule: dict[str, Rule] = {}
        self.nonempty_rule: dict[str, tuple[Rule, int | None]] = {}
        self._solve()

    @staticmethod
    def _better(old: str | None, new: str) -> bool:
        return old is None or (len(new), new) < (len(old), old)

    def _solve(self) -> None:
        g = self.grammar
        changed = True
        while changed:
            changed = False
            for rule in g.rules:
                parts = []
                for sym in rule.rhs:
                    if g.is_terminal(sym):
                        parts.append(sym)
                    else:
                        w = self.least[sym]
                        if w is None:
                            break
                        parts.append(w)
                else:
                    changed |= self._offer(rule, parts)
        # the language of a nonterminal on an all-empty cycle would need a
        # nonempty word nobody can provide; those entries just stay None

    def _offer(self, rule: Rule, parts: list[str]) -> bool:
        base = "".join(parts)
        changed = False
        if self._better(self.least[rule.lhs], base):
            self.least[rule.lhs] = base
            self.least_rule[rule.lhs] = rule
            changed = True
        if base:
            candidates = [(base, None)]
        else:
            # every body position expanded to the empty word, so each is a
            # nonterminal; force exactly one of them to go nonempty
            candidates = []
            for i, sym in enumerate(rule.rhs):
                forced = self.least_nonempty[sym]
                if forced is not None:
                    candidates.append((forced, i))
        for word, forced_at in candidates:
            if self._better(self.least_nonempty[rule.lhs], word):
                self.least_nonempty[rule.lhs] = word
                self.nonempty_rule[rule.lhs] = (rule, forced_at)
                changed = True
        return changed


def two_least_words(g: Grammar) -> dict[str, tuple[str, ...]]:
    """The at most two least distinct words of every nonterminal.

    Exact: the two least products of a rule body only ever combine the two
    least words of each position, so folding with truncation to two loses
    nothing.
    """

    def key(w: str):
        return (len(w), w)

    best: dict[str, tuple[str, ...]] = {nt: () for nt in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            partial: tuple[str, ...] = ("",)
            for sym in rule.rhs:
                if g.is_terminal(sym):
                    partial = tuple(p + sym for p in partial)
                else:
                    options = best[sym]
                    if not options:
                        partial = ()
                        break
                    combos = {p + w for p in partial for w in options}
                    partial = tuple(sorted(combos, key=key)[:2])
            if not partial:
                continue
            merged = tuple(
                sorted(set(best[rule.lhs]) | set(partial), key=key)[:2]
            )
            if merged != best[rule.lhs]:
                best[rule.lhs] = merged
                changed = True
    return best


# ---------------------------------------------------------------------------
# certificates and results


@dataclass(frozen=True)
class QuasiDenseWitness:
    """Two prefix-incomparable self-embedding prefixes of one nonterminal.

    The nonterminal derives both  left X p  and  right X q, so arbitrary
    {left, right} stackings embed a dense order into the language.
    """

    nonterminal: str
    left: str
    right: str


@dataclass(frozen=True)
class DecreasingFamily:
    """Start of an infinite strictly decreasing run of member words.

    ``words`` lists  prefix^k pivot suffix^k  for k = 0..4; all belong to
    the language of ``nonterminal`` and each is strictly below the one
    before it, a pattern that continues for every k.
    """

    nonterminal: str
    prefix: str
    pivot: str
    suffix: str
    words: tuple[str, ...]


@dataclass(frozen=True)
class ComponentInfo:
    """One strong component as reported to callers."""

    members: tuple[str, ...]
    height: int
    recursive: bool
    period: str | None


@dataclass(frozen=True)
class Decision:
    """Verdict over the language of the analyzed grammar.

    Certificates and component data refer to the normalized grammar kept
    in ``normalized`` (None when the language was empty).  ``agreement``
    only carries information after running both routes; a genuine mismatch
    raises instead of returning.
    """

    scattered: bool
    well_ordered: bool
    epsilon_in_language: bool
    components: tuple[ComponentInfo, ...]
    certificate: QuasiDenseWitness | DecreasingFamily | None
    algorithm: str
    agreement: bool
    normalized: NormalizedGrammar | None = None


# ---------------------------------------------------------------------------
# shared spine machinery


class _Analysis:
    """Spine grammars, their word engines, and member periods, cached."""

    def __init__(self, grammar: Grammar, components, limits: Limits):
        self.grammar = grammar
        self.components = components
        self.limits = limits
        self._member_component = {
            m: comp for comp in components for m in comp.members
        }
        self._spines: dict[tuple[str, str], SpineGrammar] = {}
        self._engines: dict[tuple[str, str], ShortestWords] = {}
        self._two_least: dict[str, tuple[str, ...]] | None = None

    @property
    def two_least(self) -> dict[str, tuple[str, ...]]:
        if self._two_least is None:
            self._two_least = two_least_words(self.grammar)
        return self._two_least

    def component_of(self, nt: str) -> StrongComponent:
        return self._member_component[nt]

    def spine(self, source: str, target: str) -> SpineGrammar:
        comp = self.component_of(source)
        if not comp.recursive or target not in comp.members:
            raise NotRecursiveError(
                f"{source} and {target} do not recurse through each other"
            )
        key = (source, target)
        if key not in self._spines:
            self._spines[key] = build_spine(
                self.grammar, comp.members, source, target
            )
        return self._spines[key]

    def spine_engine(self, source: str, target: str) -> ShortestWords:
        key = (source, target)
        if key not in self._engines:
            self._engines[key] = ShortestWords(self.spine(source, target).grammar)
        return self._engines[key]

    def least_spine_word(self, source: str, target: str) -> str:
        """Least nonempty w with  source =>+ w target q."""
        spine = self.spine(source, target)
        word = self.spine_engine(source, target).least_nonempty[spine.start]
        assert word is not None, f"no nonempty spine word for {source}->{target}"
        if len(word) > self.limits.max_period_len:
            raise ResourceLimitError(
                f"spine word of ({source}, {target}) exceeds "
                f"{self.limits.max_period_len} letters"
            )
        return word

    def period(self, member: str) -> str:
        """Primitive root of the least nonempty self-embedding prefix."""
        return primitive_root(self.least_spine_word(member, member))


# ---------------------------------------------------------------------------
# equation route


def _decompose(rhs, nonterminals) -> tuple[list[str], list[str]]:
    """Body as alternating terminal gaps and nonterminal occurrences."""
    gaps = [""]
    occurrences = []
    for sym in rhs:
        if sym in nonterminals:
            occurrences.append(sym)
            gaps.append("")
        else:
            gaps[-1] += sym
    return gaps, occurrences


def _cover_candidate(name: str, words, period: str) -> AffixPair:
    """The only affix pair that can cover all words of a nonterminal.

    Any word at least one period long pins the pair down.  Otherwise the
    words seen are shorter than the period, and each pair holds exactly one
    such word, so two distinct short words rule everything out.
    """
    first = words[0]
    if len(first) >= len(period):
        return pair_of_word(first, period)
    second = words[1] if len(words) > 1 else None
    if second is not None and len(second) >= len(period):
        return pair_of_word(second, period)
    shared = containing_pairs(first, period)
    if second is not None:
        keep = set(containing_pairs(second, period))
        shared = tuple(p for p in shared if p in keep)
    if not shared:
        raise NotPeriodicFactorError(
            f"no affix pair of {period!r} covers every word of {name}"
        )
    if len(shared) > 1:
        raise AmbiguousCoverPairError(name, period, shared)
    return shared[0]


def _matches(value, want: AffixPair) -> bool:
    """A chain value agrees with a table entry.

    A plain word only needs membership; it stands for itself, not for a
    whole pair language.
    """
    if value is UNDEFINED:
        return False
    if isinstance(value, str):
        return pair_language_member(value, want)
    return value == want


def check_component_equations(
    analysis: _Analysis, comp: StrongComponent
) -> str | None:
    """Verify the affix pair laws for one recursive component.

    Returns None when all laws hold, else a description of the first
    failure.  Any failure means no tables at all can satisfy the laws, so
    some self-embedding prefix escapes every periodic track and the order
    is quasi-dense.
    """
    g = analysis.grammar
    members = comp.members
    member_set = set(members)
    period = analysis.period(members[0])

    spine_pairs: dict[tuple[str, str], AffixPair] = {}
    for x in members:
        pad = analysis.least_spine_word(x, x)
        for y in members:
            word = analysis.least_spine_word(x, y)
            if len(word) < len(period):
                # a short cross word rides in on x's own self-embedding
                reps = -(-(len(period) - len(word)) // len(pad))
                word = pad * reps + word
            try:
                spine_pairs[x, y] = pair_of_word(word, period)
            except NotPeriodicFactorError:
                return (
                    f"the spine word {word!r} of ({x}, {y}) is not a factor "
                    f"of any power of {period!r}"
                )

    cover_names = sorted(sandwich_set(g, members))
    cover_pairs: dict[str, AffixPair] = {}
    for name in cover_names:
        try:
            cover_pairs[name] = _cover_candidate(
                name, analysis.two_least[name], period
            )
        except NotPeriodicFactorError as err:
            return str(err)

    for x in members:
        if not pair_language_member("", spine_pairs[x, x]):
            return f"the self pair of {x} misses the empty word"

    for x, y, z in product(members, members, members):
        if otimes(spine_pairs[x, y], spine_pairs[y, z], period) != spine_pairs[x, z]:
            return f"composition through {y} breaks between {x} and {z}"

    for rule in g.rules:
        if rule.lhs not in member_set:
            continue
        gaps, occurrences = _decompose(rule.rhs, g.nonterminals)
        for j, occ in enumerate(occurrences):
            if occ not in member_set:
                continue
            items: list = [gaps[0]]
            for t in range(j):
                items.append(cover_pairs[occurrences[t]])
                items.append(gaps[t + 1])
            if not _matches(chain_eval(items, period), spine_pairs[rule.lhs, occ]):
                return (
                    f"prefix law fails in rule {rule} at occurrence "
                    f"{j + 1} of {occ}"
                )

    for name in cover_names:
        for rule in g.rules_by_lhs[name]:
            gaps, occurrences = _decompose(rule.rhs, g.nonterminals)
            items = [gaps[0]]
            for t, occ in enumerate(occurrences):
                items.append(cover_pairs[occ])
                items.append(gaps[t + 1])
            if not _matches(chain_eval(items, period), cover_pairs[name]):
                return f"cover law fails in rule {rule}"

    return None


def fast_scattered(analysis: _Analysis) -> tuple[bool, str | None]:
    """Equation route over all recursive components."""
    for comp in analysis.components:
        if not comp.recursive:
            continue
        reason = check_component_equations(analysis, comp)
        if reason is not None:
            return False, reason
    return True, None


# ---------------------------------------------------------------------------
# automaton route


def naive_scattered(analysis: _Analysis) -> tuple[bool, str | None]:
    """Product route: every self spine language must stay inside period*."""
    for comp in analysis.components:
        if not comp.recursive:
            continue
        for member in comp.members:
            period = analysis.period(member)
            spine = analysis.spine(member, member)
            escape = cfg_dfa_intersect(
                spine.grammar, dfa_complement_power(period), spine.start
            )
            if escape is not None:
                return False, (
                    f"{member} embeds itself behind {escape!r}, "
                    f"which is no power of {period!r}"
                )
    return True, None


# ---------------------------------------------------------------------------
# well-ordering


def _spine_chain(spine: SpineGrammar, engine: ShortestWords):
    """Marked steps realizing the least nonempty spine word, outermost first."""
    chain = []
    current = spine.start
    nonempty = True
    while True:
        if nonempty:
            rule, forced = engine.nonempty_rule[current]
        else:
            rule, forced = engine.least_rule[current], None
        if not rule.rhs:
            break
        chain.append(spine.spine_rules[rule])
        current = rule.rhs[-1]
        nonempty = nonempty and forced == len(rule.rhs) - 1
    return chain


def _right_context(spine: SpineGrammar, engine: ShortestWords) -> str:
    """Least expansion of everything right of the thread, innermost first.

    Replaying the chain in the base grammar gives
    source =>+ (least spine word) source (this suffix).
    """
    parts = []
    for base, occurrence in reversed(_spine_chain(spine, engine)):
        for sym in base.rhs[occurrence + 1:]:
            if spine.grammar.is_terminal(sym):
                parts.append(sym)
            else:
                word = engine.least[sym]
                assert word is not None
                parts.append(word)
    return "".join(parts)


def wellorder_certificate(analysis: _Analysis) -> DecreasingFamily | None:
    """A strictly decreasing run of member words, or None when well ordered.

    Meaningful only on a scattered grammar: self-embedding prefixes are
    then powers of the member's period, so a member word strictly above
    some power restarts below itself after every prepended prefix.
    """
    g = analysis.grammar
    for comp in analysis.components:
        if not comp.recursive:
            continue
        for member in comp.members:
            period = analysis.period(member)
            pivot = cfg_dfa_intersect(g, dfa_upward_deviation(period), member)
            if pivot is None:
                continue
            spine = analysis.spine(member, member)
            engine = analysis.spine_engine(member, member)
            prefix = engine.least_nonempty[spine.start]
            assert prefix is not None
            suffix = _right_context(spine, engine)
            words = tuple(prefix * k + pivot + suffix * k for k in range(5))
            return DecreasingFamily(member, prefix, pivot, suffix, words)
    return None


# ---------------------------------------------------------------------------
# orchestration


def _quasidense_certificate(g: Grammar, limits: Limits) -> QuasiDenseWitness:
    depth = 4 * (len(g.nonterminals) + 2)
    while True:
        hit = find_quasidense_witness(g, depth, queue_limit=limits.queue_limit)
        if hit is not None:
            return QuasiDenseWitness(*hit)
        if depth >= limits.max_search_depth:
            raise ResourceLimitError(
                f"no density witness within derivation depth {depth}"
            )
        depth = min(depth * 2, limits.max_search_depth)


def decide(g: Grammar, algorithm: str = "both", limits: Limits | None = None) -> Decision:
    """Decide whether the lexicographic order of L(g) is scattered and
    whether it is a well-order.

    ``algorithm`` picks the scatteredness route; "both" runs the two
    routes and raises :class:`DisagreementError` if they ever differ.  The
    well-ordering stage is the same automaton check either way and only
    runs on scattered languages, where its correctness argument lives.

    Negative verdicts carry a certificate over the normalized grammar: a
    :class:`QuasiDenseWitness` when not scattered, a
    :class:`DecreasingFamily` when scattered but not well ordered.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if limits is None:
        limits = Limits()

    try:
        norm = normalize_pipeline(g)
    except EmptyLanguageError as err:
        # at most the empty word: ordered like the empty or one-point order
        return Decision(
            True, True, err.had_epsilon, (), None, algorithm, True, None
        )

    components = strong_components(norm.grammar)
    if norm.is_degenerate:
        infos = tuple(
            ComponentInfo(c.members, c.height, c.recursive, None)
            for c in components
        )
        return Decision(
            True, True, norm.had_epsilon, infos, None, algorithm, True, norm
        )

    analysis = _Analysis(norm.grammar, components, limits)
    used = algorithm
    fast_verdict = naive_verdict = None
    if algorithm in ("fast", "both"):
        try:
            fast_verdict, _ = fast_scattered(analysis)
        except AmbiguousCoverPairError:
            used = "naive"
    if used == "naive" or algorithm in ("naive", "both"):
        naive_verdict, _ = naive_scattered(analysis)
    if (
        fast_verdict is not None
        and naive_verdict is not None
        and fast_verdict != naive_verdict
    ):
        raise DisagreementError(fast_verdict, naive_verdict)
    scattered = naive_verdict if fast_verdict is None else fast_verdict

    infos = tuple(
        ComponentInfo(
            c.members,
            c.height,
            c.recursive,
            analysis.period(c.members[0]) if c.recursive else None,
        )
        for c in components
    )

    if not scattered:
        witness = _quasidense_certificate(norm.grammar, limits)
        return Decision(
            False, False, norm.had_epsilon, infos, witness, used, True, norm
        )
    family = wellorder_certificate(analysis)
    return Decision(
        True, family is None, norm.had_epsilon, infos, family, used, True, norm
    )


def verify_certificate(decision: Decision, *, depth: int | None = None) -> bool:
    """Recheck the certificate with the independent oracle machinery."""
    certificate = decision.certificate
    if certificate is None:
        return True
    assert decision.normalized is not None
    g = decision.normalized.grammar
    if isinstance(certificate, QuasiDenseWitness):
        return verify_witness(
            g, certificate.nonterminal, certificate.left, certificate.right, depth=depth
        )
    return verify_decreasing(g, certificate.nonterminal, certificate.words)


def certificate_to_dict(certificate) -> dict | None:
    if certificate is None:
        return None
    if isinstance(certificate, QuasiDenseWitness):
        return {
            "kind": "quasi_dense_witness",
            "nonterminal": certificate.nonterminal,
            "left": certificate.left,
            "right": certificate.right,
        }
    return {
        "kind": "decreasing_family",
        "nonterminal": certificate.nonterminal,
        "prefix": certificate.prefix,
        "pivot": certificate.pivot,
        "suffix": certificate.suffix,
        "words": list(certificate.words),
    }


def to_report_dict(decision: Decision) -> dict:
    """Serialize a decision; key names and shapes are a stable interface."""
    return {
        "scattered": decision.scattered,
        "well_ordered": decision.well_ordered,
        "epsilon_in_language": decision.epsilon_in_language,
        "components": [
            {
                "members": list(c.members),
                "height": c.height,
                "recursive": c.recursive,
                "u0": c.period,
            }
            for c in decision.components
        ],
        "certificate": certificate_to_dict(decision.certificate),
        "algorithm": decision.algorithm,
        "agreement": decision.agreement,
    }
