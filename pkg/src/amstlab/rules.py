"""Rule expressions: satisfaction relations given by closed-form set conditions.

A rule is a boolean combination of atomic conditions on the pair
``(model m, premise set G)``.  The atom vocabulary is deliberately closed:

========================  ====================================================
``IsEmpty``               G is the empty set
``CardAtLeast(k)``        G has at least k elements (cofinite sets: always)
``CardAtMost(k)``         G has at most k elements (cofinite sets: never)
``IsFinite``              G is finite
``ContainsSentence(e)``   the fixed sentence e is in G
``ContainsModel``         the evaluating model's index, read as a sentence,
                          is in G
``EqualsSet(S)``          G equals the fixed set S
``IsComplementOfSingleton``  G is the carrier minus one sentence
``IsSuccessorPair``       G = {n, n+1} for some n
========================  ====================================================

Because every atom looks at a set only through (a) its cardinality up to a
fixed threshold, (b) membership of finitely many fixed sentences, (c)
adjacency of pairs, (d) equality with finitely many fixed sets and (e)
membership of the evaluating model, the truth of a rule is invariant under
any permutation of sentences that fixes the rule's constants and preserves
adjacency.  Quantifiers over *arbitrary* subsets of a countable carrier
therefore reduce to quantifiers over finite and cofinite sets built from a
small distinguished window plus a few generic tail elements: every
realizable atom profile is realized inside that family.  ``RuleAnalysis``
computes the window and the representable-set bound that make this
reduction exact; checkers compare the configured search bound against it
and only then report exact verdicts.

The one vocabulary corner the reduction does not cover is an ``EqualsSet``
constant with a cofinite value (an infinite, co-infinite set can never equal
it, but a cofinite candidate can).  Rules using one are never marked exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .sets import COFINITE, Carrier, SentenceSet

# ---------------------------------------------------------------------------
# Expression tree
# ---------------------------------------------------------------------------


class RuleExpr:
    """Base class for rule expression nodes."""

    def to_json(self) -> dict:
        raise NotImplementedError

    def __and__(self, other: "RuleExpr") -> "RuleExpr":
        return And((self, other))

    def __or__(self, other: "RuleExpr") -> "RuleExpr":
        return Or((self, other))

    def __invert__(self) -> "RuleExpr":
        return Not(self)


@dataclass(frozen=True)
class And(RuleExpr):
    args: tuple[RuleExpr, ...]

    def to_json(self) -> dict:
        return {"op": "and", "args": [a.to_json() for a in self.args]}


@dataclass(frozen=True)
class Or(RuleExpr):
    args: tuple[RuleExpr, ...]

    def to_json(self) -> dict:
        return {"op": "or", "args": [a.to_json() for a in self.args]}


@dataclass(frozen=True)
class Not(RuleExpr):
    arg: RuleExpr

    def to_json(self) -> dict:
        return {"op": "not", "arg": self.arg.to_json()}


@dataclass(frozen=True)
class IsEmpty(RuleExpr):
    def to_json(self) -> dict:
        return {"atom": "IsEmpty"}


@dataclass(frozen=True)
class CardAtLeast(RuleExpr):
    k: int

    def to_json(self) -> dict:
        return {"atom": "CardAtLeast", "k": self.k}


@dataclass(frozen=True)
class CardAtMost(RuleExpr):
    k: int

    def to_json(self) -> dict:
        return {"atom": "CardAtMost", "k": self.k}


@dataclass(frozen=True)
class IsFinite(RuleExpr):
    def to_json(self) -> dict:
        return {"atom": "IsFinite"}


@dataclass(frozen=True)
class ContainsSentence(RuleExpr):
    e: int

    def to_json(self) -> dict:
        return {"atom": "ContainsSentence", "e": self.e}


@dataclass(frozen=True)
class ContainsModel(RuleExpr):
    def to_json(self) -> dict:
        return {"atom": "ContainsModel"}


@dataclass(frozen=True)
class EqualsSet(RuleExpr):
    s: SentenceSet

    def to_json(self) -> dict:
        return {"atom": "EqualsSet", **self.s.to_json()}


@dataclass(frozen=True)
class IsComplementOfSingleton(RuleExpr):
    def to_json(self) -> dict:
        return {"atom": "IsComplementOfSingleton"}


@dataclass(frozen=True)
class IsSuccessorPair(RuleExpr):
    def to_json(self) -> dict:
        return {"atom": "IsSuccessorPair"}


def rule_from_json(tree: dict) -> RuleExpr:
    if not isinstance(tree, dict):
        raise ValueError(f"rule node must be an object, got {type(tree).__name__}")
    if "op" in tree:
        op = tree["op"]
        if op == "and":
            return And(tuple(rule_from_json(a) for a in tree["args"]))
        if op == "or":
            return Or(tuple(rule_from_json(a) for a in tree["args"]))
        if op == "not":
            return Not(rule_from_json(tree["arg"]))
        raise ValueError(f"unknown rule operator {op!r}")
    atom = tree.get("atom")
    if atom == "IsEmpty":
        return IsEmpty()
    if atom == "CardAtLeast":
        return CardAtLeast(int(tree["k"]))
    if atom == "CardAtMost":
        return CardAtMost(int(tree["k"]))
    if atom == "IsFinite":
        return IsFinite()
    if atom == "ContainsSentence":
        return ContainsSentence(int(tree["e"]))
    if atom == "ContainsModel":
        return ContainsModel()
    if atom == "EqualsSet":
        if "complement" in tree:
            return EqualsSet(SentenceSet.cofinite_of(tree["complement"]))
        return EqualsSet(SentenceSet.of(tree["elements"]))
    if atom == "IsComplementOfSingleton":
        return IsComplementOfSingleton()
    if atom == "IsSuccessorPair":
        return IsSuccessorPair()
    raise ValueError(f"unknown rule atom {atom!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(
    rule: RuleExpr,
    subset: SentenceSet,
    carrier: Carrier,
    model: int | None = None,
    in_set: bool | None = None,
) -> bool:
    """Evaluate ``rule`` on ``(model, subset)``.

    ``in_set`` pins the value of the ``ContainsModel`` atom without naming a
    model; exactly one of ``model`` / ``in_set`` must be given when the rule
    mentions the atom.
    """
    if isinstance(rule, And):
        return all(evaluate(a, subset, carrier, model, in_set) for a in rule.args)
    if isinstance(rule, Or):
        return any(evaluate(a, subset, carrier, model, in_set) for a in rule.args)
    if isinstance(rule, Not):
        return not evaluate(rule.arg, subset, carrier, model, in_set)
    if isinstance(rule, IsEmpty):
        return subset.is_empty()
    if isinstance(rule, CardAtLeast):
        return True if subset.cofinite else len(subset.elems) >= rule.k
    if isinstance(rule, CardAtMost):
        return False if subset.cofinite else len(subset.elems) <= rule.k
    if isinstance(rule, IsFinite):
        return not subset.cofinite
    if isinstance(rule, ContainsSentence):
        return rule.e in subset
    if isinstance(rule, ContainsModel):
        if in_set is not None:
            return in_set
        if model is None:
            raise ValueError("ContainsModel atom needs a model or a pinned value")
        return model in subset
    if isinstance(rule, EqualsSet):
        return subset == rule.s
    if isinstance(rule, IsComplementOfSingleton):
        if carrier.size is None:
            return subset.cofinite and len(subset.elems) == 1
        return not subset.cofinite and len(subset.elems) == carrier.size - 1
    if isinstance(rule, IsSuccessorPair):
        if subset.cofinite or len(subset.elems) != 2:
            return False
        a, b = subset.elems
        return b == a + 1
    raise TypeError(f"not a rule node: {rule!r}")


def uses_contains_model(rule: RuleExpr) -> bool:
    if isinstance(rule, ContainsModel):
        return True
    if isinstance(rule, (And, Or)):
        return any(uses_contains_model(a) for a in rule.args)
    if isinstance(rule, Not):
        return uses_contains_model(rule.arg)
    return False


def _walk(rule: RuleExpr) -> Iterator[RuleExpr]:
    yield rule
    if isinstance(rule, (And, Or)):
        for a in rule.args:
            yield from _walk(a)
    elif isinstance(rule, Not):
        yield from _walk(rule.arg)


# ---------------------------------------------------------------------------
# Analysis: windows and exactness bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RuleAnalysis:
    """Distinguished sentences and quantifier-reduction bounds for a rule."""

    constants: tuple[int, ...]
    max_card: int
    contains_model: bool
    has_cofinite_equals: bool
    window: int          # sentences 0..window are distinguished
    required_bound: int  # representable-set bound sufficient for exactness

    def exact_at(self, bound: int) -> bool:
        return bound >= self.required_bound and not self.has_cofinite_equals


def analyze(rule: RuleExpr) -> RuleAnalysis:
    constants: set[int] = set()
    max_card = 0
    cof_equals = False
    for node in _walk(rule):
        if isinstance(node, ContainsSentence):
            constants.add(node.e)
        elif isinstance(node, EqualsSet):
            constants.update(node.s.elems)
            if node.s.cofinite:
                cof_equals = True
        elif isinstance(node, (CardAtLeast, CardAtMost)):
            max_card = max(max_card, node.k)
        elif isinstance(node, IsSuccessorPair):
            max_card = max(max_card, 2)
    window = (max(constants) if constants else -1) + max_card + 3
    required = max(3, len(constants) + max_card + 2)
    return RuleAnalysis(
        constants=tuple(sorted(constants)),
        max_card=max_card,
        contains_model=uses_contains_model(rule),
        has_cofinite_equals=cof_equals,
        window=window,
        required_bound=required,
    )


# ---------------------------------------------------------------------------
# Exact primitives over countable carriers
# ---------------------------------------------------------------------------


def sat_on_models(
    rule: RuleExpr,
    subset: SentenceSet,
    carrier: Carrier,
    model_count: int | None,
    model_set: SentenceSet | None = None,
) -> bool:
    """Whether some model (optionally restricted to ``model_set``) satisfies
    ``subset`` under ``rule``.  Exact: the rule sees a model only through the
    ``ContainsModel`` atom, so the existential splits into the member and
    non-member branches."""
    if model_count is not None:
        models: Iterable[int] = range(model_count)
        if model_set is not None:
            models = [m for m in models if m in model_set]
        return any(evaluate(rule, subset, carrier, model=m) for m in models)
    if model_set is not None and not model_set.cofinite:
        return any(evaluate(rule, subset, carrier, model=m) for m in model_set.elems)
    if not uses_contains_model(rule):
        if model_set is not None and model_set.cofinite is False and not model_set.elems:
            return False
        return evaluate(rule, subset, carrier, in_set=False)
    domain = SentenceSet.cofinite_of(()) if model_set is None else model_set
    inside = domain.intersection(subset)
    outside = domain.difference(subset)
    if not inside.is_empty() and evaluate(rule, subset, carrier, in_set=True):
        return True
    if not outside.is_empty() and evaluate(rule, subset, carrier, in_set=False):
        return True
    return False


def model_set_of(
    rule: RuleExpr,
    subset: SentenceSet,
    carrier: Carrier,
    model_count: int | None,
) -> SentenceSet:
    """The set of models satisfying ``subset``, as a finite-or-cofinite set."""
    if model_count is not None:
        return SentenceSet.of(
            m for m in range(model_count) if evaluate(rule, subset, carrier, model=m)
        )
    if not uses_contains_model(rule):
        value = evaluate(rule, subset, carrier, in_set=False)
        return SentenceSet.cofinite_of(()) if value else SentenceSet.empty()
    members = SentenceSet.empty()
    if evaluate(rule, subset, carrier, in_set=True):
        members = members.union(subset)
    if evaluate(rule, subset, carrier, in_set=False):
        members = members.union(subset.complement(carrier))
    return members


def singleton_true_set(
    rule: RuleExpr, carrier: Carrier, model: int, window: int
) -> SentenceSet:
    """``{a : model satisfies {a}}`` for a countable-carrier rule.

    Singleton truth is eventually constant in ``a`` beyond the rule's
    constants and the model's own index, so the set is finite or cofinite.
    """
    special = set(range(window + 1)) | {model}
    generic = max(special) + 2
    tail = evaluate(rule, SentenceSet.singleton(generic), carrier, model=model)
    if tail:
        non = [a for a in sorted(special)
               if not evaluate(rule, SentenceSet.singleton(a), carrier, model=model)]
        return SentenceSet.cofinite_of(non)
    mem = [a for a in sorted(special)
           if evaluate(rule, SentenceSet.singleton(a), carrier, model=model)]
    return SentenceSet.of(mem)


# ---------------------------------------------------------------------------
# Candidate generation for quantifier reduction
# ---------------------------------------------------------------------------


def quantifier_pool(analysis: RuleAnalysis, extra: Iterable[int] = ()) -> tuple[int, ...]:
    """Distinguished window plus generic tail runs, merged with ``extra``."""
    pts = set(range(analysis.window + 1))
    pts.update(e for e in extra if e >= 0)
    base = max(pts) + 2
    run = analysis.max_card + 3
    pts.update(range(base, base + run))            # adjacent generic run
    spread_base = base + run + 2
    pts.update(spread_base + 2 * i for i in range(run))  # pairwise non-adjacent
    return tuple(sorted(pts))


def candidate_sets(
    pool: Iterable[int],
    bound: int,
    pins: tuple[int, ...] = (),
    include_cofinite: bool = True,
) -> list[SentenceSet]:
    """Finite sets ``pins + X`` (X from the pool) and cofinite sets whose
    complement avoids the pins, in deterministic (cardinality, lex) order."""
    pool = tuple(sorted(set(pool) - set(pins)))
    out: list[SentenceSet] = []
    room = max(0, bound - len(pins))
    for size in range(room + 1):
        for combo in itertools.combinations(pool, size):
            out.append(SentenceSet.of(pins + combo))
    if include_cofinite:
        for size in range(min(bound, len(pool)) + 1):
            for combo in itertools.combinations(pool, size):
                out.append(SentenceSet.cofinite_of(combo))
    return out


# ---------------------------------------------------------------------------
# Exact finite-satisfiability search
# ---------------------------------------------------------------------------


class CountableRuleEngine:
    """Exact satisfiability and finite-satisfiability for one rule-based
    structure over a countable carrier, with memoization.

    ``exact`` reports whether the configured bound is high enough for the
    quantifier reduction to be complete for this rule; callers downgrade
    verdicts to unknown when it is not.
    """

    def __init__(
        self,
        rule: RuleExpr,
        carrier: Carrier,
        model_count: int | None,
        bound: int,
        model_set: SentenceSet | None = None,
    ) -> None:
        self.rule = rule
        self.carrier = carrier
        self.model_count = model_count
        self.model_set = model_set
        self.bound = bound
        self.analysis = analyze(rule)
        self.exact = self.analysis.exact_at(bound)
        self._sat_cache: dict[SentenceSet, bool] = {}

    # -- primitives --------------------------------------------------------

    def sat(self, subset: SentenceSet) -> bool:
        hit = self._sat_cache.get(subset)
        if hit is None:
            hit = sat_on_models(
                self.rule, subset, self.carrier, self.model_count, self.model_set
            )
            self._sat_cache[subset] = hit
        return hit

    def unsat(self, subset: SentenceSet) -> bool:
        return not self.sat(subset)

    def proper(self, subset: SentenceSet) -> bool:
        return subset.is_proper(self.carrier)

    def unsat_finite_subset(self, subset: SentenceSet) -> SentenceSet | None:
        """Least (cardinality, lex) unsatisfiable finite subset, or None.

        Exact for this rule vocabulary: an unsatisfiable finite subset can
        always be relocated onto the distinguished window plus generic tail
        elements of ``subset`` without changing any atom's view of it.
        """
        ana = self.analysis
        if not subset.cofinite:
            elems = subset.elems
            if len(elems) <= 2 * ana.required_bound + 4:
                limit = len(elems)
                for size in range(limit + 1):
                    for combo in itertools.combinations(elems, size):
                        if self.unsat(SentenceSet.of(combo)):
                            return SentenceSet.of(combo)
                return None
            pool = self._member_pool(subset)
        else:
            pool = self._member_pool(subset)
        for size in range(ana.required_bound + 1):
            for combo in itertools.combinations(pool, size):
                cand = SentenceSet.of(combo)
                if self.unsat(cand):
                    return cand
        return None

    def finsat(self, subset: SentenceSet) -> bool:
        return self.unsat_finite_subset(subset) is None

    def _member_pool(self, subset: SentenceSet) -> tuple[int, ...]:
        """Members of ``subset`` sufficient to realize every finite-subset
        atom profile: the window part, complement-hole neighbours, and two
        generic tail runs past everything the set or the rule distinguishes."""
        ana = self.analysis
        pts: set[int] = set()
        horizon = ana.window
        if subset.cofinite:
            for c in subset.elems:
                pts.update(p for p in (c - 1, c + 1) if p >= 0 and p in subset)
            horizon = max([horizon, *subset.elems, 0])
            pts.update(p for p in range(ana.window + 1) if p in subset)
            base = horizon + 2
            run = ana.max_card + 3
            pts.update(range(base, base + run))
            spread = base + run + 2
            pts.update(spread + 2 * i for i in range(run))
        else:
            window_part = [e for e in subset.elems if e <= ana.window]
            beyond = [e for e in subset.elems if e > ana.window]
            pts.update(window_part)
            sample = beyond[: ana.max_card + 4]
            pts.update(sample)
            present = set(subset.elems)
            for e in sample:
                if e + 1 in present:
                    pts.add(e + 1)
        return tuple(sorted(pts))

    # -- quantifier scaffolding ---------------------------------------------

    def sentence_window(self) -> list[int]:
        """Representatives for a universal sentence quantifier: the window
        plus one generic tail sentence (every sentence past the window
        behaves like it)."""
        return list(range(self.analysis.window + 1)) + [self.generic_sentence()]

    def generic_sentence(self) -> int:
        return self.analysis.window + 2

    def subset_candidates(self, pins: tuple[int, ...] = ()) -> list[SentenceSet]:
        pool = quantifier_pool(self.analysis, extra=[p + d for p in pins for d in (-1, 0, 1)])
        return candidate_sets(pool, self.bound, pins=pins)

    def partner_candidates(self, around: tuple[int, ...]) -> list[int]:
        """Candidate sentences for an inner existential quantifier."""
        pts = set(quantifier_pool(self.analysis))
        for a in around:
            pts.update(p for p in (a - 1, a, a + 1) if p >= 0)
        pts.add(max(pts) + 3)  # generic, adjacent to nothing relevant
        return sorted(pts)


@lru_cache(maxsize=None)
def materialize(rule: RuleExpr, sentences: int, models: int) -> tuple[int, ...]:
    """Explicit satisfaction rows for a rule read over a finite carrier."""
    carrier = Carrier(sentences)
    rows = []
    for m in range(models):
        row = 0
        for mask in range(1 << sentences):
            if evaluate(rule, SentenceSet.from_mask(mask), carrier, model=m):
                row |= 1 << mask
        rows.append(row)
    return tuple(rows)
