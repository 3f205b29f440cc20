"""Independent reference implementations used by the tests."""

from __future__ import annotations

import random
from decimal import Decimal
from itertools import permutations

from gdprtrace.annotation import Annotation, AnnotationSet, ConceptKind
from gdprtrace.corpus import ProvisionRef, Span

RUBRIC = {
    (True, True): Decimal("1"),
    (True, False): Decimal("0.9"),
    (False, True): Decimal("0.8"),
    (False, False): Decimal("0.7"),
}


def brute_force_best(candidate: AnnotationSet, gold: AnnotationSet):
    """Maximum total rubric score over every one-to-one gold/candidate assignment.

    Enumerates, for each gold annotation, which candidate (or none) it takes.
    Eligibility is recomputed here from raw offsets rather than reused.
    """
    golds, cands = list(gold.annotations), list(candidate.annotations)

    def value(g, c):
        if g.span.provision != c.span.provision:
            return None
        shared = min(g.span.end, c.span.end) - max(g.span.start, c.span.start)
        if shared < 1:
            return None
        exact = g.span.start == c.span.start and g.span.end == c.span.end
        return RUBRIC[(exact, g.concept == c.concept)]

    slots = cands + [None] * len(golds)
    best, best_assignment = Decimal(-1), None
    seen = set()
    for perm in permutations(range(len(slots)), len(golds)):
        key = tuple(p if p < len(cands) else None for p in perm)
        if key in seen:
            continue
        seen.add(key)
        total, ok = Decimal(0), True
        for g, k in zip(golds, key):
            if k is None:
                continue
            v = value(g, cands[k])
            if v is None:
                ok = False
                break
            total += v
        if ok and total > best:
            best, best_assignment = total, key
    return best, best_assignment


def random_sets(rng: random.Random, text_len: int = 30, max_per_side: int = 6):
    ref = ProvisionRef("DOC", "1", "1")
    kinds = list(ConceptKind)

    def make(prefix, n):
        out = []
        for i in range(n):
            start = rng.randrange(text_len - 1)
            end = rng.randrange(start + 1, min(text_len, start + 12) + 1)
            out.append(Annotation(f"{prefix}{i}", Span(ref, start, end), "", rng.choice(kinds)))
        return AnnotationSet("DOC", prefix, tuple(out))

    gold = make("g", rng.randint(0, max_per_side))
    cand = make("c", rng.randint(0, max_per_side))
    return cand, gold
