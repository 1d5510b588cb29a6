"""Reduction of any element to the canonical class of its orbit.

Every orbit contains exactly one totally negative quadruplet or exactly one
pair ``{e, x(e)}`` of purely imaginary elements.  :func:`reduce_to_canonical`
walks to it: from a totally positive element apply ``x``; from a totally
negative element whose quadruplet is not totally negative, move by a power of
``y`` to the single member that is not totally negative.  The totally
positive elements met on the way have strictly decreasing ``|a|``, so the walk
ends.

:func:`enumerate_canonical_classes` lists the canonical classes directly,
without any walking, and serves as the cross-check for both the reduction
and the counting formulas.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .classification import (
    PI,
    TN,
    TP,
    CanonicalClass,
    ClassKind,
    ElementClass,
    classify,
    is_tn_quadruplet,
    quadruplet,
    tn_inequalities,
)
from .core import GroupWord, QElement, apply_x, apply_y
from .counting import (
    require_squarefree,
    even_divisors,
    max_signature_a,
    pi_elements,
)
from .errors import (
    DomainError,
    InternalCheckError,
    MismatchedField,
    NonTermination,
    ProfileViolation,
)

__all__ = [
    "CanonicalClass",
    "ClassKind",
    "ReductionStep",
    "ReductionTrace",
    "reduce_to_canonical",
    "canonical_class",
    "enumerate_canonical_classes",
    "same_orbit",
    "sample_elements",
    "OrbitGraph",
    "local_orbit_graph",
]

MAX_GRAPH_DEPTH = 12


@dataclass(frozen=True)
class ReductionStep:
    word: str  # "X", "Y", "YY" or "YYY"
    element: QElement
    cls: ElementClass


@dataclass
class ReductionTrace:
    start: QElement
    steps: list[ReductionStep]
    end_class: CanonicalClass
    witness: GroupWord

    @property
    def end(self) -> QElement:
        return self.steps[-1].element if self.steps else self.start

    def positive_milestones(self) -> list[QElement]:
        """Totally positive elements visited, in order (start included)."""
        visited = [self.start] + [s.element for s in self.steps]
        return [e for e in visited if classify(e) is TP]


def _pi_pair(e: QElement) -> CanonicalClass:
    return CanonicalClass.of(ClassKind.PI_PAIR, (e, apply_x(e)))


def _tn_class(e: QElement) -> CanonicalClass:
    return CanonicalClass.of(ClassKind.TN_QUADRUPLET, quadruplet(e).members)


def _descend(e: QElement) -> tuple[list[tuple[str, int, int, int]], ElementClass]:
    """Run the descent on bare integers.

    Returns the steps as ``(word, a, b, c)`` and the class (PI or TN) of the
    final element.  This loop is hot; the TN test is inlined.
    """
    a, b, c = e.a, e.b, e.c
    budget = 10 * (abs(a) + abs(c))
    steps = []
    append = steps.append
    last_positive = None
    while True:
        if a == 0:
            if e.n % 2:
                raise InternalCheckError(f"purely imaginary element reached from {e} for odd n")
            return steps, PI
        if (a > 0) == (c > 0):
            abs_a = a if a > 0 else -a
            if last_positive is not None and abs_a >= last_positive:
                raise NonTermination(f"|a| did not decrease at a={a} (start {e})")
            last_positive = abs_a
            a, b, c = -a, c // 2, 2 * b
            append(("X", a, b, c))
        else:
            # b and c share a sign, so |2b + c| = 2|b| + |c|
            if a > 0:
                if a < -c and a < -2 * b and 3 * a < -2 * b - c:
                    return steps, TN
            elif -a < c and -a < 2 * b and -3 * a < 2 * b + c:
                return steps, TN
            exit_ = None
            ya, yb, yc = a, b, c
            for k in (1, 2, 3):
                ya, yb, yc = -ya - yc, yc // 2, 2 * (2 * ya + yb + yc)
                if ya == 0 or (ya > 0) == (yc > 0):
                    if exit_ is not None:
                        raise ProfileViolation(f"two non-TN members in the quadruplet of ({a}, {b}, {c})")
                    exit_ = (k, ya, yb, yc)
            if exit_ is None:
                raise ProfileViolation(f"({a}, {b}, {c}) fails the TN test but its quadruplet is all TN")
            k, a, b, c = exit_
            append(("Y" * k, a, b, c))
        if len(steps) > budget:
            raise NonTermination(f"reduction of {e} exceeded {budget} steps")


def _end_class(end: QElement, kind: ElementClass) -> CanonicalClass:
    return _pi_pair(end) if kind is PI else _tn_class(end)


def reduce_to_canonical(e: QElement) -> ReductionTrace:
    raw, kind = _descend(e)
    steps = []
    for word, a, b, c in raw:
        el = QElement(a, b, c, e.n)
        steps.append(ReductionStep(word, el, classify(el)))
    end = steps[-1].element if steps else e
    witness = GroupWord("".join(s.word for s in reversed(steps)))
    return ReductionTrace(e, steps, _end_class(end, kind), witness)


def canonical_class(e: QElement) -> CanonicalClass:
    """End class of :func:`reduce_to_canonical` without building the trace."""
    raw, kind = _descend(e)
    end = QElement(*raw[-1][1:], e.n) if raw else e
    return _end_class(end, kind)


def enumerate_canonical_classes(n: int) -> list[CanonicalClass]:
    """All canonical classes for ``n`` by direct search, sorted by kind then key.

    Scans every ``a`` with ``|a|`` up to the signature bound and every even
    divisor ``c`` of ``a^2 + n`` of either sign.
    """
    require_squarefree(n)
    classes: set[CanonicalClass] = set()
    for e in pi_elements(n):
        classes.add(_pi_pair(e))
    bound = max_signature_a(n)
    seen: set[QElement] = set()
    for a in range(-bound, bound + 1):
        if a == 0 or (a - n) % 2:
            continue
        m = a * a + n
        for d in even_divisors(m):
            for c in (d, -d):
                if not tn_inequalities(a, m // c, c):
                    continue
                e = QElement(a, m // c, c, n)
                if e in seen:
                    continue
                cls = _tn_class(e)
                seen.update(cls.members)
                classes.add(cls)
    return sorted(classes, key=CanonicalClass.sort_key)


def same_orbit(e1: QElement, e2: QElement) -> bool:
    if e1.n != e2.n:
        raise MismatchedField(f"elements live in different fields: n={e1.n} vs n={e2.n}")
    return canonical_class(e1) == canonical_class(e2)


def sample_elements(n: int, bound_a: int, seed: int) -> Iterator[QElement]:
    """Endless reproducible stream of random elements with ``|a| <= bound_a``."""
    require_squarefree(n)
    choices = [a for a in range(-bound_a, bound_a + 1) if (a - n) % 2 == 0]
    if not choices:
        raise DomainError(f"no a in [-{bound_a}, {bound_a}] has the parity of n={n}")
    rng = random.Random(seed)
    while True:
        a = rng.choice(choices)
        m = a * a + n
        c = rng.choice(even_divisors(m)) * rng.choice((1, -1))
        yield QElement(a, m // c, c, n)


@dataclass
class OrbitGraph:
    """Breadth-first neighbourhood of an element under x and y.

    ``nodes`` are in discovery order; ``edges`` are ``(src, label, dst)``
    index triples.
    """

    root: QElement
    depth: int
    nodes: list[QElement] = field(default_factory=list)
    edges: list[tuple[int, str, int]] = field(default_factory=list)

    def tn_quadruplets(self) -> set[CanonicalClass]:
        return {_tn_class(v) for v in self.nodes if is_tn_quadruplet(v)}

    def to_dot(self) -> str:
        lines = [f'digraph "orbit n={self.root.n}" {{']
        for i, v in enumerate(self.nodes):
            lines.append(f'  v{i} [label="{v}", class="{classify(v)}"];')
        for src, label, dst in self.edges:
            lines.append(f'  v{src} -> v{dst} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def local_orbit_graph(e: QElement, depth: int) -> OrbitGraph:
    if not 0 <= depth <= MAX_GRAPH_DEPTH:
        raise DomainError(f"depth must be in 0..{MAX_GRAPH_DEPTH}, got {depth}")
    g = OrbitGraph(e, depth, [e])
    index = {e: 0}
    frontier = [e]
    for _ in range(depth):
        nxt = []
        for v in frontier:
            for label, f in (("X", apply_x), ("Y", apply_y)):
                w = f(v)
                if w not in index:
                    index[w] = len(g.nodes)
                    g.nodes.append(w)
                    nxt.append(w)
                g.edges.append((index[v], label, index[w]))
        frontier = nxt
    return g
