"""Purely imaginary / totally positive / totally negative, and quadruplets."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from .core import QElement, apply_y
from .errors import DomainError, ProfileViolation


class ElementClass(enum.Enum):
    PURELY_IMAGINARY = "PI"
    TOTALLY_POSITIVE = "TP"
    TOTALLY_NEGATIVE = "TN"

    def __str__(self) -> str:
        return self.value


PI = ElementClass.PURELY_IMAGINARY
TP = ElementClass.TOTALLY_POSITIVE
TN = ElementClass.TOTALLY_NEGATIVE


def classify(e: QElement) -> ElementClass:
    if e.a == 0:
        return PI
    return TP if e.a * e.c > 0 else TN


def member_order(e: QElement) -> tuple[int, int]:
    return (e.a, e.c)


@dataclass(frozen=True)
class Quadruplet:
    """The y-orbit ``{e, y(e), y^2(e), y^3(e)}`` of ``base``.

    ``members`` is sorted by ``(a, c)``.  It has four elements except for the
    two y-fixed points of Q*(sqrt(-1)), where it is a singleton.
    """

    members: tuple[QElement, ...]
    base: QElement = field(compare=False)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, e: QElement) -> bool:
        return e in self.members


def quadruplet(e: QElement) -> Quadruplet:
    seen = [e]
    cur = e
    for _ in range(3):
        cur = apply_y(cur)
        if cur == e:
            break
        seen.append(cur)
    return Quadruplet(tuple(sorted(set(seen), key=member_order)), e)


def is_tn_quadruplet(e: QElement) -> bool:
    """True iff e, y(e), y^2(e), y^3(e) are all totally negative.

    Decided by inequalities on ``e`` alone, without applying ``y``.
    """
    return tn_inequalities(e.a, e.b, e.c)


def tn_inequalities(a: int, b: int, c: int) -> bool:
    if a * c >= 0:
        return False
    a, b, c = abs(a), abs(b), abs(c)
    return a < c and a < 2 * b and 3 * a < 2 * b + c


_ALLOWED_PROFILES = (
    Counter({TN: 4}),
    Counter({TP: 1, TN: 3}),
    Counter({PI: 1, TN: 3}),
)


def quadruplet_profile(q: Quadruplet) -> Counter:
    """Multiset of classes of the four members; only three shapes can occur."""
    if len(q) != 4:
        raise DomainError(f"profile needs four members, quadruplet of {q.base} has {len(q)}")
    profile = Counter(classify(m) for m in q.members)
    if profile not in _ALLOWED_PROFILES:
        raise ProfileViolation(f"quadruplet of {q.base} has profile {dict(profile)}")
    return profile


class ClassKind(enum.Enum):
    TN_QUADRUPLET = "TNQuadruplet"
    PI_PAIR = "PIPair"

    def __str__(self) -> str:
        return self.value


def class_key(e: QElement) -> tuple[int, int, int, int]:
    return (abs(e.a), abs(e.c), e.a, e.c)


@dataclass(frozen=True)
class CanonicalClass:
    """The distinguished subset of one orbit: a TN quadruplet or a PI pair.

    ``members`` is sorted by :func:`class_key`, so ``key`` is ``members[0]``.
    """

    kind: ClassKind
    members: tuple[QElement, ...]

    @classmethod
    def of(cls, kind: ClassKind, members) -> "CanonicalClass":
        return cls(kind, tuple(sorted(set(members), key=class_key)))

    @property
    def key(self) -> QElement:
        return self.members[0]

    def sort_key(self):
        return (self.kind.value, class_key(self.key))

    def __len__(self) -> int:
        return len(self.members)
