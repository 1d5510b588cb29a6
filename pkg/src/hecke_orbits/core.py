"""Elements of Q*(sqrt(-n)) and the action of the Hecke group H(lambda_4).

An element ``(a + sqrt(-n))/c`` is stored as the integer quadruple
``(a, b, c, n)`` with ``b = (a**2 + n) / c``.  The group is generated by

    x: z -> -1/(2z)          (order 2)
    y: z -> -1/(2(z + 1))    (order 4)

and acts on the quadruples by integer formulas.  :func:`transform_direct`
evaluates the same maps in the field itself, which gives an independent
check on those formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import (
    ArithmeticOverflow,
    InvalidWord,
    NotEven,
    NotIntegral,
    NotSquareFree,
    TableMismatch,
    ValidationError,
)

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


def _checked(*values: int) -> None:
    for v in values:
        if not INT64_MIN <= v <= INT64_MAX:
            raise ArithmeticOverflow(f"value {v} exceeds the signed 64-bit range")


def is_squarefree(n: int) -> bool:
    """Return True iff no square of a prime divides ``n`` (trial division)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n % 4 == 0:
        return False
    if n % 2 == 0:
        n //= 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
        p += 2
    return True


@dataclass(frozen=True)
class QElement:
    """The element ``(a + sqrt(-n))/c`` of Q*(sqrt(-n)).

    Equality is equality of all four integers.  Construct validated
    instances through :func:`make_element`; the constructor itself only
    re-checks the cheap invariants (``b*c == a**2 + n``, ``c`` even, range).
    """

    a: int
    b: int
    c: int
    n: int

    def __post_init__(self):
        a, b, c, n = self.a, self.b, self.c, self.n
        _checked(a, b, c, n, a * a + n)
        if __debug__:
            if c == 0 or c % 2:
                raise NotEven(f"denominator must be even and nonzero, got c={c}")
            if b * c != a * a + n:
                raise NotIntegral(f"b*c != a^2+n for (a, b, c, n)=({a}, {b}, {c}, {n})")

    def __str__(self) -> str:
        return f"({self.a} + sqrt(-{self.n}))/{self.c}"

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def approx(self) -> complex:
        """Floating-point value, for display only."""
        return complex(self.a / self.c, (self.n ** 0.5) / self.c)


def make_element(a: int, c: int, n: int) -> QElement:
    """Build ``(a + sqrt(-n))/c``, deriving ``b`` and validating everything.

    >>> make_element(2, 2, 2)
    QElement(a=2, b=3, c=2, n=2)
    """
    if n < 1:
        raise NotSquareFree(f"n must be a positive square-free integer, got {n}")
    _checked(a, c, n)
    if not is_squarefree(n):
        raise NotSquareFree(f"n must be square-free, got {n}")
    if c == 0 or c % 2:
        raise NotEven(f"denominator must be even and nonzero, got c={c}")
    num = a * a + n
    _checked(num)
    if num % c:
        raise NotIntegral(f"c={c} does not divide a^2+n={num}")
    return QElement(a, num // c, c, n)


def apply_x(e: QElement) -> QElement:
    return QElement(-e.a, e.c // 2, 2 * e.b, e.n)


def apply_y(e: QElement) -> QElement:
    a, b, c = e.a, e.b, e.c
    return QElement(-a - c, c // 2, 2 * (2 * a + b + c), e.n)


def _y_squared_row(e: QElement) -> QElement:
    a, b, c = e.a, e.b, e.c
    return QElement(-3 * a - 2 * b - c, 2 * a + b + c, 4 * a + 4 * b + c, e.n)


def _y_cubed_row(e: QElement) -> QElement:
    a, b, c = e.a, e.b, e.c
    return QElement(-a - 2 * b, (4 * a + 4 * b + c) // 2, 2 * b, e.n)


_CLOSED_ROWS = {2: _y_squared_row, 3: _y_cubed_row}


def apply_y_power(e: QElement, k: int) -> QElement:
    """Apply ``y**k`` for ``k`` in 0..3.

    For ``k`` of 2 or 3 the result is computed both by iterating ``y`` and by
    the closed-form row, and the two must agree.
    """
    if k not in (0, 1, 2, 3):
        raise ValueError(f"y has order 4; power must be in 0..3, got {k}")
    out = e
    for _ in range(k):
        out = apply_y(out)
    row = _CLOSED_ROWS.get(k)
    if row is not None:
        closed = row(e)
        if closed != out:
            raise TableMismatch(f"y^{k}({e}): iterated {out} but closed form {closed}")
    return out


@dataclass(frozen=True)
class GroupWord:
    """A freely reduced word over ``X`` and ``Y``, applied right to left.

    ``GroupWord("XY")`` applied to ``e`` is ``x(y(e))``.  Words containing
    ``XX`` or ``YYYY`` are rejected; use :meth:`reduce` to normalise.
    """

    letters: str = ""

    def __post_init__(self):
        bad = set(self.letters) - {"X", "Y"}
        if bad:
            raise InvalidWord(f"letters must be X or Y, got {sorted(bad)}")
        if "XX" in self.letters or "YYYY" in self.letters:
            raise InvalidWord(f"word {self.letters!r} is not freely reduced")

    @classmethod
    def reduce(cls, letters: str) -> "GroupWord":
        """Cancel ``XX`` and ``YYYY`` until the word is freely reduced."""
        stack: list[str] = []
        for ch in letters:
            stack.append(ch)
            if stack[-2:] == ["X", "X"]:
                del stack[-2:]
            elif stack[-4:] == ["Y"] * 4:
                del stack[-4:]
        return cls("".join(stack))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        # (self * other)(e) == self(other(e))
        return GroupWord.reduce(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.letters or "1"


def apply_word(e: QElement, w: GroupWord | str) -> QElement:
    letters = w.letters if isinstance(w, GroupWord) else GroupWord(w).letters
    for ch in reversed(letters):
        e = apply_x(e) if ch == "X" else apply_y(e)
    return e


def _field_inverse(p: Fraction, q: Fraction, n: int) -> tuple[Fraction, Fraction]:
    # 1/(p + q*s) with s^2 = -n
    norm = p * p + n * q * q
    return p / norm, -q / norm


def transform_direct(e: QElement, t: str) -> QElement:
    """Evaluate the Moebius map for generator ``t`` ("X" or "Y") in the field.

    Works with exact rationals in Q(sqrt(-n)) and rewrites the result in the
    form ``(a' + sqrt(-n))/c'``; it never touches the integer table used by
    :func:`apply_x` and :func:`apply_y`.
    """
    n = e.n
    p, q = Fraction(e.a, e.c), Fraction(1, e.c)
    if t == "X":
        dp, dq = 2 * p, 2 * q
    elif t == "Y":
        dp, dq = 2 * (p + 1), 2 * q
    else:
        raise InvalidWord(f"generator must be 'X' or 'Y', got {t!r}")
    ip, iq = _field_inverse(dp, dq, n)
    r, s = -ip, -iq
    # r + s*sqrt(-n) == (a' + sqrt(-n))/c'  =>  c' = 1/s, a' = r/s
    c_new = 1 / s
    a_new = r / s
    if c_new.denominator != 1 or a_new.denominator != 1:
        raise ValidationError(f"{t}({e}) left Q*(sqrt(-{n}))")
    c_new, a_new = int(c_new), int(a_new)
    _checked(a_new, c_new, a_new * a_new + n)
    num = a_new * a_new + n
    if c_new % 2 or num % c_new:
        raise ValidationError(f"{t}({e}) left Q*(sqrt(-{n}))")
    return QElement(a_new, num // c_new, c_new, n)


def conjugate(e: QElement) -> QElement:
    """Complex conjugate ``(-a + sqrt(-n))/(-c)``."""
    return QElement(-e.a, -e.b, -e.c, e.n)
