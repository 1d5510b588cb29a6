"""Divisor functions, signature sets and the two orbit-count formulas.

For ``n`` square-free, the number of H-orbits on Q*(sqrt(-n)) is computed in
two ways:

* enumeratively, as ``|PI(-n)| + |S(-n)|/2`` where ``S(-n)`` is the set of
  signatures ``(a, B, C)`` of totally negative quadruplets with ``a > 0``;
* in closed form, as a sum over ``i`` of ``d(m) - 2 d_{<=i//2}(m) - E_i(n)``
  with ``m = (i^2 + n)/2``.

Factorisation is trial division by default.  :func:`enable_sieve` installs a
smallest-prime-factor table for sweeps over many ``n``.
"""

from __future__ import annotations

import array
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt, prod

from .classification import CanonicalClass, ClassKind
from .core import QElement, apply_x, is_squarefree
from .errors import DomainError, InternalCheckError, NotSquareFree

_spf: array.array | None = None


def enable_sieve(limit: int) -> None:
    """Precompute smallest prime factors up to ``limit`` (inclusive)."""
    import numpy as np

    global _spf
    if _spf is not None and len(_spf) > limit:
        return
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.flatnonzero(spf == 0)
    spf[idx] = idx
    _spf = array.array("i", spf.tobytes())
    factorize.cache_clear()
    divisors.cache_clear()
    even_divisors.cache_clear()


def disable_sieve() -> None:
    global _spf
    _spf = None
    factorize.cache_clear()
    divisors.cache_clear()
    even_divisors.cache_clear()


def _trial_factorize(m: int) -> list[tuple[int, int]]:
    out = []
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    # candidates 6k +/- 1
    p, step = 5, 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if m > 1:
        out.append((m, 1))
    return out


def _sieve_factorize(m: int, spf: array.array) -> list[tuple[int, int]]:
    out = []
    while m > 1:
        p = spf[m]
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out.append((p, e))
    return out


@lru_cache(maxsize=8192)
def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``m >= 1`` as ``((p, e), ...)`` with p ascending."""
    if m < 1:
        raise DomainError(f"factorize needs m >= 1, got {m}")
    spf = _spf
    if spf is not None and m < len(spf):
        return tuple(_sieve_factorize(m, spf))
    return tuple(_trial_factorize(m))


@lru_cache(maxsize=8192)
def divisors(m: int) -> tuple[int, ...]:
    """All positive divisors of ``m``, ascending."""
    divs = [1]
    for p, e in factorize(m):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def divisor_count(m: int) -> int:
    """d(m), from the exponents of the factorisation."""
    if m < 1:
        raise DomainError(f"d(m) needs m >= 1, got {m}")
    return prod(e + 1 for _, e in factorize(m))


def divisor_count_at_most(m: int, k: int) -> int:
    """Number of positive divisors of ``m`` that are ``<= k``."""
    if m < 1 or not 0 <= k <= m:
        raise DomainError(f"d_<=k(m) needs m >= 1 and 0 <= k <= m, got m={m}, k={k}")
    return bisect_right(divisors(m), k)


@lru_cache(maxsize=8192)
def even_divisors(m: int) -> tuple[int, ...]:
    return tuple(d for d in divisors(m) if d % 2 == 0)


@dataclass(frozen=True, order=True)
class Signature:
    """``(a, B, C) = (a, -b, -c)`` for an element of a TN quadruplet with a > 0."""

    a: int
    B: int
    C: int

    def as_list(self) -> list[int]:
        return [self.a, self.B, self.C]

    def sort_key(self) -> tuple[int, int]:
        return (self.a, self.C)


def max_signature_a(n: int) -> int:
    """Largest ``a`` a signature can have: n for odd n, n/2 for even n."""
    return n if n % 2 else n // 2


def admissible_a(n: int) -> range:
    """Values of ``a`` that can occur in a signature, ascending."""
    return range(1, n + 1, 2) if n % 2 else range(2, n // 2 + 1, 2)


def _half_norm(n: int, i: int) -> int:
    m2 = i * i + n
    if m2 % 2:
        raise DomainError(f"i={i} and n={n} must have the same parity")
    return m2 // 2


def signature_set_for_a(n: int, i: int, *, enforce_bound: bool = True) -> list[Signature]:
    """Signatures with first coordinate ``i``, sorted by C.

    With ``enforce_bound=False`` any ``i >= 1`` of the right parity is
    accepted; the result should then be empty past :func:`max_signature_a`.
    """
    if i < 1:
        raise DomainError(f"signature a must be positive, got {i}")
    m = 2 * _half_norm(n, i)
    if enforce_bound and i > max_signature_a(n):
        raise DomainError(f"a={i} exceeds the bound {max_signature_a(n)} for n={n}")
    out = []
    for C in even_divisors(m):
        B = m // C
        if i < C and i < 2 * B and 3 * i < 2 * B + C:
            out.append(Signature(i, B, C))
    return out


def signature_set(n: int) -> list[Signature]:
    """All signatures for ``n``, sorted by ``(a, C)``."""
    out = []
    for i in admissible_a(n):
        out.extend(signature_set_for_a(n, i))
    return out


def bound_violations(n: int, scan_to: int | None = None) -> list[Signature]:
    """Signatures with ``max_signature_a(n) < a <= scan_to`` (default 3n)."""
    scan_to = 3 * n if scan_to is None else scan_to
    lo = max_signature_a(n) + 1
    if (lo - n) % 2:
        lo += 1
    out = []
    for i in range(lo, scan_to + 1, 2):
        out.extend(signature_set_for_a(n, i, enforce_bound=False))
    return out


def correction_term(n: int, i: int) -> int:
    """E_i(n): even divisors C of i^2+n with 2(i^2+n)/C + C <= 3i."""
    m = 2 * _half_norm(n, i)
    return sum(1 for C in even_divisors(m) if 2 * (m // C) + C <= 3 * i)


def pi_elements(n: int) -> list[QElement]:
    """Purely imaginary elements sqrt(-n)/c, sorted by c; empty for odd n."""
    out = []
    for d in divisors(n):
        if d % 2 == 0:
            out.append(QElement(0, n // d, d, n))
            out.append(QElement(0, -(n // d), -d, n))
    return sorted(out, key=lambda e: e.c)


def pi_pairs(n: int) -> list[CanonicalClass]:
    """The pairs {e, x(e)} of purely imaginary elements (singletons for n=2)."""
    if n % 2:
        raise DomainError(f"purely imaginary elements need even n, got {n}")
    classes = {CanonicalClass.of(ClassKind.PI_PAIR, (e, apply_x(e))) for e in pi_elements(n)}
    return sorted(classes, key=CanonicalClass.sort_key)


def require_squarefree(n: int) -> None:
    if n < 1 or not is_squarefree(n):
        raise NotSquareFree(f"n must be a positive square-free integer, got {n}")


@dataclass
class OrbitReport:
    n: int
    orbit_count: int
    tn_count: int
    pi_pair_count: int
    per_i_signatures: dict[int, list[Signature]] = field(default_factory=dict)
    per_i_E: dict[int, int] = field(default_factory=dict)
    closed_form_count: int = 0
    enumerative_count: int = 0

    @property
    def signature_count(self) -> int:
        return sum(len(s) for s in self.per_i_signatures.values())

    def failed_checks(self) -> list[str]:
        """Names of internal cross-checks this report violates."""
        failed = []
        if not self.closed_form_count == self.enumerative_count == self.orbit_count:
            failed.append("formula-equality")
        if self.n > 2 and self.signature_count % 4:
            failed.append("signatures-mod-4")
        return failed

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "orbit_count": self.orbit_count,
            "enumerative_count": self.enumerative_count,
            "closed_form_count": self.closed_form_count,
            "tn_count": self.tn_count,
            "pi_pair_count": self.pi_pair_count,
            "signatures": {
                str(i): [s.as_list() for s in sigs] for i, sigs in self.per_i_signatures.items()
            },
            "E": {str(i): e for i, e in self.per_i_E.items()},
        }


def orbit_count_enumerative(n: int) -> OrbitReport:
    """Count orbits as |TN(-n)| (+ |PI(-n)| for even n) and report the details."""
    require_squarefree(n)
    per_i = {i: signature_set_for_a(n, i) for i in admissible_a(n)}
    per_e = {i: correction_term(n, i) for i in admissible_a(n)}
    n_sig = sum(len(s) for s in per_i.values())
    if n == 1:
        # both y-fixed points are singleton quadruplets
        tn = 2
    elif n == 2:
        tn = 0
    else:
        tn = n_sig // 2
    pi = len(pi_pairs(n)) if n % 2 == 0 else 0
    count = tn + pi
    return OrbitReport(
        n=n,
        orbit_count=count,
        tn_count=tn,
        pi_pair_count=pi,
        per_i_signatures=per_i,
        per_i_E=per_e,
        closed_form_count=orbit_count_closed_form(n),
        enumerative_count=count,
    )


def orbit_count_closed_form(n: int) -> int:
    """Orbit count from divisor functions alone, without listing signatures."""
    require_squarefree(n)
    if n in (1, 2):
        return 2
    total = 0
    for i in admissible_a(n):
        m = _half_norm(n, i)
        total += divisor_count(m) - 2 * divisor_count_at_most(m, i // 2) - correction_term(n, i)
    if total % 2:
        raise InternalCheckError(f"closed-form sum for n={n} is odd ({total})")
    base = divisor_count(n // 2) if n % 2 == 0 else 0
    return base + total // 2
