"""Additive representations involving practical numbers.

Every n = 1 (mod 8) splits as x^2 + P with P practical, by a
power-of-two-accurate square root: with m = floor(log2 sqrt(n)) there is an
odd x <= 2^m - 1 whose square matches n modulo 2^(m+2), leaving
P = 2^(m+2) s with s <= 2^m, practical because s <= sigma(2^(m+2)) + 1.

For every other residue j mod 8 (j != 1) a congruence class exists whose
members are never a square plus a practical number; verify_not_representable
checks that exhaustively for any single m.  Goldbach-style facts (every
even number is a sum of two practical numbers; practical triples m-2, m,
m+2) are verified against the sieve, and the chain 88, 8888, 88888888, ...
yields arbitrarily large palindromic practical numbers certified without
ever factoring them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import crt_solve
from .errors import InvalidInput, InvalidJ, InvalidResidue, NotFound
from .practical import (
    MultiplierCertificate,
    PracticalityVerdict,
    certify_product,
    is_practical,
    is_practical_quick,
)
from .sieve import PracticalBitmap, sieve_practicals

NON_REPRESENTABLE_J = (0, 2, 3, 4, 5, 6, 7)

# Congruence systems whose members m are never x^2 + practical: each class
# forces v2(m - x^2) below the useful range while the listed odd primes
# never divide m - x^2.
_FAMILY_CONGRUENCES = {
    0: ((24, 32), (2, 3), (2, 5), (6, 7), (10, 11), (2, 13)),
    4: ((12, 16), (2, 3), (2, 5), (6, 7), (10, 11), (2, 13)),
    5: ((5, 8), (2, 3), (2, 5), (6, 7)),
    2: ((2, 24),),
    3: ((11, 24),),
    6: ((14, 24),),
    7: ((23, 24),),
}

# The mod-24 classes block every practical remainder m - x^2 except the
# listed offsets (1 and 2 are practical, have trivial odd part, and their
# 2-adic valuation fits under the class's ceiling), so members where m - o
# is a perfect square must be dropped.  For j = 7 neither m-1 nor m-2 can
# be a square (6 and 5 mod 8 are non-residues); the mod-32/16 systems of
# j = 0, 4, 5 exclude 1, 2, 4 and 8 outright (checked exhaustively in the
# tests).  Without the offset-2 exclusion the j = 2, 3, 6 classes leak:
# 11 = 3^2 + 2, 38 = 6^2 + 2, 146 = 12^2 + 2.
_FAMILY_SQUARE_EXCLUSIONS = {
    2: (1, 2),
    3: (2,),
    6: (2,),
}


@dataclass(frozen=True)
class SquareDecomposition:
    n: int
    x: int
    practical_part: int
    m: int  # floor(log2 sqrt(n))
    s: int  # practical_part == 2^(m+2) * s
    certificate: MultiplierCertificate


@dataclass(frozen=True)
class FamilySpec:
    j: int
    congruences: tuple[tuple[int, int], ...]
    residue: int
    modulus: int
    square_exclusions: tuple[int, ...]  # drop m when m - o is a perfect square


@dataclass(frozen=True)
class RepresentationTrace:
    """Outcome of the exhaustive square-plus-practical search for m."""

    m: int
    not_representable: bool
    counterexample: tuple[int, int] | None = None  # (x, practical m - x^2)
    trace: tuple[tuple[int, int, PracticalityVerdict], ...] | None = None


def power2_practical(k: int, multiplier: int) -> MultiplierCertificate:
    """Certified practical number 2^k * multiplier, multiplier <= 2^(k+1).

    The bound is exactly sigma(2^k) + 1, so the certificate replays from
    the trivial chain of the power of two.
    """
    if k < 1:
        raise InvalidInput(f"k must be >= 1, got {k}")
    if multiplier < 1:
        raise InvalidInput(f"multiplier must be >= 1, got {multiplier}")
    return certify_product(is_practical(1 << k), multiplier)


def sqrt_mod_power_of_two(m: int, k: int) -> int:
    """Odd x in [1, 2^k - 1] with x^2 = m (mod 2^(k+2)), for m = 1 (mod 8).

    Built by the doubling induction: x_1 = 1, and x_{s+1} is x_s itself or
    2^(s+1) - x_s, whichever square matches m modulo 2^(s+3).
    """
    if m % 8 != 1:
        raise InvalidResidue(f"m must be 1 mod 8, got {m}")
    if k < 1:
        raise InvalidInput(f"k must be >= 1, got {k}")
    x = 1
    for s in range(1, k):
        if (x * x - m) % (1 << (s + 3)):
            x = (1 << (s + 1)) - x
    return x


def decompose_square_plus_practical(n: int) -> SquareDecomposition:
    """The canonical split n = x^2 + practical part for n = 1 (mod 8), n > 1."""
    if n <= 1 or n % 8 != 1:
        raise InvalidInput(f"n must be > 1 and 1 mod 8, got {n}")
    m = (n.bit_length() - 1) // 2  # 2^(2m) <= n < 2^(2m+2)
    x = sqrt_mod_power_of_two(n, m)
    part = n - x * x
    s, rem = divmod(part, 1 << (m + 2))
    if rem or not 1 <= s <= 1 << m or not 1 <= x <= (1 << m) - 1:
        raise RuntimeError(f"decomposition invariants failed for n = {n}")
    cert = power2_practical(m + 2, s)
    return SquareDecomposition(
        n=n, x=x, practical_part=part, m=m, s=s, certificate=cert
    )


def family_spec(j: int) -> FamilySpec:
    """The non-representable congruence family for residue class j mod 8."""
    if j not in _FAMILY_CONGRUENCES:
        if j == 1:
            raise InvalidJ("every number 1 mod 8 is a square plus a practical number")
        raise InvalidJ(f"j must be in {NON_REPRESENTABLE_J}, got {j}")
    congruences = _FAMILY_CONGRUENCES[j]
    residue, modulus = crt_solve(congruences)
    return FamilySpec(
        j=j,
        congruences=congruences,
        residue=residue,
        modulus=modulus,
        square_exclusions=_FAMILY_SQUARE_EXCLUSIONS.get(j, ()),
    )


def family_member(j: int, index: int) -> int:
    """index-th smallest member (0-based) of the j family."""
    if index < 0:
        raise InvalidInput(f"index must be >= 0, got {index}")
    return family_stream(j, index + 1)[-1]


def family_stream(j: int, count: int) -> list[int]:
    """The `count` smallest members of the j family, ascending."""
    if count < 1:
        raise InvalidInput(f"count must be >= 1, got {count}")
    spec = family_spec(j)
    members = []
    m = spec.residue if spec.residue >= 1 else spec.residue + spec.modulus
    while len(members) < count:
        if not any(_is_square(m - o) for o in spec.square_exclusions):
            members.append(m)
        m += spec.modulus
    return members


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def verify_not_representable(m: int, collect_trace: bool = False) -> RepresentationTrace:
    """Exhaustively test that no x with x^2 < m leaves m - x^2 practical.

    x = 0 is included, so m itself is also checked.  With collect_trace the
    result carries a full per-x record of verdicts (slower: every remainder
    is fully factored).
    """
    if m < 1:
        raise InvalidInput(f"m must be >= 1, got {m}")
    trace = [] if collect_trace else None
    for x in range(math.isqrt(m - 1) + 1):
        part = m - x * x
        if collect_trace:
            verdict = is_practical(part)
            trace.append((x, part, verdict))
            practical = verdict.practical
        else:
            practical = is_practical_quick(part)
        if practical:
            return RepresentationTrace(
                m=m,
                not_representable=False,
                counterexample=(x, part),
                trace=tuple(trace) if trace is not None else None,
            )
    return RepresentationTrace(
        m=m,
        not_representable=True,
        trace=tuple(trace) if trace is not None else None,
    )


def goldbach_pair(
    n: int, bitmap: PracticalBitmap | None = None
) -> tuple[int, int]:
    """Lexicographically smallest (p1, p2), p1 <= p2, both practical,
    p1 + p2 = n, for even n >= 2.

    Exhausting all practical p1 <= n/2 raises NotFound, which would
    falsify the two-practicals decomposition theorem.
    """
    if n < 2 or n % 2:
        raise InvalidInput(f"n must be even and >= 2, got {n}")
    if bitmap is None or bitmap.limit < n:
        bitmap = sieve_practicals(n)
    lookup = bitmap.lookup()
    half = n // 2
    for p1 in bitmap.member_list():
        if p1 > half:
            break
        if lookup[n - p1]:
            return p1, n - p1
    raise NotFound(f"no practical pair sums to {n}")


def practical_triples(
    limit: int, bitmap: PracticalBitmap | None = None
) -> list[int]:
    """All m <= limit with m-2, m, m+2 simultaneously practical."""
    if limit < 1:
        raise InvalidInput(f"limit must be >= 1, got {limit}")
    if limit < 3:
        return []
    if bitmap is None or bitmap.limit < limit + 2:
        bitmap = sieve_practicals(limit + 2)
    flags = bitmap.flags
    ms = np.arange(3, limit + 1)
    mask = flags[ms - 2] & flags[ms] & flags[ms + 2]
    return [int(m) for m in ms[mask]]


@dataclass(frozen=True)
class PalindromicEntry:
    index: int  # 1-based position in the chain
    value: int
    evidence: PracticalityVerdict | MultiplierCertificate


def palindromic_practicals(count: int) -> list[PalindromicEntry]:
    """The first `count` values of the chain A_i = 8 * (10^(2^i) - 1) / 9.

    A_1 = 88 is checked by the structure test; each later value is
    certified as A_i * (10^(2^i) + 1) with the factorization-free bound
    10^(2^i) + 1 <= 2 A_i - 1, all in exact arithmetic.  Every value is a
    decimal palindrome (a run of 8s).
    """
    if count < 1:
        raise InvalidInput(f"count must be >= 1, got {count}")
    entries: list[PalindromicEntry] = []
    value = 88
    evidence: PracticalityVerdict | MultiplierCertificate = is_practical(88)
    entries.append(PalindromicEntry(index=1, value=88, evidence=evidence))
    for i in range(1, count):
        multiplier = 10 ** (2**i) + 1
        evidence = certify_product(evidence, multiplier, use_sigma=False)
        value = value * multiplier
        if value != 8 * (10 ** (2 ** (i + 1)) - 1) // 9:
            raise RuntimeError(f"palindromic chain drifted at index {i + 1}")
        entries.append(PalindromicEntry(index=i + 1, value=value, evidence=evidence))
    return entries
