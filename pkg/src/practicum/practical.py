"""Practicality tests with checkable evidence.

A positive integer n is practical when every integer in [1, n] is a sum of
distinct divisors of n.  The structure theorem (Stewart) makes this
decidable from the factorization alone: writing n = p1^a1 ... pk^ak with
p1 < ... < pk, n is practical iff n = 1 or p1 = 2 and every pi satisfies
pi <= sigma(p1^a1 ... p_{i-1}^a_{i-1}) + 1.  Verdicts carry either the
full chain of those comparisons or the first failing one, so they can be
replayed with plain arithmetic.

The subset-sum oracle implements the definition directly and exists to
check the structure test, never to replace it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .arith import (
    FactorBudget,
    Factorization,
    factorize,
    sigma,
    sigma_prime_power,
)
from .errors import BoundViolated, InvalidInput, OracleBoundExceeded

DEFAULT_ORACLE_BOUND = 10**6


@dataclass(frozen=True)
class StewartWitness:
    """Evidence of non-practicality: the index-th prime factor exceeds
    sigma(product of the earlier prime powers) + 1."""

    index: int
    prime: int
    bound: int


@dataclass(frozen=True)
class PracticalityVerdict:
    """Outcome of the structure test for n.

    chain steps are (prime, exponent, running_sigma) with running_sigma the
    divisor sum of the product up to and including that prime power; empty
    chain means n = 1.
    """

    n: int
    practical: bool
    chain: tuple[tuple[int, int, int], ...] = ()
    witness: StewartWitness | None = None

    @property
    def sigma(self) -> int:
        """sigma(n); only meaningful on practical verdicts."""
        return self.chain[-1][2] if self.chain else 1

    def replay(self) -> bool:
        """Re-check the verdict with arithmetic only (no factorization)."""
        if not self.practical:
            w = self.witness
            return w is not None and w.prime > w.bound
        value = 1
        running = 1
        for p, e, s in self.chain:
            if p > running + 1:
                return False
            if s != running * sigma_prime_power(p, e):
                return False
            value *= p**e
            running = s
        return value == self.n


def practical_from_factorization(f: Factorization, n: int | None = None) -> PracticalityVerdict:
    """Run the structure test on a known factorization."""
    n = f.value if n is None else n
    chain = []
    running = 1
    for i, (p, e) in enumerate(f, start=1):
        if p > running + 1:
            return PracticalityVerdict(
                n, False, witness=StewartWitness(index=i, prime=p, bound=running + 1)
            )
        running *= sigma_prime_power(p, e)
        chain.append((p, e, running))
    return PracticalityVerdict(n, True, chain=tuple(chain))


def is_practical(n: int, budget: FactorBudget | None = None) -> PracticalityVerdict:
    """Decide practicality of n >= 1; the verdict carries replayable evidence.

    Propagates BudgetExceeded from factorize for n beyond the work limit.
    """
    if n < 1:
        raise InvalidInput(f"practicality is defined for n >= 1, got {n}")
    return practical_from_factorization(factorize(n, budget), n)


def is_practical_quick(n: int) -> bool:
    """Boolean-only structure test with early exit; no witness, no rho.

    Trial division never needs to pass sigma(prefix)+1: once every candidate
    up to that bound fails, the least remaining prime factor already breaks
    the chain.  This is what the scan-heavy paths use.
    """
    if n < 1:
        raise InvalidInput(f"practicality is defined for n >= 1, got {n}")
    if n == 1:
        return True
    if n & 1:
        return False
    m = n >> 1
    e = 1
    while not m & 1:
        m >>= 1
        e += 1
    s = (1 << (e + 1)) - 1
    if m == 1:
        return True
    d = 3
    while True:
        if d > s + 1:
            return False
        if d * d > m:
            return m <= s + 1
        if m % d == 0:
            t = 1 + d
            pk = d
            m //= d
            while m % d == 0:
                m //= d
                pk *= d
                t += pk
            s *= t
            if m == 1:
                return True
        d += 2


def is_practical_oracle(n: int, bound: int = DEFAULT_ORACLE_BOUND) -> bool:
    """Definition-level test: can every m in [1, n] be written as a sum of
    distinct divisors of n?

    Subset-sum over the divisor list as a bit mask, clamped at n (sums above
    n are irrelevant).  Independent of the structure test by construction.
    """
    if n < 1:
        raise InvalidInput(f"oracle is defined for n >= 1, got {n}")
    if n > bound:
        raise OracleBoundExceeded(f"oracle bound {bound} exceeded by n = {n}")
    divisors = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            divisors.append(d)
            if d != n // d:
                divisors.append(n // d)
    divisors.sort()
    full = (1 << (n + 1)) - 1
    reach = 1
    for d in divisors:
        reach |= reach << d
        reach &= full
        if reach == full:
            return True
    return reach == full


Evidence = Union[PracticalityVerdict, "MultiplierCertificate"]


@dataclass(frozen=True)
class MultiplierCertificate:
    """Proof that base * multiplier is practical, checkable by arithmetic.

    If base is practical then base * m is practical for every
    m <= sigma(base) + 1; when sigma(base) is unavailable the weaker but
    factorization-free bound 2*base - 1 <= sigma(base) (valid for practical
    base) is recorded instead.  base_evidence is either a replayable verdict
    or another certificate, so chains bottom out in a structure test.
    """

    base: int
    multiplier: int
    bound: int
    bound_kind: str  # "sigma": bound == sigma(base)+1; "doubling": bound == 2*base-1
    base_evidence: Evidence

    @property
    def value(self) -> int:
        return self.base * self.multiplier

    def verify(self) -> bool:
        ev = self.base_evidence
        if isinstance(ev, MultiplierCertificate):
            if ev.value != self.base or not ev.verify():
                return False
        else:
            if ev.n != self.base or not ev.practical or not ev.replay():
                return False
        if self.bound_kind == "sigma":
            if not isinstance(ev, PracticalityVerdict) or self.bound != ev.sigma + 1:
                return False
        elif self.bound_kind == "doubling":
            if self.bound != 2 * self.base - 1:
                return False
        else:
            return False
        return 1 <= self.multiplier <= self.bound


def certify_product(
    base_evidence: Evidence, multiplier: int, use_sigma: bool | None = None
) -> MultiplierCertificate:
    """Certificate that (base of the evidence) * multiplier is practical.

    use_sigma=None picks the exact sigma(base)+1 bound when the evidence is
    a verdict (whose chain records sigma), falling back to 2*base-1 for
    certificate chains; pass use_sigma=False to force the
    factorization-free bound.  Raises BoundViolated when the multiplier
    exceeds the provable bound.
    """
    if isinstance(base_evidence, MultiplierCertificate):
        if not base_evidence.verify():
            raise InvalidInput("base evidence certificate does not verify")
        base = base_evidence.value
        have_sigma = False
    else:
        if not base_evidence.practical:
            raise InvalidInput(f"base {base_evidence.n} is not practical")
        base = base_evidence.n
        have_sigma = True
    if use_sigma is None:
        use_sigma = have_sigma
    if use_sigma and not have_sigma:
        raise InvalidInput("sigma bound requested but evidence carries no sigma")

    if use_sigma:
        bound = base_evidence.sigma + 1
        kind = "sigma"
    else:
        bound = 2 * base - 1
        kind = "doubling"
    if not 1 <= multiplier <= bound:
        raise BoundViolated(
            f"multiplier {multiplier} exceeds provable bound {bound} for base {base}"
        )
    return MultiplierCertificate(
        base=base,
        multiplier=multiplier,
        bound=bound,
        bound_kind=kind,
        base_evidence=base_evidence,
    )
