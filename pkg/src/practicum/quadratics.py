"""Quadratic polynomials and practical numbers.

For q(n) = a n^2 + b n + c (a > 0) and a prime p, m_q(p) is the supremum
of the k for which q has a root modulo p^k; it is infinite exactly when q
has a p-adic integer root.  The classifier walks primes in order, collects
the finite exponents, stops at the first infinite prime p_r, and the
number p_1^m1 ... p_{r-1}^m{r-1} p_r is practical iff q represents
infinitely many practical numbers.

m_q is computed by level-by-level root lifting.  A root n at level k
settles the question as soon as v_p(q(n)) >= 2 v_p(q'(n)) + 1 (it then
refines to a p-adic root); if instead the root set empties, the last
nonempty level is the answer.  After factoring out the content g, the
process provably resolves by level v_p(disc) + v_p(4a) + 2, with the
degenerate disc = 0 case decided directly: the double root -b/2a is a
p-adic integer iff v_p(2a) <= v_p(b).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import islice, product

from .arith import Factorization, crt_solve, prime_stream, valuation
from .errors import (
    ClassificationMismatch,
    InvalidInput,
    IterationCap,
    ScanBudgetExceeded,
)
from .practical import (
    PracticalityVerdict,
    is_practical,
    is_practical_quick,
    practical_from_factorization,
)

INFINITELY_MANY = "infinitely_many"
FINITELY_MANY = "finitely_many"

DEFAULT_QUAD_SCAN = 10**4
DEFAULT_PRIME_CAP = 100


@dataclass(frozen=True)
class QuadraticPoly:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a < 1:
            raise InvalidInput(f"leading coefficient must be positive, got {self.a}")

    def __call__(self, n: int) -> int:
        return (self.a * n + self.b) * n + self.c

    def derivative(self, n: int) -> int:
        return 2 * self.a * n + self.b

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return math.gcd(self.a, math.gcd(self.b, self.c))

    def primitive(self) -> "QuadraticPoly":
        g = self.content
        return QuadraticPoly(self.a // g, self.b // g, self.c // g) if g > 1 else self

    def __str__(self):
        return f"{self.a}n^2{self.b:+d}n{self.c:+d}"


@dataclass(frozen=True)
class FiniteWitness:
    """m_q(p) finite: root at the top level (for the content-free part),
    with the exhaustive lift search at empty_level coming back empty."""

    root: int | None  # None when even level 1 has no roots
    empty_level: int


@dataclass(frozen=True)
class InfiniteWitness:
    """m_q(p) infinite, via one of two routes on the content-free part:

    kind "hensel":      v_p(q(root)) >= 2 v_p(q'(root)) + 1 at `level`
                        (val_q None means q(root) == 0 exactly);
    kind "double_root": disc == 0 and the double root -b/2a is a p-adic
                        integer, i.e. val_lead = v_p(2a) <= v_p(b) = val_lin
                        (val_lin None means b == 0); root approximates it
                        modulo p^level.
    """

    kind: str
    root: int
    level: int
    val_q: int | None = None
    val_dq: int | None = None
    val_lead: int | None = None
    val_lin: int | None = None


@dataclass(frozen=True)
class MqResult:
    p: int
    exponent: int | None  # None encodes infinity
    content_val: int      # v_p(gcd(a, b, c)); exponent includes it when finite
    witness: FiniteWitness | InfiniteWitness

    @property
    def infinite(self) -> bool:
        return self.exponent is None


@dataclass(frozen=True)
class QuadClassification:
    poly: QuadraticPoly
    case: str
    r: int                      # 1-based index of the least infinite prime
    p_r: int
    exponents: tuple[int, ...]  # m_q at the first r-1 primes
    witness_n: int              # p_1^m1 ... p_{r-1}^m{r-1} * p_r
    verdict_n: PracticalityVerdict


@dataclass(frozen=True)
class QuadWitness:
    """A practical value q(n) >= threshold with its supporting arithmetic."""

    n: int
    value: int
    verdict: PracticalityVerdict
    modulus: int                # practical divisor of value, built by CRT
    modulus_verdict: PracticalityVerdict
    multiplier: int             # value // modulus, <= sigma(modulus) + 1
    k: int
    t_primes: tuple[int, ...]


def _lift_levels(q: QuadraticPoly, p: int, max_level: int):
    """Level-by-level root lifting for primitive q; returns
    (exponent, FiniteWitness) or (None, InfiniteWitness)."""
    roots = [n for n in range(p) if q(n) % p == 0]
    if not roots:
        return 0, FiniteWitness(root=None, empty_level=1)
    level = 1
    while True:
        for n in roots:
            fv = q(n)
            dv = q.derivative(n)
            if fv == 0:
                return None, InfiniteWitness(
                    kind="hensel",
                    root=n,
                    level=level,
                    val_q=None,
                    val_dq=valuation(dv, p) if dv else None,
                )
            if dv != 0:
                t = valuation(dv, p)
                vq = valuation(fv, p)
                if vq >= 2 * t + 1:
                    return None, InfiniteWitness(
                        kind="hensel", root=n, level=level, val_q=vq, val_dq=t
                    )
        if level >= max_level:  # mathematically unreachable; see module docstring
            raise RuntimeError(
                f"root lifting for {q} mod {p} ran past its termination bound"
            )
        step = p**level
        mod_next = step * p
        nxt = sorted(
            {
                n + j * step
                for n in roots
                for j in range(p)
                if q(n + j * step) % mod_next == 0
            }
        )
        if not nxt:
            return level, FiniteWitness(root=min(roots), empty_level=level + 1)
        roots = nxt
        level += 1


def _mq_primitive(q: QuadraticPoly, p: int):
    disc = q.discriminant
    if disc != 0:
        max_level = valuation(disc, p) + valuation(4 * q.a, p) + 2
        return _lift_levels(q, p, max_level)
    v_lead = valuation(2 * q.a, p)
    v_lin = valuation(q.b, p) if q.b else None
    if v_lin is None or v_lead <= v_lin:
        # -b/2a is a p-adic integer; approximate it to a comfortable level
        prec = v_lead + 4
        mod = p**prec
        scale = p**v_lead
        r = (-(q.b // scale) * pow(2 * q.a // scale, -1, mod // scale)) % (mod // scale)
        fv = q(r)
        level = valuation(fv, p) if fv else prec
        return None, InfiniteWitness(
            kind="double_root",
            root=r,
            level=level,
            val_lead=v_lead,
            val_lin=v_lin,
        )
    max_level = 2 * v_lin + valuation(4 * q.a, p) + 2
    return _lift_levels(q, p, max_level)


def mq(q: QuadraticPoly, p: int) -> MqResult:
    """m_q(p) with its justifying witness.

    Content splits off exactly: m_q(p) = v_p(gcd(a,b,c)) + m for the
    primitive part's m, and infinity is unaffected.
    """
    if p < 2:
        raise InvalidInput(f"p must be prime, got {p}")
    g = q.content
    v = valuation(g, p) if g > 1 else 0
    exponent, witness = _mq_primitive(q.primitive(), p)
    if exponent is None:
        return MqResult(p=p, exponent=None, content_val=v, witness=witness)
    return MqResult(p=p, exponent=v + exponent, content_val=v, witness=witness)


def least_infinite_prime(
    q: QuadraticPoly, prime_cap: int = DEFAULT_PRIME_CAP
) -> tuple[int, int, tuple[int, ...]]:
    """(r, p_r, m_q at the earlier primes) for the least p_r with infinite m_q.

    Some prime always qualifies; running past prime_cap primes raises
    IterationCap and should be treated as a failure, not an outcome.
    """
    exponents: list[int] = []
    for i, p in enumerate(islice(prime_stream(), prime_cap)):
        res = mq(q, p)
        if res.infinite:
            return i + 1, p, tuple(exponents)
        exponents.append(res.exponent)
    raise IterationCap(
        f"no prime with infinite m_q among the first {prime_cap} primes for {q}"
    )


def classify_quadratic(q: QuadraticPoly) -> QuadClassification:
    """Infinitely many practical values of q, or finitely many, decided by
    the practicality of p_1^m1 ... p_{r-1}^m{r-1} p_r."""
    r, p_r, exponents = least_infinite_prime(q)
    primes = list(islice(prime_stream(), r))
    n = p_r
    for p, e in zip(primes, exponents):
        n *= p**e
    verdict = is_practical(n)
    case = INFINITELY_MANY if verdict.practical else FINITELY_MANY
    return QuadClassification(
        poly=q,
        case=case,
        r=r,
        p_r=p_r,
        exponents=exponents,
        witness_n=n,
        verdict_n=verdict,
    )


def quad_practical_stream(
    q: QuadraticPoly, count: int, n_limit: int = DEFAULT_QUAD_SCAN
) -> list[int]:
    """The `count` smallest practical values among q(1), q(2), ...

    Scans until the values are provably the smallest (past the vertex and
    beyond the current count-th hit).  A shortfall within n_limit returns
    the hits found when the classification is finite, and raises
    ScanBudgetExceeded when it is infinite.
    """
    if count < 1:
        raise InvalidInput(f"count must be >= 1, got {count}")
    hits: set[int] = set()
    turn = max(1, (-q.b) // (2 * q.a) + 1)  # q strictly increasing from here
    kth = None
    for n in range(1, n_limit + 1):
        v = q(n)
        if v >= 1 and is_practical_quick(v):
            hits.add(v)
            kth = sorted(hits)[count - 1] if len(hits) >= count else None
        if kth is not None and n >= turn and v > kth:
            break
    values = sorted(hits)[:count]
    if len(values) < count and classify_quadratic(q).case == INFINITELY_MANY:
        raise ScanBudgetExceeded(
            f"only {len(values)} practical values of {q} within n <= {n_limit}"
        )
    return values


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _sqrt_mod_prime(a: int, p: int) -> int:
    """Square root mod odd prime p; a must be 0 or a quadratic residue."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while _legendre(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return x


def _roots_mod_prime(q: QuadraticPoly, p: int) -> list[int]:
    """All roots of q mod p; discriminant-based for large p, exhaustive for
    small p (which also covers content divisible by p)."""
    if p <= 30:
        return [n for n in range(p) if q(n) % p == 0]
    a, b, c = q.a % p, q.b % p, q.c % p
    if a == 0:
        if b == 0:
            return [0] if c == 0 else []
        return [-c * pow(b, -1, p) % p]
    disc = (b * b - 4 * a * c) % p
    inv2a = pow(2 * a, -1, p)
    if disc == 0:
        return [-b * inv2a % p]
    if _legendre(disc, p) == -1:
        return []
    s = _sqrt_mod_prime(disc, p)
    return sorted({(-b + s) * inv2a % p, (-b - s) * inv2a % p})


def _roots_mod_prime_power(
    q: QuadraticPoly, p: int, k: int, cap: int = 8
) -> list[int] | None:
    """Up to `cap` roots of q mod p^k, ascending; [] if none.

    Returns None when the congruence is vacuous (the content alone covers
    p^k), in which case divisibility holds for every n.  Content freedom is
    folded back in: a root of the primitive part mod p^(k-v) yields p^v
    distinct roots mod p^k.
    """
    g = q.content
    v = valuation(g, p) if g > 1 else 0
    if k <= v:
        return None
    q1 = q.primitive()
    k1 = k - v
    roots = [n for n in range(p) if q1(n) % p == 0]
    level = 1
    while roots and level < k1:
        step = p**level
        mod_next = step * p
        roots = sorted(
            {
                n + j * step
                for n in roots
                for j in range(p)
                if q1(n + j * step) % mod_next == 0
            }
        )[: 4 * cap]
        level += 1
    if not roots:
        return []
    base = p**k1
    out = []
    for j in range(p**v):
        out.extend(r + j * base for r in roots)
        if len(out) >= cap:
            break
    return sorted(out)[:cap]


def _t_prime_candidates(q: QuadraticPoly, p_r: int, scan_cap: int):
    """Primes t > p_r with q solvable mod t, paired with their roots."""
    for t in islice(prime_stream(), scan_cap):
        if t <= p_r:
            continue
        roots = _roots_mod_prime(q, t)
        if roots:
            yield t, roots


def quad_constructive_witness(
    q: QuadraticPoly,
    threshold: int,
    max_rounds: int = 60,
    t_scan_cap: int = 20000,
    combo_cap: int = 128,
) -> QuadWitness:
    """A practical value q(n) >= threshold, built rather than scanned.

    Assembles a divisor D from the finite prime powers, p_r^k with
    p_r^k > threshold, and (when needed) extra primes with roots; a CRT
    solution n makes q(n) divisible by D, and q(n) is certified practical
    once q(n)/D <= sigma(D) + 1.  Root choices steer where n lands inside
    [1, D], so up to combo_cap root combinations are tried per round,
    keeping the multiplier as small as possible; escalation then alternates
    between raising k and adding root primes t, which monotonically raises
    sigma(D)/D.
    """
    if threshold < 1:
        raise InvalidInput(f"threshold must be >= 1, got {threshold}")
    cls = classify_quadratic(q)
    if cls.case != INFINITELY_MANY:
        raise InvalidInput(
            f"{q} is classified {cls.case}; no practical value construction"
        )
    primes = list(islice(prime_stream(), cls.r))
    prefix = [(p, e) for p, e in zip(primes[:-1], cls.exponents) if e >= 1]
    p_r = cls.p_r
    k = 1
    while p_r**k <= threshold:
        k += 1

    t_iter = _t_prime_candidates(q, p_r, t_scan_cap)
    t_list: list[tuple[int, list[int]]] = []
    for round_no in range(max_rounds):
        factors = sorted(prefix + [(p_r, k)] + [(t, 1) for t, _ in t_list])
        divisor = 1
        for p, e in factors:
            divisor *= p**e
        mod_verdict = practical_from_factorization(Factorization(tuple(factors)))
        options: list[list[tuple[int, int]]] = []
        solvable = True
        for p, e in factors:
            roots = _roots_mod_prime_power(q, p, e)
            if roots is None:
                continue  # content alone covers p^e
            if not roots:
                solvable = False
                break
            options.append([(r, p**e) for r in roots])
        if not solvable:
            raise ClassificationMismatch(
                f"missing root for a divisor of {q} despite its m_q value"
            )
        best: tuple[int, int, int] | None = None
        for combo in islice(product(*options), combo_cap):
            n_star, period = crt_solve(combo)
            n = n_star if n_star >= 1 else period
            while q(n) <= 0:
                n += period
            value = q(n)
            multiplier, rem = divmod(value, divisor)
            if rem:
                raise RuntimeError(f"CRT solution lost divisibility for {q}")
            if best is None or multiplier < best[0]:
                best = (multiplier, n, value)
        if (
            best is not None
            and mod_verdict.practical
            and best[0] <= mod_verdict.sigma + 1
        ):
            multiplier, n, value = best
            verdict = is_practical(value)
            if not verdict.practical:
                raise ClassificationMismatch(
                    f"constructed value {value} of {q} failed the practicality test"
                )
            return QuadWitness(
                n=n,
                value=value,
                verdict=verdict,
                modulus=divisor,
                modulus_verdict=mod_verdict,
                multiplier=multiplier,
                k=k,
                t_primes=tuple(t for t, _ in t_list),
            )
        if round_no % 2 == 0:
            k += 1
        else:
            nxt = next(t_iter, None)
            if nxt is None:
                k += 1
            else:
                t_list.append(nxt)
    raise IterationCap(
        f"witness construction for {q} did not converge in {max_rounds} rounds"
    )
