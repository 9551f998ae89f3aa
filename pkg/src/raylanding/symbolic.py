"""Exact symbolic coordinates of dynamic rays.

Polynomial rays carry an external angle (a rational number mod 1, with its
base-D digit expansion); exponential rays carry an integer address.  Only
eventually periodic objects are represented, so every operation here is
exact: rationals are :class:`fractions.Fraction`, digits are Python ints.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterator, Sequence


class SymbolicError(ValueError):
    pass


# ---------------------------------------------------------------------------
# eventually periodic integer sequences
# ---------------------------------------------------------------------------

def _primitive(block: tuple) -> tuple:
    n = len(block)
    for p in range(1, n + 1):
        if n % p == 0 and block[:p] * (n // p) == block:
            return block[:p]
    return block


def _normalize(pre: tuple, per: tuple) -> tuple[tuple, tuple]:
    if not per:
        raise SymbolicError("period must be nonempty")
    per = _primitive(tuple(per))
    pre = tuple(pre)
    # absorb a preperiod tail that already belongs to the cycle
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = (per[-1],) + per[:-1]
    return pre, per


@dataclass(frozen=True)
class _EventuallyPeriodic:
    preperiod: tuple
    period: tuple

    def entry(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, n: int) -> list[int]:
        return [self.entry(i) for i in range(n)]

    def __iter__(self) -> Iterator[int]:
        i = 0
        while True:
            yield self.entry(i)
            i += 1

    @property
    def is_periodic(self) -> bool:
        return not self.preperiod

    @property
    def period_length(self) -> int:
        return len(self.period)

    def _fmt(self) -> str:
        head = " ".join(str(d) for d in self.preperiod)
        tail = "[" + " ".join(str(d) for d in self.period) + "]"
        return f"{head} {tail}" if head else tail


def _parse_sequence(text: str) -> tuple[list[int], list[int]]:
    m = re.fullmatch(r"\s*([-\d\s,]*?)\s*\[\s*([-\d\s,]+)\s*\]\s*", text)
    if not m:
        raise SymbolicError(f"cannot parse sequence {text!r}; expected 'd0 d1 [p0 p1]'")
    split = lambda s: [int(x) for x in re.split(r"[\s,]+", s.strip()) if x]
    return split(m.group(1)), split(m.group(2))


@dataclass(frozen=True)
class DigitSequence(_EventuallyPeriodic):
    """Element of the full shift on ``base`` symbols, eventually periodic."""

    base: int = 2

    def __post_init__(self):
        if self.base < 2:
            raise SymbolicError("base must be >= 2")
        pre, per = _normalize(self.preperiod, self.period)
        for d in pre + per:
            if not 0 <= d < self.base:
                raise SymbolicError(f"digit {d} outside [0, {self.base - 1}]")
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, text: str, base: int) -> "DigitSequence":
        pre, per = _parse_sequence(text)
        return cls(tuple(pre), tuple(per), base)

    def __str__(self) -> str:
        return self._fmt()

    def to_angle(self) -> "PolyAngle":
        D = self.base
        L, P = len(self.preperiod), len(self.period)
        head = _digits_value(self.preperiod, D)
        cyc = _digits_value(self.period, D)
        value = Fraction(head, D**L) + Fraction(cyc, D**L * (D**P - 1))
        return PolyAngle(value, D)


def _digits_value(digits: Sequence[int], base: int) -> int:
    v = 0
    for d in digits:
        v = v * base + d
    return v


@dataclass(frozen=True)
class ExpAddress(_EventuallyPeriodic):
    """Eventually periodic (hence bounded) address of an exponential ray."""

    def __post_init__(self):
        pre, per = _normalize(tuple(int(x) for x in self.preperiod),
                              tuple(int(x) for x in self.period))
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, text: str) -> "ExpAddress":
        pre, per = _parse_sequence(text)
        return cls(tuple(pre), tuple(per))

    @classmethod
    def periodic(cls, *block: int) -> "ExpAddress":
        return cls((), tuple(block))

    def __str__(self) -> str:
        return self._fmt()

    def prepend(self, j: int) -> "ExpAddress":
        return ExpAddress((int(j),) + self.preperiod, self.period)

    @property
    def sup_norm_raw(self) -> int:
        """max |s_i| as an integer."""
        return max(abs(x) for x in self.preperiod + self.period)

    @property
    def sup_norm(self) -> float:
        """max |s_i| / 2pi, the normalized sup-norm."""
        return self.sup_norm_raw / (2 * math.pi)

    @property
    def minimal_potential(self) -> float:
        # bounded addresses always have minimal potential zero
        return 0.0


# ---------------------------------------------------------------------------
# angles
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class PolyAngle:
    """External angle ``value`` in R/Z with respect to multiplication by ``base``."""

    value: Fraction
    base: int = 2

    def __post_init__(self):
        v = Fraction(self.value) % 1
        object.__setattr__(self, "value", v)
        if self.base < 2:
            raise SymbolicError("base must be >= 2")

    @classmethod
    def parse(cls, text: str, base: int = 2) -> "PolyAngle":
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:/\s*(-?\d+))?\s*", text)
        if not m:
            raise SymbolicError(f"cannot parse angle {text!r}; expected 'p/q'")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise SymbolicError("angle denominator is zero")
        return cls(Fraction(num, den), base)

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"

    def __float__(self) -> float:
        return float(self.value)

    def is_dyadic(self) -> bool:
        """True when the angle is D-adic (two digit expansions)."""
        q = self.denominator
        for p in _prime_factors(self.base):
            while q % p == 0:
                q //= p
        return q == 1

    def digits(self) -> DigitSequence:
        """Base-D expansion; D-adic angles get the terminating (…000) expansion."""
        D = self.base
        r = self.numerator
        q = self.denominator
        seen: dict[int, int] = {}
        out: list[int] = []
        while r not in seen:
            seen[r] = len(out)
            r *= D
            out.append(r // q)
            r %= q
        k = seen[r]
        return DigitSequence(tuple(out[:k]), tuple(out[k:]), D)

    @property
    def preperiod(self) -> int:
        return len(self.digits().preperiod)

    @property
    def period(self) -> int:
        return len(self.digits().period)

    def orbit(self) -> list["PolyAngle"]:
        """Forward orbit under multiplication by D until the first repeat."""
        out: list[PolyAngle] = []
        seen = set()
        a = self
        while a not in seen:
            seen.add(a)
            out.append(a)
            a = shift(a)
        return out

    @property
    def first_digit(self) -> int:
        return int(self.value * self.base)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def shift(seq):
    """Left shift; on angles this is multiplication by D mod 1."""
    if isinstance(seq, PolyAngle):
        return PolyAngle(seq.value * seq.base, seq.base)
    if isinstance(seq, DigitSequence):
        if seq.preperiod:
            return DigitSequence(seq.preperiod[1:], seq.period, seq.base)
        return DigitSequence((), seq.period[1:] + seq.period[:1], seq.base)
    if isinstance(seq, ExpAddress):
        if seq.preperiod:
            return ExpAddress(seq.preperiod[1:], seq.period)
        return ExpAddress((), seq.period[1:] + seq.period[:1])
    raise TypeError(f"cannot shift {type(seq).__name__}")


def shift_n(seq, n: int):
    for _ in range(n):
        seq = shift(seq)
    return seq


def _aligned_blocks(s: _EventuallyPeriodic, s2: _EventuallyPeriodic) -> tuple[int, int]:
    L = max(len(s.preperiod), len(s2.preperiod))
    P = math.lcm(len(s.period), len(s2.period))
    return L, P


def address_metric(s: _EventuallyPeriodic, s2: _EventuallyPeriodic, base: int) -> Fraction:
    """sum_i |s_i - s'_i| / base^(i+1), summed exactly in closed form."""
    D = base
    L, P = _aligned_blocks(s, s2)
    head = 0
    for i in range(L):
        head = head * D + abs(s.entry(i) - s2.entry(i))
    block = 0
    for i in range(L, L + P):
        block = block * D + abs(s.entry(i) - s2.entry(i))
    cyc = D**P - 1
    return Fraction(head * cyc + block, D**L * cyc)


def sigma_d_metric(s: DigitSequence, s2: DigitSequence) -> Fraction:
    if s.base != s2.base:
        raise SymbolicError(f"base mismatch: {s.base} vs {s2.base}")
    return address_metric(s, s2, s.base)


def circle_distance(a: PolyAngle, b: PolyAngle) -> Fraction:
    d = abs(a.value - b.value)
    return min(d, 1 - d)


def preimages(s, window: tuple[int, int] | None = None) -> list:
    """All sigma-preimages of an angle, or those of an address with first entry in ``window``."""
    if isinstance(s, PolyAngle):
        return [PolyAngle((s.value + j) / s.base, s.base) for j in range(s.base)]
    if isinstance(s, DigitSequence):
        return [DigitSequence((j,) + s.preperiod, s.period, s.base) for j in range(s.base)]
    if isinstance(s, ExpAddress):
        if window is None:
            raise SymbolicError("address preimages need a window of first entries")
        lo, hi = window
        if hi < lo:
            raise SymbolicError("empty window")
        return [s.prepend(j) for j in range(lo, hi + 1)]
    raise TypeError(f"no preimages for {type(s).__name__}")


def growth_iterate(x: float, k: int) -> float:
    """F^k(x) for F(t) = e^t - 1, saturating to inf on overflow."""
    for _ in range(k):
        if x > 709.0:
            return math.inf
        x = math.expm1(x)
    return x


def is_exponentially_bounded(prefix: Sequence[int], A: float, x: float) -> bool:
    """Check |s_k| < A F^k(x) for every listed entry, k counted from 0."""
    if A < 1 / (2 * math.pi):
        raise SymbolicError("A must be at least 1/(2 pi)")
    if x < 0:
        raise SymbolicError("x must be nonnegative")
    Fk = x
    for k, s in enumerate(prefix):
        if k:
            Fk = growth_iterate(Fk, 1)
        if not abs(s) < A * Fk:
            # 0 < 0 fails, but zero entries are always admissible
            if s == 0 and Fk == 0:
                continue
            return False
    return True


def minimal_potential_estimate(prefix: Sequence[int]) -> float:
    """Finite-prefix estimate of the minimal potential: F^{-K}(|s_K|) at the last entry.

    Tends to the true value as the prefix grows when the entries grow like
    iterates of F; tends to 0 for bounded sequences.
    """
    if not prefix:
        return 0.0
    K = len(prefix) - 1
    t = float(abs(prefix[-1]))
    for _ in range(K):
        t = math.log1p(t)
    return t


def adjacency_compatible(s: ExpAddress, s2: ExpAddress) -> bool:
    """True iff the two addresses never differ by more than one in any entry."""
    L, P = _aligned_blocks(s, s2)
    return all(abs(s.entry(i) - s2.entry(i)) <= 1 for i in range(L + P))


def detect_cycle(history: Sequence[Hashable], window: int = 64) -> tuple[int, list] | None:
    """Smallest period p such that the last ``window`` entries repeat with period p.

    Requires at least two full repeats.  Comparison is exact equality.
    """
    tail = list(history[-window:]) if window > 0 else []
    n = len(tail)
    for p in range(1, n // 2 + 1):
        if all(tail[i] == tail[i + p] for i in range(n - p)):
            return p, tail[-p:]
    return None


def periodic_angle(block: Sequence[int], base: int) -> PolyAngle:
    """Angle whose base-D expansion is the repeated ``block``."""
    return DigitSequence((), tuple(block), base).to_angle()
