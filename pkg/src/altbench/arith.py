"""Exact tower arithmetic: tetration, iterated ceiling-log, integer square root.

The point of this module is the pair of threshold tests that decide
``m > tetra(k, n)`` and ``len >= tetra(k, f(base))^2`` without ever
materialising the tower, mirroring how the verifier machine uses its
pseudo-oracles.  Everything is exact big-integer arithmetic; a configurable
bit cap guards the few places where a tower is computed explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadParameters, CapExceeded, DomainError


@dataclass(frozen=True)
class ResourceCap:
    """Bit-length guard for explicit tower evaluation.

    The default blocks tetra(3,4)-scale results (65537 bits) while letting
    every tower the test ranges need through.
    """

    max_result_bits: int = 1 << 16

    def __post_init__(self) -> None:
        if self.max_result_bits < 64:
            raise BadParameters("max_result_bits must be at least 64")


DEFAULT_CAP = ResourceCap()


@dataclass(frozen=True)
class Polynomial:
    """Natural-coefficient polynomial, lowest degree first.

    ``shaped`` marks the form alpha*x^d + beta with alpha, d, beta >= 1,
    which some inequalities require; the flag is validated, not inferred.
    """

    coefficients: tuple[int, ...]
    shaped: bool = False

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise BadParameters("polynomial needs at least one coefficient")
        if any(c < 0 or not isinstance(c, int) for c in self.coefficients):
            raise BadParameters("coefficients must be non-negative integers")
        if self.shaped:
            nonzero = [i for i, c in enumerate(self.coefficients) if c != 0]
            if (
                len(nonzero) != 2
                or nonzero[0] != 0
                or self.coefficients[0] < 1
                or nonzero[1] < 1
                or self.coefficients[nonzero[1]] < 1
            ):
                raise BadParameters("shaped polynomial must be alpha*x^d + beta with alpha,d,beta >= 1")

    @staticmethod
    def of(*coefficients: int, shaped: bool = False) -> "Polynomial":
        return Polynomial(tuple(coefficients), shaped)

    @staticmethod
    def shaped_of(alpha: int, d: int, beta: int) -> "Polynomial":
        coeffs = [beta] + [0] * (d - 1) + [alpha]
        return Polynomial(tuple(coeffs), shaped=True)

    @property
    def degree(self) -> int:
        nonzero = [i for i, c in enumerate(self.coefficients) if c != 0]
        return nonzero[-1] if nonzero else 0

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coefficients)


def tetra(k: int, n: int, cap: ResourceCap = DEFAULT_CAP) -> int:
    """Tower of exponentials: tetra(0, n) = n and tetra(k, n) = 2^tetra(k-1, n)."""
    if k < 0 or n < 0:
        raise DomainError("tetra arguments must be natural numbers")
    value = n
    if value.bit_length() > cap.max_result_bits:
        raise CapExceeded(f"tetra({k},{n}) exceeds {cap.max_result_bits} bits")
    for _ in range(k):
        if value >= cap.max_result_bits:
            raise CapExceeded(f"tetra({k},{n}) exceeds {cap.max_result_bits} bits")
        value = 1 << value
    return value


def ceil_log2(m: int) -> int:
    """Ceiling of log2 for m >= 1; the 0 case is pinned to 0 by convention.

    Deep klog iterations reach 0 (e.g. after hitting an intermediate 1);
    treating ceil(log2(0)) as 0 keeps the iterated test total and agrees
    with the explicit tower comparison everywhere in the tested range.
    """
    if m < 0:
        raise DomainError("ceil_log2 of a negative number")
    if m <= 1:
        return 0
    return (m - 1).bit_length()


def klog(k: int, m: int) -> int:
    """k-fold iterated ceiling-log of m (k >= 1, m >= 1)."""
    if k < 1:
        raise DomainError("klog needs k >= 1")
    if m < 1:
        raise DomainError("klog undefined at 0")
    value = m
    for _ in range(k):
        value = ceil_log2(value)
    return value


def isqrt(m: int) -> int:
    """Largest r with r*r <= m."""
    if m < 0:
        raise DomainError("isqrt of a negative number")
    return math.isqrt(m)


def exceeds_tetra(m: int, k: int, n: int) -> bool:
    """Decide m > tetra(k, n) without evaluating the tower.

    Uses the iterated-log characterisation klog_k(m) > n; m = 0 can never
    exceed a tower (towers are >= 1), so it short-circuits to False.
    """
    if k < 1:
        raise DomainError("exceeds_tetra needs k >= 1")
    if m < 0 or n < 0:
        raise DomainError("exceeds_tetra arguments must be natural numbers")
    if m == 0:
        return False
    return klog(k, m) > n


def at_least_h_squared(length: int, k: int, f: Polynomial, base: int) -> bool:
    """Decide length >= tetra(k, f(base))^2 without evaluating the tower.

    Chains the integer-square-root characterisation with the iterated-log
    test: length >= h^2 iff isqrt(length) >= h iff isqrt(length)+1 > h
    iff klog_k(isqrt(length)+1) > f(base).
    """
    if k < 1:
        raise DomainError("at_least_h_squared needs k >= 1")
    if f(base) < 1:
        raise BadParameters("at_least_h_squared needs f(base) >= 1")
    if length < 0:
        raise DomainError("length must be a natural number")
    return klog(k, isqrt(length) + 1) > f(base)
