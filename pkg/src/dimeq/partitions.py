# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

"""
Exact partition arithmetic.

Unipotent orbits of the classical groups are indexed by partitions of the size of the
natural representation, subject to a parity rule that depends on the group family.
This module holds the canonical Partition value type, its text grammar, the conjugate
(transpose), the dominance order and a family-aware enumerator.

Canonical storage is the weakly decreasing part tuple; exponent notation such as
``5^2 3^2`` is surface syntax only.
"""
from __future__ import annotations

import logging
import re
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, field_validator
from sympy import Integer
from sympy.parsing.sympy_parser import (
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from .errors import DomainError, PartitionParseError

logger = logging.getLogger(__name__)


class GroupFamily(str, Enum):
    """The four split classical families."""
    GENERAL_LINEAR = "GL"
    SYMPLECTIC = "Sp"
    ODD_ORTHOGONAL = "SO_odd"
    EVEN_ORTHOGONAL = "SO_even"

    def allows_multiplicity(self, part: int, count: int) -> bool:
        """Parity rule for a single part value occurring ``count`` times."""
        if count % 2 == 0 or self is GroupFamily.GENERAL_LINEAR:
            return True
        if self is GroupFamily.SYMPLECTIC:
            return part % 2 == 0
        return part % 2 == 1

    def admits(self, partition: "Partition") -> bool:
        return all(self.allows_multiplicity(part, count) for part, count in partition.multiplicities().items())


class Partition(BaseModel):
    """A weakly decreasing sequence of positive integers."""
    model_config = ConfigDict(frozen=True)

    parts: Tuple[PositiveInt, ...] = Field(min_length=1)

    @field_validator("parts", mode="after")
    @classmethod
    def _canonical(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        return tuple(sorted(value, reverse=True))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(parts=parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> Dict[int, int]:
        """Part value -> multiplicity, largest value first."""
        counts: Dict[int, int] = {}
        for part in self.parts:
            counts[part] = counts.get(part, 0) + 1
        return counts

    def distinct_parts(self) -> int:
        return len(set(self.parts))

    def odd_part_count(self) -> int:
        """Number of odd parts counted with multiplicity (the ``a`` of the orbit formulas)."""
        return sum(1 for part in self.parts if part % 2)

    def to_text(self) -> str:
        """Exponent form with descending bases, e.g. ``5^2 3^2``."""
        return " ".join(
            str(part) if count == 1 else f"{part}^{count}" for part, count in self.multiplicities().items()
        )

    def __str__(self) -> str:
        return self.to_text()


# Grammar

_LIST_RE = re.compile(r"^\[(?P<body>[^\[\]]*)\]$")
_DECIMAL_RE = re.compile(r"^\d+$")
_FACTOR_RE = re.compile(r"(?P<base>\d+|\{[^{}]*\})(?:\^(?P<exp>\d+|\{[^{}]*\}))?")
_EXPR_CHARS_RE = re.compile(r"^[0-9A-Za-z_+\-*/() ]+$")
_TRANSFORMATIONS = standard_transformations + (implicit_multiplication,)

# Largest number of parts a factor list may expand to.
MAX_PARTS = 100_000


def _evaluate(expr: str, bindings: Mapping[str, int], token: str) -> int:
    """Resolve an integer expression over bound identifiers (``2n`` means ``2*n``)."""
    if not expr.strip() or not _EXPR_CHARS_RE.match(expr):
        raise PartitionParseError(f"invalid expression in token {token!r}")
    local_dict = {name: Integer(value) for name, value in bindings.items()}
    try:
        value = parse_expr(expr, local_dict=local_dict, transformations=_TRANSFORMATIONS)
    except Exception as exc:
        raise PartitionParseError(f"cannot parse expression in token {token!r}: {exc}") from exc
    free = sorted(str(symbol) for symbol in getattr(value, "free_symbols", ()))
    if free:
        raise PartitionParseError(f"unbound identifier {free[0]!r} in token {token!r}")
    if not getattr(value, "is_Integer", False):
        raise PartitionParseError(f"token {token!r} does not evaluate to an integer")
    return int(value)


def _resolve(raw: str, bindings: Mapping[str, int], token: str) -> int:
    if raw.startswith("{"):
        return _evaluate(raw[1:-1], bindings, token)
    return int(raw)


def _parse_list(body: str, text: str) -> List[int]:
    parts: List[int] = []
    for token in (t.strip() for t in body.split(",")):
        if not _DECIMAL_RE.match(token):
            raise PartitionParseError(f"invalid part {token!r} in {text!r}")
        if int(token) == 0:
            raise PartitionParseError(f"zero part {token!r} in {text!r}")
        parts.append(int(token))
    return parts


def _parse_factors(text: str, bindings: Mapping[str, int]) -> List[int]:
    parts: List[int] = []
    for token in text.split():
        match = _FACTOR_RE.fullmatch(token)
        if not match:
            raise PartitionParseError(f"invalid factor {token!r}")
        base = _resolve(match.group("base"), bindings, token)
        exp = _resolve(match.group("exp"), bindings, token) if match.group("exp") else 1
        if base <= 0:
            raise PartitionParseError(f"non-positive part in factor {token!r}")
        if exp < 0:
            raise PartitionParseError(f"negative exponent in factor {token!r}")
        if len(parts) + exp > MAX_PARTS:
            raise PartitionParseError(f"factor {token!r} expands past {MAX_PARTS} parts")
        parts.extend([base] * exp)
    return parts


def parse_partition(text: str, bindings: Optional[Mapping[str, int]] = None) -> Partition:
    """
    Parses partition text into a canonical Partition.

    Accepts either the list syntax ``[a,b,c]`` or whitespace separated factors
    ``BASE``, ``BASE^EXP`` or ``BASE^{EXPR}``, where EXPR is an integer expression over
    the identifiers in ``bindings``. A zero exponent contributes no parts, so
    ``1^{2n-2}`` with n = 1 is empty; a factor list may expand to at most
    ``MAX_PARTS`` parts.

    Raises:
        PartitionParseError: On malformed text, zero or negative parts, empty input, or
            an expansion past ``MAX_PARTS``.
    """
    bindings = bindings or {}
    stripped = (text or "").strip()
    if not stripped:
        raise PartitionParseError("empty partition text")
    list_match = _LIST_RE.match(stripped)
    if list_match:
        parts = _parse_list(list_match.group("body"), stripped)
    elif stripped.startswith("[") or stripped.endswith("]"):
        raise PartitionParseError(f"unbalanced brackets in {stripped!r}")
    else:
        parts = _parse_factors(stripped, bindings)
    if not parts:
        raise PartitionParseError(f"partition {stripped!r} has no parts")
    return Partition(parts=tuple(parts))


# Combinatorics

def transpose(p: Partition) -> Partition:
    """The conjugate partition (column lengths of the Young diagram)."""
    return Partition.model_construct(parts=tuple(sum(1 for part in p.parts if part > j) for j in range(p.parts[0])))


def dominance_leq(p: Partition, q: Partition) -> bool:
    """True iff every prefix sum of ``p`` is at most the matching prefix sum of ``q``."""
    if p.n != q.n:
        raise DomainError(f"dominance needs partitions of the same size, got {p.n} and {q.n}")
    sum_p = sum_q = 0
    for i in range(max(len(p.parts), len(q.parts))):
        sum_p += p.parts[i] if i < len(p.parts) else 0
        sum_q += q.parts[i] if i < len(q.parts) else 0
        if sum_p > sum_q:
            return False
    return True


def _generate(remaining: int, max_value: int, family: GroupFamily) -> Iterator[Tuple[int, ...]]:
    # Values descending, multiplicities descending: decreasing lexicographic order.
    if remaining == 0:
        yield ()
        return
    for value in range(min(remaining, max_value), 0, -1):
        for count in range(remaining // value, 0, -1):
            if not family.allows_multiplicity(value, count):
                continue
            head = (value,) * count
            for tail in _generate(remaining - value * count, value - 1, family):
                yield head + tail


def enumerate_partitions(n: int, family: GroupFamily, largest_part: Optional[int] = None) -> List[Partition]:
    """
    All partitions of ``n`` admitted by ``family`` in decreasing lexicographic order.

    Invalid multiplicities are pruned during generation. ``largest_part`` restricts the
    result to one shard (partitions whose first part equals it); concatenating the shards
    for ``largest_part = n, n-1, ..., 1`` reproduces the full list.
    """
    if n < 1:
        raise DomainError(f"cannot enumerate partitions of {n}")
    if largest_part is not None and not 1 <= largest_part <= n:
        raise DomainError(f"largest part {largest_part} outside 1..{n}")
    if largest_part is None:
        tuples = _generate(n, n, family)
    else:
        tuples = (
            (largest_part,) * count + tail
            for count in range(n // largest_part, 0, -1)
            if family.allows_multiplicity(largest_part, count)
            for tail in _generate(n - largest_part * count, largest_part - 1, family)
        )
    result = [Partition.model_construct(parts=parts) for parts in tuples]
    logger.debug("enumerated %d %s partitions of %d (largest part %s)", len(result), family.value, n, largest_part)
    return result


def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal number recurrence; independent of the enumerator."""
    if n < 0:
        raise DomainError(f"cannot count partitions of {n}")
    counts = [1] + [0] * n
    for m in range(1, n + 1):
        total, j = 0, 1
        while True:
            for pentagonal in (j * (3 * j - 1) // 2, j * (3 * j + 1) // 2):
                if pentagonal > m:
                    break
                total += counts[m - pentagonal] if j % 2 else -counts[m - pentagonal]
            if j * (3 * j - 1) // 2 > m:
                break
            j += 1
        counts[m] = total
    return counts[n]
