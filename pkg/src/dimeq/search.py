# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

"""
Exhaustive search for orbits of a prescribed GK dimension.

The candidate space is every family-valid partition of the group size; validity is
enforced during generation, so only the GK test runs per candidate. Work is sharded by
largest part and merged back in decreasing lexicographic order, so the result does not
depend on the number of workers.
"""
from __future__ import annotations

import json
import logging
from enum import Enum
from typing import FrozenSet, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, PositiveInt

from .equations import lift_target_gk
from .errors import DomainError
from .groups import GroupDescriptor, sp
from .orbits import filtration_gk, gk_dimension, validate_orbit
from .partitions import GroupFamily, Partition, enumerate_partitions
from .shards import gather_ordered

logger = logging.getLogger(__name__)


class TargetGK(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["target_gk"] = "target_gk"
    value: NonNegativeInt


class LiftTarget(BaseModel):
    """dim Sp_2m + gk((2k-1)^{2m} (2r-1)^{2m}) on Sp_4m(k+r-1)."""
    model_config = ConfigDict(frozen=True)
    kind: Literal["lift_target"] = "lift_target"
    m: PositiveInt
    k: PositiveInt
    r: PositiveInt

    @property
    def group_size(self) -> int:
        return 4 * self.m * (self.k + self.r - 1)


class SearchFilter(str, Enum):
    ALL_MULTIPLICITIES_EVEN = "even_mult"
    ALL_PARTS_EVEN = "even_parts"
    MINIMAL_DISTINCT_PARTS = "minimal_p"


class SearchQuery(BaseModel):
    model_config = ConfigDict(frozen=True)

    group: GroupDescriptor
    constraint: Union[TargetGK, LiftTarget] = Field(discriminator="kind")
    filters: FrozenSet[SearchFilter] = frozenset()

    @classmethod
    def for_lift(cls, m: int, k: int, r: int, *filters: SearchFilter) -> "SearchQuery":
        target = LiftTarget(m=m, k=k, r=r)
        return cls(group=sp(target.group_size), constraint=target, filters=frozenset(filters))


class SearchResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    group: str
    target_gk: int
    solutions: Tuple[Partition, ...]
    total_candidates: int

    def to_json(self) -> str:
        payload = {
            "group": self.group,
            "target_gk": self.target_gk,
            "solutions": [p.to_text() for p in self.solutions],
            "total_candidates": self.total_candidates,
        }
        return json.dumps(payload, separators=(",", ":"))


def target_of(q: SearchQuery) -> int:
    """
    Raises:
        DomainError: If a lift target is paired with a group other than Sp_4m(k+r-1).
    """
    c = q.constraint
    if isinstance(c, TargetGK):
        return c.value
    g = q.group
    if g.family is not GroupFamily.SYMPLECTIC or g.size != c.group_size or g.modifiers:
        raise DomainError(f"lift target m={c.m} k={c.k} r={c.r} lives on Sp({c.group_size}), not {g}")
    return lift_target_gk(c.m, c.k, c.r)


def _all_multiplicities_even(p: Partition) -> bool:
    return all(count % 2 == 0 for count in p.multiplicities().values())


def _all_parts_even(p: Partition) -> bool:
    return all(part % 2 == 0 for part in p.parts)


def apply_filters(solutions: List[Partition], filters: FrozenSet[SearchFilter]) -> List[Partition]:
    """Post-hoc filters; MINIMAL_DISTINCT_PARTS runs last and keeps every tie."""
    kept = solutions
    if SearchFilter.ALL_MULTIPLICITIES_EVEN in filters:
        kept = [p for p in kept if _all_multiplicities_even(p)]
    if SearchFilter.ALL_PARTS_EVEN in filters:
        kept = [p for p in kept if _all_parts_even(p)]
    if SearchFilter.MINIMAL_DISTINCT_PARTS in filters and kept:
        fewest = min(p.distinct_parts() for p in kept)
        kept = [p for p in kept if p.distinct_parts() == fewest]
    return kept


def search(q: SearchQuery, workers: int = 1) -> SearchResult:
    """
    All valid partitions of the group size whose GK dimension equals the target.

    Raises:
        DomainError: On a lift target with a mismatched group.
    """
    target = target_of(q)
    g = q.group

    def shard(largest: int) -> Tuple[int, List[Partition]]:
        candidates = enumerate_partitions(g.size, g.family, largest_part=largest)
        return len(candidates), [p for p in candidates if gk_dimension(g, p) == target]

    shards = gather_ordered(shard, range(g.size, 0, -1), workers)
    total = sum(count for count, _ in shards)
    solutions = [p for _, found in shards for p in found]
    logger.info("search on %s: %d candidates, %d with gk %d", g, total, len(solutions), target)
    return SearchResult(
        group=str(g),
        target_gk=target,
        solutions=tuple(apply_filters(solutions, q.filters)),
        total_candidates=total,
    )


def verify_solution(group: GroupDescriptor, p: Partition, target: int, by_filtration: bool = False) -> bool:
    """
    True iff ``p`` is valid for ``group`` and has GK dimension ``target``.

    With ``by_filtration`` the GK dimension is recomputed from the root filtration
    instead of the closed form.
    """
    try:
        validate_orbit(group, p)
    except DomainError:
        return False
    gk = filtration_gk(group, p) if by_filtration else gk_dimension(group, p)
    return gk == target
