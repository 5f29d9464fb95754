# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

"""
Orbit dimensions, GK dimensions and the h_O root filtration.

The closed forms are the Collingwood-McGovern partition formulas; the symplectic one is
written in the ``2n^2 + n - 1/2 sum (2i-1) n_i - a/2`` shape. They are cross-checked
against the filtration identity ``dim O / 2 = dim N_2 + 1/2 dim N_1/N_2``, where N_i is
spanned by the positive roots on which the h_O torus acts with exponent >= i.

Only the underlying split group matters for the nilpotent cone, so centers and
similitude factors are ignored here. Restriction of scalars doubles every count.
"""
from __future__ import annotations

import json
import logging
from collections import Counter
from functools import lru_cache
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, NonNegativeInt

from .errors import DomainError
from .groups import GroupDescriptor, Modifier, positive_roots
from .partitions import GroupFamily, Partition, transpose

logger = logging.getLogger(__name__)


class Orbit(BaseModel):
    """A unipotent orbit with its dimension data."""
    model_config = ConfigDict(frozen=True)

    group: GroupDescriptor
    partition: Partition
    dim: NonNegativeInt
    gk: NonNegativeInt
    odd_part_count: NonNegativeInt


class FiltrationProfile(BaseModel):
    model_config = ConfigDict(frozen=True)

    weight_vector: Tuple[int, ...]
    dim_n1: NonNegativeInt
    dim_n2: NonNegativeInt
    weight_one_count: NonNegativeInt
    weight_histogram: Dict[int, int]

    def dim_n(self, i: int) -> int:
        """dim N_i for any i >= 1."""
        if i < 1:
            raise DomainError(f"filtration index must be >= 1, got {i}")
        return sum(count for weight, count in self.weight_histogram.items() if weight >= i)

    def to_json(self) -> str:
        payload = {
            "weights": list(self.weight_vector),
            "dim_n1": self.dim_n1,
            "dim_n2": self.dim_n2,
            "histogram": {str(w): self.weight_histogram[w] for w in sorted(self.weight_histogram)},
        }
        return json.dumps(payload, separators=(",", ":"))


def validate_orbit(group: GroupDescriptor, p: Partition) -> None:
    """
    Raises:
        DomainError: If ``p`` is not a partition of the group size, or breaks the
            parity rule of the group family.
    """
    if p.n != group.size:
        raise DomainError(f"partition {p} has size {p.n}, {group} needs {group.size}")
    if not group.family.admits(p):
        rule = "odd" if group.family is GroupFamily.SYMPLECTIC else "even"
        raise DomainError(f"partition {p} is not valid for {group}: each {rule} part needs even multiplicity")


def _scalar_factor(group: GroupDescriptor) -> int:
    return 2 if group.has(Modifier.RESTRICT_SCALARS_DEGREE2) else 1


def orbit_dimension(group: GroupDescriptor, p: Partition) -> int:
    """
    Dimension of the unipotent orbit indexed by ``p``.

    Sp_2n: 2n^2 + n - 1/2 sum_i (2i-1) n_i - a/2; GL_n: n^2 - sum_j (p^t_j)^2;
    SO_m: 1/2 (m^2 - sum_j (p^t_j)^2) - 1/2 (m - a); a is the number of odd parts.
    """
    validate_orbit(group, p)
    a = p.odd_part_count()
    if group.family is GroupFamily.SYMPLECTIC:
        n = group.size // 2
        weighted = sum((2 * i - 1) * part for i, part in enumerate(p.parts, start=1))
        twice = 2 * (2 * n * n + n) - weighted - a
    else:
        columns = sum(c * c for c in transpose(p).parts)
        m = group.size
        if group.family is GroupFamily.GENERAL_LINEAR:
            twice = 2 * (m * m - columns)
        else:
            twice = m * m - columns - (m - a)
    dim, odd = divmod(twice, 2)
    if odd or dim % 2:
        raise DomainError(f"orbit {p} of {group} produced a non-even dimension")
    return dim * _scalar_factor(group)


def gk_dimension(group: GroupDescriptor, p: Partition) -> int:
    """Gelfand-Kirillov dimension, half the orbit dimension."""
    return orbit_dimension(group, p) // 2


def orbit(group: GroupDescriptor, p: Partition) -> Orbit:
    dim = orbit_dimension(group, p)
    return Orbit(group=group, partition=p, dim=dim, gk=dim // 2, odd_part_count=p.odd_part_count())


def regular_partition(group: GroupDescriptor) -> Partition:
    """The partition of the regular (principal) orbit: generic representations live here."""
    if group.family is GroupFamily.EVEN_ORTHOGONAL and group.size > 2:
        return Partition.of(group.size - 1, 1)
    if group.family is GroupFamily.EVEN_ORTHOGONAL:
        return Partition.of(*([1] * group.size))
    return Partition.of(group.size)


def minimal_symplectic_partition(size: int) -> Partition:
    """(2, 1^{size-2}): the orbit of the classical theta representation on Sp_size."""
    return Partition.of(2, *([1] * (size - 2)))


def exponent_multiset(p: Partition) -> List[int]:
    """The h_O exponents p-1, p-3, ..., 1-p for every part, sorted non-increasing."""
    return sorted((part - 2 * j - 1 for part in p.parts for j in range(part)), reverse=True)


def weight_vector(group: GroupDescriptor, p: Partition) -> List[int]:
    """Torus exponent vector: the whole multiset for GL, the first rank entries for Sp/SO."""
    validate_orbit(group, p)
    exponents = exponent_multiset(p)
    if group.family is GroupFamily.GENERAL_LINEAR:
        return exponents
    return exponents[: group.torus_rank]


def _grouped_histogram(family: GroupFamily, torus: List[int]) -> Counter:
    # Counts root weights from value multiplicities instead of walking every root.
    hist: Counter = Counter()
    items = sorted(Counter(torus).items(), reverse=True)
    for idx, (u, cu) in enumerate(items):
        pairs = cu * (cu - 1) // 2
        hist[0] += pairs
        if family is not GroupFamily.GENERAL_LINEAR:
            hist[2 * u] += pairs
        for v, cv in items[idx + 1:]:
            hist[u - v] += cu * cv
            if family is not GroupFamily.GENERAL_LINEAR:
                hist[u + v] += cu * cv
        if family is GroupFamily.SYMPLECTIC:
            hist[2 * u] += cu
        elif family is GroupFamily.ODD_ORTHOGONAL:
            hist[u] += cu
    return hist


def root_weights(group: GroupDescriptor, p: Partition) -> Dict[int, int]:
    """Weight histogram by evaluating every positive root on the torus vector."""
    torus = weight_vector(group, p)
    hist: Counter = Counter()
    for root in positive_roots(group.family, group.size).positive_roots:
        hist[sum(c * a for c, a in zip(root, torus))] += _scalar_factor(group)
    return dict(sorted(hist.items()))


@lru_cache(maxsize=4096)
def filtration_profile(group: GroupDescriptor, p: Partition) -> FiltrationProfile:
    """
    The N_1 > N_2 filtration attached to the orbit of ``p``.

    Every positive root gets the weight alpha(h_O); dim N_i counts roots of weight >= i.
    """
    torus = weight_vector(group, p)
    factor = _scalar_factor(group)
    hist = {w: c * factor for w, c in sorted(_grouped_histogram(group.family, torus).items()) if c}
    dim_n1 = sum(c for w, c in hist.items() if w >= 1)
    dim_n2 = sum(c for w, c in hist.items() if w >= 2)
    return FiltrationProfile(
        weight_vector=tuple(torus),
        dim_n1=dim_n1,
        dim_n2=dim_n2,
        weight_one_count=hist.get(1, 0),
        weight_histogram=hist,
    )


def fourier_jacobi_dim(group: GroupDescriptor, p: Partition) -> int:
    """dim N_1: the dimension of the Fourier-Jacobi functional on the orbit."""
    return filtration_profile(group, p).dim_n1


def filtration_gk(group: GroupDescriptor, p: Partition) -> int:
    """GK dimension recomputed from the filtration: dim N_2 + 1/2 weight-one count."""
    profile = filtration_profile(group, p)
    half, odd = divmod(profile.weight_one_count, 2)
    if odd:
        raise DomainError(f"orbit {p} of {group} has an odd weight-one count")
    return profile.dim_n2 + half


def minimal_orbit_gk(size: int) -> int:
    """
    GK dimension of the minimal orbit (2, 1^{size-2}) of Sp_size, which is size/2.

    Used where the partition would be too long to build (theta sweeps over Sp_4nk);
    agreement with ``gk_dimension`` is part of the test suite.
    """
    if size < 2 or size % 2:
        raise DomainError(f"Sp({size}) has no minimal orbit")
    return size // 2
