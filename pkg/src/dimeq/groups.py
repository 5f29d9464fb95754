# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

"""
Descriptors for the (possibly modified) split classical groups.

GSp, PGSp, PGL, SL, restriction of scalars and GL1 quotients are handled purely as
dimension modifiers on top of a split family member; root data is only ever built for
the underlying GL_n, Sp_2n or SO_m. Root vectors are integer coordinate tuples in the
standard e_i basis.
"""
from __future__ import annotations

import logging
import re
from enum import Enum
from functools import lru_cache
from typing import FrozenSet, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, PositiveInt, model_validator

from .errors import DomainError, GroupParseError
from .partitions import GroupFamily

logger = logging.getLogger(__name__)


class Modifier(str, Enum):
    RESTRICT_SCALARS_DEGREE2 = "Res2"
    SIMILITUDE = "similitude"
    PROJECTIVE_CENTER = "projective_center"
    DETERMINANT_ONE = "determinant_one"
    QUOTIENT_BY_GL1 = "quotient_gl1"


class GroupDescriptor(BaseModel):
    """A split classical group plus dimension modifiers.

    ``size`` is the n of GL_n, the 2n of Sp_2n and the m of SO_m. Equality and hashing
    ignore ``label``.
    """
    model_config = ConfigDict(frozen=True)

    family: GroupFamily
    size: PositiveInt
    modifiers: FrozenSet[Modifier] = frozenset()
    label: Optional[str] = Field(default=None, description="Display name as written by the caller")

    def _identity(self) -> Tuple[GroupFamily, int, FrozenSet[Modifier]]:
        return self.family, self.size, self.modifiers

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupDescriptor):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self) -> int:
        return hash(self._identity())

    @model_validator(mode="after")
    def _check_size(self) -> "GroupDescriptor":
        if self.family is GroupFamily.SYMPLECTIC and self.size % 2:
            raise ValueError(f"symplectic groups need an even size, got {self.size}")
        if self.family is GroupFamily.ODD_ORTHOGONAL and self.size % 2 == 0:
            raise ValueError(f"odd orthogonal family with even size {self.size}")
        if self.family is GroupFamily.EVEN_ORTHOGONAL and self.size % 2:
            raise ValueError(f"even orthogonal family with odd size {self.size}")
        return self

    @property
    def torus_rank(self) -> int:
        """n for GL_n, n for Sp_2n, floor(m/2) for SO_m."""
        if self.family is GroupFamily.GENERAL_LINEAR:
            return self.size
        return self.size // 2

    def has(self, modifier: Modifier) -> bool:
        return modifier in self.modifiers

    def canonical_label(self) -> str:
        restrict = self.has(Modifier.RESTRICT_SCALARS_DEGREE2)
        quotient = self.has(Modifier.QUOTIENT_BY_GL1)
        mods = set(self.modifiers) - {Modifier.RESTRICT_SCALARS_DEGREE2, Modifier.QUOTIENT_BY_GL1}
        if self.family is GroupFamily.GENERAL_LINEAR:
            name = {
                frozenset(): "GL",
                frozenset({Modifier.PROJECTIVE_CENTER}): "PGL",
                frozenset({Modifier.DETERMINANT_ONE}): "SL",
            }.get(frozenset(mods))
        elif self.family is GroupFamily.SYMPLECTIC:
            name = {
                frozenset(): "Sp",
                frozenset({Modifier.SIMILITUDE}): "GSp",
                frozenset({Modifier.SIMILITUDE, Modifier.PROJECTIVE_CENTER}): "PGSp",
            }.get(frozenset(mods))
        else:
            name = "SO" if not mods else None
        if name is None:
            base = {GroupFamily.GENERAL_LINEAR: "GL", GroupFamily.SYMPLECTIC: "Sp"}.get(self.family, "SO")
            name = base + "[" + ",".join(sorted(m.value for m in mods)) + "]"
        text = f"{name}({self.size})"
        if restrict:
            text = "Res2:" + text
        if quotient:
            text += "/GL1"
        return text

    def __str__(self) -> str:
        return self.label or self.canonical_label()


class CompositeGroup(BaseModel):
    """A product of groups with shared similitude factors and GL1 quotients.

    Covers the equal-similitude subgroups H of GL_2 x GSp_2n and GL1\\(GL_a x GL_b):
    dimension = sum of factor dimensions - shared similitudes - GL1 quotients.
    """
    model_config = ConfigDict(frozen=True)

    factors: Tuple[GroupDescriptor, ...] = Field(min_length=1)
    shared_similitudes: NonNegativeInt = 0
    gl1_quotients: NonNegativeInt = 0
    label: Optional[str] = None

    def _identity(self) -> Tuple[Tuple[GroupDescriptor, ...], int, int]:
        return self.factors, self.shared_similitudes, self.gl1_quotients

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CompositeGroup):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self) -> int:
        return hash(self._identity())

    @model_validator(mode="after")
    def _check_dimension(self) -> "CompositeGroup":
        if sum(group_dimension(f) for f in self.factors) < self.shared_similitudes + self.gl1_quotients:
            raise ValueError("composite group has negative dimension")
        return self

    def __str__(self) -> str:
        if self.label:
            return self.label
        inner = " x ".join(str(f) for f in self.factors)
        return f"({inner})" + ("/sim" * self.shared_similitudes) + ("/GL1" * self.gl1_quotients)


AnyGroup = Union[GroupDescriptor, CompositeGroup]


def gl(n: int, *modifiers: Modifier, label: Optional[str] = None) -> GroupDescriptor:
    return GroupDescriptor(family=GroupFamily.GENERAL_LINEAR, size=n, modifiers=frozenset(modifiers), label=label)


def sp(size: int, *modifiers: Modifier, label: Optional[str] = None) -> GroupDescriptor:
    if size % 2:
        raise DomainError(f"Sp({size}): symplectic groups need an even size")
    return GroupDescriptor(family=GroupFamily.SYMPLECTIC, size=size, modifiers=frozenset(modifiers), label=label)


def so(m: int, *modifiers: Modifier, label: Optional[str] = None) -> GroupDescriptor:
    family = GroupFamily.ODD_ORTHOGONAL if m % 2 else GroupFamily.EVEN_ORTHOGONAL
    return GroupDescriptor(family=family, size=m, modifiers=frozenset(modifiers), label=label)


_GROUP_RE = re.compile(r"^(?P<res>Res2:)?(?P<name>GL|SL|PGL|Sp|GSp|PGSp|SO)\((?P<arg>\d+)\)(?P<quot>/GL1)?$")

_NAME_MODIFIERS = {
    "GL": (),
    "SL": (Modifier.DETERMINANT_ONE,),
    "PGL": (Modifier.PROJECTIVE_CENTER,),
    "Sp": (),
    "GSp": (Modifier.SIMILITUDE,),
    "PGSp": (Modifier.SIMILITUDE, Modifier.PROJECTIVE_CENTER),
    "SO": (),
}


def parse_group(text: str) -> GroupDescriptor:
    """
    Parses ``GL(n)``, ``SL(n)``, ``PGL(n)``, ``Sp(2n)``, ``GSp(2n)``, ``PGSp(2n)`` or ``SO(m)``,
    optionally prefixed by ``Res2:`` and/or suffixed by ``/GL1``.

    Raises:
        GroupParseError: On text outside the grammar.
        DomainError: On an odd symplectic size or a zero argument.
    """
    stripped = re.sub(r"\s+", "", text or "")
    match = _GROUP_RE.match(stripped)
    if not match:
        raise GroupParseError(f"invalid group {text!r}")
    name, arg = match.group("name"), int(match.group("arg"))
    if arg < 1:
        raise DomainError(f"group {stripped!r} needs a positive size")
    modifiers: List[Modifier] = list(_NAME_MODIFIERS[name])
    if match.group("res"):
        modifiers.append(Modifier.RESTRICT_SCALARS_DEGREE2)
    if match.group("quot"):
        modifiers.append(Modifier.QUOTIENT_BY_GL1)
    if name in ("GL", "SL", "PGL"):
        return gl(arg, *modifiers, label=stripped)
    if name == "SO":
        return so(arg, *modifiers, label=stripped)
    return sp(arg, *modifiers, label=stripped)


def _base_dimension(family: GroupFamily, size: int) -> int:
    if family is GroupFamily.GENERAL_LINEAR:
        return size * size
    if family is GroupFamily.SYMPLECTIC:
        return size * (size + 1) // 2
    return size * (size - 1) // 2


def group_dimension(g: AnyGroup) -> int:
    """
    Dimension of a descriptor or composite.

    Modifier arithmetic: base, doubled by restriction of scalars, +1 for a similitude
    factor, then -1 each for a projective center or determinant one and for a GL1 quotient.
    """
    if isinstance(g, CompositeGroup):
        return sum(group_dimension(f) for f in g.factors) - g.shared_similitudes - g.gl1_quotients
    dim = _base_dimension(g.family, g.size)
    if g.has(Modifier.RESTRICT_SCALARS_DEGREE2):
        dim *= 2
    if g.has(Modifier.SIMILITUDE):
        dim += 1
    if g.has(Modifier.PROJECTIVE_CENTER) or g.has(Modifier.DETERMINANT_ONE):
        dim -= 1
    if g.has(Modifier.QUOTIENT_BY_GL1):
        dim -= 1
    return max(dim, 0)


# Root data

CartanType = Literal["A", "B", "C", "D"]


class RootSystem(BaseModel):
    model_config = ConfigDict(frozen=True)

    cartan_type: CartanType
    rank: NonNegativeInt
    positive_roots: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.positive_roots)


def _unit(i: int, width: int, coefficient: int = 1) -> List[int]:
    vec = [0] * width
    vec[i] = coefficient
    return vec


@lru_cache(maxsize=128)
def positive_roots(family: GroupFamily, size: int) -> RootSystem:
    """
    The standard positive system of the split group of the given family and size.

    A: e_i - e_j (i<j); B adds e_i + e_j and e_i; C adds e_i + e_j and 2e_i;
    D adds e_i + e_j.

    Raises:
        DomainError: If the size does not match the family parity.
    """
    if size < 1:
        raise DomainError(f"root system of size {size}")
    if family is GroupFamily.SYMPLECTIC and size % 2:
        raise DomainError(f"Sp({size}): symplectic groups need an even size")
    if family is GroupFamily.ODD_ORTHOGONAL and size % 2 == 0:
        raise DomainError(f"SO({size}) is not odd orthogonal")
    if family is GroupFamily.EVEN_ORTHOGONAL and size % 2:
        raise DomainError(f"SO({size}) is not even orthogonal")

    width = size if family is GroupFamily.GENERAL_LINEAR else size // 2
    roots: List[Tuple[int, ...]] = []
    for i in range(width):
        for j in range(i + 1, width):
            diff = _unit(i, width)
            diff[j] = -1
            roots.append(tuple(diff))
            if family is not GroupFamily.GENERAL_LINEAR:
                plus = _unit(i, width)
                plus[j] = 1
                roots.append(tuple(plus))
    if family is GroupFamily.SYMPLECTIC:
        roots.extend(tuple(_unit(i, width, 2)) for i in range(width))
    elif family is GroupFamily.ODD_ORTHOGONAL:
        roots.extend(tuple(_unit(i, width)) for i in range(width))

    cartan_type: CartanType = {
        GroupFamily.GENERAL_LINEAR: "A",
        GroupFamily.ODD_ORTHOGONAL: "B",
        GroupFamily.SYMPLECTIC: "C",
        GroupFamily.EVEN_ORTHOGONAL: "D",
    }[family]
    rank = size - 1 if family is GroupFamily.GENERAL_LINEAR else width
    logger.debug("built %s%d root system with %d positive roots", cartan_type, rank, len(roots))
    return RootSystem(cartan_type=cartan_type, rank=rank, positive_roots=tuple(roots))


# Parabolics

class LeviComposition(BaseModel):
    """GL blocks of a standard Levi, plus whether the residual Sp/SO factor is kept."""
    model_config = ConfigDict(frozen=True)

    gl_blocks: Tuple[PositiveInt, ...] = ()
    keeps_classical_factor: bool = False

    @classmethod
    def of(cls, *blocks: int, classical: bool = False) -> "LeviComposition":
        return cls(gl_blocks=blocks, keeps_classical_factor=classical)


def parse_blocks(text: str) -> Tuple[int, ...]:
    """Block lists are written ``4``, ``1,2`` or ``[1,1,2]``."""
    body = (text or "").strip().strip("[]")
    if not body:
        return ()
    blocks = []
    for token in (t.strip() for t in body.split(",")):
        if not token.isdigit() or int(token) == 0:
            raise DomainError(f"invalid Levi block {token!r}")
        blocks.append(int(token))
    return tuple(blocks)


def unipotent_radical_dim(g: GroupDescriptor, levi: LeviComposition) -> int:
    """
    Dimension of the unipotent radical of the standard parabolic with Levi ``levi``.

    Computed as (dim G - dim M) / 2 on the split group; for GL_n with blocks
    (n_1, ..., n_r) this is sum_{i<j} n_i n_j (a missing remainder is an extra block).
    Restriction of scalars doubles the result.

    Raises:
        DomainError: If the blocks overfill the group, or leave a residual rank on
            Sp/SO without ``keeps_classical_factor``.
    """
    budget = g.torus_rank
    used = sum(levi.gl_blocks)
    if used > budget:
        raise DomainError(f"Levi blocks {list(levi.gl_blocks)} overfill {g} (budget {budget})")
    levi_dim = sum(b * b for b in levi.gl_blocks)
    residual = budget - used
    if g.family is GroupFamily.GENERAL_LINEAR:
        levi_dim += residual * residual
    elif residual:
        if not levi.keeps_classical_factor:
            raise DomainError(
                f"Levi blocks {list(levi.gl_blocks)} leave rank {residual} of {g}; keep the classical factor"
            )
        levi_dim += _base_dimension(g.family, g.size - 2 * used)
    twice = _base_dimension(g.family, g.size) - levi_dim
    radical, odd = divmod(twice, 2)
    if odd:
        raise DomainError(f"Levi {list(levi.gl_blocks)} of {g} has odd co-dimension")
    if g.has(Modifier.RESTRICT_SCALARS_DEGREE2):
        radical *= 2
    return radical
