# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

"""
Dimensions of the unique functionals an integral unfolds to.

These are the right-hand terms of the (extended) dimension equation: the GK dimension
of an orbit, a matrix coefficient (dimension of the whole group), an explicit period
over a reductive-times-unipotent subgroup, a Fourier-Jacobi coefficient (dim N_1), an
Eisenstein series (inducing data plus unipotent radical) and characters (dimension 0).

Minimality is the caller's obligation: if a functional is also realized over a smaller
group, the descriptor must carry the smaller group. Nothing here can verify that.
"""
from __future__ import annotations

import json
import logging
from typing import Annotated, Any, Dict, Literal, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, computed_field

from .errors import DomainError
from .groups import (
    AnyGroup,
    CompositeGroup,
    GroupDescriptor,
    LeviComposition,
    group_dimension,
    parse_blocks,
    parse_group,
    unipotent_radical_dim,
)
from .orbits import Orbit, fourier_jacobi_dim, orbit
from .partitions import Partition, parse_partition

logger = logging.getLogger(__name__)


class GKOfOrbit(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["gk_of_orbit"] = "gk_of_orbit"
    orbit: Orbit

    @computed_field
    @property
    def value(self) -> int:
        return self.orbit.gk

    def args(self) -> Dict[str, Any]:
        return {"group": str(self.orbit.group), "partition": self.orbit.partition.to_text()}


class MatrixCoefficient(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["matrix_coefficient"] = "matrix_coefficient"
    group: AnyGroup

    @computed_field
    @property
    def value(self) -> int:
        return group_dimension(self.group)

    def args(self) -> Dict[str, Any]:
        return {"group": str(self.group)}


class ExplicitPeriod(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["explicit_period"] = "explicit_period"
    reductive_dim: NonNegativeInt
    unipotent_dim: NonNegativeInt

    @computed_field
    @property
    def value(self) -> int:
        return self.reductive_dim + self.unipotent_dim

    def args(self) -> Dict[str, Any]:
        return {"reductive_dim": self.reductive_dim, "unipotent_dim": self.unipotent_dim}


class FourierJacobi(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["fourier_jacobi"] = "fourier_jacobi"
    orbit: Orbit

    @computed_field
    @property
    def value(self) -> int:
        return fourier_jacobi_dim(self.orbit.group, self.orbit.partition)

    def args(self) -> Dict[str, Any]:
        return {"group": str(self.orbit.group), "partition": self.orbit.partition.to_text()}


class EisensteinDim(BaseModel):
    """Inducing data dimension plus the unipotent radical, on either side of an equation."""
    model_config = ConfigDict(frozen=True)
    kind: Literal["eisenstein"] = "eisenstein"
    inducing_dim: NonNegativeInt
    radical_dim: NonNegativeInt

    @computed_field
    @property
    def value(self) -> int:
        return self.inducing_dim + self.radical_dim

    def args(self) -> Dict[str, Any]:
        return {"inducing_dim": self.inducing_dim, "radical_dim": self.radical_dim}


class CharacterDim(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["character"] = "character"

    @computed_field
    @property
    def value(self) -> int:
        return 0

    def args(self) -> Dict[str, Any]:
        return {}


FunctionalDim = Annotated[
    Union[GKOfOrbit, MatrixCoefficient, ExplicitPeriod, FourierJacobi, EisensteinDim, CharacterDim],
    Field(discriminator="kind"),
]


def functional_value(f: FunctionalDim) -> int:
    return f.value


def gk_of(group: GroupDescriptor, p: Partition) -> GKOfOrbit:
    return GKOfOrbit(orbit=orbit(group, p))


def fourier_jacobi(group: GroupDescriptor, p: Partition) -> FourierJacobi:
    return FourierJacobi(orbit=orbit(group, p))


def eisenstein_dim(inducing_gk: int, group: GroupDescriptor, levi: LeviComposition) -> EisensteinDim:
    """
    Expected dimension of the Eisenstein series induced from ``levi``: dim(tau) + dim U.

    Raises:
        DomainError: If the Levi does not fit the group.
    """
    if inducing_gk < 0:
        raise DomainError(f"inducing dimension must be non-negative, got {inducing_gk}")
    return EisensteinDim(inducing_dim=inducing_gk, radical_dim=unipotent_radical_dim(group, levi))


def functional_to_dict(f: FunctionalDim) -> Dict[str, Any]:
    return {"kind": f.kind, "args": f.args(), "value": f.value}


def functional_to_json(f: FunctionalDim) -> str:
    return json.dumps(functional_to_dict(f), separators=(",", ":"))


def parse_group_arg(value: Any) -> AnyGroup:
    """A group string, or a composite written as ``{"factors": [...], "shared_similitudes": s, "gl1_quotients": q}``."""
    if isinstance(value, Mapping):
        return CompositeGroup(
            factors=tuple(parse_group(f) for f in value.get("factors", [])),
            shared_similitudes=int(value.get("shared_similitudes", 0)),
            gl1_quotients=int(value.get("gl1_quotients", 0)),
            label=value.get("label"),
        )
    return parse_group(str(value))


class FunctionalIn(BaseModel):
    """Wire form of a functional: ``{"kind": ..., "args": {...}}``."""
    kind: str
    args: Dict[str, Any] = Field(default_factory=dict)

    def to_functional(self, bindings: Optional[Mapping[str, int]] = None) -> FunctionalDim:
        """
        Resolves group and partition strings into a FunctionalDim.

        Raises:
            DomainError: On an unknown kind or missing arguments.
        """
        a = self.args
        try:
            if self.kind == "gk_of_orbit":
                return gk_of(parse_group(a["group"]), parse_partition(a["partition"], bindings))
            if self.kind == "fourier_jacobi":
                return fourier_jacobi(parse_group(a["group"]), parse_partition(a["partition"], bindings))
            if self.kind == "matrix_coefficient":
                return MatrixCoefficient(group=parse_group_arg(a["group"]))
            if self.kind == "explicit_period":
                return ExplicitPeriod(reductive_dim=a["reductive_dim"], unipotent_dim=a["unipotent_dim"])
            if self.kind == "eisenstein":
                if "group" in a:
                    levi = LeviComposition(
                        gl_blocks=parse_blocks(str(a.get("blocks", ""))),
                        keeps_classical_factor=bool(a.get("classical_factor", False)),
                    )
                    return eisenstein_dim(int(a.get("inducing_gk", 0)), parse_group(a["group"]), levi)
                return EisensteinDim(inducing_dim=a.get("inducing_dim", 0), radical_dim=a["radical_dim"])
            if self.kind == "character":
                return CharacterDim()
        except KeyError as exc:
            raise DomainError(f"functional {self.kind!r} is missing argument {exc.args[0]!r}") from exc
        raise DomainError(f"unknown functional kind {self.kind!r}")
