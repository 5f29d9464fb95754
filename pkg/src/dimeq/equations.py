# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

"""
Evaluation of the classical, extended and lifting dimension equations.

    classical:  sum dim G_j                     = sum dim pi_i
    extended:   dim G + sum dim U_i             = sum dim L_i
    lifting:    dim G + dim U + dim sigma       = dim pi + dim Theta

A balanced report is a necessary condition only; verdicts are ``balanced`` or
``unbalanced`` and never claim an integral is non-zero or Eulerian. Imbalance is
returned as data, not raised.
"""
from __future__ import annotations

import json
import logging
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, model_validator

from .errors import DomainError, ModeError
from .functionals import (
    EisensteinDim,
    FunctionalDim,
    FunctionalIn,
    MatrixCoefficient,
    eisenstein_dim,
    functional_to_dict,
    parse_group_arg,
)
from .groups import AnyGroup, LeviComposition, group_dimension, gl, so, sp
from .orbits import filtration_profile, gk_dimension, minimal_orbit_gk, regular_partition
from .partitions import Partition
from .shards import gather_ordered

logger = logging.getLogger(__name__)


class EquationMode(str, Enum):
    CLASSICAL = "classical"
    EXTENDED = "extended"
    LIFTING = "lifting"


_CLASSICAL_KINDS = frozenset({"gk_of_orbit", "eisenstein", "character"})


class IntegralDescriptor(BaseModel):
    """Left-hand groups and unipotent integrations against right-hand functionals."""
    model_config = ConfigDict(frozen=True)

    name: str = ""
    lhs_groups: Tuple[AnyGroup, ...] = ()
    lhs_unipotent_dims: Tuple[NonNegativeInt, ...] = ()
    rhs_functionals: Tuple[FunctionalDim, ...] = ()
    mode: EquationMode = EquationMode.CLASSICAL
    lift_gk: NonNegativeInt = 0

    @model_validator(mode="after")
    def _lift_only_when_lifting(self) -> "IntegralDescriptor":
        if self.lift_gk and self.mode is not EquationMode.LIFTING:
            raise ValueError("lift_gk is only meaningful in lifting mode")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "mode": self.mode.value,
            "lift_gk": self.lift_gk,
            "lhs_groups": [str(g) for g in self.lhs_groups],
            "lhs_unipotent_dims": list(self.lhs_unipotent_dims),
            "rhs_functionals": [functional_to_dict(f) for f in self.rhs_functionals],
        }


class BalanceReport(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    name: str = ""
    lhs_total: int = Field(serialization_alias="lhs")
    rhs_total: int = Field(serialization_alias="rhs")
    deficit: int
    balanced: bool

    @classmethod
    def of(cls, name: str, lhs: int, rhs: int) -> "BalanceReport":
        return cls(name=name, lhs_total=lhs, rhs_total=rhs, deficit=rhs - lhs, balanced=rhs == lhs)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True)

    @property
    def verdict(self) -> str:
        return "balanced" if self.balanced else "unbalanced"


class IntegralIn(BaseModel):
    """Wire form of an IntegralDescriptor, as read by ``check --spec``."""
    name: str = ""
    mode: EquationMode = EquationMode.CLASSICAL
    lift_gk: NonNegativeInt = 0
    bindings: Dict[str, int] = Field(default_factory=dict)
    lhs_groups: List[Any] = Field(default_factory=list)
    lhs_unipotent_dims: List[NonNegativeInt] = Field(default_factory=list)
    rhs_functionals: List[FunctionalIn] = Field(default_factory=list)
    expected_balanced: Optional[bool] = None

    def to_descriptor(self) -> IntegralDescriptor:
        return IntegralDescriptor(
            name=self.name,
            mode=self.mode,
            lift_gk=self.lift_gk,
            lhs_groups=tuple(parse_group_arg(g) for g in self.lhs_groups),
            lhs_unipotent_dims=tuple(self.lhs_unipotent_dims),
            rhs_functionals=tuple(f.to_functional(self.bindings) for f in self.rhs_functionals),
        )


def check_equation(d: IntegralDescriptor) -> BalanceReport:
    """
    Evaluates both sides of the descriptor's equation with exact integers.

    Raises:
        ModeError: If a classical equation carries a functional other than an orbit GK
            dimension, an Eisenstein series or a character.
    """
    if d.mode is EquationMode.CLASSICAL:
        for f in d.rhs_functionals:
            if f.kind not in _CLASSICAL_KINDS:
                raise ModeError(f"{d.name or 'equation'}: {f.kind} is not admissible in classical mode")
    lhs = sum(group_dimension(g) for g in d.lhs_groups) + sum(d.lhs_unipotent_dims)
    if d.mode is EquationMode.LIFTING:
        lhs += d.lift_gk
    rhs = sum(f.value for f in d.rhs_functionals)
    report = BalanceReport.of(d.name, lhs, rhs)
    logger.debug("%s: %d vs %d (%s)", d.name, lhs, rhs, report.verdict)
    return report


def doubling_condition(group: AnyGroup, unipotent_dim: int, eisenstein: FunctionalDim) -> BalanceReport:
    """dim(G) + dim(U) = dim(E), the extended equation of a doubling integral."""
    if not isinstance(eisenstein, EisensteinDim):
        raise ModeError(f"doubling needs an Eisenstein functional, got {eisenstein.kind}")
    return check_equation(
        IntegralDescriptor(
            name=f"doubling {group}",
            lhs_groups=(group,),
            lhs_unipotent_dims=(unipotent_dim,),
            rhs_functionals=(eisenstein,),
            mode=EquationMode.EXTENDED,
        )
    )


def _require_positive(**values: int) -> None:
    for name, value in values.items():
        if value < 1:
            raise DomainError(f"{name} must be >= 1, got {value}")


# Generalized doubling on Sp_2n x GL_k

def cfgk_descriptor(n: int, k: int) -> IntegralDescriptor:
    """
    2 dim Sp_2n + dim U = dim Sp_2n + dim E_tau on H = Sp_4kn.

    U belongs to the orbit ((2k-1)^{2n} 1^{2n}); all its h_O exponents are even, so N_1 = N_2
    and dim U = gk. E_tau is induced from the Siegel Levi GL_2kn with inducing orbit (k^{2n}).
    """
    _require_positive(n=n, k=k)
    big = sp(4 * k * n)
    source = Partition.of(*([2 * k - 1] * (2 * n) + [1] * (2 * n)))
    profile = filtration_profile(big, source)
    if profile.weight_one_count:
        raise DomainError(f"orbit {source} of {big} has weight-one roots; dim U is not its GK dimension")
    inducing = gk_dimension(gl(2 * k * n), Partition.of(*([k] * (2 * n))))
    small = sp(2 * n)
    return IntegralDescriptor(
        name=f"cfgk n={n} k={k}",
        lhs_groups=(small, small),
        lhs_unipotent_dims=(profile.dim_n2,),
        rhs_functionals=(MatrixCoefficient(group=small), eisenstein_dim(inducing, big, LeviComposition.of(2 * k * n))),
        mode=EquationMode.EXTENDED,
    )


def cfgk_check(n: int, k: int) -> BalanceReport:
    return check_equation(cfgk_descriptor(n, k))


# Theta lifting Sp_2n -> SO_2k through Sp_4nk

class ThetaPrediction(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    sigma_gk: int
    vanishing_predicted: bool
    generic_compatible: bool
    dim_group: int
    dim_pi: int
    dim_theta: int


def theta_lift_predict(n: int, k: int) -> ThetaPrediction:
    """
    Predicted GK dimension of the theta lift of a generic cuspidal pi on Sp_2n to SO_2k.

    From dim G + dim U + dim sigma = dim pi + dim Theta with U trivial: the lift should
    vanish when that is negative and can only be generic when it equals the GK dimension
    of a generic representation of SO_2k.
    """
    _require_positive(n=n, k=k)
    group = sp(2 * n)
    dim_group = group_dimension(group)
    dim_pi = gk_dimension(group, regular_partition(group))
    dim_theta = minimal_orbit_gk(4 * n * k)
    sigma = dim_pi + dim_theta - dim_group
    target = so(2 * k)
    generic_gk = gk_dimension(target, regular_partition(target))
    return ThetaPrediction(
        n=n,
        k=k,
        sigma_gk=sigma,
        vanishing_predicted=sigma < 0,
        generic_compatible=sigma == generic_gk,
        dim_group=dim_group,
        dim_pi=dim_pi,
        dim_theta=dim_theta,
    )


# Lifts Sp_2m -> Sp_2m through Sp_4m(k+r-1)

def shift_orbits(m: int, k: int, r: int) -> Tuple[Partition, Partition]:
    """
    Source ((2k-1)^{2m} (2r-1)^{2m}) and shifted target ((2a)^{2m} (2b-2)^{2m}) with
    a = max(k, r), b = min(k, r): the larger odd block moves up, the smaller one down.

    When b = 1 the lowered block is empty and the pair degenerates to the generalized
    doubling case ((2a-1)^{2m} 1^{2m}) -> ((2a)^{2m}) on Sp_4ma.
    """
    _require_positive(m=m, k=k, r=r)
    high, low = max(k, r), min(k, r)
    source = Partition.of(*([2 * k - 1] * (2 * m) + [2 * r - 1] * (2 * m)))
    target_parts = [2 * high] * (2 * m) + ([2 * low - 2] * (2 * m) if low > 1 else [])
    return source, Partition.of(*target_parts)


def lift_target_gk(m: int, k: int, r: int) -> int:
    """dim Sp_2m + gk((2k-1)^{2m} (2r-1)^{2m}): the GK dimension a kernel on Sp_4m(k+r-1) must have."""
    source, _ = shift_orbits(m, k, r)
    return group_dimension(sp(2 * m)) + gk_dimension(sp(4 * m * (k + r - 1)), source)


def orbit_shift_check(m: int, k: int, r: int) -> BalanceReport:
    """Moving the larger source block up by one and the smaller down by one adds exactly dim Sp_2m."""
    _, target = shift_orbits(m, k, r)
    rhs = gk_dimension(sp(4 * m * (k + r - 1)), target)
    return BalanceReport.of(f"lemma71 m={m} k={k} r={r}", lift_target_gk(m, k, r), rhs)


# Sweeps

class SweepSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    points: int
    passed: int
    failures: Tuple[Dict[str, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        return json.dumps(
            {"name": self.name, "points": self.points, "passed": self.passed, "failures": list(self.failures)},
            separators=(",", ":"),
        )


def _summarize(name: str, checks: List[Tuple[Mapping[str, int], bool]]) -> SweepSummary:
    failures = tuple(dict(params) for params, ok in checks if not ok)
    logger.info("%s sweep: %d points, %d failures", name, len(checks), len(failures))
    return SweepSummary(name=name, points=len(checks), passed=len(checks) - len(failures), failures=failures)


def orbit_shift_sweep(max_value: int, workers: int = 1) -> SweepSummary:
    """All 1 <= m, k <= max_value and 2 <= r <= max_value, sharded by m."""
    _require_positive(max_value=max_value)

    def shard(m: int) -> List[Tuple[Mapping[str, int], bool]]:
        return [
            ({"m": m, "k": k, "r": r}, orbit_shift_check(m, k, r).balanced)
            for k in range(1, max_value + 1)
            for r in range(2, max_value + 1)
        ]

    shards = gather_ordered(shard, range(1, max_value + 1), workers)
    return _summarize("lemma71", [check for chunk in shards for check in chunk])


def cfgk_sweep(max_value: int, workers: int = 1) -> SweepSummary:
    """All 1 <= n, k <= max_value, sharded by n."""
    _require_positive(max_value=max_value)

    def shard(n: int) -> List[Tuple[Mapping[str, int], bool]]:
        return [({"n": n, "k": k}, cfgk_check(n, k).balanced) for k in range(1, max_value + 1)]

    shards = gather_ordered(shard, range(1, max_value + 1), workers)
    return _summarize("cfgk", [check for chunk in shards for check in chunk])


def theta_sweep(n: int, max_k: int) -> List[ThetaPrediction]:
    _require_positive(n=n, max_k=max_k)
    return [theta_lift_predict(n, k) for k in range(1, max_k + 1)]


def theta_consistency_sweep(max_value: int, workers: int = 1) -> SweepSummary:
    """Generic lifts exactly at k in {n, n+1}; vanishing exactly for 2k < n + 1."""
    _require_positive(max_value=max_value)

    def shard(n: int) -> List[Tuple[Mapping[str, int], bool]]:
        checks = []
        for k in range(1, max_value + 1):
            prediction = theta_lift_predict(n, k)
            ok = prediction.generic_compatible == (k in (n, n + 1)) and prediction.vanishing_predicted == (2 * k < n + 1)
            checks.append(({"n": n, "k": k}, ok))
        return checks

    shards = gather_ordered(shard, range(1, max_value + 1), workers)
    return _summarize("predict-theta", [check for chunk in shards for check in chunk])
