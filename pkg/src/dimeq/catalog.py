# This file is part of the dimeq project.
#
# Copyright (c) 2025, the dimeq authors
#
# This software is released under the WTFPL, Version 2.0.
# See the LICENSE file for more details.

"""
Compiled-in registry of worked dimension-equation instances.

Each entry is a builder over integer parameters. ``run_catalog`` instantiates every
entry at every point of its (possibly overridden) parameter ranges and compares the
balance verdict with the entry's expectation. Negative controls expect imbalance.

Group dimensions stated in the literature (13 and 24 for the equal-similitude subgroups,
10 for GSp_4/GL1 and PGSp_4, 15 for PGL_4) are re-derived by the builders through
``_stated``, which fails loudly if the modifier arithmetic disagrees.
"""
from __future__ import annotations

import fnmatch
import itertools
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .equations import (
    BalanceReport,
    EquationMode,
    IntegralDescriptor,
    cfgk_descriptor,
    check_equation,
    shift_orbits,
)
from .errors import CatalogLookupError, DomainError
from .functionals import (
    CharacterDim,
    EisensteinDim,
    ExplicitPeriod,
    GKOfOrbit,
    MatrixCoefficient,
    eisenstein_dim,
    gk_of,
)
from .groups import (
    AnyGroup,
    CompositeGroup,
    GroupDescriptor,
    LeviComposition,
    Modifier,
    gl,
    group_dimension,
    positive_roots,
    so,
    sp,
)
from .orbits import filtration_gk, minimal_symplectic_partition, regular_partition
from .partitions import GroupFamily, Partition
from .shards import gather_ordered

logger = logging.getLogger(__name__)

DEFAULT_RANGE = (1, 8)


class Parameter(BaseModel):
    """An integer parameter with its hard validity bounds."""
    model_config = ConfigDict(frozen=True)

    name: str
    floor: int = 1
    ceiling: Optional[int] = None

    def values(self, low: int, high: int) -> range:
        low = max(low, self.floor)
        if self.ceiling is not None:
            high = min(high, self.ceiling)
        return range(low, high + 1)


class CatalogEntry(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    id: str
    description: str
    reference: str
    parameters: Tuple[Parameter, ...] = ()
    expected_balanced: bool = True
    builder: Callable[..., IntegralDescriptor] = Field(exclude=True)
    constraint: Optional[Callable[..., bool]] = Field(default=None, exclude=True)

    def points(self, value_range: Tuple[int, int] = DEFAULT_RANGE) -> List[Dict[str, int]]:
        """All in-range parameter points, in lexicographic order."""
        low, high = value_range
        axes = [p.values(low, high) for p in self.parameters]
        names = [p.name for p in self.parameters]
        result = []
        for values in itertools.product(*axes):
            point = dict(zip(names, values))
            if self.constraint is None or self.constraint(**point):
                result.append(point)
        return result

    def build(self, **params: int) -> IntegralDescriptor:
        return self.builder(**params)


class CatalogNote(BaseModel):
    """A documented construction the equations cannot check."""
    model_config = ConfigDict(frozen=True)

    id: str
    description: str


class CatalogRun(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    params: Dict[str, int]
    report: BalanceReport
    expected: bool

    @property
    def matches(self) -> bool:
        return self.report.balanced == self.expected

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "params": self.params,
            "lhs": self.report.lhs_total,
            "rhs": self.report.rhs_total,
            "balanced": self.report.balanced,
            "expected": self.expected,
        }


def _stated(group: AnyGroup, dim: int) -> AnyGroup:
    actual = group_dimension(group)
    if actual != dim:
        raise DomainError(f"{group} has dimension {actual}, the construction states {dim}")
    return group


def _generic_gk(group: GroupDescriptor) -> GKOfOrbit:
    return gk_of(group, regular_partition(group))


def _mirabolic(n: int) -> EisensteinDim:
    """Eisenstein series on GL_n from the (n-1, 1) parabolic: orbit (2, 1^{n-2}), dimension n - 1."""
    return eisenstein_dim(0, gl(n), LeviComposition.of(n - 1, 1))


def _name(entry_id: str, **params: int) -> str:
    if not params:
        return entry_id
    return entry_id + " " + " ".join(f"{k}={v}" for k, v in params.items())


# Classical examples

def _riemann_theta() -> IntegralDescriptor:
    # Mellin transform of the Jacobi theta function: the minimal orbit of SL_2.
    return IntegralDescriptor(
        name="riemann-theta",
        lhs_groups=(gl(1),),
        rhs_functionals=(gk_of(sp(2), Partition.of(2)),),
    )


def _hecke() -> IntegralDescriptor:
    return IntegralDescriptor(
        name="hecke",
        lhs_groups=(gl(1),),
        rhs_functionals=(_generic_gk(gl(2)), CharacterDim()),
    )


def _classical_rs() -> IntegralDescriptor:
    pgl2 = _stated(gl(2, Modifier.PROJECTIVE_CENTER, label="PGL(2)"), 3)
    return IntegralDescriptor(
        name="classical-rs",
        lhs_groups=(pgl2,),
        rhs_functionals=(_generic_gk(gl(2)), _generic_gk(gl(2)), eisenstein_dim(0, gl(2), LeviComposition.of(1, 1))),
    )


# GL_n x GL_k

def _jpss_equal(n: int) -> IntegralDescriptor:
    return IntegralDescriptor(
        name=_name("jpss-equal", n=n),
        lhs_groups=(gl(n, Modifier.PROJECTIVE_CENTER),),
        rhs_functionals=(_generic_gk(gl(n)), _generic_gk(gl(n)), _mirabolic(n)),
    )


def _jpss_adjacent(n: int) -> IntegralDescriptor:
    return IntegralDescriptor(
        name=_name("jpss-adjacent", n=n),
        lhs_groups=(gl(n - 1),),
        rhs_functionals=(_generic_gk(gl(n)), _generic_gk(gl(n - 1)), CharacterDim()),
    )


def _y_dimension(n: int, k: int) -> int:
    """Upper unipotent n x n matrices whose upper left (k+1) x (k+1) corner is the identity."""
    return len(positive_roots(GroupFamily.GENERAL_LINEAR, n)) - len(positive_roots(GroupFamily.GENERAL_LINEAR, k + 1))


def _jpss_general(n: int, k: int) -> IntegralDescriptor:
    return IntegralDescriptor(
        name=_name("jpss-general", n=n, k=k),
        lhs_groups=(gl(k),),
        lhs_unipotent_dims=(_y_dimension(n, k),),
        rhs_functionals=(_generic_gk(gl(n)), _generic_gk(gl(k)), CharacterDim()),
    )


def _jpss_naive(n: int, k: int) -> IntegralDescriptor:
    return IntegralDescriptor(
        name=_name("jpss-naive-unbalanced", n=n, k=k),
        lhs_groups=(gl(k),),
        rhs_functionals=(_generic_gk(gl(n)), _generic_gk(gl(k)), CharacterDim()),
    )


def _whittaker_eisenstein(n: int) -> IntegralDescriptor:
    # Whittaker coefficient of a Borel Eisenstein series: both sides are dim N.
    return IntegralDescriptor(
        name=_name("whittaker-eisenstein", n=n),
        lhs_unipotent_dims=(len(positive_roots(GroupFamily.GENERAL_LINEAR, n)),),
        rhs_functionals=(eisenstein_dim(0, gl(n), LeviComposition.of(*([1] * n))),),
    )


def _asai(n: int) -> IntegralDescriptor:
    return IntegralDescriptor(
        name=_name("asai", n=n),
        lhs_groups=(gl(n, Modifier.PROJECTIVE_CENTER),),
        rhs_functionals=(_generic_gk(gl(n, Modifier.RESTRICT_SCALARS_DEGREE2)), _mirabolic(n)),
    )


# Two complex variables

def _bf_even(k: int) -> IntegralDescriptor:
    group = CompositeGroup(factors=(gl(k), gl(k)), gl1_quotients=1, label=f"GL1\\(GL({k}) x GL({k}))")
    return IntegralDescriptor(
        name=_name("bf-even", k=k),
        lhs_groups=(_stated(group, 2 * k * k - 1),),
        rhs_functionals=(_generic_gk(gl(2 * k)), _mirabolic(k), CharacterDim()),
    )


def _bf_odd(k: int) -> IntegralDescriptor:
    group = CompositeGroup(factors=(gl(k + 1), gl(k)), gl1_quotients=1, label=f"GL1\\(GL({k + 1}) x GL({k}))")
    return IntegralDescriptor(
        name=_name("bf-odd", k=k),
        lhs_groups=(_stated(group, (k + 1) ** 2 + k * k - 1),),
        rhs_functionals=(_generic_gk(gl(2 * k + 1)), _mirabolic(k + 1), CharacterDim()),
    )


def _bfg_gsp4() -> IntegralDescriptor:
    gsp4 = sp(4, Modifier.SIMILITUDE)
    return IntegralDescriptor(
        name="bfg-gsp4",
        lhs_groups=(_stated(sp(4, Modifier.SIMILITUDE, Modifier.QUOTIENT_BY_GL1), 10),),
        rhs_functionals=(
            _generic_gk(gsp4),
            eisenstein_dim(0, gsp4, LeviComposition.of(2)),
            eisenstein_dim(0, gsp4, LeviComposition.of(1, classical=True)),
        ),
    )


def _bfg_gsp6() -> IntegralDescriptor:
    # Pairs in GL_2 x GSp_4 with equal similitude factors, modulo the diagonal GL1.
    h = CompositeGroup(factors=(gl(2), sp(4, Modifier.SIMILITUDE)), shared_similitudes=1, gl1_quotients=1, label="GL1\\H")
    return IntegralDescriptor(
        name="bfg-gsp6",
        lhs_groups=(_stated(h, 13),),
        rhs_functionals=(
            _generic_gk(sp(6, Modifier.SIMILITUDE)),
            eisenstein_dim(0, gl(2), LeviComposition.of(1, 1)),
            eisenstein_dim(0, sp(4, Modifier.SIMILITUDE), LeviComposition.of(2)),
        ),
    )


def _bfg_gsp8() -> IntegralDescriptor:
    h = CompositeGroup(factors=(gl(2), sp(6, Modifier.SIMILITUDE)), shared_similitudes=1, gl1_quotients=1, label="GL1\\H")
    return IntegralDescriptor(
        name="bfg-gsp8",
        lhs_groups=(_stated(h, 24),),
        rhs_functionals=(
            _generic_gk(sp(8, Modifier.SIMILITUDE)),
            eisenstein_dim(0, sp(6, Modifier.SIMILITUDE), LeviComposition.of(1, 2)),
        ),
    )


def _pollack_shah() -> IntegralDescriptor:
    pgl4 = _stated(gl(4, Modifier.PROJECTIVE_CENTER), 15)
    return IntegralDescriptor(
        name="pollack-shah",
        lhs_groups=(pgl4,),
        rhs_functionals=(
            _generic_gk(gl(4)),
            eisenstein_dim(0, gl(4), LeviComposition.of(2, 2)),
            # Two-variable series; recorded as inducing 0 plus the (1,1,2) radical.
            eisenstein_dim(0, gl(4), LeviComposition.of(1, 1, 2)),
        ),
    )


# PGSp_4 against a cusp form of PGL_4

def _pgsp4() -> GroupDescriptor:
    return _stated(sp(4, Modifier.SIMILITUDE, Modifier.PROJECTIVE_CENTER), 10)


def _pgsp4_klingen() -> IntegralDescriptor:
    # Induced from a generic tau on the GL_2 of the Klingen Levi.
    klingen = eisenstein_dim(1, sp(4), LeviComposition.of(1, classical=True))
    return IntegralDescriptor(
        name="pgsp4-klingen",
        lhs_groups=(_pgsp4(),),
        rhs_functionals=(_generic_gk(gl(4)), klingen),
    )


def _pgsp4_siegel_classical() -> IntegralDescriptor:
    return IntegralDescriptor(
        name="pgsp4-siegel-classical",
        lhs_groups=(_pgsp4(),),
        rhs_functionals=(_generic_gk(gl(4)), eisenstein_dim(0, sp(4), LeviComposition.of(2))),
    )


def _pgsp4_siegel_extended() -> IntegralDescriptor:
    # The cusp form unfolds to a WO model: SO_3 reductive part, 4-dimensional unipotent part.
    return IntegralDescriptor(
        name="pgsp4-siegel-extended",
        lhs_groups=(_pgsp4(),),
        rhs_functionals=(ExplicitPeriod(reductive_dim=3, unipotent_dim=4), eisenstein_dim(0, sp(4), LeviComposition.of(2))),
        mode=EquationMode.EXTENDED,
    )


def _wo_model() -> IntegralDescriptor:
    return IntegralDescriptor(
        name="wo-model",
        lhs_groups=(so(3),),
        lhs_unipotent_dims=(4,),
        rhs_functionals=(ExplicitPeriod(reductive_dim=3, unipotent_dim=4),),
        mode=EquationMode.EXTENDED,
    )


# Doubling

def _ps_rallis_doubling(n: int) -> IntegralDescriptor:
    g = sp(2 * n)
    return IntegralDescriptor(
        name=_name("ps-rallis-doubling", n=n),
        lhs_groups=(g, g),
        rhs_functionals=(MatrixCoefficient(group=g), eisenstein_dim(0, sp(4 * n), LeviComposition.of(2 * n))),
        mode=EquationMode.EXTENDED,
    )


def _cfgk_doubling(n: int, k: int) -> IntegralDescriptor:
    return cfgk_descriptor(n, k).model_copy(update={"name": _name("cfgk-doubling", n=n, k=k)})


# Lifts

def _theta_sp2n_so2k(n: int, k: int) -> IntegralDescriptor:
    """Sp_2n -> SO_2k through the minimal representation of Sp_4nk, with a generic lift."""
    target = so(2 * k)
    big = sp(4 * n * k)
    return IntegralDescriptor(
        name=_name("theta-sp2n-so2k", n=n, k=k),
        lhs_groups=(sp(2 * n),),
        rhs_functionals=(_generic_gk(sp(2 * n)), gk_of(big, minimal_symplectic_partition(big.size))),
        mode=EquationMode.LIFTING,
        lift_gk=_generic_gk(target).value,
    )


def _lift_sl2(n: int) -> IntegralDescriptor:
    """
    SL_2 -> SL_2 through a kernel with orbit ((2n)^2 n^2) on Sp_6n, integrating over the
    unipotent group of the orbit ((2n-1)^2 (n+1)^2); the lift is generic (GK 1).
    """
    m, k, r = 1, n, (n + 2) // 2
    source, target = shift_orbits(m, k, r)
    big = sp(4 * m * (k + r - 1))
    return IntegralDescriptor(
        name=_name("sec7-lift-sl2", n=n),
        lhs_groups=(sp(2),),
        lhs_unipotent_dims=(filtration_gk(big, source),),
        rhs_functionals=(_generic_gk(sp(2)), gk_of(big, target)),
        mode=EquationMode.LIFTING,
        lift_gk=1,
    )


_N = Parameter(name="n")


ENTRIES: Tuple[CatalogEntry, ...] = (
    CatalogEntry(id="riemann-theta", description="Mellin transform of the Jacobi theta function over GL1",
                 reference="classical; both sides are 1", builder=_riemann_theta),
    CatalogEntry(id="hecke", description="Hecke integral of a GL2 cusp form over GL1",
                 reference="classical; both sides are 1", builder=_hecke),
    CatalogEntry(id="classical-rs", description="Rankin-Selberg on PGL2 with two cusp forms and an Eisenstein series",
                 reference="classical; 3 = 1 + 1 + 1", builder=_classical_rs),
    CatalogEntry(id="jpss-equal", description="GL_n x GL_n over PGL_n with the mirabolic series",
                 reference="Jacquet, Piatetski-Shapiro, Shalika; n^2-1 = 2 n(n-1)/2 + n-1",
                 parameters=(Parameter(name="n", floor=2),), builder=_jpss_equal),
    CatalogEntry(id="jpss-adjacent", description="GL_n x GL_{n-1} over GL_{n-1}",
                 reference="Jacquet, Piatetski-Shapiro, Shalika; (n-1)^2 = n(n-1)/2 + (n-1)(n-2)/2",
                 parameters=(Parameter(name="n", floor=2),), builder=_jpss_adjacent),
    CatalogEntry(id="jpss-general", description="GL_n x GL_k over GL_k x Y_{n,k}",
                 reference="Jacquet, Piatetski-Shapiro, Shalika; dim Y = n(n-1)/2 - k(k+1)/2",
                 parameters=(Parameter(name="n", floor=2), Parameter(name="k")),
                 builder=_jpss_general, constraint=lambda n, k: k <= n - 1),
    CatalogEntry(id="jpss-naive-unbalanced", description="GL_n x GL_k over GL_k without Y_{n,k} (k < n-1)",
                 reference="negative control; k^2 < n(n-1)/2 + k(k-1)/2",
                 parameters=(Parameter(name="n", floor=3), Parameter(name="k")), expected_balanced=False,
                 builder=_jpss_naive, constraint=lambda n, k: k <= n - 2),
    CatalogEntry(id="whittaker-eisenstein", description="Whittaker coefficient of a Borel Eisenstein series on GL_n",
                 reference="group and representation both have dimension dim N",
                 parameters=(_N,), builder=_whittaker_eisenstein),
    CatalogEntry(id="asai", description="Asai integral of a Res GL_n cusp form over Z\\GL_n",
                 reference="Flicker; n^2-1 = 2 n(n-1)/2 + n-1",
                 parameters=(Parameter(name="n", floor=2),), builder=_asai),
    CatalogEntry(id="bf-even", description="Standard x exterior square on GL_2k over GL1\\(GL_k x GL_k)",
                 reference="Bump-Friedberg; 2k^2-1 = k(2k-1) + k-1",
                 parameters=(Parameter(name="k", floor=2),), builder=_bf_even),
    CatalogEntry(id="bf-odd", description="Standard x exterior square on GL_{2k+1} over GL1\\(GL_{k+1} x GL_k)",
                 reference="Bump-Friedberg; (k+1)^2+k^2-1 = (2k+1)(2k)/2 + k",
                 parameters=(Parameter(name="k"),), builder=_bf_odd),
    CatalogEntry(id="bfg-gsp4", description="Standard x spin on GSp4 with Siegel and Klingen series",
                 reference="Bump-Friedberg-Ginzburg; 10 = 4 + 3 + 3", builder=_bfg_gsp4),
    CatalogEntry(id="bfg-gsp6", description="Standard x spin on GSp6 over GL1\\H, H in GL2 x GSp4",
                 reference="Bump-Friedberg-Ginzburg; 13 = 9 + 1 + 3", builder=_bfg_gsp6),
    CatalogEntry(id="bfg-gsp8", description="Standard x spin on GSp8 over GL1\\H, H in GL2 x GSp6",
                 reference="Bump-Friedberg-Ginzburg; 24 = 16 + 8", builder=_bfg_gsp8),
    CatalogEntry(id="pollack-shah", description="Three L-functions on PGL4 with (2,2) and (1,1,2) series",
                 reference="Pollack-Shah; 15 = 6 + 4 + 5", builder=_pollack_shah),
    CatalogEntry(id="pgsp4-klingen", description="PGL4 cusp form against a Klingen series over PGSp4",
                 reference="10 = 6 + 4", builder=_pgsp4_klingen),
    CatalogEntry(id="pgsp4-siegel-classical", description="PGL4 cusp form against a Siegel series over PGSp4",
                 reference="negative control; the Siegel series has dimension 3, not 4",
                 expected_balanced=False, builder=_pgsp4_siegel_classical),
    CatalogEntry(id="pgsp4-siegel-extended", description="The Siegel case through the WO model functional",
                 reference="extended equation; 10 = 7 + 3", builder=_pgsp4_siegel_extended),
    CatalogEntry(id="wo-model", description="The WO model functional itself: SO3 times a 4-dimensional unipotent group",
                 reference="explicit period; 3 + 4 = 7", builder=_wo_model),
    CatalogEntry(id="ps-rallis-doubling", description="Doubling on Sp_2n x Sp_2n with the Siegel series on Sp_4n",
                 reference="Piatetski-Shapiro-Rallis; dim Sp_2n = dim E", parameters=(_N,),
                 builder=_ps_rallis_doubling),
    CatalogEntry(id="cfgk-doubling", description="Generalized doubling for Sp_2n x GL_k on Sp_4kn",
                 reference="Cai-Friedberg-Ginzburg-Kaplan; 2 dim G + dim U = dim G + dim E",
                 parameters=(_N, Parameter(name="k")), builder=_cfgk_doubling),
    CatalogEntry(id="theta-sp2n-so2k", description="Theta lift Sp_2n -> SO_2k with a generic lift",
                 reference="lifting equation; generic exactly for k in {n, n+1}",
                 parameters=(_N, Parameter(name="k")), builder=_theta_sp2n_so2k,
                 constraint=lambda n, k: k in (n, n + 1)),
    CatalogEntry(id="sec7-lift-sl2", description="SL2 -> SL2 lift through a kernel of orbit ((2n)^2 n^2) on Sp_6n",
                 reference="orbit shift with m=1, k=n, r=(n+2)/2",
                 parameters=(Parameter(name="n", floor=2),), builder=_lift_sl2,
                 constraint=lambda n: n % 2 == 0),
)

NOTES: Tuple[CatalogNote, ...] = (
    CatalogNote(id="metaplectic-sym2", description="Symmetric square integrals on metaplectic covers (Bump-Ginzburg, Takeda); "
                "covers carry the dimension of the underlying group but the counts are not recorded"),
    CatalogNote(id="godement-jacquet", description="Godement-Jacquet integrals lie outside the dimension equation"),
    CatalogNote(id="new-way", description="New way integrals (Piatetski-Shapiro-Rallis, Bump-Furusawa-Ginzburg, "
                "Gurevich-Segal) do not satisfy the dimension equation"),
    CatalogNote(id="pollack-shah-gu22", description="The GU(2,2) analogue of pollack-shah has the same dimension count"),
)


def list_entries() -> List[CatalogEntry]:
    """Entries in registry order."""
    return list(ENTRIES)


def find_entries(pattern: Optional[str] = None) -> List[CatalogEntry]:
    """
    Raises:
        CatalogLookupError: If no entry id matches ``pattern``.
    """
    if pattern is None:
        return list(ENTRIES)
    matched = [e for e in ENTRIES if fnmatch.fnmatchcase(e.id, pattern)]
    if not matched:
        raise CatalogLookupError(f"no catalog entry matches {pattern!r}")
    return matched


def _evaluate(job: Tuple[CatalogEntry, Dict[str, int]]) -> CatalogRun:
    entry, params = job
    report = check_equation(entry.build(**params))
    return CatalogRun(id=entry.id, params=params, report=report, expected=entry.expected_balanced)


def run_catalog(
    pattern: Optional[str] = None,
    value_range: Optional[Tuple[int, int]] = None,
    workers: int = 1,
) -> List[CatalogRun]:
    """
    One run per (entry, parameter point), in registry then lexicographic point order.

    Args:
        pattern: fnmatch-style id pattern; None selects every entry.
        value_range: (low, high) replacing the default 1..8 for every parameter,
            still clipped to each parameter's validity bounds.
        workers: Concurrency bound for the fan-out.

    Raises:
        CatalogLookupError: If ``pattern`` matches nothing.
        DomainError: On an empty or inverted range.
    """
    value_range = value_range or DEFAULT_RANGE
    if value_range[0] > value_range[1]:
        raise DomainError(f"empty parameter range {value_range[0]}..{value_range[1]}")
    entries = find_entries(pattern)
    jobs: Sequence[Tuple[CatalogEntry, Dict[str, int]]] = [
        (entry, point) for entry in entries for point in entry.points(value_range)
    ]
    runs = gather_ordered(_evaluate, jobs, workers)
    mismatches = sum(1 for run in runs if not run.matches)
    logger.info("catalog: %d entries, %d points, %d mismatches", len(entries), len(runs), mismatches)
    return runs
