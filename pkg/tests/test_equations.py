import itertools
import json

import pytest
from pydantic import ValidationError

from dimeq.equations import (
    BalanceReport,
    EquationMode,
    IntegralDescriptor,
    IntegralIn,
    cfgk_check,
    cfgk_descriptor,
    cfgk_sweep,
    check_equation,
    doubling_condition,
    lift_target_gk,
    orbit_shift_check,
    orbit_shift_sweep,
    shift_orbits,
    theta_consistency_sweep,
    theta_lift_predict,
    theta_sweep,
)
from dimeq.errors import DomainError, ModeError
from dimeq.functionals import (
    EisensteinDim,
    ExplicitPeriod,
    MatrixCoefficient,
    eisenstein_dim,
    fourier_jacobi,
    gk_of,
)
from dimeq.groups import LeviComposition, Modifier, gl, sp
from dimeq.orbits import filtration_profile
from dimeq.partitions import Partition


def _pgl2():
    return gl(2, Modifier.PROJECTIVE_CENTER)


def _pgsp4():
    return sp(4, Modifier.SIMILITUDE, Modifier.PROJECTIVE_CENTER)


def _siegel_sp4():
    return eisenstein_dim(0, sp(4), LeviComposition.of(2))


def test_classical_rankin_selberg_balances():
    generic = gk_of(gl(2), Partition.of(2))
    d = IntegralDescriptor(name="rs", lhs_groups=(_pgl2(),), rhs_functionals=(generic, generic, EisensteinDim(inducing_dim=0, radical_dim=1)))
    report = check_equation(d)
    assert (report.lhs_total, report.rhs_total, report.deficit, report.balanced) == (3, 3, 0, True)
    assert report.verdict == "balanced"


def test_siegel_integral_needs_the_extended_equation():
    generic = gk_of(gl(4), Partition.of(4))
    classical = check_equation(IntegralDescriptor(lhs_groups=(_pgsp4(),), rhs_functionals=(generic, _siegel_sp4())))
    assert (classical.lhs_total, classical.rhs_total, classical.deficit) == (10, 9, -1)
    assert classical.verdict == "unbalanced"
    extended = check_equation(
        IntegralDescriptor(
            lhs_groups=(_pgsp4(),),
            rhs_functionals=(ExplicitPeriod(reductive_dim=3, unipotent_dim=4), _siegel_sp4()),
            mode=EquationMode.EXTENDED,
        )
    )
    assert extended.balanced and extended.rhs_total == 10


def test_empty_descriptor_is_balanced():
    assert check_equation(IntegralDescriptor()) == BalanceReport.of("", 0, 0)


@pytest.mark.parametrize(
    "functional",
    [
        ExplicitPeriod(reductive_dim=3, unipotent_dim=4),
        MatrixCoefficient(group=sp(4)),
        fourier_jacobi(sp(4), Partition.of(2, 1, 1)),
    ],
)
def test_classical_mode_rejects_extended_functionals(functional):
    with pytest.raises(ModeError):
        check_equation(IntegralDescriptor(lhs_groups=(sp(4),), rhs_functionals=(functional,)))


def test_check_is_permutation_invariant():
    groups = (gl(3), sp(4), _pgl2())
    functionals = (gk_of(gl(3), Partition.of(3)), _siegel_sp4(), MatrixCoefficient(group=gl(2)))
    reports = {
        check_equation(IntegralDescriptor(lhs_groups=g, lhs_unipotent_dims=(2, 5), rhs_functionals=f, mode=EquationMode.EXTENDED))
        for g in itertools.permutations(groups)
        for f in itertools.permutations(functionals)
    }
    assert len(reports) == 1


def test_lift_gk_belongs_to_lifting_mode():
    with pytest.raises(ValidationError):
        IntegralDescriptor(lift_gk=3)
    report = check_equation(IntegralDescriptor(lhs_groups=(sp(2),), lift_gk=1, mode=EquationMode.LIFTING))
    assert report.lhs_total == 4


def test_report_json():
    report = BalanceReport.of("x", 17, 17)
    assert report.to_json() == '{"name":"x","lhs":17,"rhs":17,"deficit":0,"balanced":true}'
    assert json.loads(BalanceReport.of("y", 10, 9).to_json())["deficit"] == -1


def test_doubling_condition():
    siegel_sp8 = eisenstein_dim(0, sp(8), LeviComposition.of(4))
    assert doubling_condition(sp(4), 0, siegel_sp8).balanced
    mirabolic = eisenstein_dim(0, gl(2), LeviComposition.of(1, 1))
    report = doubling_condition(sp(2), 0, mirabolic)
    assert (report.lhs_total, report.rhs_total, report.balanced) == (3, 1, False)
    cfgk = eisenstein_dim(4, sp(8), LeviComposition.of(4))
    assert doubling_condition(sp(2), 11, cfgk).balanced


def test_doubling_condition_needs_an_eisenstein_series():
    with pytest.raises(ModeError):
        doubling_condition(sp(2), 0, MatrixCoefficient(group=sp(2)))


@pytest.mark.parametrize("n, k, lhs", [(1, 1, 6), (1, 2, 17), (2, 1, 20)])
def test_cfgk_examples(n, k, lhs):
    report = cfgk_check(n, k)
    assert report.balanced
    assert report.lhs_total == lhs


def test_cfgk_inducing_dimension():
    d = cfgk_descriptor(2, 3)
    e = d.rhs_functionals[1]
    assert e.inducing_dim == 2 * 2 * 2 * 3 * 2


def test_cfgk_domain():
    with pytest.raises(DomainError):
        cfgk_check(0, 1)


@pytest.mark.sweep
def test_cfgk_sweep():
    summary = cfgk_sweep(12)
    assert summary.points == 144
    assert summary.ok, summary.failures
    for n, k in itertools.product(range(1, 13), repeat=2):
        source = Partition.of(*([2 * k - 1] * (2 * n) + [1] * (2 * n)))
        assert filtration_profile(sp(4 * k * n), source).weight_one_count == 0


@pytest.mark.parametrize(
    "n, k, sigma, vanishing, generic",
    [(3, 1, -6, True, False), (2, 3, 6, False, True), (2, 2, 2, False, True), (2, 4, 10, False, False), (1, 1, 0, False, True)],
)
def test_theta_predictions(n, k, sigma, vanishing, generic):
    p = theta_lift_predict(n, k)
    assert (p.sigma_gk, p.vanishing_predicted, p.generic_compatible) == (sigma, vanishing, generic)
    assert p.sigma_gk == p.dim_pi + p.dim_theta - p.dim_group
    assert (p.dim_group, p.dim_pi, p.dim_theta) == (2 * n * n + n, n * n, 2 * n * k)


def test_theta_sweep_lists_every_k():
    assert [p.k for p in theta_sweep(3, 5)] == [1, 2, 3, 4, 5]


@pytest.mark.sweep
def test_theta_consistency_up_to_100():
    summary = theta_consistency_sweep(100, workers=4)
    assert summary.points == 10000
    assert summary.ok, summary.failures


@pytest.mark.parametrize(
    "m, k, r, lhs",
    [(1, 3, 2, 56), (1, 2, 3, 56), (1, 2, 2, 29), (2, 1, 2, 52), (1, 1, 2, 14), (1, 2, 1, 14)],
)
def test_orbit_shift_examples(m, k, r, lhs):
    report = orbit_shift_check(m, k, r)
    assert report.balanced
    assert report.lhs_total == lhs == lift_target_gk(m, k, r)


def test_shift_orbits_degenerate_case():
    source, target = shift_orbits(1, 2, 1)
    assert source.parts == (3, 3, 1, 1)
    assert target.parts == (4, 4)


@pytest.mark.parametrize(
    "m, k, r, moved",
    [(1, 3, 2, (6, 6, 2, 2)), (1, 2, 3, (6, 6, 2, 2)), (1, 1, 2, (4, 4)), (2, 1, 2, (4, 4, 4, 4)), (1, 3, 3, (6, 6, 4, 4))],
)
def test_shift_moves_the_larger_block_up(m, k, r, moved):
    source, target = shift_orbits(m, k, r)
    assert target.parts == moved
    assert source.n == target.n == 4 * m * (k + r - 1)


def test_orbit_shift_is_symmetric_in_k_and_r():
    for m in (1, 2):
        for k in range(1, 6):
            for r in range(1, 6):
                assert shift_orbits(m, k, r) == shift_orbits(m, r, k)
                assert orbit_shift_check(m, k, r).balanced


@pytest.mark.sweep
def test_orbit_shift_sweep():
    summary = orbit_shift_sweep(20, workers=4)
    assert summary.points == 7600
    assert summary.ok, summary.failures


def test_sweep_summary_json():
    summary = orbit_shift_sweep(2)
    assert json.loads(summary.to_json()) == {"name": "lemma71", "points": 4, "passed": 4, "failures": []}


def test_integral_in_resolves_strings():
    wire = IntegralIn.model_validate(
        {
            "name": "bfg-gsp6",
            "lhs_groups": [{"factors": ["GL(2)", "GSp(4)"], "shared_similitudes": 1, "gl1_quotients": 1}],
            "rhs_functionals": [
                {"kind": "gk_of_orbit", "args": {"group": "GSp(6)", "partition": "6"}},
                {"kind": "eisenstein", "args": {"group": "GL(2)", "blocks": "1,1"}},
                {"kind": "eisenstein", "args": {"group": "GSp(4)", "blocks": "2"}},
            ],
            "expected_balanced": True,
        }
    )
    report = check_equation(wire.to_descriptor())
    assert (report.lhs_total, report.rhs_total, report.balanced) == (13, 13, True)


def test_integral_in_lifting_with_bindings():
    wire = IntegralIn.model_validate(
        {
            "mode": "lifting",
            "lift_gk": 1,
            "bindings": {"n": 2},
            "lhs_groups": ["Sp(2)"],
            "lhs_unipotent_dims": [53],
            "rhs_functionals": [
                {"kind": "gk_of_orbit", "args": {"group": "Sp(2)", "partition": "2"}},
                {"kind": "gk_of_orbit", "args": {"group": "Sp(12)", "partition": "{2n}^2 {n}^2"}},
            ],
        }
    )
    d = wire.to_descriptor()
    assert d.mode is EquationMode.LIFTING
    assert d.rhs_functionals[1].value == 29
