import ast
from fractions import Fraction

import pytest

from localEps import epsilon, group_core as gc
from localEps.cyclo import scaled, zeta
from localEps.epsilon import W, evaluate, find_c
from localEps.errors import (AxiomViolation, ConductorMismatch, ConductorTooSmall, Degenerate,
                             DimensionNotTame, GdNotInZ, InconsistentExtensionData,
                             MissingCharacterData, NoValidC, NotARoot, NotInvariant,
                             NotSquareIndex, NotSubgroup, PreconditionViolated, UnsupportedModel)
from localEps.finite_field import characters, get_field
from localEps.heisenberg import (ExtensionData, HeisenbergDatum, UIsotropicDatum, build_rho,
                                 check_deligne_henniart, check_determinants, check_h_independence,
                                 check_minimal_w, check_x_eta, chi_extensions, conductor_formulas,
                                 deligne_henniart_W, det_brute, det_invariant, dim_gate,
                                 dimension_equivalent, extend_chi, gallagher_det, heisenberg_data,
                                 invariant_mod_roots, minimal_W, optimal_chi0_order, radical_index,
                                 trace_character, twisted_conductor, x_eta_eval)
from localEps.local_field import (LocalFieldDesc, canonical_psi, qp, qp_characters, qp_psi,
                                  qp_unit_characters, tame_character, trivial_character)


def _only(g):
    data = heisenberg_data(g)
    assert len(data) == 1
    return data[0]


def test_heisenberg_data_counts(named_groups):
    assert heisenberg_data(named_groups['S3']) == []
    assert len(heisenberg_data(named_groups['D8'])) == 1
    assert len(heisenberg_data(named_groups['Q8'])) == 1
    assert [d.dim for d in heisenberg_data(named_groups['heis(3)'])] == [3, 3]


def test_dihedral_determinant(named_groups):
    g = named_groups['D8']
    d = _only(g)
    rep = build_rho(d)
    assert rep.dim == 2 and d.two_rank == 2
    for x in range(g.n):
        _, reflection = ast.literal_eval(g.labels[x])
        want = -1 if reflection else 1
        assert det_brute(rep, x) == want
        assert det_invariant(d, x) == want
        assert gallagher_det(d, None, x) == want


@pytest.mark.parametrize('spec', ['Q8', 'heis(3)'])
def test_trivial_determinant(named_groups, spec):
    for d in heisenberg_data(named_groups[spec]):
        rep = build_rho(d)
        assert all(det_brute(rep, x) == 1 for x in range(d.g.n))


def test_extraspecial_determinant_is_not_trivial(named_groups):
    data = heisenberg_data(named_groups['extraspecial(3)'])
    assert len(data) == 2
    for d in data:
        assert d.two_rank == 0
        assert any(det_invariant(d, x) != 1 for x in range(d.g.n))


def test_det_invariant_needs_g_d_in_center(named_groups):
    d = _only(named_groups['Q8'])
    outside = next(x for x in range(d.g.n) if x not in d.z)
    d.dim = 1
    with pytest.raises(GdNotInZ):
        det_invariant(d, outside)


@pytest.mark.parametrize('spec', ['D8', 'Q8', 'heis(3)', 'extraspecial(3)'])
def test_determinant_triangle_and_h_independence(named_groups, spec):
    for d in heisenberg_data(named_groups[spec]):
        assert check_determinants(d).equal
        assert check_h_independence(d).equal
        for ext in chi_extensions(d):
            assert check_determinants(d, ext).equal


def test_trace_of_rho(named_groups):
    d = _only(named_groups['Q8'])
    tr = trace_character(build_rho(d))
    for x in range(d.g.n):
        assert tr[x] == (2 * d.chi_z(x) if x in d.z else 0)


def test_extension_choices(named_groups):
    d = _only(named_groups['D8'])
    exts = chi_extensions(d)
    assert len(exts) == 2
    assert all(len(e.h) == 4 for e in exts)
    with pytest.raises(ValueError):
        extend_chi(d, choice=(5,))
    with pytest.raises(PreconditionViolated):
        extend_chi(d, hbar=tuple(range(4)))
    ext = exts[0]
    outside = next(x for x in range(d.g.n) if x not in ext.h)
    with pytest.raises(NotSubgroup):
        ext.exponent(outside)


def test_datum_validation(named_groups):
    d8, s3 = named_groups['D8'], named_groups['S3']
    z = gc.center(d8)
    with pytest.raises(NotSubgroup):
        HeisenbergDatum(s3, (0, 2), {0: 0, 2: Fraction(1, 2)})
    with pytest.raises(MissingCharacterData):
        HeisenbergDatum(d8, z, {0: 0})
    with pytest.raises(NotInvariant):
        HeisenbergDatum(d8, (0,), {0: 0})
    with pytest.raises(AxiomViolation):
        HeisenbergDatum(d8, z, {0: 0, z[1]: Fraction(1, 3)})
    with pytest.raises(Degenerate):
        HeisenbergDatum(d8, z, {0: 0, z[1]: 0})
    with pytest.raises(NotSquareIndex):
        HeisenbergDatum(named_groups['C2xC4'], (0,), {0: 0})
    d = HeisenbergDatum(d8, z, {0: 1, z[1]: zeta(2)})
    assert d.dim == 2 and d.kernel() == (0,)


#########################################################
# U-isotropic characters


def test_x_eta_checks_on_residue_characters(small_field):
    field = LocalFieldDesc(small_field.p, 1, small_field.s)
    for eta in characters(small_field):
        u = UIsotropicDatum(field, eta)
        assert all(r.equal for r in check_x_eta(u))
        assert radical_index(u) == u.m ** 2


@pytest.mark.parametrize('p', [2, 3, 5])
def test_x_eta_checks_on_unit_characters(p):
    for up in qp_unit_characters(p, 2):
        assert all(r.equal for r in check_x_eta(UIsotropicDatum(qp(p), up)))


def test_x_eta_values():
    k = get_field(5, 1)
    eta = characters(k)[1]
    u = UIsotropicDatum(qp(5), eta)
    g = k.generator
    assert x_eta_eval(u, (0, g), (1, 1)) == zeta(4)
    assert x_eta_eval(u, (1, 1), (0, g)) == zeta(4, 3)
    assert x_eta_eval(u, (2, g), (2, g)) == 1
    with pytest.raises(UnsupportedModel):
        x_eta_eval(u, (0, 0), (1, 1))


def test_u_isotropic_datum_validation():
    with pytest.raises(ValueError):
        UIsotropicDatum(qp(5), characters(get_field(7, 1))[1])
    with pytest.raises(UnsupportedModel):
        UIsotropicDatum(LocalFieldDesc(3, 1, 2), qp_unit_characters(3, 2)[1])
    with pytest.raises(UnsupportedModel):
        UIsotropicDatum(qp(3), 2)


def test_conductor_formulas():
    cd = conductor_formulas(2, 2, ExtensionData(1, 1, 2), 3)
    assert (cd.sw, cd.a_rho, cd.a_chi_E, cd.a_chi_E1, cd.a_chi_K) == (2, 4, 3, 2, 3)
    cd = conductor_formulas(3, 1, ExtensionData(2, 2), 5)
    assert (cd.sw, cd.a_rho, cd.a_chi_E) == (0, 3, 1)
    for args in [(0, 1, ExtensionData(0, 0)), (2, 2, ExtensionData(1, 2)),
                 (2, 2, ExtensionData(1, 1, 3)), (2, 2, ExtensionData(2, 2), 3),
                 (3, 1, ExtensionData(1, 1))]:
        with pytest.raises(InconsistentExtensionData):
            conductor_formulas(*args)


def test_twisted_conductor():
    assert twisted_conductor(2, 4, 1) == 4
    assert twisted_conductor(2, 4, 2) == 4
    assert twisted_conductor(2, 4, 3) == 6
    assert twisted_conductor(3, 3, 0) == 3


def test_dimension_helpers():
    gate = dim_gate(9, 6)
    assert (gate.p_part, gate.tame_part, gate.divides, gate.dim_divides) == (3, 2, True, False)
    assert dimension_equivalent(9, 6)
    assert dimension_equivalent(13, 4)
    assert optimal_chi0_order(13, 6) == 12
    assert optimal_chi0_order(7, 4) == 2
    assert optimal_chi0_order(5, 3) == 1


def _tame_datum(q, m, theta_index, quadratic_delta=False):
    p, s = {5: (5, 1), 7: (7, 1), 9: (3, 2)}[q]
    field = LocalFieldDesc(p, 1, s)
    k = field.residue_field()
    chars = characters(k)
    di = (q - 1) // 2 if quadratic_delta else 0
    return UIsotropicDatum(field, chars[((q - 1) // m) % (q - 1)], chars[theta_index],
                           tame_character(field, di), tame_character(field, theta_index + di))


@pytest.mark.parametrize('q, m', [(5, 2), (5, 4), (7, 3), (7, 6), (9, 4)])
def test_minimal_w_moves_with_c_only_through_delta(q, m):
    for theta_index in range(q - 1):
        for quadratic in (False, True):
            u = _tame_datum(q, m, theta_index, quadratic)
            assert check_minimal_w(u, canonical_psi(u.field), 1).equal


@pytest.mark.parametrize('q', [5, 7, 9])
def test_minimal_w_in_dimension_one_is_tate_constant(q):
    u0 = _tame_datum(q, 1, 1)
    psi = canonical_psi(u0.field)
    for theta in characters(u0.field.residue_field())[1:]:
        chi = tame_character(u0.field, theta.index)
        u = UIsotropicDatum(u0.field, u0.eta, theta, trivial_character(u0.field), chi)
        assert minimal_W(u, psi, 1 + psi.conductor, 1, 1).W == W(chi, psi)


def test_minimal_w_errors():
    u = _tame_datum(5, 2, 1)
    psi = canonical_psi(u.field)
    with pytest.raises(ConductorMismatch):
        minimal_W(u, psi, psi.conductor + 2, 1, 1)
    with pytest.raises(ValueError):
        minimal_W(u, psi, psi.conductor + 1, 0, 1)
    with pytest.raises(MissingCharacterData):
        minimal_W(UIsotropicDatum(u.field, u.eta), psi, 1, 1, 1)
    wild = next(up for up in qp_unit_characters(3, 2) if up.order() % 3 == 0)
    with pytest.raises(DimensionNotTame):
        minimal_W(UIsotropicDatum(qp(3), wild), qp_psi(3), 1, 1, 1)
    bad = UIsotropicDatum(u.field, u.eta, u.theta, u.delta, trivial_character(u.field))
    with pytest.raises(PreconditionViolated):
        minimal_W(bad, psi, 1 + psi.conductor, 1, 1)


def test_invariant_mod_roots():
    one = scaled(1)
    res = invariant_mod_roots(one, 1, 1, one)
    assert res.ok and res.ratio == (0, 1) and res.modulus == 1
    res = invariant_mod_roots(one, 2, 1, scaled(zeta(8)))
    assert res.ok and res.ratio == (1, 4) and res.modulus == 4
    assert not invariant_mod_roots(one, 2, 1, scaled(zeta(16))).ok
    res = invariant_mod_roots(one, 3, 1, scaled(zeta(9)))
    assert not res.ok and res.modulus == 3
    with pytest.raises(NotARoot):
        invariant_mod_roots(one, 1, 1, scaled(2))


def test_deligne_henniart():
    psi = qp_psi(3)
    chis = [c for c in qp_characters(3, 2) if c.conductor == 2]
    assert chis
    for chi_F in chis[:2]:
        res = deligne_henniart_W(chi_F, 1, 1, psi)
        assert res.W == W(chi_F, psi)
        assert res.c == find_c(chi_F, psi, 1) and res.det_at_c == (0, 1)
        for m in (1, 2):
            assert check_deligne_henniart(chi_F, m, psi).equal
    tame = next(c for c in qp_characters(3, 1) if c.conductor == 1)
    with pytest.raises(ConductorTooSmall):
        check_deligne_henniart(tame, 2, psi)
    with pytest.raises(ConductorTooSmall):
        deligne_henniart_W(tame, 2, 1, psi)


def test_deligne_henniart_det_at_c():
    psi = qp_psi(3)
    chi_F = next(c for c in qp_characters(3, 2) if c.conductor == 2)
    eta = next(c for c in qp_characters(3, 1) if c.conductor == 1)
    res = deligne_henniart_W(chi_F, 2, lambda c: evaluate(eta, c), psi)
    det = evaluate(eta, res.c)
    assert res.W == W(chi_F, psi) ** 2 * det
    assert zeta(res.det_at_c[1], res.det_at_c[0]) == det
    with pytest.raises(NotARoot):
        deligne_henniart_W(chi_F, 2, 2, psi)
    with pytest.raises(NotARoot):
        deligne_henniart_W(chi_F, 2, lambda c: c, psi)


def test_deligne_henniart_without_c(monkeypatch):
    chi_F = next(c for c in qp_characters(3, 2) if c.conductor == 2)
    monkeypatch.setattr(epsilon, '_psi_residue', lambda psi, u, a: 0)
    with pytest.raises(NoValidC):
        deligne_henniart_W(chi_F, 1, 1, qp_psi(3))
