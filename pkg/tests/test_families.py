from fractions import Fraction

import pytest

from ccybe import families, ybe
from ccybe.exactpoly import SymbolRegistry
from ccybe.families import (
    Characterization,
    ConstraintViolation,
    FamilySpec,
    build_profile,
    characterize,
    constants_table,
    invariant_constant_rmat,
    lift_to_rmat,
    scalar_relation_residues,
    vir_rmatrix,
)
from ccybe.conformal import tau
from ccybe.ybe import (
    diagonal_profile_of,
    is_invariant,
    is_strict_solution,
    is_weak_solution,
    rmat_tensor,
    tensor2_diagonal,
)

F = Fraction


@pytest.fixture()
def reg():
    return SymbolRegistry()


def test_build_profile_thm5_ii(reg):
    spec = FamilySpec("thm5_ii", reg, {"lhh": 1, "beta": 2, "zeta": 1})
    prof = build_profile(spec)
    assert prof.entry("h", "h") == reg.parse("x + 1")
    assert prof.entry("e", "f") == 2
    assert prof.entry("f", "e") == 2
    for pair in [("e", "e"), ("f", "f"), ("h", "e"), ("e", "h"), ("h", "f"), ("f", "h")]:
        assert prof.entry(*pair).is_zero()


def test_build_profile_thm5_iii(reg):
    spec = FamilySpec("thm5_iii", reg, {"alpha": 1, "beta": 0, "gamma": 0, "zeta": 0})
    prof = build_profile(spec)
    assert prof.entry("h", "e") == 1
    assert prof.entry("e", "h") == -1
    for pair in [("e", "e"), ("f", "f"), ("h", "h"), ("e", "f"), ("f", "e"),
                 ("h", "f"), ("f", "h")]:
        assert prof.entry(*pair).is_zero()


def test_constraint_errors(reg):
    with pytest.raises(ConstraintViolation, match="gamma = 0"):
        FamilySpec("thm5_i", reg, {"alpha": 0, "beta": 0, "gamma": 1})
    with pytest.raises(ConstraintViolation, match="zeta = beta/2"):
        FamilySpec("thm5_i", reg, {"alpha": 0, "beta": 2, "zeta": 0})
    with pytest.raises(ConstraintViolation, match="lhh != 0"):
        FamilySpec("thm5_ii", reg, {"lhh": 0, "beta": 0, "zeta": 0})
    with pytest.raises(ConstraintViolation, match="4\\*alpha\\*gamma"):
        FamilySpec("cor6_iii", reg, {"alpha": 0, "beta": 1, "gamma": 0})
    with pytest.raises(ConstraintViolation, match="requires parameter"):
        FamilySpec("thm5_i", reg, {"alpha": 0})
    with pytest.raises(ConstraintViolation, match="monic"):
        FamilySpec("thm5_i", reg, {"alpha": 0, "beta": 0}, f=reg.parse("2*t"))
    with pytest.raises(ConstraintViolation, match="unknown case"):
        FamilySpec("thm9_x", reg, {})


def test_lift_examples(reg):
    prof = ybe.DiagProfile(reg, {("h", "h"): reg.var("x")}, None)
    r = lift_to_rmat(prof)
    assert r.entries == {("h", "h"): reg.var("d1")}
    assert lift_to_rmat(ybe.DiagProfile(reg, {}, None)).entries == {}


def test_lift_diagonal_roundtrip(reg):
    spec = FamilySpec("thm5_i", reg, {"alpha": 2, "beta": 4}, f=reg.parse("t + 3"))
    prof = build_profile(spec)
    back = diagonal_profile_of(lift_to_rmat(prof))
    assert back.entries == prof.entries


def test_invariant_constant_rmat():
    r = invariant_constant_rmat(1, 0, 0, 0)
    assert r.entries[("h", "e")] == 1
    assert r.entries[("e", "h")] == -1
    assert len(r.entries) == 2

    r = invariant_constant_rmat(0, 0, 0, 1)
    assert r.entries[("h", "h")] == 1
    assert r.entries[("e", "f")] == 4
    assert len(r.entries) == 2

    assert invariant_constant_rmat(0, 0, 0, 0).entries == {}


def test_characterize_family(reg):
    spec = FamilySpec("thm5_i", reg, {"alpha": 0, "beta": 0}, f=reg.parse("t + 1"))
    rep = characterize(build_profile(spec))
    assert rep.ok
    assert rep.shared_f == reg.parse("t + 1")
    assert rep.matrix.numeric()[0][0] == 1
    assert sum(1 for row in rep.matrix.numeric() for v in row if v) == 1


def test_characterize_rank2(reg):
    prof = ybe.DiagProfile(reg, {
        ("e", "e"): reg.var("x"), ("f", "f"): reg.var("x"),
    }, {n: F(0) for n in ("alpha", "beta", "gamma", "zeta")})
    rep = characterize(prof)
    assert rep.odd and rep.sym and rep.constants_ok
    assert not rep.rank_le_1
    assert not rep.ok


def test_characterize_different_f(reg):
    prof = ybe.DiagProfile(reg, {
        ("e", "e"): reg.parse("x^3 + x"), ("h", "h"): reg.var("x"),
    }, {n: F(0) for n in ("alpha", "beta", "gamma", "zeta")})
    rep = characterize(prof)
    assert rep.shared_f is None
    assert not rep.shared_f_ok


def test_characterize_requires_numeric(reg):
    prof = ybe.DiagProfile(reg, {("e", "e"): reg.var("alpha") * reg.var("x")}, None)
    with pytest.raises(ValueError, match="parameter-free"):
        characterize(prof)


def test_characterize_roundtrip_random(reg):
    import random
    rng = random.Random(13)
    for _ in range(50):
        case = rng.choice(["thm5_i", "thm5_ii", "thm5_iii"])
        t = reg.var("t")
        deg = rng.randint(0, 2)
        f = t ** deg
        for j in range(deg):
            f = f + t ** j * rng.randint(-3, 3)
        if case == "thm5_i":
            params = {"alpha": F(rng.randint(-3, 3)), "beta": F(rng.randint(-3, 3))}
        elif case == "thm5_ii":
            params = {"lhh": F(rng.choice([1, 2, -1, 3])),
                      "beta": F(rng.randint(-3, 3)), "zeta": F(rng.randint(-3, 3))}
        else:
            params = {n: F(rng.randint(-3, 3))
                      for n in ("alpha", "beta", "gamma", "zeta")}
        spec = FamilySpec(case, reg, params, f=f)
        prof = build_profile(spec)
        rep = characterize(prof)
        assert rep.ok
        m = rep.matrix.numeric()
        if case == "thm5_i":
            assert m[0][0] == 1 and sum(v != 0 for row in m for v in row) == 1
            assert rep.shared_f == f
        elif case == "thm5_ii":
            assert m[2][2] == params["lhh"]
            assert rep.shared_f == f
        else:
            assert all(v == 0 for row in m for v in row)
        for residue in scalar_relation_residues(prof, rep.matrix).values():
            assert residue.is_zero()


def test_cor6_profiles_strict_and_skew(reg):
    u, v = reg.var("u"), reg.var("v")
    specs = [
        FamilySpec("cor6_i", reg, {"alpha": reg.var("alpha")}, f=reg.parse("t")),
        FamilySpec("cor6_ii", reg, {"lhh": reg.var("lhh")}, f=reg.parse("t + 1")),
        FamilySpec("cor6_iii", reg, {"alpha": u * u, "beta": u * v * 2, "gamma": v * v}),
    ]
    for spec in specs:
        r = lift_to_rmat(build_profile(spec))
        assert is_strict_solution(r)[0]
        assert is_weak_solution(r)[0]
        assert is_invariant(r)[0]
        sym_part = rmat_tensor(r) + tau(rmat_tensor(r))
        assert tensor2_diagonal(sym_part) == {}


def test_vir_rmatrix(reg):
    r = vir_rmatrix(reg.parse("x + y"))
    assert r.entries[("v", "v")] == reg.parse("d1 + d2")
    assert is_invariant(r)[0]
    assert is_weak_solution(r)[0]

    r2 = vir_rmatrix(reg.parse("(x+y)*x^3"))
    assert is_invariant(r2)[0]
    assert is_weak_solution(r2)[0]

    r3 = vir_rmatrix(reg.const(1))
    ok, defects = is_weak_solution(r3)
    assert not ok
    slice_poly = defects["v"].entries[("v", "v", "v")].subst_many({
        reg.sym("d3"): reg.zero(), reg.sym("d1"): reg.var("d2") * -2,
    })
    assert slice_poly == reg.parse("-24*d2^2")


def test_vir_family_spec_enforces_zero_diagonal(reg):
    spec = FamilySpec("vir", reg, coeff=reg.parse("x + y"))
    assert spec.coeff == reg.parse("x + y")
    with pytest.raises(ConstraintViolation, match="coeff\\(x, -x\\)"):
        FamilySpec("vir", reg, coeff=reg.parse("x"))


def test_constants_table(reg):
    table = constants_table(reg, {"alpha": F(1), "beta": F(2), "gamma": F(3),
                                  "zeta": F(4)})
    assert table[("e", "f")] == 14
    assert table[("f", "e")] == 2
    assert table[("h", "e")] == 1
    assert table[("e", "h")] == -1
    assert table[("h", "f")] == 3
    assert table[("f", "h")] == -3
    assert table[("h", "h")] == 4
