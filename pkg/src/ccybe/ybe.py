"""Conformal Yang-Baxter checks and the projection-equation catalog.

An r-matrix over a conformal algebra with basis {q} is a finitely
supported map (q, l) -> A_{ql}(d1, d2).  The double bracket of r with
itself is an arity-3 tensor built from three contraction sums; writing
A for the left factor's coefficient and B for the right factor's, the
coefficient substitutions are

    + A(-d2, d2)      B(d1+d2, d3)   on [q,q'] x l x l'
    - A(d1, d2+d3)    B(-d3, d3)     on  q x [q',l] x l'
    - A(d1, d2+d3)    B(d2, -d2)     on  q x q' x [l',l]

with the basis-level bracket polynomial evaluated at (d, lam) =
(slot variable, contraction variable): (d1, d2), (d2, d3), (d3, d2)
respectively.  The bracket is produced unreduced; reduction modulo the
total derivation is a separate step so both forms stay testable.

Three checks are provided: strict (the reduced double bracket
vanishes), weak (every generator action on the double bracket vanishes
after eliminating the action variable via mu := -(d1+d2+d3)), and
invariance (every generator action on r + tau(r) vanishes at
lam := -(d1+d2)).

For the current algebra on sl2 the reduced double bracket only sees the
diagonal restrictions A'_{ql}(x) = A_{ql}(x, -x).  The catalog below
stores, over the generic diagonal profile, the ten independent
projection identities (named by their basis triple), the worked
f x h x f variant, the two action-variable identities that replace the
e x f x h projection in the weak case, and its shifted variant with the
boundary-constant correction.  Each catalog entry records the positive
integer `scale` relating the raw projection to the stored normalized
form: raw == scale * stored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .conformal import (
    ConfAlgebra,
    ConfElem,
    ConfTensor,
    act_on_tensor,
    permute_slots,
    project,
    reduce_mod_total,
    tau,
)
from .exactpoly import MPoly, Sym, SymbolRegistry
from .liealg import AutMatrix, sl2

Scalar = Union[int, Fraction]

PAIRS = tuple(itertools.product(("e", "f", "h"), repeat=2))


@dataclass
class RMat:
    """r = sum A_{ql}(d1, d2) q tensor l over a conformal algebra."""

    alg: ConfAlgebra
    entries: dict[tuple, MPoly]

    def __post_init__(self):
        cleaned = {}
        for (q, l), poly in self.entries.items():
            if q not in self.alg.basis_names or l not in self.alg.basis_names:
                raise ValueError(f"unknown basis pair ({q}, {l})")
            if not poly.is_zero():
                cleaned[(q, l)] = poly
        self.entries = cleaned

    def entry(self, q: str, l: str) -> MPoly:
        return self.entries.get((q, l), self.alg.reg.zero())


def rmat_tensor(r: RMat) -> ConfTensor:
    return ConfTensor(r.alg, 2, dict(r.entries))


def transform_rmat(aut: AutMatrix, r: RMat) -> RMat:
    """Coefficient transport along a Lie algebra automorphism.

    The transformed matrix is \\hat A_{ij} = sum_{ql} Phi_iq Phi_jl A_{ql}.
    """
    if r.alg.kind != "cur":
        raise ValueError("automorphisms act on current-algebra r-matrices")
    names = r.alg.basis_names
    reg = r.alg.reg
    out: dict[tuple, MPoly] = {}
    for (q, l), poly in r.entries.items():
        qi = names.index(q)
        li = names.index(l)
        for i in range(len(names)):
            for j in range(len(names)):
                c = aut.m[i][qi] * aut.m[j][li]
                if isinstance(c, (int, Fraction)) and c == 0:
                    continue
                key = (names[i], names[j])
                term = poly * c
                out[key] = out.get(key, reg.zero()) + term
    return RMat(r.alg, out)


def transform_conf_tensor(aut: AutMatrix, t: ConfTensor) -> ConfTensor:
    """Apply phi factor-wise to a tensor over the current algebra."""
    if t.alg.kind != "cur":
        raise ValueError("automorphisms act on current-algebra tensors")
    names = t.alg.basis_names
    reg = t.alg.reg
    out: dict[tuple, MPoly] = {}
    for tup, poly in t.entries.items():
        cols = [names.index(b) for b in tup]
        for combo in itertools.product(range(len(names)), repeat=t.arity):
            c: Union[int, Fraction, MPoly] = 1
            for i, col in zip(combo, cols):
                c = c * aut.m[i][col]
            if isinstance(c, (int, Fraction)):
                if c == 0:
                    continue
                term = poly * c
            else:
                term = poly * c
            key = tuple(names[i] for i in combo)
            out[key] = out.get(key, reg.zero()) + term
    return ConfTensor(t.alg, t.arity, out)


def ccybe_bracket(r: RMat) -> ConfTensor:
    """The double bracket of r with itself, unreduced, in d1, d2, d3."""
    alg = r.alg
    reg = alg.reg
    d_sym, lam_sym = alg.d, alg.lam
    d1, d2, d3 = (reg.var(n) for n in ("d1", "d2", "d3"))
    s1, s2 = reg.sym("d1"), reg.sym("d2")

    def at(poly: MPoly, u: MPoly, v: MPoly) -> MPoly:
        return poly.subst_many({s1: u, s2: v})

    out: dict[tuple, MPoly] = {}

    def add(key: tuple, poly: MPoly) -> None:
        if not poly.is_zero():
            out[key] = out.get(key, reg.zero()) + poly

    items = list(r.entries.items())
    for (q, l), A in items:
        A_13 = at(A, -d2, d2)
        A_23 = at(A, d1, d2 + d3)
        for (q2, l2), B in items:
            # [q, q2] in slot 1, contraction variable d2
            bracket = alg.basis_bracket(q, q2)
            if bracket:
                coeff = A_13 * at(B, d1 + d2, d3)
                for k, poly in bracket.items():
                    ins = poly.subst_many({d_sym: d1, lam_sym: d2})
                    add((k, l, l2), coeff * ins)
            # [q2, l] in slot 2, contraction variable d3
            bracket = alg.basis_bracket(q2, l)
            if bracket:
                coeff = A_23 * at(B, -d3, d3)
                for k, poly in bracket.items():
                    ins = poly.subst_many({d_sym: d2, lam_sym: d3})
                    add((q, k, l2), -(coeff * ins))
            # [l2, l] in slot 3, contraction variable d2
            bracket = alg.basis_bracket(l2, l)
            if bracket:
                coeff = A_23 * at(B, d2, -d2)
                for k, poly in bracket.items():
                    ins = poly.subst_many({d_sym: d3, lam_sym: d2})
                    add((q, q2, k), -(coeff * ins))
    return ConfTensor(alg, 3, out)


def is_strict_solution(r: RMat) -> tuple[bool, ConfTensor]:
    """Reduced double bracket; True iff it vanishes identically."""
    residue = reduce_mod_total(ccybe_bracket(r))
    return residue.is_zero(), residue


def weak_defect(r: RMat) -> dict[str, ConfTensor]:
    """Generator actions on the double bracket, with mu eliminated.

    Checking generators suffices: an element g(D)a contributes the
    overall factor g(-mu), which is invertible-free and scales the
    generator defect.
    """
    alg = r.alg
    mu = alg.reg.sym("mu")
    bracket = ccybe_bracket(r)
    out = {}
    for name in alg.basis_names:
        acted = act_on_tensor(alg.generator(name), bracket, mu)
        out[name] = reduce_mod_total(acted, extravar=mu)
    return out


def is_weak_solution(r: RMat) -> tuple[bool, dict[str, ConfTensor]]:
    defects = weak_defect(r)
    return all(t.is_zero() for t in defects.values()), defects


def invariance_defect(r: RMat) -> dict[str, ConfTensor]:
    """Generator actions on r + tau(r) at lam := -(d1 + d2)."""
    alg = r.alg
    lam = alg.reg.sym("lam")
    sym_part = rmat_tensor(r) + tau(rmat_tensor(r))
    out = {}
    for name in alg.basis_names:
        acted = act_on_tensor(alg.generator(name), sym_part, lam)
        out[name] = reduce_mod_total(acted, extravar=lam)
    return out


def is_invariant(r: RMat) -> tuple[bool, dict[str, ConfTensor]]:
    defects = invariance_defect(r)
    return all(t.is_zero() for t in defects.values()), defects


def cocommutator(a: ConfElem, r: RMat) -> ConfTensor:
    """The co-bracket a -> a_lam r at lam := -(d1 + d2)."""
    lam = r.alg.reg.sym("lam")
    acted = act_on_tensor(a, rmat_tensor(r), lam)
    return reduce_mod_total(acted, extravar=lam)


# Diagonal profiles --------------------------------------------------------------


@dataclass
class DiagProfile:
    """The nine univariate restrictions A'_{ql}(x) = A_{ql}(x, -x).

    `constants` optionally carries the boundary scalars (alpha, beta,
    gamma, zeta); entry values may reference parameter symbols of the
    shared registry.
    """

    reg: SymbolRegistry
    entries: dict[tuple, MPoly]
    constants: Optional[dict[str, Union[MPoly, Fraction]]] = None

    def __post_init__(self):
        for key in self.entries:
            if key not in PAIRS:
                raise ValueError(f"unknown profile entry {key}")
        self.entries = {k: v for k, v in self.entries.items() if not v.is_zero()}

    def entry(self, q: str, l: str) -> MPoly:
        return self.entries.get((q, l), self.reg.zero())

    def constant(self, name: str) -> MPoly:
        if self.constants is None:
            raise ValueError("profile carries no boundary constants")
        v = self.constants[name]
        return v if isinstance(v, MPoly) else self.reg.const(v)

    def is_numeric(self) -> bool:
        if any(e.symbols() - {self.reg.sym("x")} for e in self.entries.values()):
            return False
        if self.constants is not None:
            for v in self.constants.values():
                if isinstance(v, MPoly) and not v.is_constant():
                    return False
        return True


def diagonal_profile_of(r: RMat) -> DiagProfile:
    """Restrict every coefficient to the diagonal (d1, d2) = (x, -x)."""
    reg = r.alg.reg
    x = reg.var("x")
    sub = {reg.sym("d1"): x, reg.sym("d2"): -x}
    entries = {key: poly.subst_many(sub) for key, poly in r.entries.items()}
    if r.alg.kind == "vir":
        raise ValueError("diagonal profiles are defined over the sl2 current algebra")
    return DiagProfile(reg, entries)


def lift_profile(p: DiagProfile, alg: Optional[ConfAlgebra] = None) -> RMat:
    """Canonical lift A_{ql}(d1, d2) := A'_{ql}(d1)."""
    alg = alg or ConfAlgebra.cur(sl2(), p.reg)
    if alg.reg is not p.reg:
        raise ValueError("profile and algebra must share a registry")
    d1 = p.reg.var("d1")
    x = p.reg.sym("x")
    entries = {
        key: poly.subst_linear(x, d1) for key, poly in p.entries.items()
    }
    return RMat(alg, entries)


def tensor2_diagonal(t: ConfTensor) -> dict[tuple, MPoly]:
    """Diagonal restriction of an arity-2 tensor's coefficients."""
    reg = t.alg.reg
    x = reg.var("x")
    sub = {reg.sym("d1"): x, reg.sym("d2"): -x}
    out = {}
    for key, poly in t.entries.items():
        v = poly.subst_many(sub)
        if not v.is_zero():
            out[key] = v
    return out


# Invariance relations ------------------------------------------------------------

# (left entry, right entry, multiple of zeta on the right-hand side):
# A'_left(lam) + A'_right(-lam) == rhs_zeta * zeta.
INVARIANCE_RELATIONS = (
    (("e", "e"), ("e", "e"), 0),
    (("f", "e"), ("e", "f"), 4),
    (("h", "e"), ("e", "h"), 0),
    (("f", "f"), ("f", "f"), 0),
    (("h", "f"), ("f", "h"), 0),
    (("h", "h"), ("h", "h"), 2),
)


def invariance_residues(p: DiagProfile) -> list[MPoly]:
    """The six residues whose joint vanishing is equivalent to invariance."""
    reg = p.reg
    x = reg.sym("x")
    lam = reg.var("lam")
    out = []
    for left, right, mult in INVARIANCE_RELATIONS:
        res = p.entry(*left).subst_linear(x, lam)
        res = res + p.entry(*right).subst_linear(x, -lam)
        if mult:
            res = res - p.constant("zeta") * mult
        out.append(res)
    return out


# Equation catalog -----------------------------------------------------------------

# Linear argument forms in (x, y, z).
_X = (1, 0, 0)
_NX = (-1, 0, 0)
_NY = (0, -1, 0)
_NXY = (-1, -1, 0)
_Z = (0, 0, 1)
_YZ = (0, 1, 1)
_XZ = (1, 0, 1)
_NYZ = (0, -1, -1)


@dataclass(frozen=True)
class Equation:
    """A normalized projection identity over the diagonal profile."""

    name: str
    triple: tuple
    terms: tuple
    scale: int = 1
    action: Optional[str] = None
    shifted: bool = False


def _eq(name, triple, terms, scale=1, action=None, shifted=False):
    return Equation(name, triple, tuple(terms), scale, action, shifted)


_EFH_TERMS = (
    (2, "hf", _NX, "eh", _NY),
    (-2, "ef", _NX, "hh", _NY),
    (2, "ef", _NXY, "hh", _NY),
    (-2, "eh", _NXY, "fh", _NY),
    (1, "ee", _NXY, "ff", _X),
    (-1, "ef", _NXY, "fe", _X),
)

CATALOG: dict[str, Equation] = {
    eq.name: eq
    for eq in (
        _eq("eee", ("e", "e", "e"), (
            (1, "he", _NX, "ee", _NY),
            (-1, "ee", _NX, "he", _NY),
            (1, "eh", _NXY, "ee", _NY),
            (-1, "ee", _NXY, "he", _NY),
            (1, "eh", _NXY, "ee", _X),
            (-1, "ee", _NXY, "eh", _X),
        ), scale=2),
        _eq("hee", ("h", "e", "e"), (
            (1, "ee", _NX, "fe", _NY),
            (-1, "fe", _NX, "ee", _NY),
            (2, "hh", _NXY, "ee", _NY),
            (-2, "he", _NXY, "he", _NY),
            (2, "hh", _NXY, "ee", _X),
            (-2, "he", _NXY, "eh", _X),
        )),
        _eq("fff", ("f", "f", "f"), (
            (1, "ff", _NX, "hf", _NY),
            (-1, "hf", _NX, "ff", _NY),
            (1, "ff", _NXY, "hf", _NY),
            (-1, "fh", _NXY, "ff", _NY),
            (1, "ff", _NXY, "fh", _X),
            (-1, "fh", _NXY, "ff", _X),
        ), scale=2),
        _eq("hff", ("h", "f", "f"), (
            (1, "ef", _NX, "ff", _NY),
            (-1, "ff", _NX, "ef", _NY),
            (2, "hf", _NXY, "hf", _NY),
            (-2, "hh", _NXY, "ff", _NY),
            (2, "hf", _NXY, "fh", _X),
            (-2, "hh", _NXY, "ff", _X),
        )),
        _eq("ehh", ("e", "h", "h"), (
            (2, "hh", _NX, "eh", _NY),
            (-2, "eh", _NX, "hh", _NY),
            (1, "ee", _NXY, "fh", _NY),
            (-1, "ef", _NXY, "eh", _NY),
            (1, "ee", _NXY, "hf", _X),
            (-1, "ef", _NXY, "he", _X),
        )),
        _eq("fhh", ("f", "h", "h"), (
            (2, "fh", _NX, "hh", _NY),
            (-2, "hh", _NX, "fh", _NY),
            (1, "fe", _NXY, "fh", _NY),
            (-1, "ff", _NXY, "eh", _NY),
            (1, "fe", _NXY, "hf", _X),
            (-1, "ff", _NXY, "he", _X),
        )),
        _eq("fee", ("f", "e", "e"), (
            (1, "fe", _NX, "he", _NY),
            (-1, "he", _NX, "fe", _NY),
            (1, "fh", _NXY, "ee", _NY),
            (-1, "fe", _NXY, "he", _NY),
            (1, "fh", _NXY, "ee", _X),
            (-1, "fe", _NXY, "eh", _X),
        ), scale=2),
        _eq("eff", ("e", "f", "f"), (
            (1, "hf", _NX, "ef", _NY),
            (-1, "ef", _NX, "hf", _NY),
            (1, "ef", _NXY, "hf", _NY),
            (-1, "eh", _NXY, "ff", _NY),
            (1, "ef", _NXY, "fh", _X),
            (-1, "eh", _NXY, "ff", _X),
        ), scale=2),
        _eq("hhh", ("h", "h", "h"), (
            (1, "eh", _NX, "fh", _NY),
            (-1, "fh", _NX, "eh", _NY),
            (1, "he", _NXY, "fh", _NY),
            (-1, "hf", _NXY, "eh", _NY),
            (1, "he", _NXY, "hf", _X),
            (-1, "hf", _NXY, "he", _X),
        )),
        _eq("efh", ("e", "f", "h"), _EFH_TERMS),
        _eq("fhf", ("f", "h", "f"), (
            (2, "fh", _NX, "hf", _NY),
            (-2, "hh", _NX, "ff", _NY),
            (1, "fe", _NXY, "ff", _NY),
            (-1, "ff", _NXY, "ef", _NY),
            (2, "ff", _NXY, "hh", _X),
            (-2, "fh", _NXY, "hf", _X),
        )),
        _eq("efh_h", ("e", "f", "h"), _EFH_TERMS + (
            (-2, "hf", _YZ, "eh", _NY),
            (2, "ef", _YZ, "hh", _NY),
            (-2, "ef", _Z, "hh", _NY),
            (2, "eh", _Z, "fh", _NY),
            (-1, "ee", _Z, "ff", _NYZ),
            (1, "ef", _Z, "fe", _NYZ),
        ), scale=2, action="h"),
        _eq("efh_e", ("e", "f", "e"), (
            (-1, "ef", _NX, "fe", _NY),
            (1, "ff", _NX, "ee", _NY),
            (2, "hh", _NXY, "fe", _NY),
            (-2, "hf", _NXY, "he", _NY),
            (2, "he", _NXY, "fh", _X),
            (-2, "hh", _NXY, "fe", _X),
            (2, "ef", _NX, "hh", _XZ),
            (-2, "hf", _NX, "eh", _XZ),
            (-2, "ef", _Z, "hh", _XZ),
            (2, "eh", _Z, "fh", _XZ),
            (-1, "ee", _Z, "ff", _X),
            (1, "ef", _Z, "fe", _X),
        ), scale=2, action="e"),
        _eq("efh_shift", ("e", "f", "h"), _EFH_TERMS, shifted=True),
    )
}

# The ten projection identities of the strict system, in catalog order.
STRICT_EQUATIONS = (
    "eee", "hee", "fff", "hff", "ehh", "fhh", "fee", "eff", "hhh", "efh",
)
# Equations used to filter candidates in weak mode: the nine triple
# projections shared with the strict system plus the action-variable
# variants replacing the e x f x h projection.
WEAK_EQUATIONS = (
    "eee", "hee", "fff", "hff", "ehh", "fhh", "fee", "eff", "hhh",
    "efh_h", "efh_e", "efh_shift",
)


def shift_constant(p: DiagProfile) -> MPoly:
    """Boundary-value correction 4*alpha*gamma + (4*zeta - beta)*beta."""
    alpha = p.constant("alpha")
    beta = p.constant("beta")
    gamma = p.constant("gamma")
    zeta = p.constant("zeta")
    return alpha * gamma * 4 + (zeta * 4 - beta) * beta


def eval_equation(eq: Equation, p: DiagProfile) -> MPoly:
    """Evaluate a catalog entry on a profile; zero iff the identity holds."""
    reg = p.reg
    x_sym = reg.sym("x")
    basis = {
        "x": reg.var("x"),
        "y": reg.var("y"),
        "z": reg.var("z"),
    }
    acc = reg.zero()
    for coeff, left, arg1, right, arg2 in eq.terms:
        def form(arg):
            cx, cy, cz = arg
            return basis["x"] * cx + basis["y"] * cy + basis["z"] * cz

        lp = p.entry(left[0], left[1]).subst_linear(x_sym, form(arg1))
        rp = p.entry(right[0], right[1]).subst_linear(x_sym, form(arg2))
        acc = acc + lp * rp * coeff
    if eq.shifted:
        acc = acc + shift_constant(p)
    return acc


# Generic profiles and re-derivation ------------------------------------------------


def generic_profile(reg: SymbolRegistry, degree: int = 4, prefix: str = "c") -> DiagProfile:
    """Profile with one free coefficient symbol per entry per degree."""
    x = reg.var("x")
    entries = {}
    for q, l in PAIRS:
        poly = reg.zero()
        for j in range(degree + 1):
            c = reg.var(f"{prefix}_{q}{l}_{j}")
            poly = poly + c * x ** j
        entries[(q, l)] = poly
    return DiagProfile(reg, entries, constants=None)


def constrained_generic_profile(reg: SymbolRegistry, degree: int = 3,
                                prefix: str = "c") -> DiagProfile:
    """Generic profile satisfying the invariance relations identically.

    One side of each mirror pair is parametrized freely and the other is
    defined through the relation, so every invariance residue vanishes
    by construction:

        ee, ff       free odd,
        hh           zeta plus free odd,
        eh, fh, ef   free with constant terms -alpha, -gamma, 4 zeta - beta,
        he(x) = -eh(-x),  hf(x) = -fh(-x),  fe(x) = 4 zeta - ef(-x).
    """
    x = reg.var("x")
    alpha, beta, gamma, zeta = (reg.var(n) for n in ("alpha", "beta", "gamma", "zeta"))

    def free(tag, degrees, const=None):
        poly = const if const is not None else reg.zero()
        for j in degrees:
            poly = poly + reg.var(f"{prefix}_{tag}_{j}") * x ** j
        return poly

    def mirror(poly, const):
        # const - poly(-x)
        flipped = poly.subst_linear(reg.sym("x"), -x)
        return const - flipped

    odd_degrees = [j for j in range(1, degree + 1) if j % 2]
    all_degrees = list(range(1, degree + 1))
    eh = free("eh", all_degrees, const=-alpha)
    fh = free("fh", all_degrees, const=-gamma)
    ef = free("ef", all_degrees, const=zeta * 4 - beta)
    entries = {
        ("e", "e"): free("ee", odd_degrees),
        ("f", "f"): free("ff", odd_degrees),
        ("h", "h"): zeta + free("hh", odd_degrees),
        ("e", "h"): eh,
        ("h", "e"): mirror(eh, reg.zero()),
        ("f", "h"): fh,
        ("h", "f"): mirror(fh, reg.zero()),
        ("e", "f"): ef,
        ("f", "e"): mirror(ef, zeta * 4),
    }
    constants = {"alpha": alpha, "beta": beta, "gamma": gamma, "zeta": zeta}
    return DiagProfile(reg, entries, constants)


def _rename_to_xyz(poly: MPoly, reg: SymbolRegistry) -> MPoly:
    return poly.subst_many({
        reg.sym("d2"): reg.var("x"),
        reg.sym("d3"): reg.var("y"),
        reg.sym("d1"): reg.var("z"),
    })


def derive_projection(triple: Sequence[str], degree: int = 4,
                      profile: Optional[DiagProfile] = None) -> MPoly:
    """Raw projection of the reduced double bracket of the generic lift.

    Returned in the variables (x, y) = (d2, d3).  Matches the catalog
    entry for the triple up to the entry's recorded integer scale.
    """
    if profile is None:
        profile = generic_profile(SymbolRegistry(), degree)
    reg = profile.reg
    r = lift_profile(profile)
    reduced = reduce_mod_total(ccybe_bracket(r))
    return _rename_to_xyz(project(reduced, tuple(triple)), reg)


def derive_weak_projection(generator: str, triple: Sequence[str], degree: int = 4,
                           profile: Optional[DiagProfile] = None) -> MPoly:
    """Raw projection of a generator action on the double bracket.

    The action variable is eliminated via mu := -(d1+d2+d3); the result
    is renamed to (x, y, z) = (d2, d3, d1).
    """
    if profile is None:
        profile = generic_profile(SymbolRegistry(), degree)
    reg = profile.reg
    r = lift_profile(profile)
    mu = reg.sym("mu")
    acted = act_on_tensor(r.alg.generator(generator), ccybe_bracket(r), mu)
    reduced = reduce_mod_total(acted, extravar=mu)
    return _rename_to_xyz(project(reduced, tuple(triple)), reg)


def catalog_diffs(degree: int = 3, catalog: Optional[Mapping[str, Equation]] = None,
                  names: Optional[Sequence[str]] = None) -> dict[str, MPoly]:
    """Re-derive every catalog identity from the generic profile.

    Returns {name: raw_projection - scale * stored_form}; the catalog is
    faithful iff every difference is the zero polynomial.  The shifted
    variant is excluded (it is not a raw projection).
    """
    catalog = CATALOG if catalog is None else catalog
    reg = SymbolRegistry()
    profile = generic_profile(reg, degree)
    out = {}
    for name in (names or [n for n in catalog if not catalog[n].shifted]):
        eq = catalog[name]
        if eq.action is None:
            raw = derive_projection(eq.triple, degree, profile)
        else:
            raw = derive_weak_projection(eq.action, eq.triple, degree, profile)
        out[name] = raw - eval_equation(eq, profile) * eq.scale
    return out


def permutation_symmetry_check(p: DiagProfile) -> bool:
    """Whether slot permutations fix the reduced double bracket up to sign.

    For profiles satisfying the invariance relations the reduced double
    bracket of the canonical lift is fixed by even slot permutations and
    negated by odd ones; this is what makes the ten catalog projections
    exhaust all twenty-seven.  Profiles violating invariance report False.
    """
    r = lift_profile(p)
    bracket = ccybe_bracket(r)
    reduced = reduce_mod_total(bracket)
    perms = (
        ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
        ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1),
    )
    for perm, sign in perms:
        moved = reduce_mod_total(permute_slots(bracket, perm))
        if not (moved - reduced * sign).is_zero():
            return False
    return True
