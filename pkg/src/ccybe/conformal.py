"""Lambda-bracket calculus on free conformal algebras of finite type.

Elements live in a free polynomial module over a single derivation
symbol `d`; a basis element with coefficient g(d) stands for g(D)a.
Two algebra kinds are supported:

  * the current algebra over a structure-constant Lie algebra, with
    bracket  [f(D)a _lam g(D)b] = f(-lam) g(lam + D) [a, b];
  * the Virasoro algebra on one generator v, with [v _lam v] = (D + 2 lam) v.

Tensor powers are maps from basis tuples to polynomials in the slot
symbols d1..dN (plus any parameter symbols).  The left action of an
element on a tensor is the Leibniz sum over slots: acting on slot i
shifts di by the action variable and inserts the basis-level bracket.

Reduction "modulo the total derivation" eliminates d1 via
d1 := -(d2 + ... + dN); in action-variable mode it instead eliminates
the action symbol via mu := -(d1 + ... + dN).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .exactpoly import MPoly, Sym, SymbolRegistry
from .liealg import LieAlg


class ConfAlgebra:
    """A current or Virasoro conformal algebra over a shared registry."""

    def __init__(self, kind: str, reg: SymbolRegistry, lie: Optional[LieAlg] = None):
        if kind not in ("cur", "vir"):
            raise ValueError(f"unknown conformal algebra kind {kind!r}")
        if kind == "cur" and lie is None:
            raise ValueError("current algebra requires a Lie algebra")
        self.kind = kind
        self.reg = reg
        self.lie = lie
        self.d = reg.sym("d")
        self.lam = reg.sym("lam")

    @classmethod
    def cur(cls, lie: LieAlg, reg: Optional[SymbolRegistry] = None) -> "ConfAlgebra":
        return cls("cur", reg or SymbolRegistry(), lie)

    @classmethod
    def vir(cls, reg: Optional[SymbolRegistry] = None) -> "ConfAlgebra":
        return cls("vir", reg or SymbolRegistry())

    @property
    def basis_names(self) -> tuple[str, ...]:
        return self.lie.names if self.kind == "cur" else ("v",)

    def basis_bracket(self, p: str, q: str) -> dict[str, MPoly]:
        """Bracket of basis generators as polynomials in (d, lam).

        The symbol d refers to the derivation acting on the slot where
        the result lives; lam is the bracket variable.
        """
        if self.kind == "cur":
            return {
                k: self.reg.const(c)
                for k, c in self.lie.bracket_basis(p, q).items()
            }
        return {"v": self.reg.var("d") + self.reg.var("lam") * 2}

    def generator(self, name: str) -> "ConfElem":
        if name not in self.basis_names:
            raise ValueError(f"unknown generator {name!r}")
        return ConfElem(self, {name: self.reg.const(1)})

    def generators(self) -> list["ConfElem"]:
        return [self.generator(n) for n in self.basis_names]


@dataclass
class ConfElem:
    """A finite combination sum_a g_a(d) * a over the algebra basis."""

    alg: ConfAlgebra
    coeffs: dict[str, MPoly]

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if not v.is_zero()}
        for k in self.coeffs:
            if k not in self.alg.basis_names:
                raise ValueError(f"unknown basis element {k!r}")

    def is_zero(self) -> bool:
        return not self.coeffs

    def apply_derivation(self) -> "ConfElem":
        d = self.alg.reg.var("d")
        return ConfElem(self.alg, {k: v * d for k, v in self.coeffs.items()})

    def __add__(self, other: "ConfElem") -> "ConfElem":
        if self.alg is not other.alg:
            raise ValueError("elements over different algebras")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, self.alg.reg.zero()) + v
        return ConfElem(self.alg, out)

    def __mul__(self, scalar) -> "ConfElem":
        return ConfElem(self.alg, {k: v * scalar for k, v in self.coeffs.items()})


def lambda_bracket(a: ConfElem, b: ConfElem) -> dict[str, MPoly]:
    """[a _lam b] as a map from basis names to polynomials in (d, lam)."""
    if a.alg is not b.alg:
        raise ValueError("elements over different algebras")
    alg = a.alg
    reg = alg.reg
    d, lam = reg.var("d"), reg.var("lam")
    d_sym = alg.d
    out: dict[str, MPoly] = {}
    for p, f in a.coeffs.items():
        f_at = f.subst_linear(d_sym, -lam)
        for q, g in b.coeffs.items():
            bracket = alg.basis_bracket(p, q)
            if not bracket:
                continue
            g_at = g.subst_linear(d_sym, lam + d)
            factor = f_at * g_at
            for k, poly in bracket.items():
                term = factor * poly
                out[k] = out.get(k, reg.zero()) + term
    return {k: v for k, v in out.items() if not v.is_zero()}


@dataclass
class ConfTensor:
    """Element of the N-th tensor power, coefficients in d1..dN."""

    alg: ConfAlgebra
    arity: int
    entries: dict[tuple, MPoly]

    def __post_init__(self):
        cleaned = {}
        for tup, poly in self.entries.items():
            if len(tup) != self.arity:
                raise ValueError(f"tuple {tup} has wrong arity")
            for name in tup:
                if name not in self.alg.basis_names:
                    raise ValueError(f"unknown basis element {name!r}")
            if not poly.is_zero():
                cleaned[tup] = poly
        self.entries = cleaned

    def is_zero(self) -> bool:
        return not self.entries

    def slot_sym(self, i: int) -> Sym:
        return self.alg.reg.sym(f"d{i + 1}")

    def __add__(self, other: "ConfTensor") -> "ConfTensor":
        if self.alg is not other.alg or self.arity != other.arity:
            raise ValueError("tensor shape mismatch")
        out = dict(self.entries)
        for tup, poly in other.entries.items():
            out[tup] = out.get(tup, self.alg.reg.zero()) + poly
        return ConfTensor(self.alg, self.arity, out)

    def __sub__(self, other: "ConfTensor") -> "ConfTensor":
        return self + (other * -1)

    def __mul__(self, scalar) -> "ConfTensor":
        return ConfTensor(
            self.alg, self.arity, {t: p * scalar for t, p in self.entries.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConfTensor):
            return NotImplemented
        return (
            self.alg is other.alg
            and self.arity == other.arity
            and self.entries == other.entries
        )

    def map_coeffs(self, fn) -> "ConfTensor":
        return ConfTensor(
            self.alg, self.arity, {t: fn(p) for t, p in self.entries.items()}
        )


def tensor(alg: ConfAlgebra, arity: int, entries: Mapping[tuple, MPoly]) -> ConfTensor:
    return ConfTensor(alg, arity, dict(entries))


def act_on_tensor(a: ConfElem, t: ConfTensor, actionvar: Sym) -> ConfTensor:
    """Leibniz action of `a` on a tensor, with bracket variable `actionvar`.

    On the acted slot i the coefficient argument di shifts to
    di + actionvar, the element's own polynomial is evaluated at
    -actionvar, and the basis-level bracket polynomial is inserted with
    its d read as di.
    """
    alg = t.alg
    if a.alg is not alg:
        raise ValueError("element and tensor over different algebras")
    reg = alg.reg
    mu = reg.var(actionvar.name)
    for poly in t.entries.values():
        if actionvar in poly.symbols():
            raise ValueError(f"action variable {actionvar.name} already occurs in the tensor")
    d_sym, lam_sym = alg.d, alg.lam
    out: dict[tuple, MPoly] = {}
    for p, g in a.coeffs.items():
        g_at = g.subst_linear(d_sym, -mu)
        if g_at.is_zero():
            continue
        for tup, coeff in t.entries.items():
            for i, b in enumerate(tup):
                bracket = alg.basis_bracket(p, b)
                if not bracket:
                    continue
                di = t.slot_sym(i)
                shifted = coeff.subst_linear(di, reg.var(di) + mu)
                for k, poly in bracket.items():
                    inserted = poly.subst_many({d_sym: reg.var(di), lam_sym: mu})
                    new = list(tup)
                    new[i] = k
                    key = tuple(new)
                    term = shifted * g_at * inserted
                    out[key] = out.get(key, reg.zero()) + term
    return ConfTensor(alg, t.arity, out)


def tau(t: ConfTensor) -> ConfTensor:
    """Swap the two tensor factors (and the two slot symbols)."""
    if t.arity != 2:
        raise ValueError("tau is defined on arity-2 tensors")
    reg = t.alg.reg
    d1, d2 = t.slot_sym(0), t.slot_sym(1)
    swap = {d1: reg.var(d2), d2: reg.var(d1)}
    out = {}
    for (p, q), poly in t.entries.items():
        key = (q, p)
        val = poly.subst_many(swap)
        out[key] = out.get(key, reg.zero()) + val
    return ConfTensor(t.alg, 2, out)


def reduce_mod_total(t: ConfTensor, extravar: Optional[Sym] = None) -> ConfTensor:
    """Reduce modulo the total derivation.

    Without `extravar`: substitute d1 := -(d2 + ... + dN).  With
    `extravar` (an action variable mu): substitute
    extravar := -(d1 + ... + dN) instead.  Either way the eliminated
    symbol no longer occurs in the result.
    """
    reg = t.alg.reg
    slots = [reg.var(t.slot_sym(i)) for i in range(t.arity)]
    if extravar is None:
        target = t.slot_sym(0)
        total = reg.zero()
        for v in slots[1:]:
            total = total + v
        repl = -total
    else:
        target = extravar
        total = reg.zero()
        for v in slots:
            total = total + v
        repl = -total
    return t.map_coeffs(lambda p: p.subst_linear(target, repl))


def project(t: ConfTensor, tup: Sequence[str]) -> MPoly:
    """Coefficient polynomial at a basis tuple (zero when absent)."""
    tup = tuple(tup)
    if len(tup) != t.arity:
        raise ValueError("projection tuple has wrong arity")
    return t.entries.get(tup, t.alg.reg.zero())


def permute_slots(t: ConfTensor, perm: Sequence[int]) -> ConfTensor:
    """Apply a slot permutation: factor i moves to slot perm[i], and the
    slot symbols are renamed accordingly."""
    if sorted(perm) != list(range(t.arity)):
        raise ValueError("not a permutation")
    reg = t.alg.reg
    mapping = {
        t.slot_sym(i): reg.var(t.slot_sym(perm[i])) for i in range(t.arity)
    }
    out: dict[tuple, MPoly] = {}
    for tup, poly in t.entries.items():
        new = [""] * t.arity
        for i, name in enumerate(tup):
            new[perm[i]] = name
        key = tuple(new)
        val = poly.subst_many(mapping)
        out[key] = out.get(key, reg.zero()) + val
    return ConfTensor(t.alg, t.arity, out)
