"""Finite-dimensional Lie algebras given by structure constants.

Provides the builtin sl2 basis (e, f, h with [e,f] = h, [h,e] = 2e,
[h,f] = -2f), automorphism matrices (including the two-parameter family
coming from conjugation by an SL2 matrix and the swap e <-> f, h -> -h),
the ordinary classical Yang-Baxter operator obtained from the conformal
bracket at zero derivations, and the congruence action on symmetric
3x3 coefficient matrices.

Tensors over the Lie algebra are plain dicts mapping basis-name tuples
to scalars; scalars may be Fractions or parametric MPoly values.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .exactpoly import MPoly, SymbolRegistry

Scalar = Union[int, Fraction, MPoly]


def is_zero_scalar(v: Scalar) -> bool:
    if isinstance(v, MPoly):
        return v.is_zero()
    return v == 0


def tensor_add(acc: dict, key: tuple, val: Scalar) -> None:
    cur = acc.get(key)
    new = val if cur is None else cur + val
    if is_zero_scalar(new):
        acc.pop(key, None)
    else:
        acc[key] = new


def tensors_equal(a: Mapping, b: Mapping) -> bool:
    for k in set(a) | set(b):
        if not is_zero_scalar(a.get(k, 0) - b.get(k, 0)):
            return False
    return True


class LieAlg:
    """A Lie algebra over Q presented by structure constants.

    `table` holds the bracket of basis pairs: table[(i, j)] maps output
    basis names to rational coefficients.  Antisymmetry and the Jacobi
    identity are verified exhaustively at construction.
    """

    def __init__(self, names: Sequence[str], table: Mapping[tuple, Mapping[str, Scalar]]):
        self.names = tuple(names)
        full: dict[tuple, dict[str, Fraction]] = {}
        for (i, j), out in table.items():
            cleaned = {k: Fraction(v) for k, v in out.items() if v}
            if cleaned:
                full[(i, j)] = cleaned
        self.table = full
        self._validate()

    @property
    def dim(self) -> int:
        return len(self.names)

    def bracket_basis(self, i: str, j: str) -> dict[str, Fraction]:
        return self.table.get((i, j), {})

    def bracket(self, x: Mapping[str, Scalar], y: Mapping[str, Scalar]) -> dict[str, Scalar]:
        """Bilinear extension of the structure constants."""
        out: dict[str, Scalar] = {}
        for i, ci in x.items():
            if i not in self.names:
                raise ValueError(f"unknown basis element {i!r}")
            for j, cj in y.items():
                if j not in self.names:
                    raise ValueError(f"unknown basis element {j!r}")
                for k, s in self.bracket_basis(i, j).items():
                    cur = out.get(k, 0)
                    new = cur + ci * cj * s
                    if is_zero_scalar(new):
                        out.pop(k, None)
                    else:
                        out[k] = new
        return out

    def _validate(self) -> None:
        for i in self.names:
            for j in self.names:
                bij = self.bracket_basis(i, j)
                bji = self.bracket_basis(j, i)
                for k in set(bij) | set(bji):
                    if bij.get(k, Fraction(0)) != -bji.get(k, Fraction(0)):
                        raise ValueError(f"structure constants not antisymmetric at [{i},{j}]")
        for i, j, k in itertools.product(self.names, repeat=3):
            acc: dict[str, Fraction] = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self.bracket_basis(a, b)
                for m, s in inner.items():
                    for l, s2 in self.bracket_basis(m, c).items():
                        acc[l] = acc.get(l, Fraction(0)) + s * s2
            if any(acc.values()):
                raise ValueError(f"Jacobi identity fails at ({i},{j},{k})")


def sl2() -> LieAlg:
    """The standard basis e, f, h."""
    return LieAlg(
        ("e", "f", "h"),
        {
            ("e", "f"): {"h": 1},
            ("f", "e"): {"h": -1},
            ("h", "e"): {"e": 2},
            ("e", "h"): {"e": -2},
            ("h", "f"): {"f": -2},
            ("f", "h"): {"f": 2},
        },
    )


def algebra_from_json(data: Union[str, dict]) -> LieAlg:
    """Load an algebra definition: {"basis": [...], "brackets": [[i, j, k, "p/q"], ...]}.

    The name "sl2" is recognized as the builtin.
    """
    if isinstance(data, str):
        if data == "sl2":
            return sl2()
        data = json.loads(data)
    names = data["basis"]
    table: dict[tuple, dict[str, Fraction]] = {}
    for i, j, k, val in data["brackets"]:
        table.setdefault((i, j), {})[k] = Fraction(val)
    # fill antisymmetric counterparts that were left implicit
    for (i, j), out in list(table.items()):
        mirror = table.setdefault((j, i), {})
        for k, v in out.items():
            mirror.setdefault(k, -v)
    return LieAlg(names, table)


# Automorphisms ----------------------------------------------------------------


@dataclass
class AutMatrix:
    """Matrix of a Lie algebra automorphism; columns are basis images."""

    alg: LieAlg
    m: tuple[tuple[Scalar, ...], ...]
    provenance: str = "literal"
    inverse_pairs: tuple = ()  # ((sym, inv_sym), ...) with sym*inv == 1

    def entry(self, i: int, j: int) -> Scalar:
        return self.m[i][j]

    def image(self, name: str) -> dict[str, Scalar]:
        j = self.alg.names.index(name)
        out = {}
        for i, row_name in enumerate(self.alg.names):
            v = self.m[i][j]
            if not is_zero_scalar(v):
                out[row_name] = v
        return out

    def _reduce(self, v: Scalar) -> Scalar:
        if isinstance(v, MPoly):
            for s, inv in self.inverse_pairs:
                v = v.cancel_inverse_pairs(s, inv)
        return v

    def preserves_bracket(self) -> bool:
        for i in self.alg.names:
            for j in self.alg.names:
                lhs = self.alg.bracket(self.image(i), self.image(j))
                rhs: dict[str, Scalar] = {}
                for k, s in self.alg.bracket_basis(i, j).items():
                    for name, v in self.image(k).items():
                        tensor_add(rhs, (name,), v * s)
                rhs_flat = {name: v for (name,), v in rhs.items()}
                keys = set(lhs) | set(rhs_flat)
                for k in keys:
                    diff = lhs.get(k, 0) - rhs_flat.get(k, 0)
                    diff = self._reduce(diff) if isinstance(diff, MPoly) else diff
                    if not is_zero_scalar(diff):
                        return False
        return True


def phi_matrix(a: Scalar, b: Scalar, c: Scalar, d: Scalar,
               alg: Optional[LieAlg] = None,
               inverse_pairs: tuple = ()) -> AutMatrix:
    """Automorphism of sl2 induced by conjugation with [[a, b], [c, d]].

    Requires a*d - b*c == 1 (checked exactly, after reduction by any
    declared inverse pairs for parametric entries).
    """
    alg = alg or sl2()
    det = a * d - b * c
    if isinstance(det, MPoly):
        for s, inv in inverse_pairs:
            det = det.cancel_inverse_pairs(s, inv)
        ok = det == 1
    else:
        ok = det == 1
    if not ok:
        raise ValueError(f"a*d - b*c must equal 1, got {det}")
    two = 2
    m = (
        (a * a, -(b * b), -(a * b) * two),
        (-(c * c), d * d, (c * d) * two),
        (-(a * c), b * d, a * d + b * c),
    )
    aut = AutMatrix(alg, m, provenance=f"phi({a},{b},{c},{d})", inverse_pairs=inverse_pairs)
    if not aut.preserves_bracket():
        raise ValueError("phi matrix does not preserve the bracket")
    return aut


def psi_matrix(alg: Optional[LieAlg] = None) -> AutMatrix:
    """The swap e <-> f with h -> -h."""
    alg = alg or sl2()
    m = (
        (Fraction(0), Fraction(1), Fraction(0)),
        (Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(-1)),
    )
    aut = AutMatrix(alg, m, provenance="psi")
    assert aut.preserves_bracket()
    return aut


def identity_matrix(alg: Optional[LieAlg] = None) -> AutMatrix:
    alg = alg or sl2()
    n = alg.dim
    m = tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )
    return AutMatrix(alg, m, provenance="identity")


def transform_tensor(aut: AutMatrix, tensor: Mapping[tuple, Scalar]) -> dict[tuple, Scalar]:
    """Apply phi tensor-factor-wise to a constant tensor of any arity."""
    names = aut.alg.names
    out: dict[tuple, Scalar] = {}
    for tup, coeff in tensor.items():
        pieces = [list(aut.image(b).items()) for b in tup]
        for combo in itertools.product(*pieces):
            key = tuple(name for name, _ in combo)
            val = coeff
            for _, v in combo:
                val = val * v
            tensor_add(out, key, val)
    return out


# Classical Yang-Baxter at zero derivations -------------------------------------


def cybe(r: Mapping[tuple, Scalar], alg: Optional[LieAlg] = None,
         reg: Optional[SymbolRegistry] = None) -> dict[tuple, Scalar]:
    """Classical YBE operator on a constant r in g tensor g.

    Computed by specializing the conformal double bracket at all slot
    derivations equal to zero, so there is a single source of truth for
    the expansion; the textbook three-bracket formula lives only in the
    test oracle.
    """
    from . import conformal, ybe

    alg = alg or sl2()
    reg = reg or SymbolRegistry()
    entries = {}
    for (q, l), v in r.items():
        if isinstance(v, MPoly):
            if v.reg is not reg:
                raise ValueError("parametric coefficients must share the registry")
            if any(sym.name in ("d1", "d2", "d3") for sym in v.symbols()):
                raise ValueError("cybe requires constant (derivation-free) input")
            entries[(q, l)] = v
        else:
            entries[(q, l)] = reg.const(v)
    rmat = ybe.RMat(conformal.ConfAlgebra.cur(alg, reg), entries)
    bracket = ybe.ccybe_bracket(rmat)
    zero = {reg.sym(n): reg.zero() for n in ("d1", "d2", "d3")}
    out: dict[tuple, Scalar] = {}
    for tup, poly in bracket.entries.items():
        v = poly.subst_many(zero)
        if not v.is_zero():
            out[tup] = v.constant_value() if v.is_constant() else v
    return out


def weak_cybe_defect(r: Mapping[tuple, Scalar], alg: Optional[LieAlg] = None,
                     reg: Optional[SymbolRegistry] = None) -> dict[str, dict[tuple, Scalar]]:
    """Adjoint action of every basis element on cybe(r); all zero iff weak."""
    alg = alg or sl2()
    value = cybe(r, alg, reg)
    out = {}
    for a in alg.names:
        defect: dict[tuple, Scalar] = {}
        for tup, coeff in value.items():
            for slot, b in enumerate(tup):
                for k, s in alg.bracket_basis(a, b).items():
                    new = list(tup)
                    new[slot] = k
                    tensor_add(defect, tuple(new), coeff * s)
        out[a] = defect
    return out


def antisymmetrize(tensor: Mapping[tuple, Scalar]) -> dict[tuple, Scalar]:
    """Full antisymmetrization of a 3-tensor (the wedge projection)."""
    out: dict[tuple, Scalar] = {}
    perms = [
        ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
        ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1),
    ]
    for tup, coeff in tensor.items():
        for perm, sign in perms:
            key = tuple(tup[p] for p in perm)
            tensor_add(out, key, coeff * Fraction(sign, 6))
    return out


def is_totally_antisymmetric(tensor: Mapping[tuple, Scalar]) -> bool:
    return tensors_equal(tensor, antisymmetrize(tensor))


# Symmetric coefficient matrices -------------------------------------------------


@dataclass
class SymMat3:
    """Symmetric 3x3 matrix of scalars, basis order (e, f, h)."""

    a: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        if len(self.a) != 3 or any(len(row) != 3 for row in self.a):
            raise ValueError("expected a 3x3 matrix")
        for i in range(3):
            for j in range(3):
                diff = self.a[i][j] - self.a[j][i]
                if not is_zero_scalar(diff):
                    raise ValueError("matrix is not symmetric")

    def is_numeric(self) -> bool:
        return all(not isinstance(v, MPoly) or v.is_constant()
                   for row in self.a for v in row)

    def numeric(self) -> tuple[tuple[Fraction, ...], ...]:
        out = []
        for row in self.a:
            vals = []
            for v in row:
                vals.append(v.constant_value() if isinstance(v, MPoly) else Fraction(v))
            out.append(tuple(vals))
        return tuple(out)


def congruence(mat: SymMat3, aut: AutMatrix) -> SymMat3:
    """The action M -> Phi M Phi^T."""
    phi = aut.m
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            acc: Scalar = 0
            for q in range(3):
                for l in range(3):
                    acc = acc + phi[i][q] * phi[j][l] * mat.a[q][l]
            row.append(aut._reduce(acc) if isinstance(acc, MPoly) else acc)
        out.append(tuple(row))
    return SymMat3(tuple(out))


def minors2(mat: SymMat3) -> list[Scalar]:
    """All nine 2x2 minors, for symbolic rank checking."""
    out = []
    for rows in itertools.combinations(range(3), 2):
        for cols in itertools.combinations(range(3), 2):
            r0, r1 = rows
            c0, c1 = cols
            out.append(mat.a[r0][c0] * mat.a[r1][c1] - mat.a[r0][c1] * mat.a[r1][c0])
    return out


def rank_le_1(mat: SymMat3) -> bool:
    """True iff every 2x2 minor vanishes (numeric matrices only)."""
    if not mat.is_numeric():
        raise ValueError(
            "parametric matrix: check the minors2() identities symbolically instead"
        )
    a = mat.numeric()
    m = SymMat3(a)
    return all(v == 0 for v in minors2(m))
