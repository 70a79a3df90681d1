"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a mapping from exponent vectors to nonzero Fraction
coefficients.  An exponent vector is a tuple indexed by symbol id with
trailing zeros stripped, so stored keys stay canonical while the symbol
registry keeps growing.  All arithmetic is exact; there is no
floating-point mode anywhere.

Symbols are interned in a SymbolRegistry (append-only, synchronized).
Two polynomials may only be combined when they share the same registry
object; mixing registries raises RegistryMismatch.

The text grammar accepted by parse_poly:

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' INT)?
    atom   := INT ('/' INT)? | SYMBOL | '(' expr ')'

Exponents must be nonnegative integer literals and implicit
multiplication is not allowed.  The canonical printer emits terms in
descending graded-lexicographic order with explicit '*', and
parse(print(p)) == p.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

Scalar = Union[int, Fraction]


class RegistryMismatch(ValueError):
    """Operands do not share a symbol registry."""


class ParseError(ValueError):
    """Syntax error in a polynomial expression, with a 0-based position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Sym:
    """An interned symbol: equal names always map to equal ids."""

    name: str
    index: int


# Symbols every registry starts with, in a fixed order so that canonical
# printing and golden files are stable across runs.
CORE_SYMBOLS = (
    "d", "lam", "mu", "d1", "d2", "d3", "x", "y", "z", "t",
    "alpha", "beta", "gamma", "zeta", "lhh",
)

_NAME_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_NAME_CONT = _NAME_START | set("0123456789")


class SymbolRegistry:
    """Append-only bijective interning of symbol names to integer ids."""

    def __init__(self, core: Iterable[str] = CORE_SYMBOLS):
        self._lock = threading.Lock()
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        for name in core:
            self.sym(name)

    def sym(self, name: str) -> Sym:
        """Return the Sym for `name`, interning it if new."""
        if not name or name[0] not in _NAME_START or not all(c in _NAME_CONT for c in name):
            raise ValueError(f"invalid symbol name {name!r}")
        with self._lock:
            idx = self._ids.get(name)
            if idx is None:
                idx = len(self._names)
                self._names.append(name)
                self._ids[name] = idx
        return Sym(name, idx)

    def get(self, name: str) -> Optional[Sym]:
        idx = self._ids.get(name)
        return None if idx is None else Sym(name, idx)

    def name_of(self, index: int) -> str:
        return self._names[index]

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    # Polynomial constructors -------------------------------------------------

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def const(self, value: Scalar) -> "MPoly":
        c = Fraction(value)
        return MPoly(self, {(): c} if c else {})

    def var(self, name_or_sym: Union[str, Sym], power: int = 1) -> "MPoly":
        sym = name_or_sym if isinstance(name_or_sym, Sym) else self.sym(name_or_sym)
        if power < 0:
            raise ValueError("negative exponents are not supported")
        if power == 0:
            return self.const(1)
        exps = (0,) * sym.index + (power,)
        return MPoly(self, {exps: Fraction(1)})

    def parse(self, text: str, auto_register: bool = False) -> "MPoly":
        return parse_poly(text, self, auto_register=auto_register)


def _strip(exps: tuple) -> tuple:
    n = len(exps)
    while n and exps[n - 1] == 0:
        n -= 1
    return exps[:n]


def _mul_exps(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, e in enumerate(b):
        out[i] += e
    return tuple(out)


class MPoly:
    """Immutable sparse polynomial over Fraction coefficients."""

    __slots__ = ("reg", "_terms", "_hash")

    def __init__(self, reg: SymbolRegistry, terms: Mapping[tuple, Scalar]):
        norm: dict[tuple, Fraction] = {}
        for exps, coeff in terms.items():
            c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            if c:
                norm[_strip(tuple(exps))] = c
        self.reg = reg
        self._terms = norm
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, reg: SymbolRegistry, terms: dict) -> "MPoly":
        # Internal: terms must already be canonical (stripped keys, nonzero
        # Fraction values).
        self = object.__new__(cls)
        self.reg = reg
        self._terms = terms
        self._hash = None
        return self

    # Introspection ----------------------------------------------------------

    def terms(self) -> Iterator[tuple[tuple, Fraction]]:
        return iter(self._terms.items())

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (raises otherwise)."""
        if not self._terms:
            return Fraction(0)
        if self.is_constant():
            return self._terms[()]
        raise ValueError(f"not a constant polynomial: {self}")

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, sym: Sym) -> int:
        if not self._terms:
            return -1
        i = sym.index
        return max((e[i] if i < len(e) else 0) for e in self._terms)

    def symbols(self) -> set[Sym]:
        seen: set[int] = set()
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e:
                    seen.add(i)
        return {Sym(self.reg.name_of(i), i) for i in seen}

    def coefficient(self, exps: tuple) -> Fraction:
        return self._terms.get(_strip(tuple(exps)), Fraction(0))

    # Arithmetic --------------------------------------------------------------

    def _check(self, other: "MPoly") -> None:
        if self.reg is not other.reg:
            raise RegistryMismatch("operands use different symbol registries")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.reg.const(other)
        elif not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for exps, c in other._terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return MPoly._raw(self.reg, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.reg, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.reg.const(other)
        elif not isinstance(other, MPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.reg.zero()
            return MPoly._raw(self.reg, {e: k * c for e, k in self._terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        self._check(other)
        out: dict[tuple, Fraction] = {}
        get = out.get
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                key = _mul_exps(ea, eb)
                s = get(key, 0) + ca * cb
                if s:
                    out[key] = s
                else:
                    del out[key]
        return MPoly._raw(self.reg, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponents are not supported")
        result = self.reg.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.reg.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.reg is other.reg and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # Substitution ------------------------------------------------------------

    def subst_linear(self, sym: Sym, expr: "MPoly") -> "MPoly":
        """Replace every occurrence of `sym` by `expr` (any polynomial)."""
        return self.subst_many({sym: expr})

    def subst_many(self, mapping: Mapping[Sym, "MPoly"]) -> "MPoly":
        """Simultaneous substitution of several symbols."""
        if not mapping:
            return self
        targets = {}
        for sym, expr in mapping.items():
            if not isinstance(expr, MPoly):
                expr = self.reg.const(expr)
            self._check(expr)
            targets[sym.index] = expr
        powers: dict[tuple[int, int], dict] = {}

        def power_of(idx: int, n: int) -> dict:
            key = (idx, n)
            cached = powers.get(key)
            if cached is None:
                cached = (targets[idx] ** n)._terms
                powers[key] = cached
            return cached

        out: dict[tuple, Fraction] = {}
        for exps, coeff in self._terms.items():
            kept = list(exps)
            factors: list[tuple[int, int]] = []
            for i, e in enumerate(exps):
                if e and i in targets:
                    kept[i] = 0
                    factors.append((i, e))
            piece: dict[tuple, Fraction] = {_strip(tuple(kept)): coeff}
            for idx, e in factors:
                pw = power_of(idx, e)
                new: dict[tuple, Fraction] = {}
                for e1, c1 in piece.items():
                    for e2, c2 in pw.items():
                        key = _mul_exps(e1, e2)
                        s = new.get(key, 0) + c1 * c2
                        if s:
                            new[key] = s
                        else:
                            del new[key]
                piece = new
            for e1, c1 in piece.items():
                s = out.get(e1, 0) + c1
                if s:
                    out[e1] = s
                else:
                    del out[e1]
        return MPoly._raw(self.reg, out)

    def evaluate(self, values: Mapping[Sym, Scalar]) -> "MPoly":
        """Substitute rational values for symbols (returns an MPoly)."""
        return self.subst_many({s: self.reg.const(v) for s, v in values.items()})

    def cancel_inverse_pairs(self, sym: Sym, inv: Sym) -> "MPoly":
        """Reduce monomials using the relation sym * inv == 1."""
        out: dict[tuple, Fraction] = {}
        i, j = sym.index, inv.index
        for exps, coeff in self._terms.items():
            ei = exps[i] if i < len(exps) else 0
            ej = exps[j] if j < len(exps) else 0
            k = min(ei, ej)
            if k:
                e = list(exps) + [0] * (max(i, j) + 1 - len(exps))
                e[i] -= k
                e[j] -= k
                key = _strip(tuple(e))
            else:
                key = exps
            s = out.get(key, 0) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return MPoly(self.reg, out)

    # Structure ---------------------------------------------------------------

    def as_univariate_in(self, sym: Sym) -> dict[int, "MPoly"]:
        """Split into {degree in sym: coefficient polynomial (sym-free)}."""
        i = sym.index
        buckets: dict[int, dict[tuple, Fraction]] = {}
        for exps, coeff in self._terms.items():
            e = exps[i] if i < len(exps) else 0
            rest = list(exps)
            if i < len(rest):
                rest[i] = 0
            buckets.setdefault(e, {})[_strip(tuple(rest))] = coeff
        return {deg: MPoly(self.reg, terms) for deg, terms in buckets.items()}

    def odd_even_split(self, sym: Sym) -> tuple["MPoly", "MPoly"]:
        """Return (odd part, even part) with respect to `sym`."""
        i = sym.index
        odd: dict[tuple, Fraction] = {}
        even: dict[tuple, Fraction] = {}
        for exps, coeff in self._terms.items():
            e = exps[i] if i < len(exps) else 0
            (odd if e % 2 else even)[exps] = coeff
        return MPoly(self.reg, odd), MPoly(self.reg, even)

    def match_axf(self, sym: Sym, t_name: str = "t") -> Optional[tuple["MPoly", "MPoly"]]:
        """Match p == a * sym * f(sym^2) with f monic in the symbol `t_name`.

        Returns (a, f) where f is a monic univariate polynomial in t
        (standing for sym^2).  The factor a is a rational constant, or
        q * sigma for a single parameter symbol sigma.  Returns None when
        p is not of that shape (even part present, zero polynomial, or a
        mixed-parameter leading coefficient).
        """
        if self.is_zero():
            return None
        odd, even = self.odd_even_split(sym)
        if not even.is_zero():
            return None
        uni = self.as_univariate_in(sym)
        coeffs: dict[int, MPoly] = {}
        for deg, c in uni.items():
            coeffs[(deg - 1) // 2] = c
        top = max(coeffs)
        numeric = all(c.is_constant() for c in coeffs.values())
        t = self.reg.var(t_name)
        if numeric:
            a_val = coeffs[top].constant_value()
            f = self.reg.zero()
            for k, c in coeffs.items():
                f = f + (t ** k) * (c.constant_value() / a_val)
            return self.reg.const(a_val), f
        # Parametric: every coefficient must be q_k * sigma for one shared
        # parameter symbol sigma to the first power.
        sigma_index: Optional[int] = None
        ratios: dict[int, Fraction] = {}
        for k, c in coeffs.items():
            items = list(c.terms())
            if len(items) != 1:
                return None
            exps, q = items[0]
            nz = [(i, e) for i, e in enumerate(exps) if e]
            if len(nz) != 1 or nz[0][1] != 1:
                return None
            idx = nz[0][0]
            if sigma_index is None:
                sigma_index = idx
            elif sigma_index != idx:
                return None
            ratios[k] = q
        a = coeffs[top]
        f = self.reg.zero()
        for k, q in ratios.items():
            f = f + (t ** k) * (q / ratios[top])
        return a, f

    # Printing ----------------------------------------------------------------

    def _sort_key(self, exps: tuple):
        return (sum(exps), exps)

    def to_string(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exps in sorted(self._terms, key=self._sort_key, reverse=True):
            coeff = self._terms[exps]
            syms = [
                self.reg.name_of(i) + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps)
                if e
            ]
            mag = abs(coeff)
            if not syms:
                body = str(mag)
            elif mag == 1:
                body = "*".join(syms)
            else:
                body = "*".join([str(mag)] + syms)
            if not parts:
                parts.append(body if coeff > 0 else "-" + body)
            else:
                parts.append((" + " if coeff > 0 else " - ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"MPoly({self.to_string()})"


# Parsing ---------------------------------------------------------------------


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Optional[str]:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take_int(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", start)
        return int(self.text[start : self.pos])

    def take_name(self) -> str:
        self._skip_ws()
        start = self.pos
        if self.pos >= len(self.text) or self.text[self.pos] not in _NAME_START:
            raise ParseError("expected a symbol", start)
        while self.pos < len(self.text) and self.text[self.pos] in _NAME_CONT:
            self.pos += 1
        return self.text[start : self.pos]

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1


def parse_poly(text: str, reg: SymbolRegistry, auto_register: bool = False) -> MPoly:
    """Parse an expression into an MPoly over `reg`.

    Unknown symbols raise ParseError unless auto_register is set.
    """
    lx = _Lexer(text)

    def parse_expr() -> MPoly:
        node = parse_term()
        while True:
            ch = lx.peek()
            if ch == "+":
                lx.pos += 1
                node = node + parse_term()
            elif ch == "-":
                lx.pos += 1
                node = node - parse_term()
            else:
                return node

    def parse_term() -> MPoly:
        node = parse_factor()
        while lx.peek() == "*":
            lx.pos += 1
            node = node * parse_factor()
        return node

    def parse_factor() -> MPoly:
        if lx.peek() == "-":
            lx.pos += 1
            return -parse_factor()
        node = parse_atom()
        if lx.peek() == "^":
            lx.pos += 1
            if lx.peek() is None or not lx.peek().isdigit():
                raise ParseError("exponent must be a nonnegative integer literal", lx.pos)
            node = node ** lx.take_int()
        return node

    def parse_atom() -> MPoly:
        ch = lx.peek()
        if ch is None:
            raise ParseError("unexpected end of input", lx.pos)
        if ch == "(":
            lx.pos += 1
            node = parse_expr()
            lx.expect(")")
            return node
        if ch.isdigit():
            num = lx.take_int()
            if lx.peek() == "/":
                lx.pos += 1
                here = lx.pos
                den = lx.take_int()
                if den == 0:
                    raise ParseError("zero denominator", here)
                return reg.const(Fraction(num, den))
            return reg.const(num)
        if ch in _NAME_START:
            here = lx.pos
            name = lx.take_name()
            if name not in reg and not auto_register:
                raise ParseError(f"unknown symbol {name!r}", here)
            return reg.var(name)
        raise ParseError(f"unexpected character {ch!r}", lx.pos)

    result = parse_expr()
    if lx.peek() is not None:
        raise ParseError(f"unexpected trailing input {lx.peek()!r}", lx.pos)
    return result
