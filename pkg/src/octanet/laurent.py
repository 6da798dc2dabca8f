"""Exact sparse multivariate Laurent polynomials over arbitrary-precision integers.

A polynomial is a dict mapping monomials to nonzero int coefficients.  A
monomial is a tuple of (variable id, exponent) pairs, sorted by variable id,
with zero exponents dropped; exponents may be negative.  The empty tuple is
the constant monomial.

There is deliberately no GCD, no factorization and no floating point here.
The only division offered is exact single-divisor division; everything this
engine divides by is guaranteed (by the Laurent property of the recurrence)
to divide exactly, and a failed division is a loud error carrying the
offending remainder.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

VarId = int
Monomial = Tuple[Tuple[VarId, int], ...]

# exponents stay within machine-word range; wrap-around is never silent
MAX_EXPONENT = 2**31


class LaurentError(Exception):
    pass


class DivideByZero(LaurentError):
    pass


class NotDivisible(LaurentError):
    """Exact division failed; .remainder holds the first irreducible remainder."""

    def __init__(self, message: str, remainder: "LaurentPoly"):
        super().__init__(message)
        self.remainder = remainder


class NotInvertible(LaurentError):
    pass


class NegativeExponent(LaurentError):
    """Zero-substitution hit a negative power; .monomial is the violating monomial."""

    def __init__(self, message: str, monomial: Monomial):
        super().__init__(message)
        self.monomial = monomial


class ExponentOverflow(LaurentError):
    pass


class VarTable:
    """Interns variable names; insertion order fixes the deg-lex tie-break order."""

    def __init__(self) -> None:
        self._names: list = []
        self._ids: Dict[str, VarId] = {}

    def var(self, name: str) -> VarId:
        vid = self._ids.get(name)
        if vid is None:
            vid = len(self._names)
            self._names.append(name)
            self._ids[name] = vid
        return vid

    def name(self, vid: VarId) -> str:
        return self._names[vid]

    def has(self, name: str) -> bool:
        return name in self._ids

    def poly(self, name: str) -> "LaurentPoly":
        return LaurentPoly.variable(self.var(name))

    def __len__(self) -> int:
        return len(self._names)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for vid, e in m2:
        ne = exps.get(vid, 0) + e
        if ne == 0:
            del exps[vid]
        else:
            if abs(ne) > MAX_EXPONENT:
                raise ExponentOverflow("exponent magnitude exceeds %d" % MAX_EXPONENT)
            exps[vid] = ne
    return tuple(sorted(exps.items()))


def _mono_inv(m: Monomial) -> Monomial:
    return tuple((vid, -e) for vid, e in m)


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_key(m: Monomial, width: int) -> tuple:
    """Ascending deg-lex sort key: (total degree, dense exponent vector)."""
    dense = [0] * width
    for vid, e in m:
        dense[vid] = e
    return (_mono_degree(m), tuple(dense))


def _key_width(monomials: Iterable[Monomial]) -> int:
    width = 0
    for m in monomials:
        if m:
            width = max(width, m[-1][0] + 1)
    return width


class LaurentPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, int]):
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly({})

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly({(): c} if c else {})

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly.const(1)

    @staticmethod
    def variable(vid: VarId, exponent: int = 1) -> "LaurentPoly":
        if exponent == 0:
            return LaurentPoly.one()
        return LaurentPoly({((vid, exponent),): 1})

    @staticmethod
    def monomial(coeff: int, m: Monomial) -> "LaurentPoly":
        return LaurentPoly({m: coeff} if coeff else {})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(): 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """Unit of the Laurent ring over Z: a single monomial with coefficient +-1."""
        if len(self.terms) != 1:
            return False
        ((_, c),) = self.terms.items()
        return c in (1, -1)

    def is_int(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def as_int(self) -> int:
        if self.is_zero():
            return 0
        if not self.is_int():
            raise LaurentError("not a constant")
        return self.terms[()]

    def num_terms(self) -> int:
        return len(self.terms)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for vid, _ in m:
                out.add(vid)
        return out

    def has_negative_exponents(self) -> bool:
        return any(e < 0 for m in self.terms for _, e in m)

    # -- ring ops ----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        raise TypeError("cannot coerce %r to LaurentPoly" % (other,))

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, 0) + c
            if nc:
                out[m] = nc
            elif m in out:
                del out[m]
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return LaurentPoly.zero()
        out: Dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                nc = out.get(m, 0) + c1 * c2
                if nc:
                    out[m] = nc
                elif m in out:
                    del out[m]
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_unit():
                raise NotInvertible("negative power of a non-unit")
            ((m, c),) = self.terms.items()
            return LaurentPoly.monomial(c, _mono_inv(m)) ** (-n)
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if self.is_zero():
            return "LaurentPoly(0)"
        return "LaurentPoly(%d terms)" % len(self.terms)

    # -- leading term helpers ------------------------------------------------

    def leading(self) -> Tuple[Monomial, int]:
        """Largest term in ascending deg-lex order."""
        width = _key_width(self.terms)
        m = max(self.terms, key=lambda mm: _mono_key(mm, width))
        return m, self.terms[m]

    def minimal_monomial_shift(self) -> Monomial:
        """Componentwise minimal exponent monomial of the support (the 'gcd monomial')."""
        mins: Dict[VarId, int] = {}
        first = True
        support_vars: set = set()
        for m in self.terms:
            support_vars.update(vid for vid, _ in m)
        for m in self.terms:
            exps = dict(m)
            if first:
                mins = {vid: exps.get(vid, 0) for vid in support_vars}
                first = False
            else:
                for vid in support_vars:
                    e = exps.get(vid, 0)
                    if e < mins[vid]:
                        mins[vid] = e
        return tuple(sorted((vid, e) for vid, e in mins.items() if e))


def sorted_terms(f: LaurentPoly) -> list:
    """Terms in ascending deg-lex order (the canonical order)."""
    width = _key_width(f.terms)
    return sorted(f.terms.items(), key=lambda item: _mono_key(item[0], width))


def lp_div_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact division in the Laurent ring.

    Both operands are shifted into the polynomial frame by their componentwise
    minimal monomials; there deg-lex is a well-order, so leading-term
    elimination terminates.  Any leftover raises NotDivisible with the
    remainder mapped back to the Laurent frame.
    """
    if den.is_zero():
        raise DivideByZero("division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero()

    num_shift = num.minimal_monomial_shift()
    den_shift = den.minimal_monomial_shift()
    # frame shift: num/den = (num/num_shift)/(den/den_shift) * num_shift/den_shift
    n = LaurentPoly({_mono_mul(m, _mono_inv(num_shift)): c for m, c in num.terms.items()})
    d = LaurentPoly({_mono_mul(m, _mono_inv(den_shift)): c for m, c in den.terms.items()})
    back = _mono_mul(num_shift, _mono_inv(den_shift))

    d_lead_m, d_lead_c = d.leading()
    d_lead_exp = dict(d_lead_m)
    quot: Dict[Monomial, int] = {}
    rem = n
    while not rem.is_zero():
        r_lead_m, r_lead_c = rem.leading()
        r_exp = dict(r_lead_m)
        q_exp = {}
        ok = True
        for vid, e in d_lead_exp.items():
            ne = r_exp.get(vid, 0) - e
            if ne < 0:
                ok = False
                break
            q_exp[vid] = ne
        if ok:
            for vid, e in r_exp.items():
                if vid not in d_lead_exp:
                    q_exp[vid] = e
            if any(e < 0 for e in q_exp.values()):
                ok = False
        if ok and r_lead_c % d_lead_c != 0:
            ok = False
        if not ok:
            remainder = LaurentPoly(
                {_mono_mul(m, back): c for m, c in rem.terms.items()}
            )
            raise NotDivisible("division left a nonzero remainder", remainder)
        q_m = tuple(sorted((vid, e) for vid, e in q_exp.items() if e))
        q_c = r_lead_c // d_lead_c
        quot[q_m] = q_c
        rem = rem - LaurentPoly.monomial(q_c, q_m) * d

    return LaurentPoly({_mono_mul(m, back): c for m, c in quot.items()})


def lp_substitute(f: LaurentPoly, images: Mapping[VarId, LaurentPoly]) -> LaurentPoly:
    """Substitute variables by Laurent polynomials.

    A variable occurring with a negative exponent may only receive a unit
    image (single monomial, coefficient +-1); anything else has no Laurent
    inverse over Z and raises NotInvertible.
    """
    out = LaurentPoly.zero()
    for m, c in f.terms.items():
        term = LaurentPoly.const(c)
        rest = []
        for vid, e in m:
            g = images.get(vid)
            if g is None:
                rest.append((vid, e))
                continue
            if not isinstance(g, LaurentPoly):
                g = LaurentPoly._coerce(g)
            if e < 0 and not g.is_unit():
                raise NotInvertible(
                    "variable %d appears with exponent %d but its image is not a unit"
                    % (vid, e)
                )
            term = term * (g**e)
        if rest:
            term = term * LaurentPoly.monomial(1, tuple(rest))
        out = out + term
    return out


def lp_subst_zero(f: LaurentPoly, vids) -> LaurentPoly:
    """Set the given variables to zero exactly.

    Monomials with a positive power of any of them vanish; a negative power
    means the value has a pole at zero and the limit does not exist along
    this substitution, reported via NegativeExponent.
    """
    vids = set(vids)
    out: Dict[Monomial, int] = {}
    for m, c in f.terms.items():
        drop = False
        kept = []
        for vid, e in m:
            if vid in vids:
                if e < 0:
                    raise NegativeExponent(
                        "monomial carries a negative power of a variable sent to zero",
                        m,
                    )
                drop = True
                break
            kept.append((vid, e))
        if drop:
            continue
        km = tuple(kept)
        nc = out.get(km, 0) + c
        if nc:
            out[km] = nc
        elif km in out:
            del out[km]
    return LaurentPoly(out)


def lp_eval_rational(f: LaurentPoly, values: Mapping[VarId, Fraction]) -> Fraction:
    """Fully evaluate at exact rational points (every variable must be assigned)."""
    total = Fraction(0)
    for m, c in f.terms.items():
        term = Fraction(c)
        for vid, e in m:
            if vid not in values:
                raise LaurentError("no value assigned to variable %d" % vid)
            v = Fraction(values[vid])
            if v == 0 and e < 0:
                raise DivideByZero("negative power of zero during evaluation")
            term *= v**e
        total += term
    return total


def _named_terms(f: LaurentPoly, table: VarTable) -> list:
    """Terms ordered by (total degree, name-keyed exponents); stable across
    tables that agree on variable names, unlike the vid-based sorted_terms."""

    def key(item):
        m, _ = item
        return (sum(e for _, e in m), sorted((table.name(vid), e) for vid, e in m))

    return sorted(f.terms.items(), key=key)


def lp_canonical_text(f: LaurentPoly, table: VarTable) -> str:
    """Deterministic text form: ascending degree-then-name terms, explicit
    signs and exponents.

    Example: 1 + t11/t12 renders as "+1 +1·t[1,1]^1·t[1,2]^-1"; zero is "0".
    """
    if f.is_zero():
        return "0"
    chunks = []
    for m, c in _named_terms(f, table):
        sign = "+" if c > 0 else "-"
        piece = sign + str(abs(c))
        for name, e in sorted((table.name(vid), e) for vid, e in m):
            piece += "·%s^%d" % (name, e)
        chunks.append(piece)
    return " ".join(chunks)


def lp_parse_canonical(text: str, table: VarTable) -> LaurentPoly:
    """Inverse of lp_canonical_text (round-trips any canonical rendering)."""
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero()
    out = LaurentPoly.zero()
    for chunk in text.split():
        sign = chunk[0]
        if sign not in "+-":
            raise LaurentError("term %r lacks an explicit sign" % chunk)
        factors = chunk[1:].split("·")
        coeff = int(factors[0])
        if sign == "-":
            coeff = -coeff
        exps: Dict[VarId, int] = {}
        for factor in factors[1:]:
            name, _, e = factor.rpartition("^")
            if not name:
                raise LaurentError("malformed factor %r" % factor)
            vid = table.var(name)
            exps[vid] = exps.get(vid, 0) + int(e)
        m = tuple(sorted((vid, e) for vid, e in exps.items() if e))
        out = out + LaurentPoly.monomial(coeff, m)
    return out


def lp_serialize(f: LaurentPoly, table: VarTable) -> list:
    """Structured form: list of {coefficient, exponents: {name: exp}} in canonical order."""
    out = []
    for m, c in _named_terms(f, table):
        out.append(
            {
                "coefficient": c,
                "exponents": {name: e for name, e in sorted((table.name(vid), e) for vid, e in m)},
            }
        )
    return out


def lp_deserialize(data: list, table: VarTable) -> LaurentPoly:
    out = LaurentPoly.zero()
    for term in data:
        m = tuple(
            sorted((table.var(name), e) for name, e in term["exponents"].items() if e)
        )
        out = out + LaurentPoly.monomial(int(term["coefficient"]), m)
    return out
