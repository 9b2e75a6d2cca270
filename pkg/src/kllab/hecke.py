"""
The Hecke algebra of a Coxeter system, in its standard basis.

Elements are sparse vectors over the interned group elements: a map
Element -> LaurentPoly giving the expansion in the basis {delta_x}.  The
defining relations are the quadratic relation

    (delta_s + v)(delta_s - v^{-1}) = 0

and length-additive products delta_x delta_y = delta_{xy}.  The canonical
self-dual basis {b_x} (normalised so b_s = delta_s + v) exists and is
unique with bar(b_x) = b_x and b_x = delta_x + sum of vZ[v]-multiples of
lower delta_y; its coefficients are the polynomials h_{y,x}, and the
expansion of delta_x back in the b-basis carries the inverse polynomials
h^{y,x} with alternating signs:

    b_x = sum_y h_{y,x} delta_y
    delta_x = sum_y (-1)^{l(x)-l(y)} h^{y,x} b_y

``KLTable`` computes b_x two independent ways: the production route is the
length recursion b_{x's} = b_{x'} b_s - sum mu(y,x') b_y over y with ys < y,
and the oracle route solves for the unique bar-invariant unitriangular
element degree by degree.  Inverse polynomials come from a descending
triangular solve, one column per x.  Everything is memoized and all tables
are built in increasing length order, so dependencies always exist.
"""

from __future__ import annotations

from .coxeter import Element, GroupTable, LEFT, RIGHT
from .laurent import LaurentPoly

_V = LaurentPoly.v()
_VINV = LaurentPoly.v(-1)
_V_MINUS_VINV = LaurentPoly({1: 1, -1: -1})
_VINV_MINUS_V = LaurentPoly({-1: 1, 1: -1})
_ONE = LaurentPoly.one()


class InvariantError(RuntimeError):
    """A mathematically guaranteed internal invariant failed to hold."""


class HeckeElt:
    """A sparse standard-basis vector: Element -> LaurentPoly."""

    __slots__ = ("table", "terms")

    def __init__(self, table: GroupTable, terms: dict[Element, LaurentPoly]):
        self.table = table
        self.terms = {x: p for x, p in terms.items() if p}

    @staticmethod
    def zero(table: GroupTable) -> "HeckeElt":
        return HeckeElt(table, {})

    @staticmethod
    def delta(table: GroupTable, x: Element) -> "HeckeElt":
        return HeckeElt(table, {x: _ONE})

    def coefficient(self, x: Element) -> LaurentPoly:
        return self.terms.get(x, LaurentPoly.zero())

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        out = dict(self.terms)
        for x, p in other.terms.items():
            q = out.get(x)
            s = p if q is None else q + p
            if s:
                out[x] = s
            elif x in out:
                del out[x]
        return HeckeElt(self.table, out)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        out = dict(self.terms)
        for x, p in other.terms.items():
            q = out.get(x)
            s = -p if q is None else q - p
            if s:
                out[x] = s
            elif x in out:
                del out[x]
        return HeckeElt(self.table, out)

    def scaled(self, p: LaurentPoly) -> "HeckeElt":
        if not p:
            return HeckeElt.zero(self.table)
        return HeckeElt(self.table, {x: q * p for x, q in self.terms.items()})

    def top_term(self) -> tuple[Element, LaurentPoly]:
        """The term with the (length, word)-largest index."""
        x = max(self.terms, key=Element.sort_key)
        return x, self.terms[x]

    def sorted_terms(self) -> list[tuple[Element, LaurentPoly]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElt) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "HeckeElt(0)"
        parts = [f"({p})*d[{x!r}]" for x, p in self.sorted_terms()]
        return "HeckeElt(" + " + ".join(parts) + ")"


def mult_delta_gen(h: HeckeElt, s: int, side: str = RIGHT) -> HeckeElt:
    """Multiply by the standard generator delta_s on the given side.

    Per term: delta_x delta_s = delta_{xs} when xs is longer, and
    delta_{xs} + (v^{-1} - v) delta_x when xs is shorter (and mirrored on
    the left).
    """
    table = h.table
    out: dict[Element, LaurentPoly] = {}
    for x, p in h.terms.items():
        y = table.mult_gen(x, s, side)
        _accum(out, y, p)
        if y.length < x.length:
            _accum(out, x, p * _VINV_MINUS_V)
    return HeckeElt(table, out)


def mult_b_gen(h: HeckeElt, s: int, side: str = RIGHT) -> HeckeElt:
    """Multiply by b_s = delta_s + v on the given side.

    Per term: delta_x b_s = delta_{xs} + v delta_x when xs is longer, and
    delta_{xs} + v^{-1} delta_x when xs is shorter.
    """
    table = h.table
    out: dict[Element, LaurentPoly] = {}
    for x, p in h.terms.items():
        y = table.mult_gen(x, s, side)
        _accum(out, y, p)
        _accum(out, x, p * (_V if y.length > x.length else _VINV))
    return HeckeElt(table, out)


def _accum(store: dict[Element, LaurentPoly], x: Element, p: LaurentPoly):
    q = store.get(x)
    s = p if q is None else q + p
    if s:
        store[x] = s
    elif x in store:
        del store[x]


def bar_delta(table: GroupTable, x: Element) -> HeckeElt:
    """bar(delta_x), memoized on the group table.

    Since delta_s is invertible with delta_s^{-1} = delta_s + v - v^{-1}
    and bar is multiplicative, bar(delta_x) for a reduced word x = x's is
    bar(delta_{x'}) * (delta_s + v - v^{-1}), built along canonical-word
    prefixes (which are themselves canonical words).
    """
    memo: dict[int, HeckeElt] = getattr(table, "_hecke_bar_delta", None)
    if memo is None:
        memo = table._hecke_bar_delta = {}
    got = memo.get(x.index)
    if got is not None:
        return got
    if not x.word:
        out = HeckeElt.delta(table, x)
    else:
        prefix = table.element(x.word[:-1])
        s = x.word[-1]
        prev = bar_delta(table, prefix)
        out = mult_delta_gen(prev, s, RIGHT) + prev.scaled(_V_MINUS_VINV)
    memo[x.index] = out
    return out


def bar_element(h: HeckeElt) -> HeckeElt:
    """The bar involution: v -> v^{-1} on coefficients, delta_x -> bar(delta_x)."""
    out = HeckeElt.zero(h.table)
    for x, p in h.terms.items():
        out = out + bar_delta(h.table, x).scaled(p.bar())
    return out


class KLTable:
    """Kazhdan-Lusztig data over one enumerated group table.

    Memoizes the canonical basis elements b_x (two independent routes) and
    the inverse polynomial columns.  All queries are safe after
    ``build_all``; lazy use is also fine single-threaded.
    """

    def __init__(self, group: GroupTable):
        self.group = group
        self._b: dict[int, HeckeElt] = {}
        self._b_solve: dict[int, HeckeElt] = {}
        self._inv_cols: dict[int, dict[Element, LaurentPoly]] = {}

    # -- canonical basis, production route --------------------------------

    def kl_basis_element(self, x: Element) -> HeckeElt:
        """b_x by induction along the canonical word of x.

        For x = x's with s lengthening, b_{x'} b_s = b_x plus the
        mu-corrections sum_{ys<y} mu(y, x') b_y, so b_x is recovered by
        subtracting them.
        """
        got = self._b.get(x.index)
        if got is not None:
            return got
        if not x.word:
            out = HeckeElt.delta(self.group, x)
        else:
            prefix = self.group.element(x.word[:-1])
            s = x.word[-1]
            out = mult_b_gen(self.kl_basis_element(prefix), s, RIGHT)
            for y, p in list(self.kl_basis_element(prefix).terms.items()):
                if s in self.group.descents(y, RIGHT):
                    m = p.coefficient(1)
                    if m:
                        out = out - self.kl_basis_element(y).scaled(
                            LaurentPoly.constant(m))
        self._validate_triangular(out, x)
        self._b[x.index] = out
        return out

    # -- canonical basis, oracle route -------------------------------------

    def kl_basis_element_bar_solve(self, x: Element) -> HeckeElt:
        """b_x as the unique bar-invariant unitriangular element above x.

        Starts from delta_x and repeatedly cancels the top term of
        bar(B) - B with a correction gamma * b_y, gamma the positive part
        of the (antisymmetric) top coefficient.  Entirely independent of
        the mu-recursion route: it never touches mult_b_gen or mu.
        """
        got = self._b_solve.get(x.index)
        if got is not None:
            return got
        b = HeckeElt.delta(self.group, x)
        diff = bar_element(b) - b
        while diff:
            y, a = diff.top_term()
            if y.length >= x.length or not a.is_antisymmetric():
                raise InvariantError(
                    f"bar-invariance solve failed at {x!r}: stray term {y!r}")
            gamma = a.positive_part()
            by = self.kl_basis_element_bar_solve(y)
            b = b + by.scaled(gamma)
            diff = diff - by.scaled(a)
        if bar_element(b) != b:
            raise InvariantError(f"solve produced non-self-dual b at {x!r}")
        self._validate_triangular(b, x)
        self._b_solve[x.index] = b
        return b

    def _validate_triangular(self, b: HeckeElt, x: Element) -> None:
        for y, p in b.terms.items():
            if y == x:
                if p != _ONE:
                    raise InvariantError(f"b at {x!r} not unitriangular")
            elif not (p.in_v_times_polys() and p.is_nonnegative()):
                raise InvariantError(
                    f"coefficient of {y!r} in b at {x!r} outside vZ>=0[v]: {p}")

    # -- polynomials --------------------------------------------------------

    def kl_poly(self, y: Element, x: Element) -> LaurentPoly:
        """h_{y,x}: the coefficient of delta_y in b_x."""
        return self.kl_basis_element(x).coefficient(y)

    def mu(self, y: Element, x: Element) -> int:
        """The coefficient of v in h_{y,x}; nonnegative."""
        m = self.kl_poly(y, x).coefficient(1)
        if m < 0:
            raise InvariantError(f"negative mu({y!r},{x!r}) = {m}")
        return m

    def inverse_column(self, x: Element) -> dict[Element, LaurentPoly]:
        """All h^{y,x} for y <= x, by one descending triangular solve.

        Peels the expansion of delta_x over the b-basis from the top:
        the (length, word)-maximal remaining term delta_z has coefficient
        exactly (-1)^{l(x)-l(z)} h^{z,x} because every longer b has already
        been subtracted.
        """
        got = self._inv_cols.get(x.index)
        if got is not None:
            return got
        remainder = dict(HeckeElt.delta(self.group, x).terms)
        col: dict[Element, LaurentPoly] = {}
        while remainder:
            z = max(remainder, key=Element.sort_key)
            c = remainder[z]
            h = c if (x.length - z.length) % 2 == 0 else -c
            if not h.is_nonnegative():
                raise InvariantError(
                    f"negative inverse polynomial at ({z!r},{x!r}): {h}")
            col[z] = h
            for y, p in self.kl_basis_element(z).terms.items():
                _accum(remainder, y, -(c * p))
        self._inv_cols[x.index] = col
        return col

    def inverse_kl_poly(self, y: Element, x: Element) -> LaurentPoly:
        """h^{y,x}; zero unless y <= x."""
        return self.inverse_column(x).get(y, LaurentPoly.zero())

    # -- identity checks ------------------------------------------------------

    def check_parity(self, y: Element, x: Element) -> bool:
        """Every exponent of h^{y,x} is congruent to l(x) - l(y) mod 2.

        Uses l(x) - l(y) = l(xy) mod 2, so no product is ever needed.
        """
        h = self.inverse_kl_poly(y, x)
        parity = (x.length - y.length) % 2
        return all(e % 2 == parity for e in h.exponents())

    def check_inversion_identity(self, y: Element, x: Element) -> bool:
        """The Kronecker sum over z in [y, x] of the two families.

        sum_z (-1)^{l(z)-l(y)} h^{y,z} h_{z,x} equals 1 when y = x and 0
        otherwise.
        """
        total = LaurentPoly.zero()
        for z in self.group.downset(x):
            if z.length < y.length or not self.group.bruhat_leq(y, z):
                continue
            term = self.inverse_kl_poly(y, z) * self.kl_poly(z, x)
            total = total + (term if (z.length - y.length) % 2 == 0 else -term)
        expected = _ONE if y == x else LaurentPoly.zero()
        return total == expected

    # -- bulk construction ------------------------------------------------------

    def build_all(self) -> None:
        """Materialise b_x and the inverse column for every element.

        Walks in increasing id order (= increasing length), so every
        dependency is ready before first use; afterwards every query this
        class serves is a pure read and thus thread-safe.
        """
        for x in self.group:
            self.kl_basis_element(x)
        for x in self.group:
            self.inverse_column(x)
        for x in self.group:
            self.group.downset(x)
