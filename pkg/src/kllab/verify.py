"""
Theorem-checking harness: monotonicity scans, standard-complex multiplicity
tables, and batched identity suites.

All four monotonicity scans use the same normalised comparison: for a
Bruhat triple z <= y <= x the polynomial attached to the shorter interval
is shifted up by the length gap and must sit coefficient-wise below the
polynomial attached to the longer one,

    classical        v^{l(y)-l(z)} h_{y,x}  <=  h_{z,x}
    inverse          v^{l(x)-l(y)} h^{z,y}  <=  h^{z,x}
    antispherical    v^{l(x)-l(y)} n^{z,y}  <=  n^{z,x}
    spherical        v^{l(x)-l(y)} m^{z,y}  <=  m^{z,x}   (expected to fail)

The first three are theorems and their scans must come back empty; the
spherical family genuinely violates the inequality, and when the quotient
is the chain arising from a type-A group modulo a type-A wall (I = all
nodes but one path endpoint), every consecutive chain triple must appear
among the violations.

Triples are enumerated by x in id order (length, then ShortLex), then y,
then z, so reports are deterministic and diffable; with threads > 1 the
per-x work is farmed out but merged back in enumeration order, so the
output is identical at any thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .coxeter import (
    CoxeterMatrix, Element, GroupTable, parse_coxeter_spec, render_word,
)
from .hecke import HeckeElt, InvariantError, KLTable
from .laurent import LaurentPoly, first_negative_exponent, leq_coefficientwise
from .parabolic import (
    ANTISPHERICAL, SPHERICAL, FlavorMismatchError, ParabolicContext,
    ParabolicKLTable,
)

_ZERO = LaurentPoly.zero()


class CapRequiredError(ValueError):
    """An infinite group was requested without a length cap."""


def build_group(spec: str, cap: int | None = None,
                max_elements: int | None = None) -> GroupTable:
    """Group table from a spec string, demanding a cap for infinite groups."""
    matrix = parse_coxeter_spec(spec)
    if cap is None and not matrix.is_finite():
        raise CapRequiredError(
            f"group {spec!r} is infinite: a length cap is required")
    return GroupTable(matrix, cap, max_elements)


# ----------------------------------------------------------------------
# violations
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """A Bruhat triple z <= y <= x where the shifted comparison fails."""

    z: Element
    y: Element
    x: Element
    lhs: LaurentPoly
    rhs: LaurentPoly
    witness_exponent: int

    def to_json_obj(self) -> dict:
        return {
            "z": render_word(self.z.word),
            "y": render_word(self.y.word),
            "x": render_word(self.x.word),
            "lhs": self.lhs.to_json_dict(),
            "rhs": self.rhs.to_json_dict(),
            "witness_exponent": self.witness_exponent,
        }

    def text(self) -> str:
        return (f"z={render_word(self.z.word)} y={render_word(self.y.word)} "
                f"x={render_word(self.x.word)} lhs={self.lhs} rhs={self.rhs} "
                f"witness_exponent={self.witness_exponent}")


def _check_triple(z, y, x, lhs, rhs, out: list) -> None:
    if not leq_coefficientwise(lhs, rhs):
        out.append(Violation(z, y, x, lhs, rhs,
                             first_negative_exponent(lhs, rhs)))


def _parallel_over(items, worker, threads: int):
    """Map worker over items, merging results in item order."""
    if threads <= 1:
        return [worker(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, items))


# ----------------------------------------------------------------------
# monotonicity scans
# ----------------------------------------------------------------------

def scan_monotonicity_inverse(table: KLTable,
                              threads: int = 1) -> tuple[int, list[Violation]]:
    """All triples violating the inverse-polynomial monotonicity.

    Returns (triples_checked, violations); the theorem predicts an empty
    list for every Coxeter system.
    """
    table.build_all()
    group = table.group

    def worker(x):
        colx = table.inverse_column(x)
        found: list[Violation] = []
        count = 0
        for y in group.downset(x):
            coly = table.inverse_column(y)
            gap = x.length - y.length
            for z in group.downset(y):
                count += 1
                _check_triple(z, y, x,
                              coly.get(z, _ZERO).shift(gap),
                              colx.get(z, _ZERO), found)
        return count, found

    return _merge(_parallel_over(list(group), worker, threads))


def scan_monotonicity_classical(table: KLTable,
                                threads: int = 1) -> tuple[int, list[Violation]]:
    """All triples violating classical monotonicity of h_{y,x}."""
    table.build_all()
    group = table.group

    def worker(x):
        bx = table.kl_basis_element(x)
        found: list[Violation] = []
        count = 0
        for y in group.downset(x):
            hy = bx.coefficient(y)
            for z in group.downset(y):
                count += 1
                _check_triple(z, y, x,
                              hy.shift(y.length - z.length),
                              bx.coefficient(z), found)
        return count, found

    return _merge(_parallel_over(list(group), worker, threads))


def _scan_parabolic(ptable: ParabolicKLTable, flavor: str, threads: int):
    ctx = ptable.context
    if ctx.flavor != flavor:
        raise FlavorMismatchError(
            f"scan needs a {flavor} table, got {ctx.flavor}")
    ptable.build_all()
    group = ctx.group
    for x in ctx.reps:
        group.downset(x)

    def worker(x):
        colx = ptable.inverse_column(x)
        found: list[Violation] = []
        count = 0
        for y in group.downset(x):
            if not ctx.is_rep(y):
                continue
            coly = ptable.inverse_column(y)
            gap = x.length - y.length
            for z in group.downset(y):
                if not ctx.is_rep(z):
                    continue
                count += 1
                _check_triple(z, y, x,
                              coly.get(z, _ZERO).shift(gap),
                              colx.get(z, _ZERO), found)
        return count, found

    return _merge(_parallel_over(list(ctx.reps), worker, threads))


def scan_monotonicity_antispherical(ptable: ParabolicKLTable,
                                    threads: int = 1):
    """Monotonicity over the antispherical quotient; expected empty."""
    return _scan_parabolic(ptable, ANTISPHERICAL, threads)


def scan_monotonicity_spherical(ptable: ParabolicKLTable, threads: int = 1):
    """Monotonicity over the spherical quotient.

    Violations are genuine and expected; on a type-A chain quotient every
    consecutive triple must show up.
    """
    return _scan_parabolic(ptable, SPHERICAL, threads)


def _merge(results) -> tuple[int, list[Violation]]:
    total = 0
    merged: list[Violation] = []
    for count, found in results:
        total += count
        merged.extend(found)
    return total, merged


# ----------------------------------------------------------------------
# spherical counterexample bookkeeping
# ----------------------------------------------------------------------

def chain_triples(ctx: ParabolicContext) -> list[tuple] | None:
    """Consecutive triples of the quotient when its Bruhat order is a chain.

    Returns None when the quotient is not totally ordered.  Distinct
    same-length elements are never comparable, so a chain forces one
    representative per length; comparability of consecutive lengths then
    gives the total order.
    """
    reps = ctx.reps
    lengths = [r.length for r in reps]
    if len(set(lengths)) != len(lengths):
        return None
    for a, b in zip(reps, reps[1:]):
        if not ctx.group.bruhat_leq(a, b):
            return None
    return [(reps[i], reps[i + 1], reps[i + 2])
            for i in range(len(reps) - 2)]


def is_type_a_wall_quotient(matrix: CoxeterMatrix, subset) -> bool:
    """True when the diagram is a type-A path and I omits one endpoint.

    Exactly the shape for which the spherical quotient is a chain whose
    every consecutive triple violates monotonicity; the suite treats those
    violations as mandatory.
    """
    rank = matrix.rank
    subset = frozenset(subset)
    if rank < 2 or len(subset) != rank - 1:
        return False
    adj: dict[int, list[int]] = {i: [] for i in range(rank)}
    edges = 0
    for i in range(rank):
        for j in range(i + 1, rank):
            order = matrix.order(i, j)
            if order == 3:
                adj[i].append(j)
                adj[j].append(i)
                edges += 1
            elif order != 2:
                return False
    if edges != rank - 1 or any(len(v) > 2 for v in adj.values()):
        return False
    endpoints = [i for i in range(rank) if len(adj[i]) == 1]
    if len(endpoints) != 2:
        return False
    seen = {endpoints[0]}
    frontier = [endpoints[0]]
    while frontier:
        frontier = [w for u in frontier for w in adj[u]
                    if w not in seen and not seen.add(w)]
    if len(seen) != rank:
        return False
    (omitted,) = set(range(rank)) - subset
    return omitted in endpoints


# ----------------------------------------------------------------------
# standard-complex multiplicity tables
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class RouquierTable:
    """Graded multiplicities of the minimal complex of the standard object
    attached to x: entry (y, i) is the multiplicity in cohomological
    degree i, and row y regenerates h^{y,x}."""

    x: Element
    mult: dict[tuple[Element, int], int]

    def rows(self) -> list[tuple[Element, int, int]]:
        return sorted(((y, i, m) for (y, i), m in self.mult.items()),
                      key=lambda r: (r[0].sort_key(), r[1]))

    def generating_poly(self, y: Element) -> LaurentPoly:
        return LaurentPoly({i: m for (z, i), m in self.mult.items() if z == y})


def rouquier_multiplicities(table: KLTable, x: Element) -> RouquierTable:
    """Multiplicity table read off the inverse polynomial column of x.

    The degree placement is forced by parity: h^{y,x} only has exponents
    congruent to l(x) - l(y) mod 2, and that is re-asserted here; a
    failure would mean a computation bug upstream.
    """
    col = table.inverse_column(x)
    mult: dict[tuple[Element, int], int] = {}
    for y, h in col.items():
        parity = (x.length - y.length) % 2
        for exp, c in h.items():
            if exp % 2 != parity:
                raise InvariantError(
                    f"parity-support failure at ({y!r},{x!r}) exponent {exp}")
            if c < 0:
                raise InvariantError(
                    f"negative multiplicity at ({y!r},{x!r},{exp})")
            mult[(y, exp)] = c
    return RouquierTable(x=x, mult=mult)


def rouquier_shadow_ok(table: KLTable, x: Element) -> bool:
    """Grothendieck check: the alternating sum re-expands to delta_x.

    Sums (-1)^i m^i_{y} v^i b_y over the whole table by direct expansion
    and compares with the standard basis element, and re-derives each row
    sum against h^{y,x}.
    """
    rt = rouquier_multiplicities(table, x)
    col = table.inverse_column(x)
    per_y: dict[Element, dict[int, int]] = {}
    for (y, exp), m in rt.mult.items():
        per_y.setdefault(y, {})[exp] = m
    acc = HeckeElt.zero(table.group)
    for y, coeffs in per_y.items():
        if LaurentPoly(coeffs) != col[y]:
            return False
        signed = LaurentPoly({e: (m if e % 2 == 0 else -m)
                              for e, m in coeffs.items()})
        acc = acc + table.kl_basis_element(y).scaled(signed)
    return acc == HeckeElt.delta(table.group, x)


# ----------------------------------------------------------------------
# the batched suite
# ----------------------------------------------------------------------

@dataclass
class CheckResult:
    check: str
    group: str
    subset: list[int] = field(default_factory=list)  # 1-based for reporting
    flavor: str | None = None
    cap: int | None = None
    pairs_checked: int = 0
    passed: bool = True
    expected_violations: bool = False
    violations: list = field(default_factory=list)  # Violation objects
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "check": self.check,
            "group": self.group,
            "I": self.subset,
            "flavor": self.flavor,
            "cap": self.cap,
            "pairs_checked": self.pairs_checked,
            "passed": self.passed,
            "expected_violations": self.expected_violations,
            "violations": [v.to_json_obj() for v in self.violations],
            "failures": self.failures,
            "notes": self.notes,
        }

    def text_lines(self) -> list[str]:
        label = self.check
        if self.subset or self.flavor:
            extra = []
            if self.subset:
                extra.append("I={" + ",".join(map(str, self.subset)) + "}")
            if self.flavor:
                extra.append(self.flavor)
            label += " [" + " ".join(extra) + "]"
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {label}: checked={self.pairs_checked}"
        if self.violations:
            line += f" violations={len(self.violations)}"
            if self.expected_violations:
                line += " (expected)"
        lines = [line]
        lines.extend("    " + v.text() for v in self.violations[:20])
        if len(self.violations) > 20:
            lines.append(f"    ... {len(self.violations) - 20} more")
        lines.extend("    " + f for f in self.failures[:5])
        lines.extend("    note: " + n for n in self.notes)
        return lines


@dataclass
class SuiteReport:
    group: str
    cap: int | None
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "group": self.group,
            "cap": self.cap,
            "passed": self.passed,
            "checks": [c.to_json_obj() for c in self.checks],
        }

    def text_lines(self) -> list[str]:
        cap = "full" if self.cap is None else str(self.cap)
        lines = [f"suite: group {self.group}, cap {cap}"]
        for c in self.checks:
            lines.extend(c.text_lines())
        lines.append(f"suite result: {'PASS' if self.passed else 'FAIL'}")
        return lines


def _comparable_pairs(group: GroupTable):
    for x in group:
        for y in group.downset(x):
            yield y, x


def run_identity_suite(spec: str, subsets=((),), cap: int | None = None,
                       threads: int = 1,
                       max_elements: int | None = None) -> SuiteReport:
    """Run every identity check and every scan over one group.

    ``subsets`` lists the generator subsets (0-based) for the parabolic
    checks; the non-parabolic checks always run.  Any internal error is
    captured as a failed check rather than propagating.
    """
    group = build_group(spec, cap, max_elements)
    table = KLTable(group)
    table.build_all()
    report = SuiteReport(group=spec, cap=cap)
    subsets = [frozenset(s) for s in subsets]

    def run(result: CheckResult, body) -> None:
        try:
            body(result)
        except Exception as exc:  # pragma: no cover - defensive capture
            result.passed = False
            result.failures.append(f"error: {type(exc).__name__}: {exc}")
        report.checks.append(result)

    def positivity_kl(res):
        for y, x in _comparable_pairs(group):
            res.pairs_checked += 1
            h = table.kl_poly(y, x)
            if not (h.is_nonnegative() and all(e >= 0 for e in h.exponents())):
                res.passed = False
                res.failures.append(f"h at ({y!r},{x!r}) = {h}")

    def positivity_inv(res):
        for y, x in _comparable_pairs(group):
            res.pairs_checked += 1
            h = table.inverse_kl_poly(y, x)
            if not (h.is_nonnegative() and all(e >= 0 for e in h.exponents())):
                res.passed = False
                res.failures.append(f"h^ at ({y!r},{x!r}) = {h}")

    def mu_nonneg(res):
        for y, x in _comparable_pairs(group):
            res.pairs_checked += 1
            if table.mu(y, x) < 0:
                res.passed = False
                res.failures.append(f"mu({y!r},{x!r}) < 0")

    def parity(res):
        for y, x in _comparable_pairs(group):
            res.pairs_checked += 1
            if not table.check_parity(y, x):
                res.passed = False
                res.failures.append(f"parity at ({y!r},{x!r})")

    def bar_invariance(res):
        from .hecke import bar_element
        for x in group:
            res.pairs_checked += 1
            b = table.kl_basis_element(x)
            if bar_element(b) != b:
                res.passed = False
                res.failures.append(f"bar(b) != b at {x!r}")

    def inversion(res):
        for y, x in _comparable_pairs(group):
            res.pairs_checked += 1
            if not table.check_inversion_identity(y, x):
                res.passed = False
                res.failures.append(f"inversion sum at ({y!r},{x!r})")

    def rouquier(res):
        for x in group:
            res.pairs_checked += 1
            if not rouquier_shadow_ok(table, x):
                res.passed = False
                res.failures.append(f"shadow at {x!r}")

    run(CheckResult("positivity-kl", spec, cap=cap), positivity_kl)
    run(CheckResult("positivity-invkl", spec, cap=cap), positivity_inv)
    run(CheckResult("mu-nonnegative", spec, cap=cap), mu_nonneg)
    run(CheckResult("parity", spec, cap=cap), parity)
    run(CheckResult("bar-invariance", spec, cap=cap), bar_invariance)
    run(CheckResult("inversion-identity", spec, cap=cap), inversion)
    run(CheckResult("rouquier-shadow", spec, cap=cap), rouquier)

    def scan_into(res, scanner, *args):
        count, violations = scanner(*args, threads=threads)
        res.pairs_checked = count
        res.violations = violations
        if violations and not res.expected_violations:
            res.passed = False

    run(CheckResult("scan-classical", spec, cap=cap),
        lambda res: scan_into(res, scan_monotonicity_classical, table))
    run(CheckResult("scan-inverse", spec, cap=cap),
        lambda res: scan_into(res, scan_monotonicity_inverse, table))

    for subset in subsets:
        one_based = sorted(t + 1 for t in subset)
        anti_ctx = ParabolicContext(group, subset, ANTISPHERICAL)
        anti = ParabolicKLTable(anti_ctx)
        sph_ctx = ParabolicContext(group, subset, SPHERICAL)
        sph = ParabolicKLTable(sph_ctx)

        def soergel(res, anti=anti):
            from .parabolic import check_soergel_identification
            mismatches = check_soergel_identification(anti, table)
            res.pairs_checked = len(anti.context.reps) ** 2
            for z, x, n, h in mismatches:
                res.passed = False
                res.failures.append(
                    f"n^/h^ differ at ({render_word(z.word)},"
                    f"{render_word(x.word)}): {n} vs {h}")

        def parab_inversion(res, ptable=None):
            ctx = ptable.context
            for x in ctx.reps:
                for y in ctx.group.downset(x):
                    if not ctx.is_rep(y):
                        continue
                    res.pairs_checked += 1
                    if not ptable.check_inversion_identity(y, x):
                        res.passed = False
                        res.failures.append(
                            f"at ({render_word(y.word)},{render_word(x.word)})")

        run(CheckResult("soergel-identification", spec, one_based,
                        ANTISPHERICAL, cap), soergel)
        run(CheckResult("parabolic-inversion-identity", spec, one_based,
                        ANTISPHERICAL, cap),
            lambda res: parab_inversion(res, ptable=anti))
        run(CheckResult("parabolic-inversion-identity", spec, one_based,
                        SPHERICAL, cap),
            lambda res: parab_inversion(res, ptable=sph))
        run(CheckResult("scan-antispherical", spec, one_based,
                        ANTISPHERICAL, cap),
            lambda res: scan_into(res, scan_monotonicity_antispherical, anti))

        def spherical_scan(res, sph=sph, sph_ctx=sph_ctx):
            res.expected_violations = True
            scan_into(res, scan_monotonicity_spherical, sph)
            evaluate_spherical_mandate(res, sph_ctx)

        run(CheckResult("scan-spherical", spec, one_based, SPHERICAL, cap),
            spherical_scan)

    return report


def evaluate_spherical_mandate(res: CheckResult,
                               ctx: ParabolicContext) -> None:
    """Fail the (expected-violations) spherical check if a mandated
    consecutive chain triple is missing from the violations."""
    if not is_type_a_wall_quotient(ctx.group.matrix, ctx.subset):
        res.notes.append("no mandated violations for this quotient")
        return
    triples = chain_triples(ctx)
    if triples is None:
        res.passed = False
        res.failures.append("type-A wall quotient is unexpectedly not a chain")
        return
    got = {(v.z, v.y, v.x) for v in res.violations}
    missing = [t for t in triples if t not in got]
    res.notes.append(
        f"mandated consecutive chain triples: "
        f"{len(triples) - len(missing)}/{len(triples)} present")
    for z, y, x in missing:
        res.passed = False
        res.failures.append(
            f"missing mandated violation ({render_word(z.word)},"
            f"{render_word(y.word)},{render_word(x.word)})")
