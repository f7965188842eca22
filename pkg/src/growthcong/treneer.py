"""The cusp-form construction pipeline behind the witness search:
f = 1/eta(12z)^2, the telescoped f_m, the congruence-carrier F_ell, and
the product g that is congruent to the a(ell^m * n) stream."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import eta
from .operators import u_op, v_op
from .partitions import colored_table
from .qseries import ZZ, CoefficientRing, QSeries, Zmod, _use_numpy, _zeros, is_congruent, monomial


def m_ell(ell: int) -> int:
    """Telescoping depth: 2 for 5 <= ell <= 23, 1 for ell >= 29."""
    if ell < 5:
        raise ValueError("requires a prime ell >= 5")
    return 2 if ell <= 23 else 1


def f_eta_quotient() -> eta.EtaQuotient:
    """1/eta(12z)^2, viewed at level 144."""
    return eta.EtaQuotient(144, {12: -2})


def F_eta_quotient(ell: int) -> eta.EtaQuotient:
    """eta(z)^(ell^2) / eta(ell^2 z), level ell^2."""
    return eta.EtaQuotient(ell * ell, {1: ell * ell, ell * ell: -1})


def build_f(trunc: int, ring: CoefficientRing = ZZ) -> QSeries:
    """1/eta(12z)^2 = q^-1 + 2q^11 + 5q^23 + ... as a grain-1 series.

    Coefficients are 2-colored partition numbers on the 12Z-1 support
    lattice; the pentagonal kernel fills them directly, which is the only
    path that scales to the multi-million-term truncations the witness
    search needs.  The eta-quotient expansion route is the independent
    cross-check used in tests.
    """
    if trunc < 1:
        raise ValueError("truncation must reach past the leading q^-1 term")
    mmax = trunc // 12
    table = colored_table(2, mmax, ring.modulus)
    out = _zeros(ring, trunc + 1)
    if _use_numpy(ring):
        out[::12] = np.asarray(table.values, dtype=np.int64)
    else:
        out[::12] = [int(v) for v in table.values]
    return QSeries(ring, 1, -1, out, trunc)


def build_f_by_eta(trunc: int, ring: CoefficientRing = ZZ) -> QSeries:
    """Same series through the generic eta-quotient expansion machinery."""
    return eta.expand(f_eta_quotient(), 24 * trunc, ring)


def required_f_truncation(m: int, ell: int, trunc: int) -> int:
    """Source truncation build_fm needs to emit ``trunc`` exact coefficients."""
    return ell ** (m + 1) * trunc


def build_fm(f: QSeries, m: int, ell: int, trunc: int | None = None) -> QSeries:
    """f|U(ell^m) - f|U(ell^(m+1))|V(ell).

    The coefficient of q^n is a(ell^m * n) when ell does not divide n and
    zero when it does.
    """
    if trunc is not None and f.trunc < required_f_truncation(m, ell, trunc):
        raise ValueError(
            f"insufficient source truncation: have {f.trunc}, "
            f"need {required_f_truncation(m, ell, trunc)}"
        )
    lm = ell**m
    result = u_op(f, lm) - v_op(u_op(f, lm * ell), ell)
    if trunc is not None and result.trunc > trunc:
        cut = trunc - result.start
        result = QSeries(result.ring, 1, result.start, result.coeffs[:cut], trunc)
    return result


def build_F(ell: int, trunc: int, ring: CoefficientRing = ZZ) -> QSeries:
    """Grain-1 expansion of eta(z)^(ell^2)/eta(ell^2 z); constant term 1."""
    series = eta.expand(F_eta_quotient(ell), 24 * trunc, ring)
    if series.grain != 1 or series.start != 0 or series.coeff(0) != 1:
        raise AssertionError("F_ell must start at q^0 with constant term 1")
    return series


def choose_beta(ell: int, j: int) -> int:
    """Smallest beta >= j-1 making ell^beta * ord_c(F_ell) clear the
    worst-case pole of f_m at every cusp a/c of Gamma_0(144 ell^2) with
    ell^2 not dividing c.

    The pole bound is 24 in the grain-24 lattice, i.e. at most the cusp
    width in local-variable units; we demand order >= 1 after the lift.
    This is one defensible sufficiency bound, not a value from a table.
    """
    level = 144 * ell * ell
    quotient = F_eta_quotient(ell)
    beta = max(j - 1, 0)
    for c in eta.divisors(level):
        if c % (ell * ell) == 0:
            continue
        order = eta.cusp_order(quotient, c, level=level)
        if order <= 0:
            raise AssertionError(f"F_{ell} fails to vanish at cusp denominator {c}")
        bound = eta.cusp_width(level, c) + 1
        while Fraction(ell) ** beta * order < bound:
            beta += 1
    return beta


@dataclass(frozen=True)
class PipelineContext:
    ell: int
    j: int
    m: int
    beta: int
    kappa: int
    trunc: int

    @property
    def modulus(self) -> int:
        return self.ell**self.j


def make_context(ell: int, j: int, trunc: int) -> PipelineContext:
    if j < 1:
        raise ValueError("j must be >= 1")
    m = m_ell(ell)
    beta = choose_beta(ell, j)
    kappa = -1 + ell**beta * (ell * ell - 1) // 2
    return PipelineContext(ell=ell, j=j, m=m, beta=beta, kappa=kappa, trunc=trunc)


def build_g(ctx: PipelineContext, f: QSeries | None = None) -> QSeries:
    """f_m * F_ell^(ell^beta) reduced mod ell^j.

    F_ell^(ell^(j-1)) == 1 (mod ell^j), so the astronomically large
    exponent ell^beta collapses to ell^(j-1) in the reduced ring.
    """
    ring = Zmod(ctx.modulus)
    if f is None:
        f = build_f(required_f_truncation(ctx.m, ctx.ell, ctx.trunc), ring)
    elif not f.ring.is_modular:
        f = f.reduce_mod(ctx.modulus)
    fm = build_fm(f, ctx.m, ctx.ell, ctx.trunc)
    F = build_F(ctx.ell, ctx.trunc, ring)
    exponent = ctx.ell ** min(ctx.beta, ctx.j - 1)
    return fm * F**exponent


def pipeline_report(ctx: PipelineContext) -> dict:
    """Run every congruence check the construction relies on, at the
    context's truncation, and report each as a named pass/fail entry."""
    ring = Zmod(ctx.modulus)
    f = build_f(required_f_truncation(ctx.m, ctx.ell, ctx.trunc), ring)
    fm = build_fm(f, ctx.m, ctx.ell, ctx.trunc)
    checks = {}

    # the fast coefficient fill agrees with the eta-quotient expansion
    t_cross = min(ctx.trunc, 240)
    cross = build_f_by_eta(t_cross, ring)
    ok = all(f.coeff(n) == cross.coeff(n) for n in range(-1, t_cross))
    checks["f_matches_eta_expansion"] = {"status": "PASS" if ok else "FAIL",
                                         "truncation": t_cross}

    # telescoped stream: coefficient n is a(ell^m n) off multiples of ell
    lm = ctx.ell**ctx.m
    ok = True
    for n in range(fm.start, fm.trunc):
        want = 0 if n % ctx.ell == 0 else f.coeff(lm * n)
        if fm.coeff(n) != want:
            ok = False
            break
    checks["fm_extracts_ell_m_stream"] = {"status": "PASS" if ok else "FAIL",
                                          "truncation": ctx.trunc}

    # F^(ell^(s-1)) == 1 (mod ell^s) for s = 1..j
    for s in range(1, ctx.j + 1):
        rs = Zmod(ctx.ell**s)
        F = build_F(ctx.ell, ctx.trunc, rs)
        one = monomial(rs, 1, 0, 1, ctx.trunc)
        ok, first = is_congruent(F ** (ctx.ell ** (s - 1)), one, ctx.ell**s)
        checks[f"F_power_is_1_mod_ell^{s}"] = {
            "status": "PASS" if ok else "FAIL",
            "first_difference": None if first is None else str(first),
            "truncation": ctx.trunc,
        }

    # the product g is congruent to fm mod ell^j
    g = build_g(ctx, f=f)
    ok, first = is_congruent(g, fm, ctx.modulus)
    checks["g_congruent_to_fm"] = {
        "status": "PASS" if ok else "FAIL",
        "first_difference": None if first is None else str(first),
        "truncation": ctx.trunc,
    }
    return {
        "ell": ctx.ell, "j": ctx.j, "m": ctx.m, "beta": ctx.beta,
        "kappa": ctx.kappa, "truncation": ctx.trunc, "checks": checks,
        "status": "PASS" if all(c["status"] == "PASS" for c in checks.values()) else "FAIL",
    }


def g_character_top(ctx: PipelineContext) -> int:
    """Integer D with chi(d) = kronecker(D, d) for the pipeline's cusp form.

    The quotient behind g is eta(12z)^-2 * (eta(z)^(ell^2)/eta(ell^2 z))^(ell^beta);
    only exponent parities and the weight parity enter the Kronecker top.
    """
    # ell^beta is odd, so the F-part contributes its own (squarefree) kernel once
    f_info = eta.modularity_check(f_eta_quotient())
    s_f = f_info.s_value
    F_info = eta.modularity_check(F_eta_quotient(ctx.ell))
    s_F = F_info.s_value
    kernel = eta.squarefree_kernel(
        s_f.numerator * s_f.denominator * s_F.numerator * s_F.denominator
    )
    sign = -1 if ctx.kappa % 2 else 1
    return sign * kernel
