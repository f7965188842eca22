"""U(d), V(d) and Hecke operators on coefficient streams, plus the
Kronecker symbol.  Operators act on raw q-expansions; space membership is
never enforced here."""

from __future__ import annotations

from .qseries import QSeries, _zeros


def u_op(a: QSeries, d: int) -> QSeries:
    """Sum a(d*n) q^n."""
    return a.extract_progression(d, 0)


def v_op(a: QSeries, d: int) -> QSeries:
    """Sum a(n) q^(d*n)."""
    if a.grain != 1:
        raise ValueError("v_op requires grain 1")
    if d < 1:
        raise ValueError("dilation factor must be positive")
    out = _zeros(a.ring, d * len(a))
    out[::d] = a.coeffs
    return QSeries(a.ring, 1, d * a.start, out, d * a.trunc)


def hecke(a: QSeries, p: int, k: int, chi) -> QSeries:
    """Sum (a(p*n) + chi(p) * p^(k-1) * a(n/p)) q^n.

    ``chi`` is either the value chi(p) or a callable evaluated at p.
    Requires k >= 1 over Z; over Z/M the power p^(k-1) is reduced mod M,
    which keeps astronomically large weights tractable.
    """
    if a.grain != 1:
        raise ValueError("hecke requires grain 1")
    chi_p = chi(p) if callable(chi) else int(chi)
    if a.ring.is_modular:
        factor = a.ring.normalize(chi_p * pow(p, k - 1, a.ring.modulus))
    else:
        if k < 1:
            raise ValueError("k < 1 over Z: negative powers of p are undefined")
        factor = chi_p * p ** (k - 1)
    first = u_op(a, p)
    # coefficient n needs a(p*n) (known below first.trunc) and, on p|n,
    # a(n/p) (known for n < p * a.trunc; the binding bound when trunc < 0)
    out_start = min(first.start, p * a.start)
    out_trunc = min(first.trunc, p * a.trunc)
    if out_trunc <= out_start:
        # nothing in the overlap is known; the slot below is exactly zero
        return QSeries(a.ring, 1, out_start - 1, _zeros(a.ring, 1), out_start)
    out = _zeros(a.ring, out_trunc - out_start)
    hi = min(first.trunc, out_trunc)
    out[first.start - out_start : hi - out_start] = first.coeffs[: hi - first.start]
    # the dilated term a(n/p) is supported on pZ only; add it in place
    # instead of materializing v_op(a, p), whose buffer scales with p
    norm = a.ring.normalize
    k0 = max(a.start, -((-out_start) // p))  # ceil(out_start / p)
    for m in range(k0, (out_trunc - 1) // p + 1):
        n = p * m
        out[n - out_start] = norm(int(out[n - out_start]) + factor * a.coeff(m))
    return QSeries(a.ring, 1, out_start, out, out_trunc)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the full extension of the Jacobi symbol."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if n < 0:
        return (-1 if a < 0 else 1) * kronecker(a, -n)
    # strip factors of 2 from n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t and a % 2 == 0:
        return 0
    result = 1
    if t % 2:
        r = a % 8
        if r in (3, 5):
            result = -result
    a %= n
    # Jacobi symbol on the odd part by reciprocity
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def v_then_u_roundtrip(a: QSeries, d: int) -> QSeries:
    """u_op(v_op(a, d), d); equals a exactly, kept as a named identity."""
    return u_op(v_op(a, d), d)
