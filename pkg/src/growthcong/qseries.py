"""Truncated formal q-expansions on the exponent lattice (1/G)Z.

A series is a finite window of exact coefficients: everything below the
start exponent is zero, everything at or above the truncation bound is
unknown and may never be read.  Coefficients live either in Z (arbitrary
precision Python ints) or in Z/M for a word-sized modulus M.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

# Residue products must fit in an int64 for the vectorized path; larger
# moduli fall back to Python-int storage.
_MOD_LIMIT = 1 << 63
_NUMPY_MOD_LIMIT = 1 << 31


class RingMismatchError(ValueError):
    """Binary operation on series over different coefficient rings."""


class NonUnitLeadingCoefficientError(ValueError):
    """Inversion of a series whose leading coefficient is not a unit."""


class TruncationError(IndexError):
    """Coefficient requested at or beyond the truncation bound."""


@dataclass(frozen=True)
class CoefficientRing:
    """Z when modulus is None, otherwise Z/modulus."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and not 2 <= self.modulus < _MOD_LIMIT:
            raise ValueError("modulus must satisfy 2 <= M < 2**63")

    @property
    def is_modular(self) -> bool:
        return self.modulus is not None

    def normalize(self, x: int) -> int:
        return int(x) if self.modulus is None else int(x) % self.modulus

    def is_unit(self, x: int) -> bool:
        if self.modulus is None:
            return x in (1, -1)
        return gcd(x, self.modulus) == 1

    def inverse(self, x: int) -> int:
        if self.modulus is None:
            if x in (1, -1):
                return x
            raise NonUnitLeadingCoefficientError(f"{x} is not a unit in Z")
        try:
            return pow(x, -1, self.modulus)
        except ValueError as exc:
            raise NonUnitLeadingCoefficientError(
                f"{x} is not a unit mod {self.modulus}"
            ) from exc

    def __str__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


ZZ = CoefficientRing()


def Zmod(m: int) -> CoefficientRing:
    return CoefficientRing(m)


def _use_numpy(ring: CoefficientRing) -> bool:
    return ring.is_modular and ring.modulus < _NUMPY_MOD_LIMIT


def _make_buffer(ring: CoefficientRing, values) -> "np.ndarray | list":
    if _use_numpy(ring):
        arr = np.asarray(values, dtype=np.int64) % ring.modulus
        return arr
    return [ring.normalize(v) for v in values]


def _zeros(ring: CoefficientRing, n: int):
    if _use_numpy(ring):
        return np.zeros(n, dtype=np.int64)
    return [0] * n


class QSeries:
    """Sum_{e=start}^{trunc-1} coeffs[e-start] * q^(e/grain).

    Exponents below ``start`` are exactly zero; reading an exponent at or
    past ``trunc`` raises :class:`TruncationError` rather than returning a
    silent zero.  Instances are immutable: every operation returns a new
    series, so values may be shared freely between threads.
    """

    __slots__ = ("ring", "grain", "start", "trunc", "coeffs")

    def __init__(self, ring, grain, start, coeffs, trunc=None):
        if grain < 1:
            raise ValueError("grain must be a positive integer")
        buf = coeffs if isinstance(coeffs, (np.ndarray, list)) else list(coeffs)
        buf = _make_buffer(ring, buf)
        if trunc is None:
            trunc = start + len(buf)
        if trunc - start != len(buf):
            raise ValueError("coefficient window must span exactly trunc - start")
        if trunc <= start:
            raise ValueError("truncation must exceed the starting exponent")
        self.ring = ring
        self.grain = int(grain)
        self.start = int(start)
        self.trunc = int(trunc)
        self.coeffs = buf

    # -- basic access -------------------------------------------------

    def __len__(self):
        return self.trunc - self.start

    def coeff(self, e: int) -> int:
        """Coefficient at lattice exponent e (units of 1/grain)."""
        if e >= self.trunc:
            raise TruncationError(
                f"exponent {e}/{self.grain} is at or beyond truncation "
                f"{self.trunc}/{self.grain}"
            )
        if e < self.start:
            return 0
        return int(self.coeffs[e - self.start])

    def coefficients(self) -> list[int]:
        if isinstance(self.coeffs, np.ndarray):
            return [int(c) for c in self.coeffs]
        return list(self.coeffs)

    def exponent(self, e: int) -> Fraction:
        return Fraction(e, self.grain)

    def _nonzero_offsets(self):
        if isinstance(self.coeffs, np.ndarray):
            return np.nonzero(self.coeffs)[0].tolist()
        return [i for i, c in enumerate(self.coeffs) if c != 0]

    def is_zero(self) -> bool:
        return not self._nonzero_offsets()

    def __repr__(self):
        shown = []
        for off in self._nonzero_offsets()[:6]:
            e = self.start + off
            shown.append(f"{self.coeffs[off]}*q^({e}/{self.grain})")
        body = " + ".join(shown) if shown else "0"
        return f"QSeries({body} + O(q^({self.trunc}/{self.grain})), ring={self.ring})"

    # -- grain handling -----------------------------------------------

    def lift(self, grain: int) -> "QSeries":
        """Re-express on a finer lattice; grain must be a multiple of self.grain."""
        if grain == self.grain:
            return self
        if grain % self.grain:
            raise ValueError("target grain must be a multiple of the current grain")
        f = grain // self.grain
        out = _zeros(self.ring, (self.trunc - self.start) * f)
        if isinstance(out, np.ndarray):
            out[::f] = self.coeffs
        else:
            out[::f] = self.coeffs
        return QSeries(self.ring, grain, self.start * f, out, self.trunc * f)

    def normalized(self) -> "QSeries":
        """Smallest grain on which the support is integral."""
        nz = self._nonzero_offsets()
        if not nz:
            d = self.grain
        else:
            d = 0
            for off in nz:
                d = gcd(d, abs(self.start + off))
                if d == 1:
                    break
            d = gcd(d, self.grain) if d else self.grain
        if d <= 1 or self.grain == 1:
            return self
        g2 = self.grain // d
        v2 = -((-self.start) // d)  # ceil division
        t2 = -((-self.trunc) // d)
        if t2 <= v2:
            return self
        out = _zeros(self.ring, t2 - v2)
        for off in nz:
            e = self.start + off
            out[e // d - v2] = self.coeffs[off]
        return QSeries(self.ring, g2, v2, out, t2)

    # -- arithmetic ----------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check_ring(other)
        g = self.grain * other.grain // gcd(self.grain, other.grain)
        a, b = self.lift(g), other.lift(g)
        v = min(a.start, b.start)
        t = min(a.trunc, b.trunc)
        if t <= v:
            raise ValueError("summands have no overlapping window")
        out = _zeros(self.ring, t - v)
        for s in (a, b):
            lo, hi = s.start, min(s.trunc, t)
            if hi <= lo:
                continue
            if isinstance(out, np.ndarray):
                out[lo - v : hi - v] = (out[lo - v : hi - v] + s.coeffs[: hi - lo]) % self.ring.modulus
            else:
                for i in range(hi - lo):
                    out[lo - v + i] += s.coeffs[i]
        return QSeries(self.ring, g, v, out, t).normalized()

    def __neg__(self):
        if isinstance(self.coeffs, np.ndarray):
            out = (-self.coeffs) % self.ring.modulus
        else:
            out = [self.ring.normalize(-c) for c in self.coeffs]
        return QSeries(self.ring, self.grain, self.start, out, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "QSeries":
        c = self.ring.normalize(c)
        if isinstance(self.coeffs, np.ndarray):
            out = (self.coeffs * c) % self.ring.modulus
        else:
            out = [self.ring.normalize(v * c) for v in self.coeffs]
        return QSeries(self.ring, self.grain, self.start, out, self.trunc)

    def __mul__(self, other: "QSeries") -> "QSeries":
        self._check_ring(other)
        g = self.grain * other.grain // gcd(self.grain, other.grain)
        a, b = self.lift(g), other.lift(g)
        v = a.start + b.start
        t = min(a.trunc + b.start, b.trunc + a.start)
        n = t - v  # == min(len(a), len(b))
        out = _convolve_window(self.ring, a.coeffs, b.coeffs, n)
        return QSeries(self.ring, g, v, out, t).normalized()

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            raise ValueError("exponent must be nonnegative; use invert() first")
        n = len(self)
        one = monomial(self.ring, self.grain, 0, 1, n)
        if e == 0:
            return one
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def invert(self) -> "QSeries":
        """Multiplicative inverse: self * result == 1 up to truncation."""
        nz = self._nonzero_offsets()
        if not nz or nz[0] != 0:
            # sharpen the start before inverting
            if not nz:
                raise NonUnitLeadingCoefficientError("cannot invert the zero series")
            off = nz[0]
            trimmed = QSeries(
                self.ring, self.grain, self.start + off, self.coeffs[off:], self.trunc
            )
            return trimmed.invert()
        lead = int(self.coeffs[0])
        lead_inv = self.ring.inverse(lead)
        n = len(self)
        # support stride: work on the decimated lattice when support allows
        d = 0
        for off in nz:
            d = gcd(d, off)
            if d == 1:
                break
        d = max(d, 1)
        if d > 1:
            inv_c = _invert_offsets(self.ring, self.coeffs[::d], lead_inv)
            out = _zeros(self.ring, n)
            out[::d] = inv_c
        else:
            out = _invert_offsets(self.ring, self.coeffs, lead_inv)
        return QSeries(self.ring, self.grain, -self.start, out, n - self.start).normalized()

    # -- coefficient-stream operations ---------------------------------

    def extract_progression(self, d: int, r: int) -> "QSeries":
        """Series of coefficients a(d*n + r); requires grain 1."""
        if self.grain != 1:
            raise ValueError("extract_progression requires grain 1")
        if d < 1:
            raise ValueError("step must be positive")
        n0 = -((r - self.start) // d)  # ceil((start - r) / d)
        t_out = -((r - self.trunc) // d)  # ceil((trunc - r) / d)
        if t_out <= n0:
            # no source coefficient is known at or past n0; the slot just
            # below n0 maps under the window start and is genuinely zero
            return QSeries(self.ring, 1, n0 - 1, _zeros(self.ring, 1), n0)
        first = d * n0 + r - self.start
        window = self.coeffs[first::d]
        window = window[: t_out - n0]
        if len(window) < t_out - n0:
            pad = _zeros(self.ring, t_out - n0 - len(window))
            if isinstance(window, np.ndarray):
                window = np.concatenate([window, pad])
            else:
                window = list(window) + pad
        return QSeries(self.ring, 1, n0, window, t_out)

    def reduce_mod(self, m: int) -> "QSeries":
        ring = Zmod(m)
        return QSeries(ring, self.grain, self.start, self.coefficients(), self.trunc)

    def to_ring(self, ring: CoefficientRing) -> "QSeries":
        if ring == self.ring:
            return self
        if ring.is_modular:
            return self.reduce_mod(ring.modulus)
        raise ValueError("cannot lift modular coefficients back to Z")

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.ring != other.ring:
            return False
        a, b = self.normalized(), other.normalized()
        if Fraction(a.trunc, a.grain) != Fraction(b.trunc, b.grain):
            return False
        g = a.grain * b.grain // gcd(a.grain, b.grain)
        a, b = a.lift(g), b.lift(g)
        lo, hi = min(a.start, b.start), a.trunc
        return all(a.coeff(e) == b.coeff(e) for e in range(lo, hi))

    __hash__ = None


def monomial(ring: CoefficientRing, grain: int, e: int, c: int, trunc: int) -> QSeries:
    """c * q^(e/grain), exact below the truncation bound."""
    if trunc <= e:
        raise ValueError("truncation must exceed the monomial exponent")
    out = _zeros(ring, trunc - e)
    out[0] = ring.normalize(c)
    return QSeries(ring, grain, e, out, trunc)


def is_congruent(a: QSeries, b: QSeries, m: int):
    """(True, None) if all coefficients agree mod m up to the common window,
    else (False, first disagreeing exponent as a Fraction)."""
    g = a.grain * b.grain // gcd(a.grain, b.grain)
    a, b = a.lift(g), b.lift(g)
    lo = min(a.start, b.start)
    hi = min(a.trunc, b.trunc)
    if isinstance(a.coeffs, np.ndarray) and isinstance(b.coeffs, np.ndarray):
        av = np.zeros(max(hi - lo, 0), dtype=np.int64)
        bv = np.zeros(max(hi - lo, 0), dtype=np.int64)
        for s, buf in ((a, av), (b, bv)):
            end = min(s.trunc, hi)
            if end > s.start:
                buf[s.start - lo : end - lo] = s.coeffs[: end - s.start]
        diff = np.nonzero((av - bv) % m)[0]
        if diff.size == 0:
            return True, None
        return False, Fraction(lo + int(diff[0]), g)
    for e in range(lo, hi):
        if (a.coeff(e) - b.coeff(e)) % m:
            return False, Fraction(e, g)
    return True, None


# -- multiplication / inversion kernels ---------------------------------


def _support_profile(coeffs):
    """(first nonzero offset, gcd of offsets relative to it, offsets) or None."""
    if isinstance(coeffs, np.ndarray):
        nz = np.nonzero(coeffs)[0]
        if nz.size == 0:
            return None
        base = int(nz[0])
        d = int(np.gcd.reduce(nz - base)) if nz.size > 1 else 0
        return base, max(d, 1), nz
    nz = [i for i, c in enumerate(coeffs) if c != 0]
    if not nz:
        return None
    base = nz[0]
    d = 0
    for off in nz[1:]:
        d = gcd(d, off - base)
        if d == 1:
            break
    return base, max(d, 1), nz


def _convolve_window(ring, ca, cb, n):
    """First n coefficients of the product of the coefficient windows."""
    pa, pb = _support_profile(ca), _support_profile(cb)
    if pa is None or pb is None:
        return _zeros(ring, n)
    (fa, da, _), (fb, db, _) = pa, pb
    shift = fa + fb
    if shift >= n:
        return _zeros(ring, n)
    d = gcd(da, db)
    if d > 1:
        ac, bc = ca[fa::d], cb[fb::d]
        nc = -(-(n - shift) // d)
        prod = _convolve_dense(ring, ac, bc, nc)
        out = _zeros(ring, n)
        kmax = (n - 1 - shift) // d + 1
        out[shift :: d] = prod[:kmax] if kmax < nc else prod
        return out
    return _convolve_dense(ring, ca, cb, n)


def _convolve_dense(ring, ca, cb, n):
    out = _zeros(ring, n)
    pa, pb = _support_profile(ca), _support_profile(cb)
    if pa is None or pb is None:
        return out
    # drive the loop from the sparser factor
    if len(pa[2]) <= len(pb[2]):
        driver, nz, other = ca, pa[2], cb
    else:
        driver, nz, other = cb, pb[2], ca
    if isinstance(out, np.ndarray):
        m = ring.modulus
        for i in nz:
            i = int(i)
            if i >= n:
                break
            seg = other[: n - i]
            out[i : i + len(seg)] = (out[i : i + len(seg)] + int(driver[i]) * seg) % m
        return out
    norm = ring.normalize
    for i in nz:
        if i >= n:
            break
        c = driver[i]
        limit = min(len(other), n - i)
        for j in range(limit):
            if other[j]:
                out[i + j] = norm(out[i + j] + c * other[j])
    return out


def _invert_offsets(ring, ca, lead_inv):
    """Inverse of a coefficient window with a unit in slot 0."""
    n = len(ca)
    prof = _support_profile(ca)
    nz = [int(i) for i in prof[2] if i > 0]
    if isinstance(ca, np.ndarray):
        m = ring.modulus
        out = np.zeros(n, dtype=np.int64)
        out[0] = lead_inv % m
        for k in range(1, n):
            acc = 0
            for i in nz:
                if i > k:
                    break
                acc = (acc + int(ca[i]) * int(out[k - i])) % m
            out[k] = (-lead_inv * acc) % m
        return out
    norm = ring.normalize
    out = [0] * n
    out[0] = norm(lead_inv)
    for k in range(1, n):
        acc = 0
        for i in nz:
            if i > k:
                break
            acc += ca[i] * out[k - i]
        out[k] = norm(-lead_inv * acc)
    return out


# -- binary cache format (QSC1) ------------------------------------------
#
# magic "QSC1" | version u8 | ring tag u8 (0 = Z, 1 = modular) | modulus u64
# | grain u32 | start i64 | trunc i64 | coefficients.
# Modular coefficients: fixed-width u64 little-endian.
# Z coefficients: u32 payload length, then sign byte (0/1) + magnitude
# little-endian.

_MAGIC = b"QSC1"
_HEADER = struct.Struct("<4sBBQIqq")


def dump_qseries(q: QSeries) -> bytes:
    tag = 1 if q.ring.is_modular else 0
    modulus = q.ring.modulus or 0
    parts = [_HEADER.pack(_MAGIC, 1, tag, modulus, q.grain, q.start, q.trunc)]
    if tag:
        arr = np.asarray(q.coefficients(), dtype=np.uint64)
        parts.append(arr.astype("<u8").tobytes())
    else:
        for c in q.coeffs:
            sign = 1 if c < 0 else 0
            mag = abs(c)
            payload = bytes([sign]) + mag.to_bytes((mag.bit_length() + 7) // 8 or 1, "little")
            parts.append(struct.pack("<I", len(payload)))
            parts.append(payload)
    return b"".join(parts)


def load_qseries(data: bytes) -> QSeries:
    magic, version, tag, modulus, grain, start, trunc = _HEADER.unpack_from(data, 0)
    if magic != _MAGIC or version != 1:
        raise ValueError("not a QSC1 record")
    pos = _HEADER.size
    n = trunc - start
    if tag == 1:
        arr = np.frombuffer(data, dtype="<u8", count=n, offset=pos)
        coeffs = arr.astype(np.int64) if modulus < _NUMPY_MOD_LIMIT else [int(x) for x in arr]
        return QSeries(Zmod(modulus), grain, start, coeffs, trunc)
    coeffs = []
    for _ in range(n):
        (length,) = struct.unpack_from("<I", data, pos)
        pos += 4
        payload = data[pos : pos + length]
        pos += length
        mag = int.from_bytes(payload[1:], "little")
        coeffs.append(-mag if payload[0] else mag)
    return QSeries(ZZ, grain, start, coeffs, trunc)
