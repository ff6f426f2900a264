"""Short-Weierstrass group law in affine and Jacobian coordinates.

Point addition takes its first operand in affine and its second in Jacobian
coordinates and yields Jacobian (the cheapest mixed form); doubling is
Jacobian in and out.  The sensing path never inverts: equality and special
cases are decided by cross-multiplication, and conversion back to affine is
reserved for the reader side and for serialization.

A point with Z = 0 is the group identity in Jacobian coordinates; affine
points carry an explicit infinity flag instead.
"""

from __future__ import annotations

import importlib.resources
from pathlib import Path

from .counters import counters
from .errors import BadConfig, BadEncoding, InvalidCurve, OffCurvePoint
from .field import (
    FieldElement,
    FieldParams,
    mod_add,
    mod_inv,
    mod_mul,
    mod_sqr,
    mod_sub,
)
from .textcfg import parse_kv

_CONFIG_KEYS = ("name", "n", "c", "a", "b", "gx", "gy", "order_n")


class AffinePoint:
    """Curve point (x, y), or the identity when the flag is set."""

    __slots__ = ("curve", "x", "y", "infinity")

    def __init__(self, curve, x=None, y=None, infinity=False):
        self.curve = curve
        self.x = x
        self.y = y
        self.infinity = infinity

    @classmethod
    def identity(cls, curve):
        return cls(curve, infinity=True)

    def __eq__(self, other):
        if not isinstance(other, AffinePoint):
            return NotImplemented
        if self.infinity or other.infinity:
            return self.infinity and other.infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.infinity:
            return hash(("affine", None))
        return hash(("affine", self.x.value, self.y.value))

    def __repr__(self):
        if self.infinity:
            return "AffinePoint(identity)"
        return f"AffinePoint({self.x.value:#x}, {self.y.value:#x})"


class JacobianPoint:
    """Curve point (X, Y, Z) with affine image (X/Z**2, Y/Z**3); Z = 0 is the identity."""

    __slots__ = ("curve", "X", "Y", "Z")

    def __init__(self, curve, X, Y, Z):
        self.curve = curve
        self.X = X
        self.Y = Y
        self.Z = Z

    @classmethod
    def infinity(cls, curve):
        f = curve.field
        one = FieldElement(1, f)
        return cls(curve, one, one, FieldElement(0, f))

    @property
    def is_infinity(self) -> bool:
        return self.Z.value == 0

    def __repr__(self):
        if self.is_infinity:
            return "JacobianPoint(identity)"
        return f"JacobianPoint({self.X.value:#x}, {self.Y.value:#x}, {self.Z.value:#x})"


class CurveParams:
    """Validated domain parameters: curve coefficients, generator, group order."""

    __slots__ = ("field", "a", "b", "G", "order_n", "name", "a_is_minus3",
                 "_tables", "_rmap_cache")

    def __init__(self, field: FieldParams, a: int, b: int, gx: int, gy: int,
                 order_n: int, name: str):
        p = field.p
        if not (0 <= a < p and 0 <= b < p and 0 <= gx < p and 0 <= gy < p):
            raise InvalidCurve("coefficient or coordinate outside [0, p)")
        if order_n < 2:
            raise InvalidCurve("group order must exceed 1")
        disc = (4 * a * a * a + 27 * b * b) % p
        if disc == 0:
            raise InvalidCurve("singular curve: 4a^3 + 27b^2 = 0")
        self.field = field
        self.a = FieldElement(a, field)
        self.b = FieldElement(b, field)
        self.order_n = order_n
        self.name = name
        self.a_is_minus3 = a == p - 3
        self._tables = {}
        self._rmap_cache = {}
        self.G = AffinePoint(self, FieldElement(gx, field), FieldElement(gy, field))
        if not on_curve(self.G):
            raise InvalidCurve("generator not on curve")
        if not _reference_mul(order_n, self.G).is_infinity:
            raise InvalidCurve("order_n * G is not the identity")

    def __repr__(self):
        return f"CurveParams({self.name!r}, n={self.field.n})"


def on_curve(P: AffinePoint) -> bool:
    """True for the identity and for (x, y) satisfying y^2 = x^3 + ax + b."""
    if P.infinity:
        return True
    cur = P.curve
    f = cur.field
    x, y = P.x.value, P.y.value
    lhs = mod_sqr(f, y)
    rhs = mod_add(f, mod_mul(f, mod_add(f, mod_sqr(f, x), cur.a.value), x), cur.b.value)
    return lhs == rhs


def lift(P: AffinePoint) -> JacobianPoint:
    """Embed an affine point into Jacobian coordinates with Z = 1."""
    if P.infinity:
        return JacobianPoint.infinity(P.curve)
    f = P.curve.field
    return JacobianPoint(P.curve, P.x, P.y, FieldElement(1, f))


def ec_dbl_jj(Q: JacobianPoint) -> JacobianPoint:
    """Double a Jacobian point; Y = 0 and the identity both double to the identity."""
    if Q.Z.value == 0 or Q.Y.value == 0:
        return JacobianPoint.infinity(Q.curve)
    cur = Q.curve
    f = cur.field
    counters().ecdbl += 1
    X1, Y1, Z1 = Q.X.value, Q.Y.value, Q.Z.value
    yy = mod_sqr(f, Y1)
    yyyy = mod_sqr(f, yy)
    t = mod_mul(f, X1, yy)
    t2 = mod_add(f, t, t)
    s = mod_add(f, t2, t2)
    z1z1 = mod_sqr(f, Z1)
    if cur.a_is_minus3:
        # 3*(X1 - Z1^2)*(X1 + Z1^2) saves the a*Z^4 multiplication
        u = mod_mul(f, mod_sub(f, X1, z1z1), mod_add(f, X1, z1z1))
        m = mod_add(f, mod_add(f, u, u), u)
    else:
        xx = mod_sqr(f, X1)
        xx3 = mod_add(f, mod_add(f, xx, xx), xx)
        m = mod_add(f, xx3, mod_mul(f, cur.a.value, mod_sqr(f, z1z1)))
    x3 = mod_sub(f, mod_sqr(f, m), mod_add(f, s, s))
    y8 = mod_add(f, yyyy, yyyy)
    y8 = mod_add(f, y8, y8)
    y8 = mod_add(f, y8, y8)
    y3 = mod_sub(f, mod_mul(f, m, mod_sub(f, s, x3)), y8)
    zy = mod_mul(f, Y1, Z1)
    z3 = mod_add(f, zy, zy)
    return JacobianPoint(cur, FieldElement(x3, f), FieldElement(y3, f), FieldElement(z3, f))


def ec_add_ajj(P: AffinePoint, Q: JacobianPoint) -> JacobianPoint:
    """Mixed addition P + Q: affine first operand, Jacobian second and result.

    Neutral operands, equal points and opposite points are ordinary results,
    detected projectively without any inversion.
    """
    if P.infinity:
        return Q
    if Q.Z.value == 0:
        return lift(P)
    cur = Q.curve
    f = cur.field
    x2, y2 = P.x.value, P.y.value
    X1, Y1, Z1 = Q.X.value, Q.Y.value, Q.Z.value
    z1z1 = mod_sqr(f, Z1)
    u2 = mod_mul(f, x2, z1z1)
    s2 = mod_mul(f, y2, mod_mul(f, Z1, z1z1))
    if u2 == X1:
        if s2 == Y1:
            return ec_dbl_jj(Q)
        # same affine x, different y: the operands are opposite points
        return JacobianPoint.infinity(cur)
    counters().ecadd += 1
    h = mod_sub(f, u2, X1)
    hh = mod_sqr(f, h)
    i = mod_add(f, hh, hh)
    i = mod_add(f, i, i)
    j = mod_mul(f, h, i)
    r = mod_sub(f, s2, Y1)
    r = mod_add(f, r, r)
    v = mod_mul(f, X1, i)
    x3 = mod_sub(f, mod_sub(f, mod_sqr(f, r), j), mod_add(f, v, v))
    yj = mod_mul(f, Y1, j)
    y3 = mod_sub(f, mod_mul(f, r, mod_sub(f, v, x3)), mod_add(f, yj, yj))
    z3 = mod_sub(f, mod_sub(f, mod_sqr(f, mod_add(f, Z1, h)), z1z1), hh)
    return JacobianPoint(cur, FieldElement(x3, f), FieldElement(y3, f), FieldElement(z3, f))


def ec_add_jjj(Q1: JacobianPoint, Q2: JacobianPoint) -> JacobianPoint:
    """Full Jacobian addition, for folding two projective results.

    The multiplication chain only ever adds affine operands into a Jacobian
    accumulator, but ciphertext aggregation must add two accumulators; this
    keeps that path inversion-free.
    """
    if Q1.Z.value == 0:
        return Q2
    if Q2.Z.value == 0:
        return Q1
    cur = Q1.curve
    f = cur.field
    X1, Y1, Z1 = Q1.X.value, Q1.Y.value, Q1.Z.value
    X2, Y2, Z2 = Q2.X.value, Q2.Y.value, Q2.Z.value
    z1z1 = mod_sqr(f, Z1)
    z2z2 = mod_sqr(f, Z2)
    u1 = mod_mul(f, X1, z2z2)
    u2 = mod_mul(f, X2, z1z1)
    s1 = mod_mul(f, Y1, mod_mul(f, Z2, z2z2))
    s2 = mod_mul(f, Y2, mod_mul(f, Z1, z1z1))
    if u1 == u2:
        if s1 == s2:
            return ec_dbl_jj(Q1)
        return JacobianPoint.infinity(cur)
    counters().ecadd += 1
    h = mod_sub(f, u2, u1)
    h2 = mod_add(f, h, h)
    i = mod_sqr(f, h2)
    j = mod_mul(f, h, i)
    r = mod_sub(f, s2, s1)
    r = mod_add(f, r, r)
    v = mod_mul(f, u1, i)
    x3 = mod_sub(f, mod_sub(f, mod_sqr(f, r), j), mod_add(f, v, v))
    sj = mod_mul(f, s1, j)
    y3 = mod_sub(f, mod_mul(f, r, mod_sub(f, v, x3)), mod_add(f, sj, sj))
    zz = mod_sub(f, mod_sub(f, mod_sqr(f, mod_add(f, Z1, Z2)), z1z1), z2z2)
    z3 = mod_mul(f, zz, h)
    return JacobianPoint(cur, FieldElement(x3, f), FieldElement(y3, f), FieldElement(z3, f))


def ec_neg(P: AffinePoint) -> AffinePoint:
    """Mirror a point across the x axis; the identity is its own negative."""
    if P.infinity:
        return P
    f = P.curve.field
    return AffinePoint(P.curve, P.x, FieldElement(mod_sub(f, 0, P.y.value), f))


def ec_eq(Q1: JacobianPoint, Q2: JacobianPoint) -> bool:
    """Projective equality: X1*Z2^2 = X2*Z1^2 and Y1*Z2^3 = Y2*Z1^3."""
    i1, i2 = Q1.Z.value == 0, Q2.Z.value == 0
    if i1 or i2:
        return i1 and i2
    f = Q1.curve.field
    z1z1 = mod_sqr(f, Q1.Z.value)
    z2z2 = mod_sqr(f, Q2.Z.value)
    if mod_mul(f, Q1.X.value, z2z2) != mod_mul(f, Q2.X.value, z1z1):
        return False
    s1 = mod_mul(f, Q1.Y.value, mod_mul(f, Q2.Z.value, z2z2))
    s2 = mod_mul(f, Q2.Y.value, mod_mul(f, Q1.Z.value, z1z1))
    return s1 == s2


def to_affine(Q: JacobianPoint) -> AffinePoint:
    """Normalize with a single inversion; reader-side or serialization only."""
    if Q.Z.value == 0:
        return AffinePoint.identity(Q.curve)
    f = Q.curve.field
    zinv = mod_inv(f, Q.Z.value)
    zi2 = mod_sqr(f, zinv)
    x = mod_mul(f, Q.X.value, zi2)
    y = mod_mul(f, Q.Y.value, mod_mul(f, zi2, zinv))
    return AffinePoint(Q.curve, FieldElement(x, f), FieldElement(y, f))


def _reference_mul(k: int, P: AffinePoint) -> JacobianPoint:
    # construction-time validation only; the production multipliers live in
    # the scalar multiplication module
    R = JacobianPoint.infinity(P.curve)
    for i in range(k.bit_length() - 1, -1, -1):
        R = ec_dbl_jj(R)
        if (k >> i) & 1:
            R = ec_add_ajj(P, R)
    return R


# ---------------------------------------------------------------------------
# Wire encoding: 0x00 for the identity, else 0x04 || X || Y big-endian.

_UNCOMPRESSED = 0x04
_IDENTITY = 0x00


def point_to_bytes(P: AffinePoint) -> bytes:
    if P.infinity:
        return bytes([_IDENTITY])
    blen = P.curve.field.byte_length
    return bytes([_UNCOMPRESSED]) + P.x.value.to_bytes(blen, "big") + P.y.value.to_bytes(blen, "big")


def decode_point(data: bytes, pos: int, curve: CurveParams) -> tuple[AffinePoint, int]:
    """Decode one point starting at pos; returns (point, next position)."""
    if pos >= len(data):
        raise BadEncoding("truncated point")
    tag = data[pos]
    if tag == _IDENTITY:
        return AffinePoint.identity(curve), pos + 1
    if tag != _UNCOMPRESSED:
        raise BadEncoding(f"unknown point tag {tag:#04x}")
    blen = curve.field.byte_length
    end = pos + 1 + 2 * blen
    if end > len(data):
        raise BadEncoding("truncated point payload")
    f = curve.field
    x = int.from_bytes(data[pos + 1:pos + 1 + blen], "big")
    y = int.from_bytes(data[pos + 1 + blen:end], "big")
    if x >= f.p or y >= f.p:
        raise OffCurvePoint("coordinate not below p")
    P = AffinePoint(curve, FieldElement(x, f), FieldElement(y, f))
    if not on_curve(P):
        raise OffCurvePoint("coordinates fail the curve equation")
    return P, end


def point_from_bytes(data: bytes, curve: CurveParams) -> AffinePoint:
    P, end = decode_point(data, 0, curve)
    if end != len(data):
        raise BadEncoding("trailing bytes after point")
    return P


# ---------------------------------------------------------------------------
# Curve configuration files.

def curve_from_config(text: str) -> CurveParams:
    """Build validated parameters from key=value text with hex fields."""
    try:
        raw = parse_kv(text)
    except ValueError as e:
        raise BadConfig(str(e)) from None
    missing = [k for k in _CONFIG_KEYS if k not in raw]
    if missing:
        raise BadConfig(f"missing fields: {', '.join(missing)}")
    vals = {}
    for key in _CONFIG_KEYS:
        if key == "name":
            continue
        try:
            vals[key] = int(raw[key], 16)
        except ValueError:
            raise BadConfig(f"field {key!r} is not hexadecimal") from None
    try:
        fp = FieldParams(vals["n"], vals["c"])
    except ValueError as e:
        raise InvalidCurve(str(e)) from None
    return CurveParams(fp, vals["a"], vals["b"], vals["gx"], vals["gy"],
                       vals["order_n"], raw["name"])


def load_curve(path) -> CurveParams:
    """Read and validate a curve config file."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise BadConfig(f"cannot read curve file: {e}") from None
    return curve_from_config(text)


def builtin_curve(name: str = "secp160r1") -> CurveParams:
    """One of the curve profiles shipped with the package."""
    res = importlib.resources.files("ecagg").joinpath(f"data/{name}.curve")
    try:
        text = res.read_text()
    except (FileNotFoundError, OSError):
        raise BadConfig(f"no built-in curve named {name!r}") from None
    return curve_from_config(text)
