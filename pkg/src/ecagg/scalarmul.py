"""Scalar multiplication: binary baseline, signed recodings, and the
interleaved fixed-base method.

The baseline is the left-to-right double-and-add scan.  Signed recodings cut
the number of point additions: a width-w recoding has only odd digits no
larger than 2**(w-1) - 1, at most one nonzero digit in any w consecutive
positions, and an average nonzero fraction of 1/(1+w).  Negative digits cost
nothing extra because negating a point just mirrors its y coordinate.

For a fixed base the interleaved method also cuts doublings: the scalar is
split into t tracks of n/t bits, each track walks its own shifted base point
2**((i-1)*n/t) * G, and all tracks share a single doubling chain of n/t
steps.  The shifted bases and the odd multiples needed by widths above 2 are
precomputed; beyond the generator itself that is (t-1) + t*(2**(w-2) - 1)
stored points.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

# op_counters/reset_counters re-exported here: they are this module's bench surface
from .counters import op_counters, reset_counters  # noqa: F401
from .curve import (
    AffinePoint,
    CurveParams,
    JacobianPoint,
    decode_point,
    ec_add_ajj,
    ec_dbl_jj,
    ec_eq,
    ec_neg,
    lift,
    on_curve,
    point_to_bytes,
    to_affine,
)
from .errors import BadEncoding, TableMismatch, UnsupportedWidth

MAX_RECODING_WIDTH = 4

_TABLE_MAGIC = b"EPT1"


@dataclass(frozen=True)
class SignedDigits:
    """Little-endian signed digit vector; digits[i] has weight 2**i."""

    digits: tuple[int, ...]
    width: int

    @property
    def value(self) -> int:
        return sum(d << i for i, d in enumerate(self.digits))

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)


def mul_binary(k: int, P: AffinePoint) -> JacobianPoint:
    """Left-to-right double-and-add; the no-recoding baseline."""
    if k < 0:
        raise ValueError("scalar must be non-negative")
    R = JacobianPoint.infinity(P.curve)
    for i in range(k.bit_length() - 1, -1, -1):
        R = ec_dbl_jj(R)
        if (k >> i) & 1:
            R = ec_add_ajj(P, R)
    return R


def mof_recode(k: int) -> SignedDigits:
    """Signed binary recoding with digit[i] = bit[i-1] - bit[i].

    Produces bitlen+1 digits in {-1, 0, +1} whose weighted sum reconstructs
    k; adjacent nonzero digits are legal here, unlike in the windowed form.
    """
    if k < 0:
        raise ValueError("scalar must be non-negative")
    if k == 0:
        return SignedDigits((0,), 1)
    n = k.bit_length()
    digits = []
    for i in range(n + 1):
        below = (k >> (i - 1)) & 1 if i > 0 else 0
        here = (k >> i) & 1
        digits.append(below - here)
    return SignedDigits(tuple(digits), 1)


def wmof_recode(k: int, w: int, max_width: int = MAX_RECODING_WIDTH) -> SignedDigits:
    """Width-w signed recoding with odd digits and w-sparse nonzeros.

    Every nonzero digit is odd with |d| <= 2**(w-1) - 1, any w consecutive
    positions hold at most one nonzero digit, and the digits reconstruct k.
    Emitting an odd digit clears the w-1 positions above it, which is what
    guarantees the sparsity.
    """
    if w < 2 or w > max_width:
        raise UnsupportedWidth(f"width {w} outside [2, {max_width}]")
    if k < 0:
        raise ValueError("scalar must be non-negative")
    if k == 0:
        return SignedDigits((0,), w)
    half = 1 << (w - 1)
    full = half << 1
    digits = []
    while k:
        if k & 1:
            d = k & (full - 1)
            if d > half:
                d -= full
            digits.append(d)
            k -= d
        else:
            digits.append(0)
        k >>= 1
    return SignedDigits(tuple(digits), w)


def split_scalar(k: int, t: int, n_bits: int) -> list[int]:
    """Split k into t tracks of ceil(n_bits/t) bits, least significant first.

    n_bits is padded up so the chunk width divides it evenly.  The top track
    keeps any bits beyond the design width, so recombination
    sum(k_i * 2**((i-1)*chunk)) is exact for every k.
    """
    if t < 1:
        raise ValueError("track count must be at least 1")
    if k < 0:
        raise ValueError("scalar must be non-negative")
    chunk = -(-n_bits // t)
    mask = (1 << chunk) - 1
    parts = [(k >> (i * chunk)) & mask for i in range(t - 1)]
    parts.append(k >> ((t - 1) * chunk))
    return parts


class PrecompTable:
    """Fixed-base table: shifted bases per track plus their odd multiples."""

    __slots__ = ("curve", "t", "w", "n_bits", "chunk", "multiples")

    def __init__(self, curve: CurveParams, t: int, w: int, n_bits: int,
                 multiples: tuple[dict[int, AffinePoint], ...]):
        self.curve = curve
        self.t = t
        self.w = w
        self.n_bits = n_bits
        self.chunk = -(-n_bits // t)
        self.multiples = multiples

    def lookup(self, track: int, digit: int) -> AffinePoint:
        return self.multiples[track][digit]

    def stored_points(self) -> list[AffinePoint]:
        """Every stored point: bases in track order, then odd multiples."""
        pts = [self.multiples[i][1] for i in range(self.t)]
        for i in range(self.t):
            for d in sorted(self.multiples[i]):
                if d != 1:
                    pts.append(self.multiples[i][d])
        return pts

    @property
    def extra_points(self) -> int:
        """Stored points beyond the generator itself."""
        return len(self.stored_points()) - 1


def build_table(G: AffinePoint, t: int, w: int, n_bits: int | None = None) -> PrecompTable:
    """Precompute and validate the fixed-base table for (t, w).

    Bases are chained doublings of G; odd multiples are chained additions.
    Every stored point is checked against an independent binary
    multiplication of its defining scalar before the table is returned.
    """
    if t < 1:
        raise ValueError("track count must be at least 1")
    if w < 2 or w > MAX_RECODING_WIDTH:
        raise UnsupportedWidth(f"width {w} outside [2, {MAX_RECODING_WIDTH}]")
    curve = G.curve
    if n_bits is None:
        n_bits = curve.field.n
    chunk = -(-n_bits // t)
    bases = [G]
    for i in range(1, t):
        R = lift(bases[-1])
        for _ in range(chunk):
            R = ec_dbl_jj(R)
        bases.append(to_affine(R))
    multiples = []
    for i, base in enumerate(bases):
        track = {1: base}
        if w > 2:
            dbl_aff = to_affine(ec_dbl_jj(lift(base)))
            acc = lift(base)
            for d in range(3, 1 << (w - 1), 2):
                acc = ec_add_ajj(dbl_aff, acc)
                track[d] = to_affine(acc)
        multiples.append(track)
        shift = i * chunk
        for d, pt in track.items():
            if not on_curve(pt):
                raise TableMismatch(f"track {i} multiple {d} left the curve")
            if not ec_eq(lift(pt), mul_binary(d << shift, G)):
                raise TableMismatch(f"track {i} multiple {d} disagrees with binary multiplication")
    return PrecompTable(curve, t, w, n_bits, tuple(multiples))


def default_table(curve: CurveParams, t: int = 2, w: int = 2) -> PrecompTable:
    """Shared per-curve table, built on first use."""
    key = (t, w)
    table = curve._tables.get(key)
    if table is None:
        table = curve._tables[key] = build_table(curve.G, t, w)
    return table


def mul_interleave(k: int, table: PrecompTable) -> JacobianPoint:
    """k * G over a precomputed table: t recoded tracks, one doubling chain."""
    if k < 0:
        raise ValueError("scalar must be non-negative")
    if k.bit_length() > table.t * table.chunk + 1:
        raise TableMismatch(
            f"{k.bit_length()}-bit scalar exceeds table designed for {table.n_bits} bits")
    curve = table.curve
    R = JacobianPoint.infinity(curve)
    if k == 0:
        return R
    rows = [wmof_recode(part, table.w).digits if part else ()
            for part in split_scalar(k, table.t, table.n_bits)]
    for j in range(max(len(row) for row in rows) - 1, -1, -1):
        R = ec_dbl_jj(R)
        for i, row in enumerate(rows):
            if j < len(row):
                d = row[j]
                if d:
                    pt = table.lookup(i, d if d > 0 else -d)
                    R = ec_add_ajj(pt if d > 0 else ec_neg(pt), R)
    return R


def mul_signed(k: int, P: AffinePoint, w: int) -> JacobianPoint:
    """k * P scanned over its width-w recoding; no stored precomputation.

    Width 2 needs nothing beyond P and its mirror; wider recodings build
    their few odd multiples on the fly (normalized, so the inversions show
    up in the counters like everything else).
    """
    if k < 0:
        raise ValueError("scalar must be non-negative")
    digits = wmof_recode(k, w).digits
    multiples = {1: P}
    if w > 2 and any(abs(d) > 1 for d in digits):
        dbl_aff = to_affine(ec_dbl_jj(lift(P)))
        acc = lift(P)
        for d in range(3, 1 << (w - 1), 2):
            acc = ec_add_ajj(dbl_aff, acc)
            multiples[d] = to_affine(acc)
    R = JacobianPoint.infinity(P.curve)
    for j in range(len(digits) - 1, -1, -1):
        R = ec_dbl_jj(R)
        d = digits[j]
        if d:
            pt = multiples[d if d > 0 else -d]
            R = ec_add_ajj(pt if d > 0 else ec_neg(pt), R)
    return R


# ---------------------------------------------------------------------------
# Table files: magic, curve name, (t, w, n_bits), point count, then the
# stored points in wire encoding.  Import re-checks every point on load.

def table_to_bytes(table: PrecompTable) -> bytes:
    name = table.curve.name.encode()
    if len(name) > 255:
        raise ValueError("curve name too long")
    pts = table.stored_points()
    head = (_TABLE_MAGIC + bytes([len(name)]) + name
            + bytes([table.t, table.w])
            + table.n_bits.to_bytes(2, "big")
            + len(pts).to_bytes(2, "big"))
    return head + b"".join(point_to_bytes(p) for p in pts)


def table_from_bytes(data: bytes, curve: CurveParams) -> PrecompTable:
    if len(data) < 4 or data[:4] != _TABLE_MAGIC:
        raise BadEncoding("not a precomputation table")
    pos = 4
    try:
        nlen = data[pos]
        name = data[pos + 1:pos + 1 + nlen].decode()
        pos += 1 + nlen
        t, w = data[pos], data[pos + 1]
        n_bits = int.from_bytes(data[pos + 2:pos + 4], "big")
        count = int.from_bytes(data[pos + 4:pos + 6], "big")
        pos += 6
    except (IndexError, UnicodeDecodeError):
        raise BadEncoding("truncated table header") from None
    if name != curve.name:
        raise TableMismatch(f"table built for curve {name!r}, not {curve.name!r}")
    if t < 1 or w < 2 or w > MAX_RECODING_WIDTH:
        raise BadEncoding("table header has invalid (t, w)")
    expected = t + t * ((1 << (w - 2)) - 1)
    if count != expected:
        raise BadEncoding(f"table should hold {expected} points, header says {count}")
    points = []
    for _ in range(count):
        P, pos = decode_point(data, pos, curve)
        if P.infinity:
            raise BadEncoding("table may not contain the identity")
        points.append(P)
    if pos != len(data):
        raise BadEncoding("trailing bytes after table")
    multiples = [{1: points[i]} for i in range(t)]
    idx = t
    for i in range(t):
        for d in range(3, 1 << (w - 1), 2):
            multiples[i][d] = points[idx]
            idx += 1
    return PrecompTable(curve, t, w, n_bits, tuple(multiples))


def save_table(table: PrecompTable, path) -> None:
    Path(path).write_bytes(table_to_bytes(table))


def load_table(path, curve: CurveParams) -> PrecompTable:
    return table_from_bytes(Path(path).read_bytes(), curve)
