"""Arithmetic in GF(p) for primes of the shape p = 2**n - c with small c.

The prime's shape makes reduction cheap: 2**n is congruent to c, so the high
half of any value can be folded into the low half (r_h*2**n + r_l becomes
r_h*c + r_l) until the result fits in n bits.  Modular addition uses the same
idea: instead of subtracting p after an overflow, add c and drop the carry
bit.  No operation here ever divides by p.

Values are carried as Python integers; the fixed-width little-endian limb
view required by the wire format is derived on demand.  Correctness is
word-size independent and the test suite checks it against plain big-integer
modular arithmetic.
"""

from __future__ import annotations

import random

from .counters import counters
from .errors import BadLength, NonCanonical, ZeroInverse


def add_correction_count() -> int:
    """How often this thread's modular additions needed the carry fix-up."""
    return counters().add_corrections


def last_reduce_passes() -> int:
    """Substitution passes taken by this thread's most recent fe_reduce."""
    return counters().last_reduce_passes


def _is_probable_prime(m: int, rounds: int = 32) -> bool:
    """Miller-Rabin with bases drawn from a generator seeded by m itself."""
    if m < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % q == 0:
            return m == q
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(m)
    for _ in range(rounds):
        a = rng.randrange(2, m - 1)
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


class FieldParams:
    """The prime p = 2**n - c plus everything derived from its shape."""

    __slots__ = ("n", "c", "p", "mask", "limb_bits", "limb_count", "byte_length")

    def __init__(self, n: int, c: int, limb_bits: int = 32):
        if n < 4:
            raise ValueError("bit length n must be at least 4")
        if c < 1:
            raise ValueError("c must be positive")
        if c >= 1 << (n // 2):
            # two substitution passes only fold the high half fast enough
            # when c stays below 2**(n/2)
            raise ValueError("c must be below 2**(n/2)")
        p = (1 << n) - c
        if not _is_probable_prime(p):
            raise ValueError(f"2**{n} - {c} is not prime")
        self.n = n
        self.c = c
        self.p = p
        self.mask = (1 << n) - 1
        self.limb_bits = limb_bits
        self.limb_count = -(-n // limb_bits)
        self.byte_length = -(-n // 8)

    def __eq__(self, other):
        return isinstance(other, FieldParams) and other.p == self.p

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return f"FieldParams(n={self.n}, c={self.c:#x})"


def _limb_view(value: int, count: int, width: int) -> tuple[int, ...]:
    m = (1 << width) - 1
    return tuple((value >> (i * width)) & m for i in range(count))


class FieldElement:
    """A reduced residue in [0, p).  Immutable."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: FieldParams):
        if not 0 <= value < field.p:
            raise NonCanonical(f"value {value:#x} outside [0, p)")
        self.value = value
        self.field = field

    @property
    def limbs(self) -> tuple[int, ...]:
        """Little-endian limbs, always field.limb_count of them."""
        return _limb_view(self.value, self.field.limb_count, self.field.limb_bits)

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and other.value == self.value
            and other.field.p == self.field.p
        )

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElement({self.value:#x})"


class WideProduct:
    """An unreduced product, at most 2n bits wide."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: FieldParams):
        if not 0 <= value < 1 << (2 * field.n):
            raise ValueError("wide value outside [0, 2**(2n))")
        self.value = value
        self.field = field

    @property
    def limbs(self) -> tuple[int, ...]:
        return _limb_view(self.value, 2 * self.field.limb_count, self.field.limb_bits)

    def __repr__(self):
        return f"WideProduct({self.value:#x})"


def _same_field(a: FieldElement, b: FieldElement):
    if a.field is not b.field and a.field.p != b.field.p:
        raise ValueError("operands from different fields")


# ---------------------------------------------------------------------------
# Value-level core.  These take plain integers already known to be canonical;
# the FieldElement wrappers below add the boundary checks.  The curve module
# uses these directly in its formulas.

def mod_add(f: FieldParams, x: int, y: int) -> int:
    """(x + y) mod p via the add-c correction; never subtracts p."""
    r = x + y
    if (r >> f.n) or r >= f.p:
        # overflow of the n-bit word or r >= p: add c, drop the 2**n carry
        counters().add_corrections += 1
        r = (r + f.c) & f.mask
    return r


def mod_sub(f: FieldParams, x: int, y: int) -> int:
    """(x - y) mod p; a borrow wraps at 2**n and then pays back c."""
    r = x - y
    if r < 0:
        r = (r & f.mask) - f.c
    return r


def mod_reduce(f: FieldParams, r: int) -> int:
    """Reduce a value below 2**(2n) by substituting 2**n -> c."""
    n, c, mask = f.n, f.c, f.mask
    passes = 0
    while r >> n:
        r = (r >> n) * c + (r & mask)
        passes += 1
    if r >= f.p:
        r = (r + c) & mask
    counters().last_reduce_passes = passes
    return r


def mod_mul(f: FieldParams, x: int, y: int) -> int:
    # same loop as mod_reduce, inlined: this is the hottest path in the library
    counters().fe_mul += 1
    r = x * y
    n, c = f.n, f.c
    while r >> n:
        r = (r >> n) * c + (r & f.mask)
    if r >= f.p:
        r = (r + c) & f.mask
    return r


def mod_sqr(f: FieldParams, x: int) -> int:
    # deliberate delegation: a dedicated squaring can be slotted in later
    return mod_mul(f, x, x)


def mod_inv(f: FieldParams, x: int) -> int:
    """Inverse by exponentiation with p - 2; reader-side cost only."""
    if x == 0:
        raise ZeroInverse("zero has no inverse")
    counters().fe_inv += 1
    return pow(x, f.p - 2, f.p)


# ---------------------------------------------------------------------------
# Element-level API.

def fe_from_int(v: int, params: FieldParams) -> FieldElement:
    """Canonical residue of any non-negative integer."""
    if v < 0:
        raise ValueError("negative value")
    return FieldElement(v % params.p, params)


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return FieldElement(mod_add(a.field, a.value, b.value), a.field)


def fe_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return FieldElement(mod_sub(a.field, a.value, b.value), a.field)


def fe_mul_raw(a: FieldElement, b: FieldElement) -> WideProduct:
    """Exact 2n-bit product, not reduced."""
    _same_field(a, b)
    return WideProduct(a.value * b.value, a.field)


def fe_reduce(r: WideProduct) -> FieldElement:
    return FieldElement(mod_reduce(r.field, r.value), r.field)


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    return FieldElement(mod_mul(a.field, a.value, b.value), a.field)


def fe_square(a: FieldElement) -> FieldElement:
    return FieldElement(mod_sqr(a.field, a.value), a.field)


def fe_inv(a: FieldElement) -> FieldElement:
    return FieldElement(mod_inv(a.field, a.value), a.field)


def fe_to_bytes(a: FieldElement) -> bytes:
    """Fixed-length big-endian encoding, ceil(n/8) bytes."""
    return a.value.to_bytes(a.field.byte_length, "big")


def fe_from_bytes(data: bytes, params: FieldParams) -> FieldElement:
    if len(data) != params.byte_length:
        raise BadLength(f"expected {params.byte_length} bytes, got {len(data)}")
    v = int.from_bytes(data, "big")
    if v >= params.p:
        raise NonCanonical("encoded value not below p")
    return FieldElement(v, params)
