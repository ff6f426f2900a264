"""Shared fixtures and independent oracles.

The oracle functions below work on plain integer pairs with textbook affine
slope formulas and pow()-based inversion; they share no code with the
package's projective formulas or its substitution-based reduction, which is
what makes them usable as a second route for every group-law check.
"""

from __future__ import annotations

import random

import pytest

from ecagg.curve import AffinePoint, CurveParams, builtin_curve, to_affine
from ecagg.field import FieldElement, FieldParams

# ---------------------------------------------------------------------------
# Affine-formula oracle on integer tuples; None is the identity.


def o_add(P, Q, p, a):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + a) * pow(2 * y1, p - 2, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, p - 2, p) % p
    x3 = (lam * lam - x1 - x2) % p
    y3 = (lam * (x1 - x3) - y1) % p
    return (x3, y3)


def o_mul(k, P, p, a):
    R = None
    while k:
        if k & 1:
            R = o_add(R, P, p, a)
        P = o_add(P, P, p, a)
        k >>= 1
    return R


def o_of(curve):
    """(p, a) pair for feeding the oracle from CurveParams."""
    return curve.field.p, curve.a.value


def as_tuple(P):
    """AffinePoint -> oracle tuple."""
    if P.infinity:
        return None
    return (P.x.value, P.y.value)


def jac_tuple(Q):
    """JacobianPoint -> oracle tuple, normalizing once."""
    return as_tuple(to_affine(Q))


def as_point(T, curve):
    """Oracle tuple -> AffinePoint."""
    if T is None:
        return AffinePoint.identity(curve)
    f = curve.field
    return AffinePoint(curve, FieldElement(T[0], f), FieldElement(T[1], f))


def oracle_points(curve, count, rng, start_bits=48):
    """Distinct curve points as oracle tuples: a chain k*G, (k+1)*G, ..."""
    p, a = o_of(curve)
    g = as_tuple(curve.G)
    pts = [o_mul(rng.getrandbits(start_bits) | 1, g, p, a)]
    while len(pts) < count:
        pts.append(o_add(pts[-1], g, p, a))
    return pts


# ---------------------------------------------------------------------------
# Fixtures.

SECP160R1_P = 2**160 - 2**31 - 1

# Small pseudo-Mersenne curve for exhaustive runs: p = 2**13 - 1, a = p - 3,
# b = 3, generator (1, 1), group order 8221 (prime).  Found by point counting;
# the CurveParams constructor re-validates all of it on every test session.
TINY = {"n": 13, "c": 1, "a": 8188, "b": 3, "gx": 1, "gy": 1, "order": 8221}


@pytest.fixture(scope="session")
def curve():
    return builtin_curve()


@pytest.fixture(scope="session")
def tiny_curve():
    fp = FieldParams(TINY["n"], TINY["c"])
    return CurveParams(fp, TINY["a"], TINY["b"], TINY["gx"], TINY["gy"],
                       TINY["order"], "tiny13")


@pytest.fixture(scope="session")
def fp160():
    return FieldParams(160, 2**31 + 1)


@pytest.fixture
def rng():
    return random.Random(0xEC2026)
