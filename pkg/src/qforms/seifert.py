"""Realization and non-isotopy criteria for pairs of Seifert forms.

Everything here is exact arithmetic on classes of discriminant
D = 1 mod 4 (the knot-determinant convention).  A pair of classes
(s1, s2) is *realizable by a disjoint genus-one pair* iff some special
class t = [a x^2 + x y + c y^2] with 1 - 4ac = D satisfies
t^2 * s1 = s2; witnesses (a, c) are searched over the divisor pairs of
(1 - D)/4 in a fixed order (|a| ascending, positive before negative).

A realizable pair is *B^4-distinguishable* iff s1 is neither s2 nor
bar(s2): the double branched covers of the pushed-in surfaces then have
non-isometric intersection forms.
"""

from __future__ import annotations

from math import isqrt

from .compose import (
    class_bar,
    class_compose,
    class_group,
    divisor_pairs,
    identity_class,
    phi_n,
    special_square,
    _require_one_mod_4,
)
from .errors import MismatchedDiscriminant, NotCoprime, NotNegative, NotOddPositive, OutOfRange
from .forms import Form, FormClass, form_class, _ext_gcd
from .lattice import KleinPair, Mat2, is_symplectic, klein_inverse, q_of_plane, symplectic_complement

Witness = tuple[int, int]


def _special_witnesses(D: int) -> list[Witness]:
    _require_one_mod_4(D)
    return divisor_pairs((1 - D) // 4)


def realizable_disjoint_pair(s1: FormClass, s2: FormClass) -> tuple[bool, Witness | None]:
    """Does some special square carry s1 to s2?  Returns the first witness."""
    if s1.disc != s2.disc:
        raise MismatchedDiscriminant(f"{s1.disc} != {s2.disc}")
    D = s1.disc
    for a, c in _special_witnesses(D):
        t2 = special_square(a, c)
        if class_compose(t2, s1) == s2:
            return True, (a, c)
    return False, None


def nonisotopic_exists(D: int) -> tuple[bool, Witness | None]:
    """Is some special square non-trivial (equivalently, S+_D non-trivial)?"""
    ident = identity_class(D)
    for a, c in _special_witnesses(D):
        if special_square(a, c) != ident:
            return True, (a, c)
    return False, None


def prescribed_form_exists(D: int) -> tuple[bool, Witness | None]:
    """Does some special class have non-trivial fourth power?

    When it does, one of the two disjoint surfaces can be prescribed an
    arbitrary Seifert form of discriminant D.
    """
    ident = identity_class(D)
    for a, c in _special_witnesses(D):
        t2 = special_square(a, c)
        if class_compose(t2, t2) != ident:
            return True, (a, c)
    return False, None


def _prime_power_k2(m: int) -> bool:
    """m in {1} union {p, p^2 : p prime}."""
    if m == 1:
        return True
    if m < 1:
        return False
    if _is_prime(m):
        return True
    r = isqrt(m)
    return r * r == m and _is_prime(r)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def negdisc_criterion(D: int) -> bool:
    """For D < 0: a non-isotopic pair exists iff (1-D)/4 is not 1, p or p^2."""
    _require_one_mod_4(D)
    if D >= 0:
        raise NotNegative(f"criterion applies to negative discriminants, got {D}")
    return not _prime_power_k2((1 - D) // 4)


def squaredisc_criterion(N: int) -> bool:
    """For odd N > 0: a knot with determinant N^2 and a non-isotopic pair
    of Seifert surfaces exists iff N > 3."""
    if N <= 0 or N % 2 == 0:
        raise NotOddPositive(f"N must be odd and positive, got {N}")
    result = N > 3
    # cross-check through the explicit isomorphism: [Q_{N,2}]^2 = phi(4)
    assert result == (phi_n(N, 4 % N if N > 1 else 1) != identity_class(N * N))
    return result


def b4_distinguishable(s1: FormClass, s2: FormClass) -> bool:
    """s1 not in {s2, bar(s2)}: pushed-in surfaces are non-isotopic in B^4."""
    if s1.disc != s2.disc:
        raise MismatchedDiscriminant(f"{s1.disc} != {s2.disc}")
    return s1 != s2 and s1 != class_bar(s2)


def enumerate_realizable_pairs(
    D: int, include_nonprimitive: bool = False, cache_dir: str | None = None
) -> list[dict]:
    """All unordered realizable pairs {s1, s2} over classes of disc D.

    Primitive classes by default; with ``include_nonprimitive`` the
    classes m * (class of disc D/m^2) for m >= 2 join the list.  Output
    is sorted by the canonical representatives of the pair.
    """
    _require_one_mod_4(D)
    classes = list(class_group(D, cache_dir=cache_dir).elements)
    if include_nonprimitive:
        m = 3
        while m * m <= abs(D):
            if D % (m * m) == 0 and (D // (m * m)) % 4 == 1:
                for s in class_group(D // (m * m), cache_dir=cache_dir).elements:
                    a, b, c = s.coeffs()
                    classes.append(form_class(m * a, m * b, m * c))
            m += 2
        classes.sort(key=lambda s: s.coeffs())
    out = []
    for i, s1 in enumerate(classes):
        for s2 in classes[i:]:
            found, _ = realizable_disjoint_pair(s1, s2)
            if found:
                out.append({
                    "s1": list(s1.coeffs()),
                    "s2": list(s2.coeffs()),
                    "b4_distinguishable": b4_distinguishable(s1, s2),
                })
    out.sort(key=lambda d: (d["s1"], d["s2"]))
    return out


def feher_klein_pair(p: int, q: int, k: int, n: int) -> tuple[KleinPair, Form, Form]:
    """The Klein pair of the two-parameter family of disjoint surface pairs.

    For coprime p, q > 1, n >= 1 and any k, the plane of the pair

        a1 = [[-1+2kp, 2q], [-2np, 1-2kp]],
        a2 = [[1, 2p], [2(k^2 p - k - n q), -1]]

    is symplectic and realizes [q_L] = [pq, 1-2kp, n] and
    [q_Lpperp] = [pq, 2kp-1-2qr, rs-2kr+n], where ps - qr = 1.  Both
    identities are checked against the plane computation before returning.
    """
    if p <= 1 or q <= 1:
        raise OutOfRange("p and q must both exceed 1")
    if n < 1:
        raise OutOfRange("n must be at least 1")
    g, s, negr = _ext_gcd(p, q)
    if g != 1:
        raise NotCoprime(f"gcd({p}, {q}) = {g}")
    r = -negr  # p*s - q*r = 1
    assert p * s - q * r == 1
    a1 = Mat2(-1 + 2 * k * p, 2 * q, -2 * n * p, 1 - 2 * k * p)
    a2 = Mat2(1, 2 * p, 2 * (k * k * p - k - n * q), -1)
    pair = KleinPair(a1, a2)
    target_l = Form(p * q, 1 - 2 * k * p, n)
    target_pp = Form(p * q, 2 * k * p - 1 - 2 * q * r, r * s - 2 * k * r + n)
    plane = klein_inverse(pair)
    assert is_symplectic(plane)
    assert FormClass.of(q_of_plane(plane)) == FormClass.of(target_l)
    assert FormClass.of(q_of_plane(symplectic_complement(plane))) == FormClass.of(target_pp)
    return pair, target_l, target_pp
