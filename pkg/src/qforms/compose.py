"""Gauss composition and oriented class groups.

Composition of classes [q1] * [q2] is defined whenever the contents are
coprime.  It is computed through a concordant pair: representatives

    a1*x^2 + b*x*y + c1*y^2,   a2*x^2 + b*x*y + c2*y^2

with gcd(a1, a2) = 1 and a1, a2 != 0 (equal discriminants then force
a1 | c2 and a2 | c1), whose composite is

    a1*a2*x^2 + b*x*y + ((b^2 - D) / (4*a1*a2))*y^2.

The resulting class is independent of all choices and has content
content(q1) * content(q2).

Class groups are enumerated per discriminant regime: Gauss-reduced forms
of both definiteness signs for D < 0, reduced cycles for positive
non-square D, and the residue parametrization a mod N -> [a x^2 + N x y]
for D = N^2.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from math import gcd, isqrt

from .errors import (
    MismatchedDiscriminant,
    NotADiscriminant,
    NotCoprimeContent,
    NotCoprimeResidue,
    NotOddPositive,
    NotOneMod4,
    NotPrimitive,
    ZeroDiscriminant,
)
from .forms import (
    Form,
    FormClass,
    bar,
    content,
    discriminant,
    form_class,
    is_primitive,
    neg,
    square_residue,
    substitute,
    _ext_gcd,
    _extend_unimodular,
)


# ---------------------------------------------------------------------------
# Concordance and Dirichlet composition


def _height_shells(limit: int):
    # (1, 0) and (0, 1) first, then shells by height in a fixed order
    yield (1, 0)
    yield (0, 1)
    for h in range(1, limit + 1):
        shell = [(x, y) for x in range(-h, h + 1) for y in range(-h, h + 1)
                 if max(abs(x), abs(y)) == h and (x, y) not in ((1, 0), (0, 1))]
        for x, y in shell:
            if gcd(x, y) == 1:
                yield (x, y)


def _with_leading(f: Form, coprime_to: int) -> Form:
    """An equivalent form whose leading coefficient is nonzero and coprime
    to ``coprime_to``; found by searching primitively represented values
    in a fixed height order."""
    for x, y in _height_shells(1 << 12):
        v = f(x, y)
        if v != 0 and gcd(v, coprime_to) == 1:
            if (x, y) == (1, 0):
                return f
            g = _extend_unimodular(x, y)
            return substitute(f, g.m11, g.m12, g.m21, g.m22)
    raise NotCoprimeContent(f"no representation coprime to {coprime_to} found for {f}")


def _translate_middle(f: Form, b: int, D: int) -> Form:
    # b == f.b mod 2*f.a, so the translated form is (a, b, (b^2-D)/(4a))
    return Form(f.a, b, (b * b - D) // (4 * f.a))


def concordant_pair(f1: Form, f2: Form) -> tuple[Form, Form]:
    """Concordant representatives of [f1], [f2] (coprime contents).

    The returned forms share their middle coefficient and have coprime
    nonzero leading coefficients; each leading coefficient divides the
    other form's last coefficient.
    """
    D = discriminant(f1)
    if D == 0 or discriminant(f2) == 0:
        raise ZeroDiscriminant("concordance requires nonzero discriminants")
    if discriminant(f2) != D:
        raise MismatchedDiscriminant(f"{discriminant(f2)} != {D}")
    m1, m2 = content(f1), content(f2)
    if gcd(m1, m2) != 1:
        raise NotCoprimeContent(f"contents {m1}, {m2} are not coprime")
    if f1.a != 0 and f2.a != 0 and f1.b == f2.b and gcd(f1.a, f2.a) == 1:
        return f1, f2  # already concordant
    g1 = _with_leading(f1, m2)
    g2 = _with_leading(f2, g1.a)
    # common middle coefficient: b = b1 mod 2a1 and b = b2 mod 2a2; the
    # parities of b1 and b2 agree (both match D), so CRT applies with
    # gcd(2a1, 2a2) = 2
    a1, a2 = g1.a, g2.a
    _, u, _ = _ext_gcd(2 * a1, 2 * a2)
    diff = g2.b - g1.b
    assert diff % 2 == 0
    b = g1.b + 2 * a1 * u * (diff // 2)
    h1 = _translate_middle(g1, b, D)
    h2 = _translate_middle(g2, b, D)
    assert h2.c % h1.a == 0 and h1.c % h2.a == 0
    return h1, h2


def dirichlet_compose(f1: Form, f2: Form) -> Form:
    """A form in the class [f1] * [f2] (contents must be coprime)."""
    h1, h2 = concordant_pair(f1, f2)
    D = discriminant(f1)
    a = h1.a * h2.a
    return Form(a, h1.b, (h1.b * h1.b - D) // (4 * a))


def class_compose(s1: FormClass, s2: FormClass) -> FormClass:
    """Composition on classes; defined for coprime contents."""
    return FormClass.of(dirichlet_compose(s1.representative, s2.representative))


def class_inverse(s: FormClass) -> FormClass:
    """[q]^-1 = [bar(q)] for primitive classes."""
    if s.content != 1:
        raise NotPrimitive("inversion is defined for primitive classes only")
    return FormClass.of(bar(s.representative))


def class_bar(s: FormClass) -> FormClass:
    """[q] -> [bar(q)], defined for every class."""
    return FormClass.of(bar(s.representative))


def class_neg(s: FormClass) -> FormClass:
    """[q] -> [-q], defined for every class."""
    return FormClass.of(neg(s.representative))


def class_power(s: FormClass, n: int) -> FormClass:
    """s**n for primitive s, n >= 0 (n < 0 via the inverse)."""
    if n < 0:
        return class_power(class_inverse(s), -n)
    result = identity_class(s.disc)
    base = s
    while n:
        if n & 1:
            result = class_compose(result, base)
        n >>= 1
        if n:
            base = class_compose(base, base)
    return result


def identity_class(D: int) -> FormClass:
    """The neutral class of discriminant D."""
    _check_discriminant(D)
    if D % 4 == 1:
        return form_class(1, 1, (1 - D) // 4)
    return form_class(1, 0, -D // 4)


def _check_discriminant(D: int) -> None:
    if D == 0 or D % 4 not in (0, 1):
        raise NotADiscriminant(f"{D} is not a nonzero discriminant")


# ---------------------------------------------------------------------------
# Class group enumeration


@dataclass
class OrientedClassGroup:
    """All primitive classes of one discriminant under composition."""

    disc: int
    elements: list[FormClass]
    identity_index: int
    _table: list[list[int]] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, s: FormClass) -> int:
        return self.elements.index(s)

    def table(self) -> list[list[int]]:
        """The composition table as an index matrix, computed lazily."""
        if self._table is None:
            idx = {s: i for i, s in enumerate(self.elements)}
            self._table = [
                [idx[class_compose(x, y)] for y in self.elements]
                for x in self.elements
            ]
        return self._table

    def element_order(self, s: FormClass) -> int:
        n = 1
        acc = s
        e = self.elements[self.identity_index]
        while acc != e:
            acc = class_compose(acc, s)
            n += 1
        return n

    def to_dict(self) -> dict:
        return {
            "disc": self.disc,
            "elements": [list(s.coeffs()) for s in self.elements],
            "identity": self.identity_index,
            "table": self.table(),
        }

    @staticmethod
    def from_dict(doc: dict) -> "OrientedClassGroup":
        elements = [form_class(*t) for t in doc["elements"]]
        g = OrientedClassGroup(doc["disc"], elements, doc["identity"])
        g._table = doc.get("table")
        return g


def _reduced_definite(D: int) -> list[Form]:
    # positive definite Gauss-reduced primitive forms of discriminant D < 0
    out = []
    amax = isqrt(-D // 3) + 1
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            f = Form(a, b, c)
            if is_primitive(f):
                out.append(f)
    return out


def _reduced_indefinite(D: int) -> list[Form]:
    # all reduced primitive forms: 0 < b < sqrt(D), sqrt(D)-b < 2|a| < sqrt(D)+b
    sq = isqrt(D)
    out = []
    for b in range(1, sq + 1):
        if (b - D) % 2:
            continue
        prod = (b * b - D) // 4  # == a*c < 0
        lo = max(1, (sq - b) // 2)
        hi = (sq + b) // 2 + 1
        for aa in range(lo, hi + 1):
            t = 2 * aa
            if not ((t - b < 0 or (t - b) * (t - b) < D) and (t + b) * (t + b) > D):
                continue
            if prod % aa:
                continue
            for a in (aa, -aa):
                c = prod // a
                f = Form(a, b, c)
                if is_primitive(f):
                    out.append(f)
    return out


def class_group(D: int, cache_dir: str | None = None) -> OrientedClassGroup:
    """The oriented class group of discriminant D (complete, with identity)."""
    _check_discriminant(D)
    if cache_dir is not None:
        cached = _cache_load(cache_dir, D)
        if cached is not None:
            return cached
    if D < 0:
        classes = set()
        for f in _reduced_definite(D):
            classes.add(FormClass.of(f))
            classes.add(FormClass.of(neg(f)))
    else:
        N = isqrt(D)
        if N * N == D:
            if N == 1:
                classes = {form_class(0, 1, 0)}
            else:
                classes = {form_class(a, N, 0) for a in range(1, N) if gcd(a, N) == 1}
        else:
            classes = {FormClass.of(f) for f in _reduced_indefinite(D)}
    elements = sorted(classes, key=lambda s: s.coeffs())
    ident = identity_class(D)
    group = OrientedClassGroup(D, elements, elements.index(ident))
    if cache_dir is not None:
        _cache_store(cache_dir, group)
    return group


# ---------------------------------------------------------------------------
# Special classes and the subgroup they square to


@dataclass(frozen=True)
class SpecialClass:
    """The class of a*x^2 + x*y + c*y^2; always primitive."""

    a: int
    c: int
    cls: FormClass

    @staticmethod
    def of(a: int, c: int) -> "SpecialClass":
        return SpecialClass(a, c, form_class(a, 1, c))

    @property
    def disc(self) -> int:
        return 1 - 4 * self.a * self.c


def divisor_pairs(m: int) -> list[tuple[int, int]]:
    """All (a, c) with a*c = m, ordered by |a| ascending, positive a first.

    For m = 0 the four sign patterns of (1, 0) and (0, 1) stand in for the
    infinitely many factorizations; they exhaust the classes that occur.
    """
    if m == 0:
        return [(1, 0), (-1, 0), (0, 1), (0, -1)]
    out = []
    for d in range(1, abs(m) + 1):
        if abs(m) % d == 0:
            out.append((d, m // d))
            out.append((-d, m // -d))
    return out


def special_classes(D: int) -> list[SpecialClass]:
    """All classes [a x^2 + x y + c y^2] with 1 - 4ac = D, deduplicated."""
    _require_one_mod_4(D)
    m = (1 - D) // 4
    seen = {}
    for a, c in divisor_pairs(m):
        s = SpecialClass.of(a, c)
        if s.cls not in seen:
            seen[s.cls] = s
    return list(seen.values())


def special_square(a: int, c: int) -> FormClass:
    """[a x^2 + x y + c y^2]^2 = [a^2 x^2 + (1 - 2ac) x y + c^2 y^2]."""
    if 1 - 4 * a * c == 0:
        raise ZeroDiscriminant("1 - 4ac must be nonzero")
    return form_class(a * a, 1 - 2 * a * c, c * c)


def _require_one_mod_4(D: int) -> None:
    if D == 0 or D % 4 != 1:
        raise NotOneMod4(f"{D} is not a nonzero integer = 1 mod 4")


def s_plus_subgroup(D: int) -> list[FormClass]:
    """The subgroup of the class group generated by all special squares."""
    _require_one_mod_4(D)
    generators = {special_square(s.a, s.c) for s in special_classes(D)}
    subgroup = {identity_class(D)}
    frontier = list(subgroup)
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = class_compose(x, g)
                if y not in subgroup:
                    subgroup.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(subgroup, key=lambda s: s.coeffs())


# ---------------------------------------------------------------------------
# Square discriminants


def square_normal_form(f: Form) -> tuple[int, int]:
    """(N, a mod N) with [f] = [a x^2 + N x y], for primitive f, disc = N^2."""
    return square_residue(f)


def phi_n(N: int, a: int) -> FormClass:
    """The isomorphism (Z/N)^x -> class group of disc N^2, a -> [a x^2 + N x y]."""
    if N <= 0 or N % 2 == 0:
        raise NotOddPositive(f"N must be odd and positive, got {N}")
    if gcd(a, N) != 1:
        raise NotCoprimeResidue(f"gcd({a}, {N}) != 1")
    if N == 1:
        return form_class(0, 1, 0)
    return form_class(a % N, N, 0)


# ---------------------------------------------------------------------------
# Class-group cache (single writer, atomic replace)


def _cache_path(cache_dir: str, D: int) -> str:
    return os.path.join(cache_dir, f"classgroup_{D}.json")


def _cache_load(cache_dir: str, D: int) -> OrientedClassGroup | None:
    path = _cache_path(cache_dir, D)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("disc") != D:
            return None
        return OrientedClassGroup.from_dict(doc)
    except (OSError, ValueError, KeyError, TypeError):
        return None


def _cache_store(cache_dir: str, group: OrientedClassGroup) -> None:
    try:
        os.makedirs(cache_dir, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(group.to_dict(), fh)
        os.replace(tmp, _cache_path(cache_dir, group.disc))
    except OSError:
        pass  # cache is an optimization only
