"""Clifford group membership, the projections pi and pi-tilde, and the
matrix-algebra isomorphisms M2(C(V,q)) = C(V_U) and M2(C(V,q)) = C(V_{U,F})+.

Groups are infinite over Q, so membership is by predicate; nothing is ever
materialized.
"""

from __future__ import annotations

from . import linalg
from .clifford import CliffordElement, NotInvertible, rho_map
from .quadratic import SpaceMismatch

GROUP_TAGS = frozenset({
    "twisted_center", "gamma", "gamma_pm", "gamma_plus", "gamma_minus",
    "gamma_fx", "gamma_1", "tilde_gamma", "tilde_gamma_fx", "tilde_gamma_1",
})


class NotInCliffordGroup(ValueError):
    pass


class NotInParavectorGroup(ValueError):
    pass


class CMatrix2:
    """A 2x2 matrix over one Clifford algebra."""

    __slots__ = ("a", "b", "c", "d", "_memo")

    def __init__(self, a, b, c, d):
        if not (a.space == b.space == c.space == d.space):
            raise SpaceMismatch("matrix entries over different algebras")
        self.a, self.b, self.c, self.d = a, b, c, d
        self._memo = {}

    @property
    def space(self):
        return self.a.space

    @classmethod
    def identity(cls, space):
        one, zero = CliffordElement.one(space), CliffordElement.zero(space)
        return cls(one, zero, zero, one)

    @classmethod
    def from_entries(cls, space, a, b, c, d):
        def lift(x):
            if isinstance(x, CliffordElement):
                return x
            return CliffordElement.scalar(space, x)
        return cls(lift(a), lift(b), lift(c), lift(d))

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        if not isinstance(other, CMatrix2):
            return NotImplemented
        return CMatrix2(self.a * other.a + self.b * other.c,
                        self.a * other.b + self.b * other.d,
                        self.c * other.a + self.d * other.c,
                        self.c * other.b + self.d * other.d)

    def scale(self, s):
        return CMatrix2(self.a * s, self.b * s, self.c * s, self.d * s)

    def __eq__(self, other):
        return (isinstance(other, CMatrix2) and self.a == other.a
                and self.b == other.b and self.c == other.c
                and self.d == other.d)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return f"CMatrix2({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def matrix_involution(m, kind):
    """The matrix-side operation matching the involution on C(V_U)."""
    a, b, c, d = m.entries()
    if kind == "grade":
        return CMatrix2(a.grade_involution(), -b.grade_involution(),
                        -c.grade_involution(), d.grade_involution())
    if kind == "transpose":
        return CMatrix2(d.conj(), b.conj(), c.conj(), a.conj())
    if kind == "conj":
        return CMatrix2(d.transpose(), -b.transpose(),
                        -c.transpose(), a.transpose())
    raise ValueError(f"unknown involution {kind!r}")


# -- group membership ---------------------------------------------------------


def _conjugation_stable(x, tests, want):
    """x t grade(x)^-1 lands in `want` ("vector" or "paravector") for all t."""
    try:
        ginv = x.inverse().grade_involution()
    except NotInvertible:
        return False
    for t in tests:
        img = x * t * ginv
        if want == "vector":
            if not img.is_vector():
                return False
        elif not img.is_paravector():
            return False
    return True


def _vector_tests(space):
    return [CliffordElement.monomial(space, (i,)) for i in range(space.dim)]


def _paravector_tests(space):
    return [CliffordElement.one(space)] + _vector_tests(space)


def in_group(x, tag):
    """Membership in the named subgroup of C(V, q)^x."""
    if tag not in GROUP_TAGS:
        raise ValueError(f"unknown group tag {tag!r}")
    space = x.space
    if tag == "twisted_center":
        xg = x.grade_involution()
        for v in _vector_tests(space):
            if x * v != v * xg:
                return False
        return x.is_invertible()
    if tag.startswith("tilde"):
        base = _conjugation_stable(x, _paravector_tests(space), "paravector")
    else:
        base = _conjugation_stable(x, _vector_tests(space), "vector")
    if not base:
        return False
    if tag in ("gamma", "tilde_gamma"):
        return True
    if tag in ("gamma_fx", "tilde_gamma_fx"):
        n = x.norm()
        return n.is_scalar() and not n.scalar_part().is_zero()
    if tag in ("gamma_1", "tilde_gamma_1"):
        return x.norm() == CliffordElement.one(space)
    if tag == "gamma_plus":
        return x.is_even()
    if tag == "gamma_minus":
        return x.is_odd()
    if tag == "gamma_pm":
        return x.is_even() or x.is_odd()
    raise AssertionError(tag)


def pi(x):
    """The orthogonal map v -> x v grade(x)^-1 as a matrix on V."""
    space = x.space
    try:
        ginv = x.inverse().grade_involution()
    except NotInvertible as exc:
        raise NotInCliffordGroup(str(exc)) from exc
    cols = []
    for v in _vector_tests(space):
        img = x * v * ginv
        if not img.is_vector():
            raise NotInCliffordGroup(f"conjugation leaves V: {x!r}")
        cols.append(img.vector_coords().coords)
    return [[cols[j][i] for j in range(space.dim)] for i in range(space.dim)]


def pi_tilde(x):
    """The special-orthogonal map on F + V in the basis (1, e_1..e_n)."""
    space = x.space
    try:
        ginv = x.inverse().grade_involution()
    except NotInvertible as exc:
        raise NotInParavectorGroup(str(exc)) from exc
    cols = []
    for t in _paravector_tests(space):
        img = x * t * ginv
        if not img.is_paravector():
            raise NotInParavectorGroup(f"conjugation leaves F+V: {x!r}")
        a, v = img.paravector_parts()
        cols.append((a,) + v.coords)
    n = space.dim + 1
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def r1_matrix(space):
    """The reflection in 1 on F + V: negate the scalar slot."""
    n = space.dim + 1
    mat = linalg.identity_matrix(n, space.field)
    mat[0][0] = -mat[0][0]
    return mat


# -- M2(C) = C(V_U) ------------------------------------------------------------


def _hyperbolic_blocks(vu):
    blocks = vu._ext_cache.get("cu_blocks")
    if blocks is None:
        e = CliffordElement.monomial(vu, (vu.labels["e"],))
        f = CliffordElement.monomial(vu, (vu.labels["f"],))
        blocks = (e, f, e * f, f * e)
        vu._ext_cache["cu_blocks"] = blocks
    return blocks


def matrix_to_CU(m, vu=None):
    """(a b; c d) -> a ef + b e + c' f + d' fe inside C(V_U)."""
    if vu is None:
        vu = m.space.extend_hyperbolic()
    e, f, ef, fe = _hyperbolic_blocks(vu)
    a, b, c, d = (x.embed(vu) for x in m.entries())
    return (a * ef + b * e + c.grade_involution() * f
            + d.grade_involution() * fe)


def CU_to_matrix(psi, base):
    """Peel the four C(V, q) components out of an element of C(V_U)."""
    n = base.dim
    e_idx, f_idx = n, n + 1
    field = base.field
    raw = {frozenset(): {}, frozenset({e_idx}): {},
           frozenset({f_idx}): {}, frozenset({e_idx, f_idx}): {}}
    for s, c in psi.coeffs.items():
        content = frozenset(i for i in s if i >= n)
        rest = tuple(i for i in s if i < n)
        if content not in raw:
            raise ValueError("element does not lie in the embedded C(V_U)")
        raw[content][rest] = c
    sign = lambda s: field.one if len(s) % 2 == 0 else -field.one
    delta = {s: sign(s) * c for s, c in raw[frozenset()].items()}
    beta = dict(raw[frozenset({e_idx})])
    gamma = {s: sign(s) * c for s, c in raw[frozenset({f_idx})].items()}
    alpha = dict(raw[frozenset({e_idx, f_idx})])
    for s, c in raw[frozenset()].items():
        alpha[s] = alpha.get(s, field.zero) + c
    return CMatrix2(CliffordElement(base, alpha), CliffordElement(base, beta),
                    CliffordElement(base, gamma), CliffordElement(base, delta))


# -- M2(C) = C(V_{U,F})+ ---------------------------------------------------------


def _hyperbolic_rho_blocks(vuf):
    blocks = vuf._ext_cache.get("cuf_blocks")
    if blocks is None:
        e = CliffordElement.monomial(vuf, (vuf.labels["e"],))
        f = CliffordElement.monomial(vuf, (vuf.labels["f"],))
        r = CliffordElement.monomial(vuf, (vuf.labels["rho"],))
        blocks = (e * f, e * r, f * r, f * e)
        vuf._ext_cache["cuf_blocks"] = blocks
    return blocks


def matrix_to_CUF(m, vuf=None):
    """(a b; c d) -> a_rho ef + b_rho e rho + c'_rho f rho + d'_rho fe."""
    if vuf is None:
        vuf = m.space.extend_hyperbolic_rho()
    ef, er, fr, fe = _hyperbolic_rho_blocks(vuf)
    a, b, c, d = m.entries()
    return (rho_map(a, vuf) * ef + rho_map(b, vuf) * er
            + rho_map(c.grade_involution(), vuf) * fr
            + rho_map(d.grade_involution(), vuf) * fe)


def CUF_to_matrix(psi, base):
    """Peel the four components out of an element of C(V_{U,F})+."""
    if not psi.is_even():
        raise ValueError("element is not in the even subalgebra")
    n = base.dim
    e_idx, f_idx, r_idx = n, n + 1, n + 2
    field = base.field
    beta, gamma, delta = {}, {}, {}
    raw_ef, raw_efr = {}, {}
    for s, c in psi.coeffs.items():
        content = frozenset(i for i in s if i >= n)
        rest = tuple(i for i in s if i < n)
        if content == frozenset():
            delta[rest] = c
        elif content == frozenset({r_idx}):
            delta[rest] = -c
        elif content in (frozenset({e_idx}), frozenset({e_idx, r_idx})):
            beta[rest] = c
        elif content == frozenset({f_idx}):
            gamma[rest] = -c
        elif content == frozenset({f_idx, r_idx}):
            gamma[rest] = c
        elif content == frozenset({e_idx, f_idx}):
            raw_ef[rest] = c
        elif content == frozenset({e_idx, f_idx, r_idx}):
            raw_efr[rest] = c
        else:
            raise ValueError("element does not match the block decomposition")
    # alpha_S = raw_ef(S) + delta_S for even S, raw_efr(S) - delta_S for odd S
    alpha = {}
    for s in set(raw_ef) | set(raw_efr) | set(delta):
        d = delta.get(s, field.zero)
        if len(s) % 2 == 0:
            alpha[s] = raw_ef.get(s, field.zero) + d
        else:
            alpha[s] = raw_efr.get(s, field.zero) - d
    return CMatrix2(CliffordElement(base, alpha), CliffordElement(base, beta),
                    CliffordElement(base, gamma), CliffordElement(base, delta))
