"""Vahlen and paravector Vahlen groups: the four equivalent membership
conditions, the pseudo-determinant, generators, a seeded sampler, and
exhaustive finite-field verification of the condition equivalences.

The default membership test is Condition 3 (cheapest); the other three are
kept for cross-verification, and the diagnostic mode reports disagreements
instead of silently picking a side.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .clifford import (CliffordElement, element_from_json, element_to_json,
                       enumerate_elements)
from .fields import InfiniteField, PrimeField, Rationals
from .groups import CMatrix2, in_group, matrix_to_CU, matrix_to_CUF
from .quadratic import Vector

KINDS = ("vector", "paravector")


class NotVahlen(ValueError):
    """The matrix fails the Vahlen membership conditions."""


class TooLarge(ValueError):
    """An exhaustive run would exceed the size guard."""


def _check_kind(kind):
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


def _tests(space, kind):
    vecs = [CliffordElement.monomial(space, (i,)) for i in range(space.dim)]
    if kind == "paravector":
        return [CliffordElement.one(space)] + vecs
    return vecs


def _lands(x, kind):
    return x.is_paravector() if kind == "paravector" else x.is_vector()


def in_T(x, kind):
    """x V x* in V (resp. x (F+V) x* in F+V) and N(x) scalar."""
    _check_kind(kind)
    if not x.norm().is_scalar():
        return False
    xt = x.transpose()
    return all(_lands(x * t * xt, kind) for t in _tests(x.space, kind))


def _pseudo_det_element(m):
    return m.a * m.d.transpose() - m.b * m.c.transpose()


def _det_ok(m):
    det = _pseudo_det_element(m)
    return det.is_scalar() and not det.scalar_part().is_zero()


def _condition1(m, kind):
    a, b, c, d = m.entries()
    for x in (a, b, c, d):
        if not x.norm().is_scalar():
            return False
    if a * b.transpose() != b * a.transpose():
        return False
    if c * d.transpose() != d * c.transpose():
        return False
    if not _det_ok(m):
        return False
    if not _lands(a * c.conj(), kind) or not _lands(b * d.conj(), kind):
        return False
    ab, bb, cb, db = a.conj(), b.conj(), c.conj(), d.conj()
    for t in _tests(m.space, kind):
        tb = t.conj()
        if not (a * t * bb + b * tb * ab).is_scalar():
            return False
        if not (c * t * db + d * tb * cb).is_scalar():
            return False
        if not _lands(a * t * db + b * tb * cb, kind):
            return False
    return True


def _condition2(m, kind):
    a, b, c, d = m.entries()
    if not all(in_T(x, kind) for x in (a, b, c, d)):
        return False
    if not _det_ok(m):
        return False
    return (_lands(a * b.transpose(), kind)
            and _lands(d * c.transpose(), kind))


def _condition3(m, kind):
    a, b, c, d = m.entries()
    if not all(in_T(x, kind) for x in (a, b, c, d)):
        return False
    if not _det_ok(m):
        return False
    return (_lands(a.conj() * b, kind) and _lands(d.conj() * c, kind))


def _condition4(m, kind):
    if kind == "vector":
        return in_group(matrix_to_CU(m), "gamma_fx")
    psi = matrix_to_CUF(m)
    return psi.is_even() and in_group(psi, "gamma_fx")


_CONDITIONS = {1: _condition1, 2: _condition2, 3: _condition3, 4: _condition4}


def check_condition(m, kind, which):
    """Evaluate one of the four membership conditions verbatim."""
    _check_kind(kind)
    return _CONDITIONS[which](m, kind)


def is_vahlen(m, kind):
    _check_kind(kind)
    hit = m._memo.get(("vahlen", kind))
    if hit is None:
        hit = _condition3(m, kind)
        m._memo[("vahlen", kind)] = hit
    return hit


def condition3_failure(m, kind):
    """Name of the first failed clause of Condition 3, or None."""
    _check_kind(kind)
    names = "alpha", "beta", "gamma", "delta"
    for name, x in zip(names, m.entries()):
        if not in_T(x, kind):
            return f"entry {name} not in T"
    if not _det_ok(m):
        return "pseudo-determinant not a nonzero scalar"
    target = "V" if kind == "vector" else "F+V"
    if not _lands(m.a.conj() * m.b, kind):
        return f"conj(alpha)*beta not in {target}"
    if not _lands(m.d.conj() * m.c, kind):
        return f"conj(delta)*gamma not in {target}"
    return None


def diagnose(m, kind):
    """All four condition verdicts plus their agreement flag."""
    _check_kind(kind)
    verdicts = {which: fn(m, kind) for which, fn in _CONDITIONS.items()}
    verdicts["agree"] = len(set(verdicts.values())) == 1
    return verdicts


def pseudo_det(m, kind):
    """The scalar alpha delta* - beta gamma*; multiplicative on the group."""
    if not is_vahlen(m, kind):
        raise NotVahlen(condition3_failure(m, kind) or "not Vahlen")
    return _pseudo_det_element(m).to_scalar()


def matrix_inverse(m, kind):
    """(delta*, -beta*; -gamma*, alpha*) over the pseudo-determinant."""
    det = pseudo_det(m, kind)
    inv = det.inverse()
    return CMatrix2(m.d.transpose() * inv, -(m.b.transpose() * inv),
                    -(m.c.transpose() * inv), m.a.transpose() * inv)


# -- generators --------------------------------------------------------------


def _as_translation_element(space, kind, xi):
    if isinstance(xi, Vector):
        xi = CliffordElement.from_vector(xi)
    if kind == "vector":
        if not xi.is_vector():
            raise ValueError("translation argument must lie in V")
    elif not xi.is_paravector():
        raise ValueError("translation argument must lie in F+V")
    return xi


def translation(space, kind, xi):
    xi = _as_translation_element(space, kind, xi)
    one, zero = CliffordElement.one(space), CliffordElement.zero(space)
    return CMatrix2(one, xi, zero, one)


def dilation(space, a):
    a = space.field.element(a)
    if a.is_zero():
        raise ValueError("dilation scale must be nonzero")
    one, zero = CliffordElement.one(space), CliffordElement.zero(space)
    return CMatrix2(CliffordElement.scalar(space, a), zero, zero, one)


def weyl(space):
    one, zero = CliffordElement.one(space), CliffordElement.zero(space)
    return CMatrix2(zero, -one, one, zero)


def vector_scalar(space, v):
    if isinstance(v, Vector):
        v = CliffordElement.from_vector(v)
    if not v.is_vector():
        raise ValueError("vector_scalar argument must lie in V")
    if v.vector_coords().q().is_zero():
        raise ValueError("vector_scalar requires q(v) != 0")
    zero = CliffordElement.zero(space)
    return CMatrix2(v, zero, zero, v)


def generator(space, kind, which, arg=None):
    _check_kind(kind)
    if which == "translation":
        return translation(space, kind, arg)
    if which == "dilation":
        return dilation(space, arg)
    if which == "weyl":
        return weyl(space)
    if which == "vector_scalar":
        return vector_scalar(space, arg)
    raise ValueError(f"unknown generator {which!r}")


# -- seeded sampler ------------------------------------------------------------

_SMALL_HEIGHT = (0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2))
_SMALL_NONZERO = (1, -1, 2, -2, Fraction(1, 2), 3)


def _random_scalar(space, rng, nonzero=False):
    field = space.field
    if isinstance(field, Rationals):
        pool = _SMALL_NONZERO if nonzero else _SMALL_HEIGHT
        return field.element(rng.choice(pool))
    while True:
        s = field.element(rng.randrange(field.modulus))
        if not (nonzero and s.is_zero()):
            return s


def random_vector(space, rng):
    return space.vector([_random_scalar(space, rng)
                         for _ in range(space.dim)])


def random_paravector(space, rng):
    return CliffordElement.paravector(space, _random_scalar(space, rng),
                                      random_vector(space, rng))


def _random_anisotropic_vector(space, rng, tries=20):
    for _ in range(tries):
        v = random_vector(space, rng)
        if not v.q().is_zero():
            return v
    return None


def random_generator(space, kind, rng):
    """One random generator; weights 40/20/20/20 translation/dilation/weyl/
    vector_scalar, falling back to translation when no anisotropic vector
    turns up (totally isotropic forms)."""
    roll = rng.random()
    if 0.4 <= roll < 0.6:
        return dilation(space, _random_scalar(space, rng, nonzero=True))
    if 0.6 <= roll < 0.8:
        return weyl(space)
    if roll >= 0.8:
        v = _random_anisotropic_vector(space, rng)
        if v is not None:
            return vector_scalar(space, v)
    if kind == "paravector":
        return translation(space, kind, random_paravector(space, rng))
    return translation(space, kind, random_vector(space, rng))


def random_vahlen(space, kind, seed, length, special=False):
    """Seeded product of `length` random generators; always Vahlen.  The
    special variant divides out the pseudo-determinant via a dilation."""
    _check_kind(kind)
    if length < 1:
        raise ValueError("length must be >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    m = random_generator(space, kind, rng)
    for _ in range(length - 1):
        m = m * random_generator(space, kind, rng)
    if special:
        m = m * dilation(space, pseudo_det(m, kind).inverse())
    return m


# -- JSON ----------------------------------------------------------------------


def matrix_to_json(m):
    return {"a": element_to_json(m.a), "b": element_to_json(m.b),
            "c": element_to_json(m.c), "d": element_to_json(m.d)}


def matrix_from_json(space, data):
    return CMatrix2(*(element_from_json(space, data[key])
                      for key in ("a", "b", "c", "d")))


# -- exhaustive equivalence check ------------------------------------------------


def verify_equivalence_exhaustive(space, kind, max_matrices=10**7):
    """Enumerate every 2x2 matrix over C(space); report the four condition
    membership counts, whether the sets coincide, and whether T (resp. the
    paravector T) is invariant under transposition."""
    _check_kind(kind)
    if not isinstance(space.field, PrimeField):
        raise InfiniteField("exhaustive verification needs a finite field")
    p = space.field.modulus
    n_elems = p ** (2 ** space.dim)
    total = n_elems ** 4
    if total > max_matrices:
        raise TooLarge(f"{total} matrices exceed the guard {max_matrices}")

    elems = enumerate_elements(space)
    t_flags = [in_T(x, kind) for x in elems]
    t_set = {x for x, f in zip(elems, t_flags) if f}
    t_star_invariant = all(x.transpose() in t_set for x in t_set)

    # pairwise product tables make the per-matrix work pure lookups
    idx = range(len(elems))
    tr = [x.transpose() for x in elems]
    cj = [x.conj() for x in elems]
    norm_scalar = [x.norm().is_scalar() for x in elems]
    p_star = [[elems[i] * tr[j] for j in idx] for i in idx]
    p_bar = [[elems[i] * cj[j] for j in idx] for i in idx]
    p_conj_left = [[cj[i] * elems[j] for j in idx] for i in idx]
    tests = _tests(space, kind)
    u1 = [[[elems[i] * t * cj[j] for j in idx] for i in idx] for t in tests]
    u2 = [[[elems[i] * t.conj() * cj[j] for j in idx] for i in idx]
          for t in tests]
    lands_star = [[_lands(p_star[i][j], kind) for j in idx] for i in idx]
    lands_bar = [[_lands(p_bar[i][j], kind) for j in idx] for i in idx]
    lands_cl = [[_lands(p_conj_left[i][j], kind) for j in idx] for i in idx]

    def det_ok(a, b, c, d):
        det = p_star[a][d] - p_star[b][c]
        return det.is_scalar() and not det.scalar_part().is_zero()

    def cond1(a, b, c, d):
        if not (norm_scalar[a] and norm_scalar[b] and norm_scalar[c]
                and norm_scalar[d]):
            return False
        if p_star[a][b] != p_star[b][a] or p_star[c][d] != p_star[d][c]:
            return False
        if not det_ok(a, b, c, d):
            return False
        if not (lands_bar[a][c] and lands_bar[b][d]):
            return False
        for k in range(len(tests)):
            if not (u1[k][a][b] + u2[k][b][a]).is_scalar():
                return False
            if not (u1[k][c][d] + u2[k][d][c]).is_scalar():
                return False
            if not _lands(u1[k][a][d] + u2[k][b][c], kind):
                return False
        return True

    def cond2(a, b, c, d):
        return (t_flags[a] and t_flags[b] and t_flags[c] and t_flags[d]
                and det_ok(a, b, c, d)
                and lands_star[a][b] and lands_star[d][c])

    def cond3(a, b, c, d):
        return (t_flags[a] and t_flags[b] and t_flags[c] and t_flags[d]
                and det_ok(a, b, c, d)
                and lands_cl[a][b] and lands_cl[d][c])

    zero = CliffordElement.zero(space)
    if kind == "vector":
        big = space.extend_hyperbolic()
        to_big = matrix_to_CU
        want_even = False
    else:
        big = space.extend_hyperbolic_rho()
        to_big = matrix_to_CUF
        want_even = True
    blocks = ([to_big(CMatrix2(x, zero, zero, zero)) for x in elems],
              [to_big(CMatrix2(zero, x, zero, zero)) for x in elems],
              [to_big(CMatrix2(zero, zero, x, zero)) for x in elems],
              [to_big(CMatrix2(zero, zero, zero, x)) for x in elems])
    big_tests = [CliffordElement.monomial(big, (i,)) for i in range(big.dim)]

    def cond4(a, b, c, d):
        psi = blocks[0][a] + blocks[1][b] + blocks[2][c] + blocks[3][d]
        if want_even and not psi.is_even():
            return False
        n = psi.norm()
        if not n.is_scalar() or n.scalar_part().is_zero():
            return False
        ginv = (psi.conj() * n.scalar_part().inverse()).grade_involution()
        return all((psi * t * ginv).is_vector() for t in big_tests)

    counts = {1: 0, 2: 0, 3: 0, 4: 0}
    sets_equal = True
    rng4 = range(len(elems))
    for a in rng4:
        for b in rng4:
            for c in rng4:
                for d in rng4:
                    r1 = cond1(a, b, c, d)
                    r2 = cond2(a, b, c, d)
                    r3 = cond3(a, b, c, d)
                    r4 = cond4(a, b, c, d)
                    counts[1] += r1
                    counts[2] += r2
                    counts[3] += r3
                    counts[4] += r4
                    if not r1 == r2 == r3 == r4:
                        sets_equal = False
    return {
        "kind": kind,
        "matrix_count": total,
        "counts": {f"condition{k}": v for k, v in counts.items()},
        "condition_sets_equal": sets_equal,
        "T_count": len(t_set),
        "T_star_invariant": t_star_invariant,
    }
