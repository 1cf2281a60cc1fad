"""Completed half-spaces and the Moebius action of the (paravector) Vahlen
group, with the exact bijection onto the hyperboloid-style K-model.

A point is either regular -- a part x (vector of V, or paravector of F+V)
plus a nonzero height t, standing for x + t sigma_c -- or a boundary point,
a pair (u, b) with q(u) = c standing for (infinity u)_b + infinity sigma_c.
Boundary arithmetic never touches a symbolic infinity: the starred linear
coefficients are computed from their closed forms.
"""

from __future__ import annotations

import itertools

from .clifford import CliffordElement
from .fields import PrimeField
from .groups import matrix_to_CU, matrix_to_CUF
from .matrices import (CMatrix2, NotVahlen, TooLarge, dilation, is_vahlen,
                       pseudo_det, translation, weyl)


class InvariantViolation(ValueError):
    """A point invariant failed; on Moebius output this indicates a bug."""


class HPoint:
    """A point of the completed half-space, componentwise data only."""

    __slots__ = ("boundary", "part", "height")

    def __init__(self, boundary, part, height):
        self.boundary = boundary
        self.part = tuple(part)
        self.height = height

    @property
    def regular(self):
        return not self.boundary

    def __eq__(self, other):
        return (isinstance(other, HPoint) and other.boundary == self.boundary
                and other.part == self.part and other.height == self.height)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.boundary, self.part, self.height))

    def __repr__(self):
        label = "boundary" if self.boundary else "regular"
        return f"HPoint({label}, part={list(self.part)}, {self.height})"


class HalfSpace:
    """The space H^c (kind "vector") or its paravector analogue (kind
    "paravector") for one quadratic space and one scalar c."""

    def __init__(self, space, c, kind):
        if kind not in ("vector", "paravector"):
            raise ValueError(f"unknown kind {kind!r}")
        self.space = space
        self.field = space.field
        self.c = space.field.element(c)
        self.kind = kind
        self.sigma_space = space.extend_sigma(self.c)
        self.sigma_idx = self.sigma_space.labels["sigma"]
        if kind == "vector":
            self.uspace = space.extend_hyperbolic()
        else:
            self.uspace = space.extend_hyperbolic_rho()
        self.e_idx = self.uspace.labels["e"]
        self.f_idx = self.uspace.labels["f"]
        self.part_len = space.dim + (1 if kind == "paravector" else 0)

    # -- parts: V-coordinates, or (scalar, V-coordinates) for paravectors ----

    def zero_part(self):
        return (self.field.zero,) * self.part_len

    def make_part(self, coords):
        coords = tuple(self.field.element(c) for c in coords)
        if len(coords) != self.part_len:
            raise ValueError("part length mismatch")
        return coords

    def part_element(self, part):
        """The part as an element of C(V)."""
        if self.kind == "vector":
            return CliffordElement.from_vector(self.space.vector(part))
        return CliffordElement.paravector(self.space, part[0],
                                          self.space.vector(part[1:]))

    def part_q(self, part):
        if self.kind == "vector":
            return self.space.q(part)
        a = part[0]
        return self.space.q(part[1:]) - a * a

    def part_pairing(self, part, other):
        if self.kind == "vector":
            return self.space.bilinear(part, other)
        return (self.space.bilinear(part[1:], other[1:])
                - 2 * part[0] * other[0])

    def part_in_radical(self, part):
        if self.kind == "vector":
            return self.space.in_radical(part)
        return part[0].is_zero() and self.space.in_radical(part[1:])

    def _element_to_part(self, x):
        """Inverse of part_element; x must be a vector resp. paravector."""
        if self.kind == "vector":
            return x.vector_coords().coords
        a, v = x.paravector_parts()
        return (a,) + v.coords

    # -- points ----------------------------------------------------------------

    def regular_point(self, part, t):
        part = self.make_part(part)
        t = self.field.element(t)
        if t.is_zero():
            raise InvariantViolation("regular point needs t != 0")
        return HPoint(False, part, t)

    def boundary_point(self, part, b):
        part = self.make_part(part)
        b = self.field.element(b)
        if self.part_q(part) != self.c:
            raise InvariantViolation("boundary part must have q-value c")
        if self.c.is_zero() and self.part_in_radical(part) and b.is_zero():
            raise InvariantViolation(
                "radical boundary part requires b != 0 when c = 0")
        return HPoint(True, part, b)

    def base_point(self):
        """sigma_c itself."""
        return self.regular_point(self.zero_part(), self.field.one)

    def represented(self):
        """Is c a q-value of the part space (finite fields by enumeration)?"""
        for part in self._all_parts():
            if self.part_q(part) == self.c:
                return True
        return False

    # -- half-space <-> Clifford elements of C(V_F^c) ---------------------------

    def lift(self, p):
        """x + t sigma_c as an element of C(V_F^c); regular points only."""
        if p.boundary:
            raise InvariantViolation("boundary points have no finite lift")
        z = self.part_element(p.part).embed(self.sigma_space)
        sigma = CliffordElement.monomial(self.sigma_space, (self.sigma_idx,))
        return z + sigma * p.height

    def _split(self, x):
        """Split an element of C(V_F^c) into (part tuple, sigma coefficient);
        anything outside F+V+F sigma (or V+F sigma) is an invariant failure."""
        zero = self.field.zero
        part = [zero] * self.part_len
        sigma_coeff = zero
        for s, coeff in x.coeffs.items():
            if len(s) == 1 and s[0] == self.sigma_idx:
                sigma_coeff = coeff
            elif len(s) == 1 and s[0] < self.space.dim:
                part[s[0] + (1 if self.kind == "paravector" else 0)] = coeff
            elif not s and self.kind == "paravector":
                part[0] = coeff
            else:
                raise InvariantViolation(
                    f"Moebius numerator has an illegal term {s}: {x!r}")
        return tuple(part), sigma_coeff

    # -- Moebius action -----------------------------------------------------------

    def _require_vahlen(self, m):
        if not is_vahlen(m, self.kind):
            raise NotVahlen(f"matrix is not in the {self.kind} Vahlen group")

    def _regular_data(self, m, p):
        """num = (az+b) conj(cz+d), its norm pieces, and det, at a regular z."""
        z = self.lift(p)
        a, b, c, d = (x.embed(self.sigma_space) for x in m.entries())
        upper = a * z + b
        lower = c * z + d
        num = upper * lower.conj()
        den = lower.norm().to_scalar()
        num_norm = upper.norm().to_scalar()
        det = pseudo_det(m, self.kind)
        return num, den, num_norm, det

    def _boundary_data(self, m, p):
        """The starred linear coefficients at a boundary point, computed from
        their closed forms entirely inside C(V)."""
        a, b, c, d = m.entries()
        u = self.part_element(p.part)
        ub, height = u.conj(), p.height
        den_star = (c.norm() * height + (c * u * d.conj() + d * ub * c.conj())
                    ).to_scalar()
        num_norm_star = (a.norm() * height
                         + (a * u * b.conj() + b * ub * a.conj())).to_scalar()
        star = a * c.conj() * height + (a * u * d.conj() + b * ub * c.conj())
        det = pseudo_det(m, self.kind)
        return star, den_star, num_norm_star, det

    def mobius_denominator(self, p, m):
        """N(cz + d) at a regular point, or its starred coefficient at a
        boundary point."""
        self._require_vahlen(m)
        if p.boundary:
            return self._boundary_data(m, p)[1]
        return self._regular_data(m, p)[1]

    def mobius_apply(self, m, p):
        """The full four-case Moebius transformation formula."""
        self._require_vahlen(m)
        if not p.boundary:
            num, den, num_norm, det = self._regular_data(m, p)
            part, sigma_coeff = self._split(num)
            if sigma_coeff != p.height * det:
                raise InvariantViolation("sigma coefficient should be t det")
            if not den.is_zero():
                inv = den.inverse()
                return self.regular_point([x * inv for x in part],
                                          sigma_coeff * inv)
            scale = (p.height * det).inverse()
            return self.boundary_point([x * scale for x in part],
                                       num_norm * scale)
        star, den_star, num_norm_star, det = self._boundary_data(m, p)
        if not self._lands(star):
            raise InvariantViolation("starred numerator left the part space")
        part = self._element_to_part(star)
        if not den_star.is_zero():
            inv = den_star.inverse()
            return self.regular_point([x * inv for x in part], det * inv)
        inv = det.inverse()
        return self.boundary_point([x * inv for x in part],
                                   num_norm_star * inv)

    def _lands(self, x):
        return x.is_paravector() if self.kind == "paravector" else x.is_vector()

    # -- the K-model ---------------------------------------------------------------

    def _part_coords_in_u(self, part):
        """Coordinates of the part inside V_U (vector) or of iota(part)
        inside V_{U,F} (paravector)."""
        zero = self.field.zero
        coords = [zero] * self.uspace.dim
        if self.kind == "vector":
            for i, x in enumerate(part):
                coords[i] = x
        else:
            for i, x in enumerate(part[1:]):
                coords[i] = x
            coords[self.uspace.labels["rho"]] = -part[0]
        return coords

    def to_K(self, p):
        """The bijection onto vectors of q-value c outside the radical."""
        if p.boundary:
            coords = self._part_coords_in_u(p.part)
            coords[self.e_idx] = p.height
            return self.uspace.vector(coords)
        tinv = p.height.inverse()
        coords = self._part_coords_in_u(p.part)
        coords[self.f_idx] = self.field.one
        coords[self.e_idx] = (self.c * p.height * p.height
                              - self.part_q(p.part))
        return self.uspace.vector([x * tinv for x in coords])

    def k_contains(self, w):
        return (w.space == self.uspace and w.q() == self.c
                and not w.in_radical())

    def from_K(self, w):
        """Inverse bijection, splitting on the pairing with e."""
        if not self.k_contains(w):
            raise InvariantViolation("vector is not in the K-set")
        pair_e = w.coords[self.f_idx]
        if pair_e.is_zero():
            part, b = self._u_coords_to_part(w.coords, boundary=True)
            return self.boundary_point(part, b)
        t = pair_e.inverse()
        scaled = [x * t for x in w.coords]
        part, _ = self._u_coords_to_part(scaled, boundary=False)
        return self.regular_point(part, t)

    def _u_coords_to_part(self, coords, boundary):
        zero = self.field.zero
        b = coords[self.e_idx]
        if boundary and not coords[self.f_idx].is_zero():
            raise InvariantViolation("boundary K-vector must be orthogonal to e")
        if self.kind == "vector":
            part = tuple(coords[:self.space.dim])
        else:
            rho = self.uspace.labels["rho"]
            part = (-coords[rho],) + tuple(coords[:self.space.dim])
        return part, b

    def _eta(self, m):
        key = ("eta", self.kind)
        eta = m._memo.get(key)
        if eta is None:
            if self.kind == "vector":
                eta = matrix_to_CU(m, self.uspace)
            else:
                eta = matrix_to_CUF(m, self.uspace)
            m._memo[key] = eta
        return eta

    def orthogonal_apply(self, m, w):
        """eta w eta* / det inside C(V_U) resp. C(V_{U,F})."""
        self._require_vahlen(m)
        eta = self._eta(m)
        img = eta * CliffordElement.from_vector(w) * eta.transpose()
        img = img * pseudo_det(m, self.kind).inverse()
        return img.vector_coords()

    def equivariance_check(self, m, p):
        """Moebius path and K-model path must agree exactly."""
        via_k = self.from_K(self.orthogonal_apply(m, self.to_K(p)))
        return via_k == self.mobius_apply(m, p)

    def value_identity_check(self, m, p):
        """q of the part of the numerator equals c t^2 det^2 - N N (starred
        forms at the boundary)."""
        self._require_vahlen(m)
        if not p.boundary:
            num, den, num_norm, det = self._regular_data(m, p)
            part, _ = self._split(num)
            expected = (self.c * p.height * p.height * det * det
                        - num_norm * den)
        else:
            star, den_star, num_norm_star, det = self._boundary_data(m, p)
            part = self._element_to_part(star)
            expected = self.c * det * det - num_norm_star * den_star
        return self.part_q(part) == expected

    def stabilizer_shape_check(self, m):
        """(stabilizes sigma_c, matches the (d', -c g'; g, d) shape); the two
        verdicts must coincide for Vahlen matrices."""
        self._require_vahlen(m)
        stab = self.mobius_apply(m, self.base_point()) == self.base_point()
        g, d = m.c, m.d
        shape = (m.a == d.grade_involution()
                 and m.b == -(g.grade_involution() * self.c)
                 and self._lands(g * d.transpose()))
        if shape:
            value = (d.norm() + g.norm() * self.c).to_scalar()
            shape = not value.is_zero()
        return stab, shape

    # -- finite enumeration and the orbit census ------------------------------------

    def _all_parts(self):
        if not isinstance(self.field, PrimeField):
            raise TooLarge("point enumeration needs a finite field")
        return [tuple(t) for t in
                itertools.product(list(self.field.elements()),
                                  repeat=self.part_len)]

    def enumerate_points(self, max_points=10**6):
        p = self.field.modulus
        bound = p ** self.part_len * p
        if bound > max_points:
            raise TooLarge(f"about {bound} points exceed {max_points}")
        points = []
        for part in self._all_parts():
            for t in self.field.elements():
                if not t.is_zero():
                    points.append(HPoint(False, part, t))
            if self.part_q(part) == self.c:
                radical = self.part_in_radical(part)
                for b in self.field.elements():
                    if self.c.is_zero() and radical and b.is_zero():
                        continue
                    points.append(HPoint(True, part, b))
        return points

    def k_set(self):
        coords_pool = itertools.product(list(self.field.elements()),
                                        repeat=self.uspace.dim)
        out = []
        for coords in coords_pool:
            w = self.uspace.vector(coords)
            if self.k_contains(w):
                out.append(w)
        return out

    def _basis_parts(self):
        parts = []
        one, zero = self.field.one, self.field.zero
        for i in range(self.part_len):
            coords = [zero] * self.part_len
            coords[i] = one
            parts.append(tuple(coords))
        return parts

    def census_generators(self, group):
        """Generators used by the orbit BFS: basis translations, the Weyl
        matrix, diag(1/d, d), norm-realizing diagonals, and (full group only)
        all dilations."""
        space = self.space
        gens = [translation(space, self.kind, self.part_element(part))
                for part in self._basis_parts()]
        gens.append(weyl(space))
        nonzero = [s for s in self.field.elements() if not s.is_zero()]
        for d in nonzero:
            gens.append(_diag(space, d.inverse(), d))
        seen_norms = set()
        for part in self._all_parts():
            q = self.part_q(part)
            if q.is_zero() or q in seen_norms:
                continue
            seen_norms.add(q)
            delta = self.part_element(part)
            scale = (-q).inverse()
            gens.append(CMatrix2(delta.grade_involution() * scale,
                                 CliffordElement.zero(space),
                                 CliffordElement.zero(space), delta))
        if group == "full":
            for a in nonzero:
                gens.append(dilation(space, a))
        for g in gens:
            if not is_vahlen(g, self.kind):
                raise AssertionError("census generator failed Vahlen check")
        return gens

    def _orbit(self, start, gens):
        seen = {start}
        frontier = [start]
        while frontier:
            new = []
            for p in frontier:
                for g in gens:
                    q = self.mobius_apply(g, p)
                    if q not in seen:
                        seen.add(q)
                        new.append(q)
            frontier = new
        return seen

    def _transitivity_witness(self, a):
        """The matrix (-a xi, -(1+a q(xi))/d; d, xi) built from a regular
        point of q^c-value -1/a, sending sigma_c to a sigma_c."""
        target = -a.inverse()
        for part in self._all_parts():
            for d in self.field.elements():
                if d.is_zero():
                    continue
                if self.part_q(part) - self.c * d * d == target:
                    xi = self.part_element(part)
                    space = self.space
                    beta = -(1 + a * self.part_q(part)) / d
                    m = CMatrix2(xi * (-a),
                                 CliffordElement.scalar(space, beta),
                                 CliffordElement.scalar(space, d), xi)
                    if is_vahlen(m, self.kind) and \
                            pseudo_det(m, self.kind) == self.field.one:
                        return m
        return None

    def orbit_census(self, group="special", max_points=10**6):
        """Materialize the whole space, close orbits under the generators,
        and compare against the predicted transitivity/coset structure."""
        if group not in ("special", "full"):
            raise ValueError("group must be 'special' or 'full'")
        points = self.enumerate_points(max_points)
        point_set = set(points)
        gens = self.census_generators(group)
        base = self.base_point()
        represented = self.represented()

        base_orbit = self._orbit(base, gens)
        if represented and group == "special" and \
                len(base_orbit) < len(points):
            # construct the proof witnesses sigma_c -> a sigma_c on demand
            extra = []
            for a in self.field.elements():
                if a.is_zero():
                    continue
                target = self.regular_point(self.zero_part(), a)
                if target not in base_orbit:
                    witness = self._transitivity_witness(a)
                    if witness is not None:
                        extra.append(witness)
            if extra:
                gens = gens + extra
                base_orbit = self._orbit(base, gens)

        orbits = [base_orbit]
        remaining = point_set - base_orbit
        while remaining:
            start = min(remaining, key=_point_sort_key)
            orb = self._orbit(start, gens)
            orbits.append(orb)
            remaining -= orb

        k_count = len(self.k_set())
        boundary_count = sum(1 for p in points if p.boundary)
        reps = sorted((min(o, key=_point_sort_key) for o in orbits),
                      key=_point_sort_key)
        report = {
            "kind": self.kind,
            "group": group,
            "c": str(self.c),
            "represented": represented,
            "point_count": len(points),
            "regular_count": len(points) - boundary_count,
            "boundary_count": boundary_count,
            "k_count": k_count,
            "counts_match_k": k_count == len(points),
            "orbit_count": len(orbits),
            "orbit_sizes": sorted(len(o) for o in orbits),
            "orbit_representatives": [point_to_json(self, p) for p in reps],
            "transitive": len(orbits) == 1,
        }
        if boundary_count == 0 and group == "special":
            realized = sorted(
                (t for t in (p.height for p in base_orbit
                             if p.part == self.zero_part())),
                key=lambda s: s.value)
            realized_set = set(realized)
            closed = all(x * y in realized_set
                         for x in realized_set for y in realized_set)
            squares = all(
                s * s in realized_set
                for s in self.field.elements() if not s.is_zero())
            index = (self.field.modulus - 1) // len(realized_set)
            cosets_ok = True
            for orb in orbits:
                heights = {p.height for p in orb}
                rep = next(iter(heights))
                coset = {rep * s for s in realized_set}
                if heights != coset or \
                        len(orb) != len(coset) * len(self._all_parts()):
                    cosets_ok = False
            report["norm_subgroup"] = [str(t) for t in realized]
            report["norm_subgroup_closed"] = closed
            report["contains_squares"] = squares
            report["orbit_coset_match"] = cosets_ok
            report["predictions_ok"] = (
                closed and squares and cosets_ok
                and report["orbit_count"] == index
                and (not represented or report["transitive"]))
        else:
            report["predictions_ok"] = report["transitive"]
        report["predictions_ok"] = (report["predictions_ok"]
                                    and report["counts_match_k"])
        return report


def _point_sort_key(p):
    return (p.boundary, tuple(s.value for s in p.part), p.height.value)


def _diag(space, top, bottom):
    zero = CliffordElement.zero(space)
    return CMatrix2(CliffordElement.scalar(space, top), zero, zero,
                    CliffordElement.scalar(space, bottom))


# -- JSON --------------------------------------------------------------------


def point_to_json(hs, p):
    key = "u" if p.boundary else "v"
    out = {
        "kind": "boundary" if p.boundary else "regular",
        key: [str(x) for x in p.part],
        ("b" if p.boundary else "t"): str(p.height),
        "c": str(hs.c),
        "model": hs.kind,
    }
    return out


def point_from_json(hs, data):
    if data.get("model", hs.kind) != hs.kind:
        raise ValueError("point model does not match the half-space kind")
    if "c" in data and hs.field.parse(str(data["c"])) != hs.c:
        raise ValueError("point c does not match the half-space")
    field = hs.field
    if data["kind"] == "regular":
        part = [field.parse(str(x)) for x in data["v"]]
        return hs.regular_point(part, field.parse(str(data["t"])))
    if data["kind"] == "boundary":
        part = [field.parse(str(x)) for x in data["u"]]
        return hs.boundary_point(part, field.parse(str(data["b"])))
    raise ValueError(f"unknown point kind {data.get('kind')!r}")
