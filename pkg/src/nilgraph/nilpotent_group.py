"""Torsion-free 2-step nilpotent groups given by structure constants.

A presentation has non-central generators x_1..x_n and central generators
y_1..y_m with [x_i, x_j] = prod_l y_l^{c_ij,l} for i < j.  Commutators use the
convention [a, b] = a^-1 b^-1 a b.  Elements are kept in the normal form
x_1^{z_1} ... x_n^{z_n} y_1^{t_1} ... y_m^{t_m}.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Any, Iterable, Mapping, Sequence

from .exact_linalg import (
    Matrix,
    hermite_normal_form,
    integer_kernel,
    lattice_index,
    saturation,
    smith_normal_form,
)
from .graph_core import isolated_vertices
from .weighted_graph import WeightedGraph, diagonal_determinant_divisor


@dataclass(frozen=True)
class GroupElement:
    z: tuple[int, ...]
    t: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(int(x) for x in self.z))
        object.__setattr__(self, "t", tuple(int(x) for x in self.t))

    def is_central_coordinate(self) -> bool:
        return not any(self.z)

    def __str__(self) -> str:
        return f"(z={list(self.z)}, t={list(self.t)})"


@dataclass(frozen=True)
class TwoStepPresentation:
    """Structure constants stored as {(i, j): vector of length m} for 0-based i < j; absent pairs commute."""

    n: int
    m: int
    constants: Mapping[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)
    x_names: tuple[str, ...] = ()
    y_names: tuple[str, ...] = ()

    def __post_init__(self):
        clean: dict[tuple[int, int], tuple[int, ...]] = {}
        for (i, j), vec in dict(self.constants).items():
            if not (0 <= i < j < self.n):
                raise ValueError(f"structure constant index ({i}, {j}) must satisfy 0 <= i < j < n")
            vec = tuple(int(x) for x in vec)
            if len(vec) != self.m:
                raise ValueError(f"structure constant for ({i}, {j}) must have length {self.m}")
            if any(vec):
                clean[(i, j)] = vec
        object.__setattr__(self, "constants", clean)
        if not self.x_names:
            object.__setattr__(self, "x_names", tuple(f"x{i + 1}" for i in range(self.n)))
        if not self.y_names:
            object.__setattr__(self, "y_names", tuple(f"y{l + 1}" for l in range(self.m)))
        if len(self.x_names) != self.n or len(self.y_names) != self.m:
            raise ValueError("generator name lists do not match n and m")

    def __hash__(self):
        return hash((self.n, self.m, tuple(sorted(self.constants.items()))))

    def __eq__(self, other):
        if not isinstance(other, TwoStepPresentation):
            return NotImplemented
        return (self.n, self.m, self.constants) == (other.n, other.m, other.constants)

    def c(self, i: int, j: int) -> tuple[int, ...]:
        """Exponent vector of [x_i, x_j] for any i, j (antisymmetric)."""
        if i < j:
            return self.constants.get((i, j), (0,) * self.m)
        if i > j:
            return tuple(-x for x in self.constants.get((j, i), (0,) * self.m))
        return (0,) * self.m

    @cached_property
    def c_matrix(self) -> Matrix:
        """Rows indexed by pairs i < j in lexicographic order, columns by y_l."""
        rows = [self.c(i, j) for i in range(self.n) for j in range(i + 1, self.n)]
        return Matrix(rows, self.m)

    # element constructors -------------------------------------------------

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.n, (0,) * self.m)

    def x(self, i: int) -> GroupElement:
        return GroupElement(tuple(int(k == i) for k in range(self.n)), (0,) * self.m)

    def y(self, l: int) -> GroupElement:
        return GroupElement((0,) * self.n, tuple(int(k == l) for k in range(self.m)))

    def element(self, z: Sequence[int], t: Sequence[int] | None = None) -> GroupElement:
        t = (0,) * self.m if t is None else t
        el = GroupElement(z, t)
        self._check(el)
        return el

    def random_element(self, rng: random.Random, bound: int = 5) -> GroupElement:
        return GroupElement([rng.randint(-bound, bound) for _ in range(self.n)],
                            [rng.randint(-bound, bound) for _ in range(self.m)])

    def _check(self, *els: GroupElement) -> None:
        for a in els:
            if len(a.z) != self.n or len(a.t) != self.m:
                raise ValueError(
                    f"element with {len(a.z)}+{len(a.t)} coordinates does not fit a presentation with n={self.n}, m={self.m}")

    # arithmetic -----------------------------------------------------------

    def _cross(self, u: Sequence[int], w: Sequence[int]) -> list[int]:
        """sum over i > j of u_i w_j c_{ji}."""
        out = [0] * self.m
        for (j, i), vec in self.constants.items():  # j < i
            f = u[i] * w[j]
            if f:
                for l, c in enumerate(vec):
                    out[l] += f * c
        return out

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        """Normal form of a*b.

        Collecting b's x-letters to the left past a's larger-index letters uses
        x_i^p x_j^q = x_j^q x_i^p [x_i, x_j]^{pq} with [x_i, x_j] = y^{-c_ji} for i > j.
        """
        self._check(a, b)
        d = self._cross(a.z, b.z)
        return GroupElement(tuple(p + q for p, q in zip(a.z, b.z)),
                            tuple(p + q - r for p, q, r in zip(a.t, b.t, d)))

    def inverse(self, a: GroupElement) -> GroupElement:
        self._check(a)
        d = self._cross(a.z, a.z)
        return GroupElement(tuple(-p for p in a.z), tuple(-p - r for p, r in zip(a.t, d)))

    def power(self, a: GroupElement, k: int) -> GroupElement:
        self._check(a)
        if k < 0:
            a, k = self.inverse(a), -k
        result = self.identity()
        base = a
        while k:
            if k & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            k >>= 1
        return result

    def commutator(self, a: GroupElement, b: GroupElement) -> GroupElement:
        """[a, b] = a^-1 b^-1 a b."""
        ai, bi = self.inverse(a), self.inverse(b)
        return self.multiply(self.multiply(ai, bi), self.multiply(a, b))

    def commutator_form(self, u: Sequence[int], w: Sequence[int]) -> tuple[int, ...]:
        """Central exponent of [x^u, x^w], the bilinear form sum_{i<j} (u_i w_j - u_j w_i) c_ij."""
        out = [0] * self.m
        for (i, j), vec in self.constants.items():
            f = u[i] * w[j] - u[j] * w[i]
            if f:
                for l, c in enumerate(vec):
                    out[l] += f * c
        return tuple(out)

    def word(self, letters: Iterable[tuple[str, int, int]]) -> GroupElement:
        """Evaluate a word given as (kind, index, exponent) with kind 'x' or 'y'."""
        out = self.identity()
        for kind, i, e in letters:
            g = self.x(i) if kind == "x" else self.y(i)
            out = self.multiply(out, self.power(g, e))
        return out

    # serialization --------------------------------------------------------

    def to_json_obj(self) -> dict[str, Any]:
        entries = [[i + 1, j + 1, l + 1, v]
                   for (i, j), vec in sorted(self.constants.items())
                   for l, v in enumerate(vec) if v]
        return {"n": self.n, "m": self.m, "c": entries,
                "x_names": list(self.x_names), "y_names": list(self.y_names)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping[str, Any]) -> "TwoStepPresentation":
        n, m = int(obj["n"]), int(obj["m"])
        consts: dict[tuple[int, int], list[int]] = {}
        for i, j, l, v in obj.get("c", []):
            if not (1 <= l <= m):
                raise ValueError(f"central index {l} out of range")
            i, j, v = i - 1, j - 1, int(v)
            if i > j:
                i, j, v = j, i, -v
            if i == j:
                raise ValueError("a generator commutes with itself")
            vec = consts.setdefault((i, j), [0] * m)
            vec[l - 1] += v
        return cls(n, m, {k: tuple(v) for k, v in consts.items()},
                   tuple(obj.get("x_names", ())), tuple(obj.get("y_names", ())))

    @classmethod
    def from_json(cls, text: str) -> "TwoStepPresentation":
        return cls.from_json_obj(json.loads(text))


def presentation_from_graph(wg: WeightedGraph) -> TwoStepPresentation:
    """G_{Gamma(k)}: x-generators are the vertices, y-generators the edges, in list order.

    [v_i, v_j] = e^{k(e)} for the edge e = {v_i, v_j} with i < j.
    """
    g = wg.graph
    m = len(g.edges)
    consts = {}
    for l, e in enumerate(g.edges):
        v, w = g.ends(e)
        vec = [0] * m
        vec[l] = wg.weights[l]
        consts[(g.pos[v], g.pos[w])] = tuple(vec)
    return TwoStepPresentation(len(g.vertices), m, consts, g.vertices,
                               tuple(f"{{{a},{b}}}" for a, b in map(g.ends, g.edges)))


def remark_group_H() -> TwoStepPresentation:
    """The 7-generator group with [x1,x3]=y1, [x1,x4]=y2, [x3,x4]=y3, [x2,x4]=y1^2, [x2,x3]=y2, [x1,x2]=1."""
    return TwoStepPresentation(4, 3, {
        (0, 2): (1, 0, 0),
        (0, 3): (0, 1, 0),
        (2, 3): (0, 0, 1),
        (1, 3): (2, 0, 0),
        (1, 2): (0, 1, 0),
    })


def heisenberg_matrix(n: int, a: GroupElement) -> Matrix:
    """Image of an element of G_{K2(n)} in the upper unitriangular 3x3 integer matrices.

    v1 -> I + n E12, v2 -> I + E23, e -> I + E13; x^z1 y^z2 e^t maps to
    [[1, n z1, n z1 z2 + t], [0, 1, z2], [0, 0, 1]].
    """
    z1, z2 = a.z
    (t,) = a.t
    return Matrix([[1, n * z1, n * z1 * z2 + t], [0, 1, z2], [0, 0, 1]])


@dataclass(frozen=True)
class StructureReport:
    """Structural subgroups; lattices are HNF row bases in y-coordinates.

    ``abelianization_invariants`` lists torsion invariant factors (> 1) in
    divisibility order followed by one 0 per free cyclic factor.
    """

    center_generators: tuple[GroupElement, ...]
    center_rank: int
    gamma2_lattice: Matrix
    sqrt_gamma2_lattice: Matrix
    gamma2_index: int
    abelianization_invariants: tuple[int, ...]
    hirsch: int
    unweighted_index: int | None = None

    def abelianization_str(self) -> str:
        torsion = [d for d in self.abelianization_invariants if d]
        free = sum(1 for d in self.abelianization_invariants if d == 0)
        parts = [f"Z^{free}" if free != 1 else "Z"] if free else []
        parts += [f"Z/{d}" for d in torsion]
        return " x ".join(parts) or "1"

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "center_generators": [{"z": list(g.z), "t": list(g.t)} for g in self.center_generators],
            "center_rank": self.center_rank,
            "gamma2_lattice": self.gamma2_lattice.tolist(),
            "sqrt_gamma2_lattice": self.sqrt_gamma2_lattice.tolist(),
            "gamma2_index": self.gamma2_index,
            "abelianization_invariants": list(self.abelianization_invariants),
            "abelianization": self.abelianization_str(),
            "hirsch": self.hirsch,
            "unweighted_index": self.unweighted_index,
        }


def _invariants(torsion: Iterable[int], free: int) -> tuple[int, ...]:
    return tuple(d for d in torsion if d > 1) + (0,) * free


def structural_subgroups(p: TwoStepPresentation, origin: WeightedGraph | None = None) -> StructureReport:
    """Center, gamma_2, its isolator, abelianization and Hirsch number via integer linear algebra."""
    n, m = p.n, p.m
    cm = [r for r in p.c_matrix.rows if any(r)]
    gamma2 = hermite_normal_form(cm, m) if cm else Matrix([], m)
    sqrt_g2 = saturation(cm, m) if cm else Matrix([], m)
    index = lattice_index(cm, sqrt_g2) if cm else 1

    if cm:
        snf = smith_normal_form(Matrix(cm, m))
        nz = [d for d in snf.diagonal if d]
        free = n + m - len(nz)
    else:
        nz, free = [], n + m
    invariants = _invariants(nz, free)

    # z is central iff sum_i z_i c(i, j) = 0 for every j; rows indexed by (j, l)
    pairing = [[p.c(i, j)[l] for i in range(n)] for j in range(n) for l in range(m)]
    if pairing and n:
        kern = integer_kernel(Matrix(pairing, n))
    else:
        kern = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    kern = [tuple(r) for r in hermite_normal_form(kern, n).rows] if kern else []
    center = tuple(GroupElement(z, (0,) * m) for z in kern) + tuple(p.y(l) for l in range(m))

    unweighted = None
    if origin is not None:
        unweighted = index
        expected = prod(origin.weights)
        if index != expected:
            raise AssertionError(f"index {index} differs from the weight product {expected}")
    return StructureReport(center, len(center), gamma2, sqrt_g2, index, invariants, n + m, unweighted)


def graph_structure(wg: WeightedGraph) -> StructureReport:
    """Closed-form structure of G_{Gamma(k)} read off the graph, without lattice reduction.

    Center <V_iso, E>, gamma_2 = <e^{k(e)}>, its isolator = <E>, abelianization
    Z^|V| x prod Z/k(e), Hirsch number |V| + |E| and index prod k(e).
    """
    g = wg.graph
    n, m = len(g.vertices), len(g.edges)
    iso, _ = isolated_vertices(g)
    center = tuple(GroupElement([int(v == u) for u in g.vertices], (0,) * m) for v in iso)
    center += tuple(GroupElement((0,) * n, [int(l == j) for j in range(m)]) for l in range(m))
    # invariant factors of diag(k) from the gcd-of-products divisors
    ks = list(wg.weights)
    divisors = [1] + [diagonal_determinant_divisor(ks, l) for l in range(1, m + 1)]
    factors = [divisors[l] // divisors[l - 1] for l in range(1, m + 1)]
    return StructureReport(
        center_generators=center,
        center_rank=len(center),
        gamma2_lattice=Matrix.diag(ks) if m else Matrix([], 0),
        sqrt_gamma2_lattice=Matrix.identity(m) if m else Matrix([], 0),
        gamma2_index=prod(ks),
        abelianization_invariants=_invariants(factors, n),
        hirsch=n + m,
        unweighted_index=prod(ks),
    )


def relation_defects(p: TwoStepPresentation, x_images: Sequence[GroupElement],
                     y_images: Sequence[GroupElement]) -> list[tuple[int, int]]:
    """Pairs (i, j) whose relation [x_i, x_j] = prod y^c fails under the given generator images.

    Central generators must go to central elements; the empty list means the
    assignment extends to an endomorphism.
    """
    if len(x_images) != p.n or len(y_images) != p.m:
        raise ValueError("one image per generator is required")
    bad = []
    for l, y in enumerate(y_images):
        if any(any(p.commutator_form(y.z, p.x(i).z)) for i in range(p.n)):
            bad.append((-1, l))
    for i in range(p.n):
        for j in range(i + 1, p.n):
            lhs = p.commutator(x_images[i], x_images[j])
            rhs = p.identity()
            for l, c in enumerate(p.c(i, j)):
                if c:
                    rhs = p.multiply(rhs, p.power(y_images[l], c))
            if lhs != rhs:
                bad.append((i, j))
    return bad
