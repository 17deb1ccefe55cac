"""Exact matrices over ZZ, QQ and real quadratic fields QQ(sqrt d).

Everything here works on Python integers, :class:`fractions.Fraction` and
:class:`QuadScalar`; nothing ever touches floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class QuadScalar:
    """The number a + b*sqrt(d) with a, b rational and d > 1 square-free."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if not is_squarefree(self.d):
            raise ValueError(f"d={self.d} is not a square-free integer > 1")

    @classmethod
    def sqrt(cls, d: int) -> "QuadScalar":
        return cls(Fraction(0), Fraction(1), d)

    def _coerce(self, other) -> "QuadScalar":
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                raise ValueError(f"cannot mix QQ(sqrt {self.d}) and QQ(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadScalar(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a * o.a + self.d * self.b * o.b,
                          self.a * o.b + o.a * self.b, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.d)

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse in QQ(sqrt d)")
        c = self.conjugate()
        return QuadScalar(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            return (self.a, self.b) == (other.a, other.b) and (self.d == other.d or self.b == 0)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadScalar({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt{self.d}" if self.b == 1 else f"{self.b}*sqrt{self.d}"
        if self.a == 0:
            return root if self.b != -1 else f"-sqrt{self.d}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{root.lstrip('-')}"

    def to_json(self) -> list[int]:
        return [self.a.numerator, self.a.denominator, self.b.numerator, self.b.denominator, self.d]

    @classmethod
    def from_json(cls, item: Sequence[int]) -> "QuadScalar":
        an, ad, bn, bd, d = item
        return cls(Fraction(an, ad), Fraction(bn, bd), d)


def _normalize(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, QuadScalar):
        return x
    raise TypeError(f"unsupported exact scalar {x!r} of type {type(x).__name__}")


class Poly:
    """Polynomial in x with exact coefficients, stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_normalize(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_highest(cls, coeffs: Iterable) -> "Poly":
        return cls(list(coeffs)[::-1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return _normalize(acc) if not isinstance(acc, QuadScalar) else acc

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if isinstance(c, QuadScalar):
                neg = c.a < 0 or (c.a == 0 and c.b < 0)
            else:
                neg = c < 0
            mag = -c if neg else c
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)


class Matrix:
    """Immutable dense matrix with exact entries.

    The ring tag is the smallest of ZZ, QQ, QQ(sqrt d) holding every entry;
    QQ(sqrt d) matrices may not mix different d.
    """

    __slots__ = ("rows", "nrows", "ncols", "_ring")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        self._ring = None
        if all(type(x) is int for r in rows for x in r):
            self._ring = "ZZ"
        else:
            rows = tuple(tuple(_normalize(x) for x in r) for r in rows)
        self.rows = rows
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged matrix rows")
        else:
            self.ncols = ncols or 0

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, r: int, c: int) -> "Matrix":
        return cls([[0] * c for _ in range(r)], c)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i in range(b.nrows):
                out[r + i][c:c + b.ncols] = b.rows[i]
            r += b.nrows
            c += b.ncols
        return cls(out, m)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "Matrix":
        """Matrix of the linear map sending basis vector i to basis vector perm[i]."""
        n = len(perm)
        out = [[0] * n for _ in range(n)]
        for i, j in enumerate(perm):
            out[j][i] = 1
        return cls(out, n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def ring(self) -> str:
        if self._ring is None:
            ring = "ZZ"
            ds = set()
            for x in self.entries():
                if isinstance(x, QuadScalar):
                    ds.add(x.d)
                elif isinstance(x, Fraction):
                    ring = "QQ"
            if len(ds) > 1:
                raise ValueError(f"matrix mixes quadratic fields {sorted(ds)}")
            if ds:
                ring = f"QQ(sqrt{ds.pop()})"
            self._ring = ring
        return self._ring

    def quad_d(self) -> int | None:
        for x in self.entries():
            if isinstance(x, QuadScalar):
                return x.d
        return None

    def entries(self):
        for r in self.rows:
            yield from r

    def is_integral(self) -> bool:
        return self.ring == "ZZ"

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self.rows), self.nrows) if self.nrows else Matrix([], 0)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def __eq__(self, other):
        if isinstance(other, Matrix):
            return self.shape == other.shape and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(([a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix(([-a for a in r] for r in self.rows), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __mul__(self, scalar) -> "Matrix":
        if isinstance(scalar, Matrix):
            return self @ scalar
        return Matrix(([a * scalar for a in r] for r in self.rows), self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.T.rows if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            out.append([sum((a * b for a, b in zip(r, c) if a and b), 0) for c in cols])
        return Matrix(out, other.ncols)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match matrix")
        return tuple(_normalize(sum((a * b for a, b in zip(r, vec) if a and b), 0)) for r in self.rows)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def to_json(self):
        def enc(x):
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction):
                return [x.numerator, x.denominator]
            return x.to_json()
        return [[enc(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "Matrix":
        def dec(x):
            if isinstance(x, int):
                return x
            if isinstance(x, list) and len(x) == 2:
                return Fraction(x[0], x[1])
            if isinstance(x, list) and len(x) == 5:
                return QuadScalar.from_json(x)
            raise ValueError(f"bad matrix entry {x!r}")
        return cls([[dec(x) for x in r] for r in data])

    def __repr__(self):
        return f"Matrix({self.tolist()})"

    def pretty(self) -> str:
        cells = [[str(x) for x in r] for r in self.rows]
        if not cells:
            return "[]"
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


MatrixLike = Union[Matrix, Sequence[Sequence]]


def as_matrix(m: MatrixLike) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(m)


def _require_square(m: Matrix) -> None:
    if not m.is_square():
        raise ValueError(f"expected a square matrix, got shape {m.shape}")


def _field_rows(m: Matrix) -> list[list]:
    """Entries lifted into a field type so that '/' stays exact."""
    d = m.quad_d()
    if d is not None:
        return [[x if isinstance(x, QuadScalar) else QuadScalar(x, 0, d) for x in r] for r in m.rows]
    return [[Fraction(x) for x in r] for r in m.rows]


def det(m: MatrixLike):
    """Determinant by fraction-free (Bareiss) elimination."""
    m = as_matrix(m)
    _require_square(m)
    n = m.nrows
    if n == 0:
        return 1
    integral = m.is_integral()
    a = [list(r) for r in m.rows] if integral else _field_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = row_i[j] * akk - aik * row_k[j]
                row_i[j] = num // prev if integral else num / prev
        prev = akk
    out = a[n - 1][n - 1] * sign
    return out if isinstance(out, QuadScalar) else _normalize(out)


def char_poly(m: MatrixLike) -> Poly:
    """Monic det(x*I - M) by Berkowitz' division-free recursion."""
    m = as_matrix(m)
    _require_square(m)
    n = m.nrows
    a = m.rows
    coeffs = [1]  # highest degree first, char poly of the leading k x k block
    for k in range(n):
        col = [a[i][k] for i in range(k)]
        row = [a[k][j] for j in range(k)]
        # q[t] = row . M_k^t . col
        q = []
        vec = col
        for _ in range(k):
            q.append(sum((r * v for r, v in zip(row, vec)), 0))
            vec = [sum((a[i][j] * vec[j] for j in range(k)), 0) for i in range(k)]
        new = [0] * (k + 2)
        akk = a[k][k]
        for j, c in enumerate(coeffs):
            new[j] += c
            new[j + 1] -= akk * c
        for i in range(k):
            new[i + 2] -= sum((coeffs[j] * q[i - j] for j in range(i + 1)), 0)
        coeffs = new
    return Poly.from_highest(coeffs)


def is_integer_like(m: MatrixLike) -> bool:
    p = char_poly(m)
    return p.is_integral() and p.coeffs[0] in (1, -1)


def has_eigenvalue_one(m: MatrixLike) -> bool:
    m = as_matrix(m)
    _require_square(m)
    shifted = [[x - 1 if i == j else x for j, x in enumerate(r)] for i, r in enumerate(m.rows)]
    return det(Matrix(shifted, m.ncols)) == 0


def rref(m: MatrixLike) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over the matrix's field, with pivot columns."""
    m = as_matrix(m)
    a = _field_rows(m)
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return Matrix(a, cols), pivots


def rank(m: MatrixLike) -> int:
    return len(rref(m)[1])


def inverse(m: MatrixLike) -> Matrix:
    m = as_matrix(m)
    _require_square(m)
    n = m.nrows
    aug = Matrix([list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.rows)], 2 * n)
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return red.submatrix(range(n), range(n, 2 * n))


def nullspace(m: MatrixLike) -> list[tuple]:
    """Basis of {x : M x = 0} over the matrix's field."""
    m = as_matrix(m)
    red, piv = rref(m)
    free = [c for c in range(m.ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * m.ncols
        v[f] = 1
        for r, p in enumerate(piv):
            v[p] = -red[r, f]
        basis.append(tuple(_normalize(x) if not isinstance(x, QuadScalar) else x for x in v))
    return basis


def primitive_integer_vector(v: Sequence[Rational]) -> tuple[int, ...]:
    """Clear denominators and divide out the content; first nonzero entry positive."""
    den = reduce(math.lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return tuple(-x for x in ints) if lead < 0 else tuple(ints)


@dataclass(frozen=True)
class SNFResult:
    S: Matrix
    U: Matrix
    V: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for s in self.diagonal if s)


def smith_normal_form(m: MatrixLike) -> SNFResult:
    """Smith normal form with transforms: U*M*V = S, U and V unimodular.

    The diagonal is nonnegative, each entry divides the next, zeros trail.
    """
    m = as_matrix(m)
    if not m.is_integral():
        raise ValueError("Smith normal form needs an integer matrix")
    rows, cols = m.shape
    a = [list(r) for r in m.rows]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q*row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return SNFResult(Matrix(a, cols), Matrix(u, rows), Matrix(v, cols))


def determinant_divisors_by_minors(m: MatrixLike, l: int) -> int:
    """gcd of all l x l minors, by enumerating them."""
    m = as_matrix(m)
    _check_divisor_index(m, l)
    g = 0
    for rs in itertools.combinations(range(m.nrows), l):
        for cs in itertools.combinations(range(m.ncols), l):
            g = math.gcd(g, det(m.submatrix(rs, cs)))
            if g == 1:
                return 1
    return g


def _check_divisor_index(m: Matrix, l: int) -> None:
    if not m.is_integral():
        raise ValueError("determinant divisors need an integer matrix")
    if not 1 <= l <= min(m.shape):
        raise ValueError(f"index l={l} outside 1..{min(m.shape)}")


def determinant_divisors(m: MatrixLike, l: int) -> int:
    """l-th determinant divisor d_l(M); SNF route above 6x6, minors otherwise."""
    m = as_matrix(m)
    _check_divisor_index(m, l)
    if min(m.shape) > 6:
        return math.prod(smith_normal_form(m).diagonal[:l])
    return determinant_divisors_by_minors(m, l)


def integer_kernel(m: MatrixLike) -> list[tuple[int, ...]]:
    """ZZ-basis of {x in ZZ^n : M x = 0} (a saturated lattice)."""
    m = as_matrix(m)
    if m.nrows == 0:
        return [tuple(1 if i == j else 0 for i in range(m.ncols)) for j in range(m.ncols)]
    res = smith_normal_form(m)
    r = res.rank
    return [res.V.col(j) for j in range(r, m.ncols)]


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row-style HNF of the lattice spanned by the given integer rows (zero rows dropped)."""
    a = [list(r) for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        if not any(a[i][c] for i in range(r, len(a))):
            continue
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    done = done and a[i][c] == 0
            if done:
                break
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return Matrix(a[:r], ncols)


def saturation(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """HNF basis of (span_QQ L) meet ZZ^n for the lattice L spanned by rows."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return Matrix([], ncols)
    orth = integer_kernel(Matrix(rows, ncols))  # vectors k with L.k = 0
    if not orth:
        return Matrix.identity(ncols)
    return hermite_normal_form(integer_kernel(Matrix(orth, ncols)), ncols)


def lattice_index(sub_rows: Sequence[Sequence[int]], sup_basis: Matrix) -> int:
    """Index of the lattice spanned by sub_rows inside the full-rank-matching lattice sup_basis.

    Both lattices must have the same rank; returns 0 when it differs.
    """
    sub = Matrix([r for r in sub_rows if any(r)], sup_basis.ncols)
    if sub.nrows == 0:
        return 1 if sup_basis.nrows == 0 else 0
    s_sub = smith_normal_form(sub)
    s_sup = smith_normal_form(sup_basis)
    if s_sub.rank != s_sup.rank:
        return 0
    r = s_sub.rank
    return math.prod(s_sub.diagonal[:r]) // math.prod(s_sup.diagonal[:r])


def companion(p: Poly) -> Matrix:
    """Companion matrix with the negated coefficients in the first row.

    For x^2 - x - 1 this gives [[1, 1], [1, 0]].
    """
    if not p.is_monic() or p.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    n = p.degree
    top = [-p.coeffs[n - 1 - j] for j in range(n)]
    rows = [top] + [[1 if j == i else 0 for j in range(n)] for i in range(n - 1)]
    return Matrix(rows, n)


def resultant(p: Poly, q: Poly):
    """Resultant via the Sylvester determinant."""
    m, n = p.degree, q.degree
    if m < 0 or n < 0:
        return 0
    if m == 0 and n == 0:
        return 1
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    return det(Matrix(rows, size))


def reversed_poly(p: Poly) -> Poly:
    """x^deg * p(1/x); its roots are the reciprocals of the nonzero roots of p."""
    return Poly(reversed(p.coeffs))
