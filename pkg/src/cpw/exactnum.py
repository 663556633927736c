"""Exact arithmetic over the Gaussian rationals Q(i) and exact linear algebra.

A :class:`GaussianRational` is stored as three integers ``(a, b, d)`` meaning
``(a + b*i) / d`` with ``d > 0`` and ``gcd(a, b, d) == 1``.  The real and
imaginary parts are exposed as :class:`fractions.Fraction` values, which serve
as the rational type.  Keeping a shared denominator makes the common integer
case cheap: no Fraction objects are created during arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch, DivisionByZero, ParseError

__all__ = [
    "GaussianRational",
    "ExactMatrix",
    "SparseEchelon",
    "ZERO",
    "ONE",
    "I",
    "gr_arith",
    "gr_parse",
    "gr_format",
    "format_rational",
    "rref",
    "solve_membership",
]


class GaussianRational:
    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        if isinstance(re, str) and isinstance(im, int) and im == 0:
            x = gr_parse(re)
            self._a, self._b, self._d = x._a, x._b, x._d
            return
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        g = gcd(a, b, d)
        self._a, self._b, self._d = a // g, b // g, d // g

    @classmethod
    def _raw(cls, a, b, d):
        # d > 0 required; reduces to lowest terms
        if d != 1:
            g = gcd(a, b, d)
            if g != 1:
                a //= g
                b //= g
                d //= g
        x = object.__new__(cls)
        x._a = a
        x._b = b
        x._d = d
        return x

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0, 1)
        if isinstance(value, (Fraction, str)):
            return cls(value)
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")

    @property
    def re(self):
        return Fraction(self._a, self._d)

    @property
    def im(self):
        return Fraction(self._b, self._d)

    def is_zero(self):
        return self._a == 0 and self._b == 0

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def is_real(self):
        return self._b == 0

    def conjugate(self):
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm2(self):
        """``|x|**2`` as a Fraction."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = GaussianRational.coerce(other)
            else:
                return NotImplemented
        if self._d == other._d:
            return GaussianRational._raw(self._a + other._a, self._b + other._b, self._d)
        d1, d2 = self._d, other._d
        return GaussianRational._raw(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = GaussianRational.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = GaussianRational.coerce(other)
            else:
                return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        if b1 == 0 and b2 == 0:
            return GaussianRational._raw(a1 * a2, 0, self._d * other._d)
        return GaussianRational._raw(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self):
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        if n == 0:
            raise DivisionByZero("division by zero Gaussian rational")
        return GaussianRational._raw(d * a, -d * b, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = GaussianRational.coerce(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = ONE
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            if self._d == 1:
                return hash(self._a)
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def sort_key(self):
        return (self.re, self.im)

    def __repr__(self):
        return f"GaussianRational({gr_format(self)!r})"

    def __str__(self):
        return gr_format(self)


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)


def gr_arith(op, x, y):
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two Gaussian rationals."""
    x = GaussianRational.coerce(x)
    y = GaussianRational.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# -- text form -------------------------------------------------------------


def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _format_imag(im):
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return format_rational(im) + "i"


def gr_format(x):
    """Canonical text: ``"a/b"``, ``"c/di"``, ``"a/b+c/di"``; zero parts dropped."""
    x = GaussianRational.coerce(x)
    re, im = x.re, x.im
    if im == 0:
        return format_rational(re)
    if re == 0:
        return _format_imag(im)
    imag = _format_imag(im)
    if not imag.startswith("-"):
        imag = "+" + imag
    return format_rational(re) + imag


class _ScalarScanner:
    """Cursor over a string; whitespace is skipped between tokens."""

    def __init__(self, text, pos=0):
        self.text = text
        self.pos = pos

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message, expected):
        self.skip()
        return ParseError(message, self.pos, expected, self.text)

    def digits(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected digits", ["digit"])
        return int(self.text[start:self.pos])

    def unsigned_rational(self):
        num = self.digits()
        if self.peek() == "/":
            self.pos += 1
            den = self.digits()
            if den == 0:
                raise ParseError("zero denominator", self.pos - 1, ["nonzero digits"], self.text)
            return Fraction(num, den)
        return Fraction(num)


def _parse_scalar_body(sc, allow_complex):
    """Parse ``rat``, ``rat i``, ``i`` or (if allowed) ``rat (+|-) [rat] i``.

    Returns the value.  Consumes nothing beyond the scalar.
    """
    sign = 1
    if sc.peek() == "-":
        sc.pos += 1
        sign = -1
    ch = sc.peek()
    if ch == "i":
        sc.pos += 1
        return GaussianRational(0, sign)
    if not ch.isdigit():
        raise sc.error("expected a number", ["digit", "i", "-"])
    first = sign * sc.unsigned_rational()
    if sc.peek() == "i":
        sc.pos += 1
        return GaussianRational(0, first)
    if allow_complex and sc.peek() in "+-" and sc.peek():
        op = sc.peek()
        sc.pos += 1
        ch = sc.peek()
        if ch == "i":
            sc.pos += 1
            return GaussianRational(first, 1 if op == "+" else -1)
        if ch.isdigit():
            second = sc.unsigned_rational()
            if sc.peek() != "i":
                raise sc.error("imaginary part must end with 'i'", ["i"])
            sc.pos += 1
            return GaussianRational(first, second if op == "+" else -second)
        raise sc.error("expected imaginary part", ["digit", "i"])
    return GaussianRational(first)


def gr_parse(text):
    """Parse a scalar such as ``"3/5+4/5i"``, ``"-2"``, ``"(i)"``."""
    sc = _ScalarScanner(text)
    if sc.peek() == "(":
        sc.pos += 1
        value = _parse_scalar_body(sc, allow_complex=True)
        if sc.peek() != ")":
            raise sc.error("unbalanced parenthesis", [")"])
        sc.pos += 1
    else:
        value = _parse_scalar_body(sc, allow_complex=True)
    if sc.peek():
        raise sc.error("trailing characters", ["end of input"])
    return value


# -- dense matrices ----------------------------------------------------------


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [[GaussianRational.coerce(v) for v in r] for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(v for r in rows for v in r))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                s = ZERO
                for k in range(self.cols):
                    if r[k]:
                        s = s + r[k] * other[k, j]
                out.append(s)
        return ExactMatrix(self.rows, other.cols, tuple(out))


def rref(m):
    """Gauss-Jordan elimination.

    Returns ``(R, pivots, T)`` with ``R`` in reduced row-echelon form,
    ``pivots`` the strictly increasing pivot columns, and ``T @ m == R``.
    The pivot row for each column is the first row (from the current one
    down) with a nonzero entry there.
    """
    n, c = m.rows, m.cols
    a = m.to_rows()
    t = ExactMatrix.identity(n).to_rows()
    pivots = []
    r = 0
    for col in range(c):
        if r == n:
            break
        p = next((i for i in range(r, n) if a[i][col]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        t[r], t[p] = t[p], t[r]
        inv = a[r][col].inverse()
        a[r] = [v * inv for v in a[r]]
        t[r] = [v * inv for v in t[r]]
        for i in range(n):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                t[i] = [x - f * y for x, y in zip(t[i], t[r])]
        pivots.append(col)
        r += 1
    return (
        ExactMatrix(n, c, tuple(v for row in a for v in row)),
        pivots,
        ExactMatrix(n, n, tuple(v for row in t for v in row)),
    )


def solve_membership(basis, target):
    """Coefficients ``c`` with ``c @ basis == target``, or ``None``."""
    target = [GaussianRational.coerce(v) for v in target]
    if len(target) != basis.cols:
        raise DimensionMismatch(f"target has {len(target)} coordinates, basis rows have {basis.cols}")
    reduced, pivots, transform = rref(basis)
    residual = list(target)
    weights = [ZERO] * basis.rows
    for k, col in enumerate(pivots):
        f = residual[col]
        if not f:
            continue
        row = reduced.row(k)
        residual = [x - f * y for x, y in zip(residual, row)]
        weights[k] = f
    if any(residual):
        return None
    coeffs = [ZERO] * basis.rows
    for k, w in enumerate(weights):
        if w:
            for j in range(basis.rows):
                tv = transform[k, j]
                if tv:
                    coeffs[j] = coeffs[j] + w * tv
    return coeffs


# -- sparse incremental elimination -----------------------------------------


class SparseEchelon:
    """Incrementally maintained reduced row-echelon basis of sparse vectors.

    Vectors are ``dict[int, GaussianRational]`` keyed by column index; the
    pivot of a row is its smallest column.  Every basis row also carries its
    expression as a combination of the labelled input vectors, so reductions
    yield certificates.
    """

    def __init__(self, track=True):
        self.rows = {}  # pivot -> (vector, combination)
        self.track = track

    def __len__(self):
        return len(self.rows)

    @staticmethod
    def _axpy(dst, coef, src):
        # dst -= coef * src, in place, dropping zeros
        for k, v in src.items():
            cur = dst.get(k)
            nv = -(coef * v) if cur is None else cur - coef * v
            if nv:
                dst[k] = nv
            elif cur is not None:
                del dst[k]

    def reduce(self, vec):
        """Return ``(residual, combination)`` with ``vec == residual + sum(c * input)``."""
        residual = dict(vec)
        combo = {}
        for p in [k for k in residual if k in self.rows]:
            coef = residual.get(p)
            if not coef:
                continue
            row, rc = self.rows[p]
            self._axpy(residual, coef, row)
            if not self.track:
                continue
            for k, v in rc.items():
                nv = combo.get(k, ZERO) + coef * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        return residual, combo

    def insert(self, vec, label):
        """Add a labelled vector; return True when it enlarged the span."""
        residual, combo = self.reduce(vec)
        if not residual:
            return False
        p = min(residual)
        inv = residual[p].inverse()
        row = {k: v * inv for k, v in residual.items()}
        rc = {}
        if self.track:
            rc = {k: -v * inv for k, v in combo.items()}
            rc[label] = rc.get(label, ZERO) + inv
            if not rc[label]:
                del rc[label]
        for other, oc in self.rows.values():
            f = other.get(p)
            if f:
                self._axpy(other, f, row)
                if self.track:
                    self._axpy(oc, f, rc)
        self.rows[p] = (row, rc)
        return True

    def pivots(self):
        return sorted(self.rows)

    def basis_rows(self):
        return [self.rows[p][0] for p in sorted(self.rows)]

    def to_matrix(self, ncols):
        out = []
        for row in self.basis_rows():
            dense = [ZERO] * ncols
            for k, v in row.items():
                dense[k] = v
            out.append(dense)
        return ExactMatrix(len(out), ncols, tuple(v for r in out for v in r))
