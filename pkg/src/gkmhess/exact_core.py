"""
Exact arithmetic over the rationals.

Polynomials in t_1..t_n, linear forms, integral lattice maps and
fraction-free row reduction.  Nothing in here ever touches a float.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

MAX_VARS = 8

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def rational_str(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def _check_nvars(n_vars):
    if not isinstance(n_vars, int) or n_vars < 1:
        raise ValueError("n_vars must be a positive integer, got %r" % (n_vars,))
    if n_vars > MAX_VARS:
        raise ValueError("n_vars=%d exceeds the guard of %d variables" % (n_vars, MAX_VARS))


# ---------------------------------------------------------------------------
# polynomials


def _grlex_key(exps):
    return (sum(exps), exps)


class Polynomial:
    """Sparse multivariate polynomial with rational coefficients.

    Exponent vectors are dense tuples of length ``n_vars``.  Instances are
    immutable; all arithmetic returns new objects.
    """

    __slots__ = ("n_vars", "_terms", "_hash")

    def __init__(self, n_vars: int, terms: Mapping[tuple, object] | None = None):
        _check_nvars(n_vars)
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != n_vars or any((not isinstance(e, int)) or e < 0 for e in exps):
                    raise ValueError("bad exponent vector %r for %d variables" % (exps, n_vars))
                c = as_rational(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
                    if not clean[exps]:
                        del clean[exps]
        self.n_vars = n_vars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n_vars, terms):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.n_vars = n_vars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, n_vars):
        return cls(n_vars)

    @classmethod
    def constant(cls, n_vars, c):
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def variable(cls, n_vars, i):
        """The variable t_i, 1-based."""
        if not 1 <= i <= n_vars:
            raise ValueError("variable index %d out of range 1..%d" % (i, n_vars))
        exps = [0] * n_vars
        exps[i - 1] = 1
        return cls(n_vars, {tuple(exps): 1})

    @classmethod
    def from_linear(cls, coeffs: Sequence):
        n = len(coeffs)
        _check_nvars(n)
        terms = {}
        for i, c in enumerate(coeffs):
            c = as_rational(c)
            if c:
                exps = [0] * n
                exps[i] = 1
                terms[tuple(exps)] = c
        return cls._raw(n, terms)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def homogeneous_degree(self):
        """Common degree of all terms, ``None`` for zero.

        Raises ``ValueError`` when the terms disagree.
        """
        degs = {sum(e) for e in self._terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("polynomial %s is not homogeneous" % self)
        return degs.pop()

    def is_homogeneous(self):
        return len({sum(e) for e in self._terms}) <= 1

    def _check(self, other):
        if not isinstance(other, Polynomial):
            raise TypeError("expected a Polynomial, got %r" % type(other).__name__)
        if other.n_vars != self.n_vars:
            raise ValueError("mismatched variable counts: %d vs %d" % (self.n_vars, other.n_vars))

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.n_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.n_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_rational(c)
        if not c:
            return Polynomial.zero(self.n_vars)
        return Polynomial._raw(self.n_vars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Polynomial._raw(self.n_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(self.n_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n_vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n_vars == other.n_vars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n_vars, frozenset(self._terms.items())))
        return self._hash

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring homomorphism sending t_i to ``images[i-1]``."""
        if len(images) != self.n_vars:
            raise ValueError("need %d images, got %d" % (self.n_vars, len(images)))
        if not images:
            return self
        target = images[0].n_vars
        for im in images:
            if im.n_vars != target:
                raise ValueError("images live in different polynomial rings")
        powers = [dict() for _ in images]
        result = Polynomial.zero(target)
        for e, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = powers[i][k] = images[i] ** k
                    term = term * pw
            result = result + term
        return result

    def evaluate(self, point: Sequence) -> Fraction:
        point = [as_rational(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                ("t%d" % (i + 1)) if k == 1 else ("t%d^%d" % (i + 1, k))
                for i, k in enumerate(e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = mono if a == 1 else "%s*%s" % (rational_str(a), mono)
            else:
                body = rational_str(a)
            if idx == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(" %s %s" % (sign, body))
        return "".join(out)

    def __repr__(self):
        return "Polynomial(%d, %r)" % (self.n_vars, str(self))

    _TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")

    @classmethod
    def parse(cls, text: str, n_vars: int) -> "Polynomial":
        """Inverse of ``str``: accepts the canonical text form."""
        text = text.strip()
        if text == "0":
            return cls.zero(n_vars)
        terms = {}
        pos = 0
        while pos < len(text):
            m = cls._TERM.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError("cannot parse polynomial %r" % text)
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            coeff = Fraction(sign)
            exps = [0] * n_vars
            for factor in m.group(2).strip().split("*"):
                factor = factor.strip()
                if factor.startswith("t"):
                    name, _, power = factor.partition("^")
                    i = int(name[1:])
                    if not 1 <= i <= n_vars:
                        raise ValueError("variable %s out of range" % name)
                    exps[i - 1] += int(power) if power else 1
                else:
                    coeff *= Fraction(factor)
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + coeff
        return cls(n_vars, terms)


def poly_arith(a: Polynomial, b, op: str) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError("unknown operation %r" % op)


def monomials(n_vars: int, degree: int) -> list:
    """All exponent vectors of the given total degree, in grlex-descending order."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n_vars), degree):
        e = [0] * n_vars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


# ---------------------------------------------------------------------------
# linear forms and lattice maps


def _int_multiple(v, w) -> bool:
    # v = c * w over Q, by cross-multiplication against a nonzero entry of w
    r = next((i for i, c in enumerate(w) if c), None)
    if r is None:
        return not any(v)
    return all(a * w[r] == v[r] * b for a, b in zip(v, w))


def congruent_mod(a: "LinearForm", b: "LinearForm", l: "LinearForm") -> bool:
    """a - b is a rational multiple of l."""
    if a._ints is not None and b._ints is not None and l._ints is not None:
        return _int_multiple(tuple(x - y for x, y in zip(a._ints, b._ints)), l._ints)
    return (a - b).is_multiple_of(l)


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple
    _ints: tuple | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        coeffs = tuple(as_rational(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        _check_nvars(len(coeffs))
        if all(c.denominator == 1 for c in coeffs):
            object.__setattr__(self, "_ints", tuple(c.numerator for c in coeffs))

    @classmethod
    def root(cls, n, a, b):
        """t_a - t_b, 1-based."""
        c = [0] * n
        c[a - 1] += 1
        c[b - 1] -= 1
        return cls(tuple(c))

    @classmethod
    def from_polynomial(cls, p: Polynomial):
        if p.is_zero():
            return cls((0,) * p.n_vars)
        if p.homogeneous_degree() != 1:
            raise ValueError("%s is not a linear form" % p)
        c = [0] * p.n_vars
        for e, v in p.items():
            c[e.index(1)] = v
        return cls(tuple(c))

    @property
    def n_vars(self):
        return len(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def is_sum_zero(self):
        return sum(self.coeffs) == 0

    def __neg__(self):
        return LinearForm(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return LinearForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c):
        c = as_rational(c)
        return LinearForm(tuple(c * a for a in self.coeffs))

    def is_multiple_of(self, other: "LinearForm") -> bool:
        """True iff self = c * other for some rational c (c = 0 allowed)."""
        if self._ints is not None and other._ints is not None:
            return _int_multiple(self._ints, other._ints)
        if other.is_zero():
            return self.is_zero()
        r = next(i for i, c in enumerate(other.coeffs) if c)
        ratio = self.coeffs[r] / other.coeffs[r]
        return all(a == ratio * b for a, b in zip(self.coeffs, other.coeffs))

    def is_proportional(self, other: "LinearForm") -> bool:
        """Linearly dependent pair (a zero form is dependent with everything)."""
        if self.is_zero() or other.is_zero():
            return True
        return self.is_multiple_of(other)

    def to_polynomial(self):
        return Polynomial.from_linear(self.coeffs)

    def __str__(self):
        return str(self.to_polynomial())


class LatticeMap:
    """Integral automorphism of H^2(BT) = {sum a_i t_i : sum a_i = 0}.

    Stored as an integer n x n matrix on the t-basis of H^2 of the big torus;
    column i is the image of t_i.  Only the restriction to the sum-zero
    sublattice is intrinsic, and equality/hashing use that restriction.
    """

    __slots__ = ("matrix", "n", "_restricted", "_images", "_signed_perm")

    def __init__(self, matrix):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        n = len(rows)
        _check_nvars(n)
        if any(len(r) != n for r in rows):
            raise ValueError("lattice map matrix must be square")
        for r_orig, r in zip(matrix, rows):
            if any(as_rational(a) != b for a, b in zip(r_orig, r)):
                raise ValueError("lattice map entries must be integers")
        colsums = {sum(rows[i][j] for i in range(n)) for j in range(n)}
        if len(colsums) > 1:
            raise ValueError("matrix does not preserve the sum-zero sublattice")
        self.matrix = rows
        self.n = n
        self._restricted = None
        self._images = None
        self._signed_perm = False
        if n > 1 and abs(determinant(self.restricted())) != 1:
            raise ValueError("restriction to the sum-zero sublattice is not unimodular")

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_permutation(cls, sigma: Sequence[int]):
        """t_i -> t_{sigma(i)}; ``sigma`` in 1-based one-line notation."""
        n = len(sigma)
        m = [[0] * n for _ in range(n)]
        for i, s in enumerate(sigma):
            m[s - 1][i] = 1
        return cls(m)

    @classmethod
    def from_restriction(cls, block):
        """Extend an (n-1)x(n-1) integer matrix on the basis t_i - t_n.

        The extension fixes t_1+...+t_n up to sign when that keeps the
        matrix integral (+ tried first); otherwise it fixes t_n.
        """
        k = len(block)
        n = k + 1
        # images of f_i = t_i - t_n as vectors in Z^n
        imgs = []
        for i in range(k):
            col = [as_rational(block[r][i]) for r in range(k)]
            imgs.append(col + [-sum(col)])
        for s in (1, -1):
            # M(sum t) = s * sum t and sum t = sum_i f_i + n t_n
            rest = [s - sum(imgs[i][r] for i in range(k)) for r in range(n)]
            col_n = [x / n for x in rest]
            if all(x.denominator == 1 for x in col_n):
                cols = [[f + c for f, c in zip(imgs[i], col_n)] for i in range(k)] + [col_n]
                break
        else:
            col_n = [Fraction(int(r == n - 1)) for r in range(n)]
            cols = [[f + c for f, c in zip(imgs[i], col_n)] for i in range(k)] + [col_n]
        return cls([[cols[j][i] for j in range(n)] for i in range(n)])

    def restricted(self):
        """Matrix of the map on the basis f_i = t_i - t_n of the sum-zero lattice."""
        if self._restricted is None:
            n, m = self.n, self.matrix
            self._restricted = tuple(
                tuple(m[r][i] - m[r][n - 1] for i in range(n - 1)) for r in range(n - 1)
            )
        return self._restricted

    def apply_vector(self, v: Sequence) -> tuple:
        return tuple(sum(self.matrix[r][i] * v[i] for i in range(self.n)) for r in range(self.n))

    def apply_form(self, l: LinearForm) -> LinearForm:
        return LinearForm(self.apply_vector(l.coeffs))

    def images(self):
        if self._images is None:
            n = self.n
            self._images = [Polynomial.from_linear([self.matrix[r][i] for r in range(n)])
                            for i in range(n)]
        return self._images

    def _signed_permutation(self):
        """[(target index, sign)] per column when every column is +-(a unit vector), else None."""
        if self._signed_perm is False:
            out = []
            for i in range(self.n):
                nz = [(r, self.matrix[r][i]) for r in range(self.n) if self.matrix[r][i]]
                if len(nz) != 1 or abs(nz[0][1]) != 1:
                    out = None
                    break
                out.append(nz[0])
            self._signed_perm = out
        return self._signed_perm

    def apply(self, p: Polynomial) -> Polynomial:
        if p.n_vars != self.n:
            raise ValueError("lattice map on %d variables applied to %d-variable polynomial"
                             % (self.n, p.n_vars))
        sp = self._signed_permutation()
        if sp is None:
            return p.substitute(self.images())
        # monomials map to monomials
        terms = {}
        for e, c in p.items():
            new = [0] * self.n
            neg = False
            for i, k in enumerate(e):
                if k:
                    r, s = sp[i]
                    new[r] = k
                    if s < 0 and k % 2:
                        neg = not neg
            terms[tuple(new)] = -c if neg else c
        return Polynomial._raw(self.n, terms)

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        """self o other."""
        return LatticeMap(mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "LatticeMap":
        inv = mat_inverse(self.matrix)
        return LatticeMap(inv)

    def is_identity(self):
        return all(self.restricted()[i][j] == int(i == j)
                   for i in range(self.n - 1) for j in range(self.n - 1))

    def __eq__(self, other):
        if not isinstance(other, LatticeMap):
            return NotImplemented
        return self.n == other.n and self.restricted() == other.restricted()

    def __hash__(self):
        return hash(self.restricted())

    def __repr__(self):
        return "LatticeMap(%r)" % (self.matrix,)


def apply_lattice_map(m: LatticeMap, p: Polynomial) -> Polynomial:
    return m.apply(p)


# ---------------------------------------------------------------------------
# divisibility and the T-lattice normal form


def _hyperplane_images(l: Sequence) -> list:
    """Substitution parametrizing l = 0: solve for the last nonzero variable."""
    n = len(l)
    r = max(i for i, c in enumerate(l) if c)
    images = [Polynomial.variable(n, i + 1) for i in range(n)]
    images[r] = Polynomial.from_linear(
        [Fraction(0) if i == r else -as_rational(c) / as_rational(l[r]) for i, c in enumerate(l)]
    )
    return images


def divisible_by_linear(p: Polynomial, l: LinearForm) -> bool:
    """True iff the linear form ``l`` divides ``p`` in Q[t_1..t_n]."""
    if l.is_zero():
        raise ValueError("cannot test divisibility by the zero form")
    if l.n_vars != p.n_vars:
        raise ValueError("mismatched variable counts")
    return p.substitute(_hyperplane_images(l.coeffs)).is_zero()


def normal_form_T(p: Polynomial) -> Polynomial:
    """Representative modulo t_1+...+t_n via t_n -> -(t_1+...+t_{n-1})."""
    n = p.n_vars
    images = [Polynomial.variable(n, i + 1) for i in range(n)]
    images[n - 1] = Polynomial.from_linear([-1] * (n - 1) + [0])
    return p.substitute(images)


# ---------------------------------------------------------------------------
# linear algebra over Q


def _content_normalize(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def integer_row(values: Mapping[int, object]) -> dict:
    """Clear denominators of a sparse rational row (scaling is harmless for row spaces)."""
    vals = {k: as_rational(v) for k, v in values.items() if v}
    den = 1
    for v in vals.values():
        den = lcm(den, v.denominator)
    return {k: int(v * den) for k, v in vals.items()}


class Echelon:
    """Incremental fraction-free reduced row echelon form.

    Rows are sparse ``{column: int}`` dicts.  Every stored row has a
    positive pivot, content 1, and zeros in all other pivot columns.
    Pivots go on unit entries in high columns by default; ``prefer_low``
    takes the lowest column instead (so an augmented rhs column is only
    a pivot for inconsistent systems).
    """

    def __init__(self, ncols: int, prefer_low: bool = False):
        self.ncols = ncols
        self.prefer_low = prefer_low
        self.rows: dict = {}
        # column -> pivots of the stored rows with a nonzero entry there
        self._occ: dict = {}

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, row: Mapping[int, int]) -> dict:
        row = {k: v for k, v in row.items() if v}
        hits = [c for c in row if c in self.rows]
        for c in hits:
            b = row.get(c)
            if not b:
                continue
            prow = self.rows[c]
            a = prow[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            if fa != 1:
                row = {k: fa * v for k, v in row.items()}
            for k, v in prow.items():
                nv = row.get(k, 0) - fb * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return _content_normalize(row) if row else row

    def add(self, row: Mapping[int, int]) -> bool:
        """Insert a row; returns False when it was already in the span."""
        row = self.reduce(row)
        if not row:
            return False
        if self.prefer_low:
            c = min(row)
        else:
            units = [k for k, v in row.items() if v in (1, -1)]
            c = max(units) if units else max(row)
        if row[c] < 0:
            row = {k: -v for k, v in row.items()}
        a = row[c]
        occ = self._occ
        for pc in list(occ.get(c, ())):
            prow = self.rows[pc]
            b = prow[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {k: fa * v for k, v in prow.items()} if fa != 1 else dict(prow)
            for k, v in row.items():
                nv = new.get(k, 0) - fb * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            new = _content_normalize(new)
            if new[pc] < 0:
                new = {k: -v for k, v in new.items()}
            for k in prow.keys() - new.keys():
                occ[k].discard(pc)
            for k in new.keys() - prow.keys():
                occ.setdefault(k, set()).add(pc)
            self.rows[pc] = new
        self.rows[c] = row
        for k in row:
            occ.setdefault(k, set()).add(c)
        return True

    def free_columns(self):
        return [c for c in range(self.ncols) if c not in self.rows]

    def kernel(self) -> list:
        """Sparse kernel basis ``[(free_col, {col: Fraction})]``, one vector per free column.

        The vector for free column f has a 1 at f, 0 at every other free
        column, so kernel coordinates of any null vector are its free entries.
        """
        free = self.free_columns()
        vecs = {f: {f: Fraction(1)} for f in free}
        for c, prow in self.rows.items():
            a = prow[c]
            for k, v in prow.items():
                if k != c:
                    vecs[k][c] = Fraction(-v, a)
        return [(f, vecs[f]) for f in free]

    def contains(self, row: Mapping[int, int]) -> bool:
        return not self.reduce(row)


def _rows_from_dense(matrix):
    rows = []
    ncols = None
    for r in matrix:
        r = list(r)
        if ncols is None:
            ncols = len(r)
        elif len(r) != ncols:
            raise ValueError("ragged matrix")
        rows.append(integer_row({j: v for j, v in enumerate(r)}))
    return rows, ncols or 0


def kernel_basis(matrix: Sequence[Sequence], ncols: int | None = None) -> list:
    """Exact basis of the right null space, as lists of Fractions."""
    rows, width = _rows_from_dense(matrix)
    if ncols is None:
        ncols = width
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    out = []
    for _, vec in ech.kernel():
        dense = [Fraction(0)] * ncols
        for k, v in vec.items():
            dense[k] = v
        out.append(dense)
    return out


def rank(matrix: Sequence[Sequence]) -> int:
    rows, width = _rows_from_dense(matrix)
    ech = Echelon(width)
    for r in rows:
        ech.add(r)
    return ech.rank


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Bareiss fraction-free determinant (rational input is scaled first)."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [[as_rational(x) for x in row] for row in matrix]
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    den = 1
    for row in m:
        for x in row:
            den = lcm(den, x.denominator)
    a = [[int(x * den) for x in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], den ** n)


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def mat_inverse(matrix: Sequence[Sequence]) -> list:
    """Gauss-Jordan inverse over Q; raises on a singular matrix."""
    n = len(matrix)
    aug = [[as_rational(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def solve(matrix: Sequence[Sequence], rhs: Sequence):
    """One solution x of matrix @ x = rhs, or None when inconsistent."""
    rows, ncols = _rows_from_dense([list(r) + [b] for r, b in zip(matrix, rhs)])
    ech = Echelon(ncols, prefer_low=True)
    for r in rows:
        ech.add(r)
    if (ncols - 1) in ech.rows:
        return None
    x = [Fraction(0)] * (ncols - 1)
    for c, prow in ech.rows.items():
        x[c] = Fraction(prow.get(ncols - 1, 0), prow[c])
    return x


def span_rank(vectors: Iterable[Sequence]) -> int:
    vectors = list(vectors)
    return rank(vectors) if vectors else 0
