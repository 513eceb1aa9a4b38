"""Sparse multivariate polynomials over Q(i), plus maps and matrices of them.

A polynomial in n variables is a dict from exponent tuples (length n, one
non-negative integer per variable) to nonzero :class:`GaussianRational`
coefficients.  The zero polynomial has an empty term dict.  Canonical term
order is graded lexicographic (higher total degree first, then
lexicographically larger exponent tuple first), which fixes the printed
form and makes golden-file comparisons possible.

Variables render as x1..xn.  A term like (1+i)*x1*x2^2 renders with the
mixed coefficient parenthesized: ``(1+i)x1x2^2``.
"""

from __future__ import annotations

from .scalars import GaussianRational, ZERO, ONE, format_gaussian

Exponents = tuple[int, ...]

_ZERO_EXP_CACHE: dict[int, Exponents] = {}


def _zero_exp(nvars: int) -> Exponents:
    exp = _ZERO_EXP_CACHE.get(nvars)
    if exp is None:
        exp = (0,) * nvars
        _ZERO_EXP_CACHE[nvars] = exp
    return exp


class ArityMismatchError(ValueError):
    """Operands live in polynomial rings with different variable counts."""


class UnsupportedSizeError(ValueError):
    """Determinant size above the cofactor cap; use the nilpotency route."""


def _grlex_key(exps: Exponents) -> tuple[int, Exponents]:
    return (sum(exps), exps)


class Polynomial:
    """Sparse polynomial over Q(i) in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Exponents, GaussianRational] | None = None):
        self.nvars = nvars
        self.terms = {} if terms is None else {e: c for e, c in terms.items() if c}

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponents, GaussianRational]) -> "Polynomial":
        # terms must already be canonical (no zero coefficients).
        out = object.__new__(cls)
        out.nvars = nvars
        out.terms = terms
        return out

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, ONE)

    @classmethod
    def constant(cls, nvars: int, value) -> "Polynomial":
        value = value if isinstance(value, GaussianRational) else GaussianRational(value)
        if not value:
            return cls._raw(nvars, {})
        return cls._raw(nvars, {_zero_exp(nvars): value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls._raw(nvars, {tuple(exp): ONE})

    @classmethod
    def linear_form(cls, coeffs) -> "Polynomial":
        """Sum of coeffs[j] * x_{j+1} over all j with nonzero coefficient."""
        coeffs = list(coeffs)
        nvars = len(coeffs)
        terms: dict[Exponents, GaussianRational] = {}
        for j, c in enumerate(coeffs):
            if not isinstance(c, GaussianRational):
                c = GaussianRational(c)
            if c:
                exp = [0] * nvars
                exp[j] = 1
                terms[tuple(exp)] = c
        return cls._raw(nvars, terms)

    # -- predicates and measures ---------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Maximum term degree; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- ring operations -----------------------------------------------

    def _check_arity(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ArityMismatchError(
                f"polynomials in {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_arity(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e)
            if acc is None:
                out[e] = c
            else:
                acc = acc + c
                if acc:
                    out[e] = acc
                else:
                    del out[e]
        return Polynomial._raw(self.nvars, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check_arity(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e)
            if acc is None:
                out[e] = -c
            else:
                acc = acc - c
                if acc:
                    out[e] = acc
                else:
                    del out[e]
        return Polynomial._raw(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return self.mul(other)

    def mul(self, other: "Polynomial", truncate_above: int | None = None) -> "Polynomial":
        """Exact product; with ``truncate_above`` set, terms of total degree
        above the cap are dropped (and never computed: term lists are walked
        in increasing degree with early exit)."""
        self._check_arity(other)
        out: dict[Exponents, GaussianRational] = {}
        if not self.terms or not other.terms:
            return Polynomial._raw(self.nvars, out)
        if truncate_above is None:
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    e = tuple(x + y for x, y in zip(ea, eb))
                    c = ca * cb
                    acc = out.get(e)
                    if acc is None:
                        out[e] = c
                    else:
                        acc = acc + c
                        if acc:
                            out[e] = acc
                        else:
                            del out[e]
            return Polynomial._raw(self.nvars, out)
        cap = truncate_above
        a_sorted = sorted(self.terms.items(), key=lambda kv: sum(kv[0]))
        b_sorted = sorted(other.terms.items(), key=lambda kv: sum(kv[0]))
        b_degrees = [sum(e) for e, _ in b_sorted]
        min_b = b_degrees[0]
        for ea, ca in a_sorted:
            da = sum(ea)
            if da + min_b > cap:
                break
            limit = cap - da
            for (eb, cb), db in zip(b_sorted, b_degrees):
                if db > limit:
                    break
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                acc = out.get(e)
                if acc is None:
                    out[e] = c
                else:
                    acc = acc + c
                    if acc:
                        out[e] = acc
                    else:
                        del out[e]
        return Polynomial._raw(self.nvars, out)

    def scale(self, value: GaussianRational) -> "Polynomial":
        if not value:
            return Polynomial._raw(self.nvars, {})
        return Polynomial._raw(self.nvars, {e: value * c for e, c in self.terms.items()})

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.nvars)
        for _ in range(exponent):
            result = result * self
        return result

    def cube(self, truncate_above: int | None = None) -> "Polynomial":
        sq = self.mul(self, truncate_above)
        return sq.mul(self, truncate_above)

    # -- calculus / evaluation -----------------------------------------

    def diff(self, var: int) -> "Polynomial":
        """Exact partial derivative with respect to x_{var+1}."""
        if not 0 <= var < self.nvars:
            raise ValueError(f"variable index {var} out of range")
        out: dict[Exponents, GaussianRational] = {}
        for e, c in self.terms.items():
            k = e[var]
            if k == 0:
                continue
            new_e = e[:var] + (k - 1,) + e[var + 1:]
            coeff = c * k
            acc = out.get(new_e)
            out[new_e] = coeff if acc is None else acc + coeff
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if c})

    def evaluate(self, point) -> GaussianRational:
        """Exact value at a point (sequence of n GaussianRationals)."""
        point = [p if isinstance(p, GaussianRational) else GaussianRational(p) for p in point]
        if len(point) != self.nvars:
            raise ArityMismatchError(
                f"point of length {len(point)} for {self.nvars} variables"
            )
        powers: list[dict[int, GaussianRational]] = [{0: ONE} for _ in range(self.nvars)]

        def var_power(j: int, k: int) -> GaussianRational:
            cache = powers[j]
            value = cache.get(k)
            if value is None:
                value = var_power(j, k - 1) * point[j]
                cache[k] = value
            return value

        total = ZERO
        for e, c in self.terms.items():
            term = c
            for j, k in enumerate(e):
                if k:
                    term = term * var_power(j, k)
            total = total + term
        return total

    def truncate(self, max_degree: int) -> "Polynomial":
        """Drop every term of total degree above ``max_degree``."""
        return Polynomial._raw(
            self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= max_degree}
        )

    # -- rendering -----------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponents, GaussianRational]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def to_text(self) -> str:
        """Canonical graded-lex text form, e.g. ``x1^3+3x1^2x2-2i``."""
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for e, c in self.sorted_terms():
            monomial = "".join(
                f"x{j + 1}" if k == 1 else f"x{j + 1}^{k}"
                for j, k in enumerate(e)
                if k
            )
            text = format_gaussian(c)
            if monomial:
                if text == "1":
                    coeff = ""
                elif text == "-1":
                    coeff = "-"
                elif c.re and c.im:
                    coeff = f"({text})"
                else:
                    coeff = text
                piece = coeff + monomial
            else:
                piece = f"({text})" if c.re and c.im else text
            if pieces and not piece.startswith("-"):
                pieces.append("+")
            pieces.append(piece)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.to_text()!r})"


def linear_combination(coeffs, polys, nvars: int) -> Polynomial:
    """Sum coeffs[k] * polys[k]; exact, zero coefficients skipped."""
    total = Polynomial.zero(nvars)
    for c, p in zip(coeffs, polys):
        if c:
            total = total + p.scale(c)
    return total


def cube_linear_form(row) -> Polynomial:
    """Expand (sum_j row[j] * x_{j+1})^3 via multinomial coefficients 1/3/6."""
    row = [c if isinstance(c, GaussianRational) else GaussianRational(c) for c in row]
    nvars = len(row)
    nonzero = [(j, c) for j, c in enumerate(row) if c]
    terms: dict[Exponents, GaussianRational] = {}
    for a in range(len(nonzero)):
        ja, ca = nonzero[a]
        for b in range(a, len(nonzero)):
            jb, cb = nonzero[b]
            for d in range(b, len(nonzero)):
                jd, cd = nonzero[d]
                if a == b == d:
                    mult = 1
                elif a == b or b == d:
                    mult = 3
                else:
                    mult = 6
                exp = [0] * nvars
                exp[ja] += 1
                exp[jb] += 1
                exp[jd] += 1
                coeff = ca * cb * cd
                if mult != 1:
                    coeff = coeff * mult
                key = tuple(exp)
                acc = terms.get(key)
                terms[key] = coeff if acc is None else acc + coeff
    return Polynomial._raw(nvars, {e: c for e, c in terms.items() if c})


class PolyMap:
    """A tuple of polynomials sharing one ambient variable count.

    ``dimension`` is the number of components, ``nvars`` the arity.  Square
    maps (dimension == nvars) are the usual case; rectangular maps appear
    as linear projections during reduction.
    """

    __slots__ = ("components", "nvars")

    def __init__(self, components, nvars: int | None = None):
        components = tuple(components)
        if nvars is None:
            if not components:
                raise ValueError("empty map needs an explicit variable count")
            nvars = components[0].nvars
        for p in components:
            if p.nvars != nvars:
                raise ArityMismatchError("components with mixed variable counts")
        self.components = components
        self.nvars = nvars

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls([Polynomial.variable(n, i) for i in range(n)], nvars=n)

    @property
    def dimension(self) -> int:
        return len(self.components)

    def is_identity(self) -> bool:
        if self.dimension != self.nvars:
            return False
        return all(
            p == Polynomial.variable(self.nvars, i) for i, p in enumerate(self.components)
        )

    def max_degree(self) -> int:
        if not self.components:
            return 0
        return max(p.total_degree() for p in self.components)

    def evaluate(self, point) -> list[GaussianRational]:
        return [p.evaluate(point) for p in self.components]

    def truncate(self, max_degree: int) -> "PolyMap":
        return PolyMap([p.truncate(max_degree) for p in self.components], nvars=self.nvars)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.nvars == other.nvars and self.components == other.components

    def __repr__(self) -> str:
        body = ", ".join(p.to_text() for p in self.components)
        return f"PolyMap[{body}]"


def _power_product(
    exps: Exponents,
    inner: PolyMap,
    cap: int | None,
    memo: dict[Exponents, Polynomial],
) -> Polynomial:
    cached = memo.get(exps)
    if cached is not None:
        return cached
    # peel one factor off the last nonzero slot so chains share prefixes
    j = len(exps) - 1
    while exps[j] == 0:
        j -= 1
    parent = exps[:j] + (exps[j] - 1,) + exps[j + 1:]
    value = _power_product(parent, inner, cap, memo).mul(inner.components[j], cap)
    memo[exps] = value
    return value


def compose_polynomial(
    outer: Polynomial,
    inner: PolyMap,
    truncate_above: int | None = None,
    _memo: dict[Exponents, Polynomial] | None = None,
) -> Polynomial:
    """Substitute inner's components for outer's variables."""
    if outer.nvars != inner.dimension:
        raise ArityMismatchError(
            f"outer arity {outer.nvars} vs inner dimension {inner.dimension}"
        )
    memo = _memo if _memo is not None else {}
    if not memo:
        memo[_zero_exp(outer.nvars)] = Polynomial.one(inner.nvars)
    total = Polynomial.zero(inner.nvars)
    for e, c in sorted(outer.terms.items(), key=lambda kv: _grlex_key(kv[0])):
        total = total + _power_product(e, inner, truncate_above, memo).scale(c)
    if truncate_above is not None:
        total = total.truncate(truncate_above)
    return total


def compose(outer: PolyMap, inner: PolyMap, truncate_above: int | None = None) -> PolyMap:
    """Exact map composition outer(inner(X)); optional degree truncation is
    applied after every multiplication, bounding intermediate swell."""
    if truncate_above is not None and truncate_above < 1:
        raise ValueError("truncate_above must be at least 1")
    if outer.nvars != inner.dimension:
        raise ArityMismatchError(
            f"outer arity {outer.nvars} vs inner dimension {inner.dimension}"
        )
    memo: dict[Exponents, Polynomial] = {}
    return PolyMap(
        [compose_polynomial(p, inner, truncate_above, memo) for p in outer.components],
        nvars=inner.nvars,
    )


class PolyMatrix:
    """Rectangular grid of polynomials sharing one ambient variable count."""

    __slots__ = ("entries", "nvars")

    def __init__(self, entries, nvars: int | None = None):
        entries = tuple(tuple(row) for row in entries)
        width = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != width:
                raise ValueError("ragged polynomial matrix")
        if nvars is None:
            if not entries or not entries[0]:
                raise ValueError("empty matrix needs an explicit variable count")
            nvars = entries[0][0].nvars
        for row in entries:
            for p in row:
                if p.nvars != nvars:
                    raise ArityMismatchError("entries with mixed variable counts")
        self.entries = entries
        self.nvars = nvars

    @classmethod
    def identity(cls, n: int, nvars: int) -> "PolyMatrix":
        one = Polynomial.one(nvars)
        zero = Polynomial.zero(nvars)
        return cls(
            [[one if i == j else zero for j in range(n)] for i in range(n)], nvars=nvars
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.nvars == other.nvars and self.entries == other.entries

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in polynomial matrix addition")
        return PolyMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            nvars=self.nvars,
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in polynomial matrix subtraction")
        return PolyMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            nvars=self.nvars,
        )

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in polynomial matrix product")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Polynomial.zero(self.nvars)
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, nvars=self.nvars)

    def power(self, k: int) -> "PolyMatrix":
        if not self.is_square():
            raise ValueError("power of a non-square polynomial matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = PolyMatrix.identity(self.rows, self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def evaluate(self, point):
        """Entrywise evaluation; returns a grid of GaussianRationals."""
        return [[p.evaluate(point) for p in row] for row in self.entries]

    def __repr__(self) -> str:
        body = "; ".join(
            ", ".join(p.to_text() for p in row) for row in self.entries
        )
        return f"PolyMatrix[{body}]"


def jacobian(F: PolyMap) -> PolyMatrix:
    """Matrix of partial derivatives, entry (i, j) = d F_i / d x_{j+1}."""
    return PolyMatrix(
        [[p.diff(j) for j in range(F.nvars)] for p in F.components], nvars=F.nvars
    )


_DET_SIZE_CAP = 6


def det(M: PolyMatrix) -> Polynomial:
    """Exact determinant by cofactor expansion with memoized column subsets.

    Feasible only for small sizes; above the cap callers should test
    Jacobians through nilpotency instead.
    """
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n > _DET_SIZE_CAP:
        raise UnsupportedSizeError(
            f"determinant capped at {_DET_SIZE_CAP}x{_DET_SIZE_CAP} "
            f"(got {n}x{n}); use the nilpotency route for larger Jacobians"
        )
    if n == 0:
        return Polynomial.one(M.nvars)
    memo: dict[tuple[int, ...], Polynomial] = {}

    def expand(cols: tuple[int, ...]) -> Polynomial:
        cached = memo.get(cols)
        if cached is not None:
            return cached
        row_index = n - len(cols)
        if len(cols) == 1:
            value = M.entries[row_index][cols[0]]
        else:
            value = Polynomial.zero(M.nvars)
            for k, col in enumerate(cols):
                entry = M.entries[row_index][col]
                if not entry.terms:
                    continue
                minor = expand(cols[:k] + cols[k + 1:])
                term = entry * minor
                value = value + term if k % 2 == 0 else value - term
        memo[cols] = value
        return value

    return expand(tuple(range(n)))
