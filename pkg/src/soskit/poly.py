"""Sparse multivariate polynomial arithmetic, calculus and text parsing.

A polynomial in ``n`` variables is stored as a map from exponent tuples to
float coefficients.  Exponents are exact integers, coefficients are 64-bit
floats; terms whose coefficient magnitude falls below ``COEFF_TOL`` are
dropped at construction time so float cancellation never leaves debris.

The canonical term order used everywhere (printing, monomial bases, Gram
indexing) is graded lexicographic: lower total degree first, and within a
degree block the lexicographically larger exponent vector first, so that
for two variables the order reads 1, x1, x2, x1^2, x1*x2, x2^2, ...

Text grammar (EBNF, whitespace insignificant):

    poly    = [sign] term { sign term } ;
    sign    = "+" | "-" ;
    term    = factor { ["*"] factor } ;
    factor  = number | name [ "^" integer ] ;
    number  = digits ["." digits] [("e"|"E") [sign] digits] | "." digits ;

Variable names must come from the caller-supplied ordered list.  The
canonical printer emits terms highest degree first with explicit ``*`` and
``repr``-exact coefficients, so print -> parse round-trips exactly.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

import numpy as np

Exponent = tuple[int, ...]

#: Coefficients with magnitude below this are treated as exact zeros.
COEFF_TOL = 1e-14


def grlex_key(alpha: Exponent):
    """Sort key realizing the graded-lex order described in the module docs."""
    return (sum(alpha), tuple(-a for a in alpha))


def _check_exponent(alpha: Exponent, n: int) -> None:
    if len(alpha) != n:
        raise ValueError(f"exponent {alpha} has length {len(alpha)}, expected {n}")
    if any(a < 0 or not isinstance(a, (int, np.integer)) for a in alpha):
        raise ValueError(f"exponent entries must be nonnegative integers: {alpha}")


class Polynomial:
    """Immutable sparse polynomial in ``n`` variables."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[Exponent, float] | None = None):
        if n < 1:
            raise ValueError("variable count must be >= 1")
        clean: dict[Exponent, float] = {}
        if terms:
            for alpha, c in terms.items():
                alpha = tuple(int(a) for a in alpha)
                _check_exponent(alpha, n)
                c = float(c)
                if abs(c) > COEFF_TOL:
                    clean[alpha] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):  # pragma: no cover - guards immutability
        raise AttributeError("Polynomial is immutable")

    # ---------------------------------------------------------------- constructors
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, c: float) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, j: int) -> "Polynomial":
        if not 0 <= j < n:
            raise IndexError(f"variable index {j} out of range for n={n}")
        alpha = [0] * n
        alpha[j] = 1
        return cls(n, {tuple(alpha): 1.0})

    @classmethod
    def monomial(cls, n: int, alpha: Exponent, c: float = 1.0) -> "Polynomial":
        return cls(n, {tuple(alpha): c})

    # ---------------------------------------------------------------- basic queries
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        return max((sum(a) for a in self.terms), default=0)

    def min_degree(self) -> int:
        """Smallest total degree among stored terms; 0 for the zero polynomial."""
        return min((sum(a) for a in self.terms), default=0)

    def coefficient(self, alpha: Exponent) -> float:
        return self.terms.get(tuple(alpha), 0.0)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def sorted_terms(self) -> list[tuple[Exponent, float]]:
        """Terms in ascending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    # ---------------------------------------------------------------- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0.0) + c
        return Polynomial(self.n, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __neg__(self):
        return Polynomial(self.n, {a: -c for a, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Polynomial(self.n, {a: c * float(other) for a, c in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, float] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out.get(key, 0.0) + ca * cb
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported")
        out = Polynomial.constant(self.n, 1.0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(self.sorted_terms())))

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Polynomial.constant(self.n, float(other))
        raise TypeError(f"cannot combine Polynomial with {type(other)!r}")

    # ---------------------------------------------------------------- evaluation
    def evaluate(self, point: Sequence[float]) -> float:
        if len(point) != self.n:
            raise ValueError(f"point has dimension {len(point)}, expected {self.n}")
        total = 0.0
        for alpha, c in self.terms.items():
            v = c
            for x, a in zip(point, alpha):
                if a:
                    v *= float(x) ** a
            total += v
        return total

    def __call__(self, *point) -> float:
        if len(point) == 1 and isinstance(point[0], (list, tuple, np.ndarray)):
            point = point[0]
        return self.evaluate(point)

    def eval_batch(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at many points at once; ``points`` is (m, n)."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.n:
            raise ValueError(f"points must be (m, {self.n})")
        if not self.terms:
            return np.zeros(pts.shape[0])
        alphas = np.array(list(self.terms.keys()), dtype=float)
        coeffs = np.array(list(self.terms.values()))
        # (m, T): product over variables of x_j ** alpha_tj
        mono = np.prod(pts[:, None, :] ** alphas[None, :, :], axis=2)
        return mono @ coeffs

    # ---------------------------------------------------------------- calculus
    def differentiate(self, j: int) -> "Polynomial":
        if not 0 <= j < self.n:
            raise IndexError(f"variable index {j} out of range for n={self.n}")
        out: dict[Exponent, float] = {}
        for alpha, c in self.terms.items():
            if alpha[j] == 0:
                continue
            beta = list(alpha)
            beta[j] -= 1
            key = tuple(beta)
            out[key] = out.get(key, 0.0) + c * alpha[j]
        return Polynomial(self.n, out)

    def gradient(self) -> list["Polynomial"]:
        return [self.differentiate(j) for j in range(self.n)]

    def hessian(self) -> "PolyMatrix":
        grads = self.gradient()
        rows = [[grads[i].differentiate(j) for j in range(self.n)] for i in range(self.n)]
        return PolyMatrix(rows)

    def compose_linear(self, A: np.ndarray) -> "Polynomial":
        """Return q with q(x) = p(Ax)."""
        A = np.asarray(A, dtype=float)
        if A.shape != (self.n, self.n):
            raise ValueError(f"matrix must be {self.n}x{self.n}, got {A.shape}")
        rows = [
            Polynomial(self.n, {tuple(int(i == j) for i in range(self.n)): A[r, j]
                                for j in range(self.n)})
            for r in range(self.n)
        ]
        out = Polynomial.zero(self.n)
        for alpha, c in self.terms.items():
            term = Polynomial.constant(self.n, c)
            for r, a in enumerate(alpha):
                if a:
                    term = term * (rows[r] ** a)
            out = out + term
        return out

    def top_component(self) -> "Polynomial":
        """Sum of the maximal-degree terms; errors on the zero polynomial."""
        if self.is_zero:
            raise ValueError("zero polynomial has no top component")
        d = self.degree()
        return Polynomial(self.n, {a: c for a, c in self.terms.items() if sum(a) == d})

    def is_homogeneous(self) -> bool:
        degs = {sum(a) for a in self.terms}
        return len(degs) <= 1

    # ---------------------------------------------------------------- printing
    def to_string(self, variables: Sequence[str] | None = None) -> str:
        if variables is None:
            variables = default_variables(self.n)
        elif len(variables) != self.n:
            raise ValueError("variable name list has wrong length")
        if not self.terms:
            return "0"
        parts: list[str] = []
        order = sorted(self.terms, key=lambda a: (-sum(a), tuple(-x for x in a)))
        for alpha, first in zip(order, [True] + [False] * len(order)):
            c = self.terms[alpha]
            mono = "*".join(
                name if a == 1 else f"{name}^{a}"
                for name, a in zip(variables, alpha) if a > 0
            )
            mag = abs(c)
            if not mono:
                body = repr(mag)
            elif mag == 1.0:
                body = mono
            else:
                body = f"{repr(mag)}*{mono}"
            if first:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.n}, {self.to_string()!r})"


def default_variables(n: int) -> list[str]:
    if n == 1:
        return ["x"]
    if n == 2:
        return ["x", "y"]
    if n == 3:
        return ["x", "y", "z"]
    return [f"x{i + 1}" for i in range(n)]


# -------------------------------------------------------------------- parsing

class PolyParseError(ValueError):
    """Syntax or name error while parsing polynomial text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[\^*+-]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse polynomial text against an ordered variable-name list."""
    n = len(variables)
    if n < 1:
        raise ValueError("need at least one variable name")
    index = {name: j for j, name in enumerate(variables)}
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial text", 0)

    terms: dict[Exponent, float] = {}
    i = 0

    def at_end() -> bool:
        return i >= len(tokens)

    while not at_end():
        sign = 1.0
        # leading signs of the term
        while not at_end() and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if at_end():
            raise PolyParseError("dangling sign", tokens[-1][2])
        coeff = sign
        alpha = [0] * n
        saw_factor = False
        while not at_end():
            kind, value, pos = tokens[i]
            if kind == "op":
                if value == "*":
                    i += 1
                    if at_end() or tokens[i][0] == "op":
                        raise PolyParseError("expected factor after '*'", pos)
                    continue
                break  # +/- ends the term
            if kind == "number":
                coeff *= float(value)
                i += 1
            else:  # name
                if value not in index:
                    raise PolyParseError(f"unknown variable {value!r}", pos)
                power = 1
                i += 1
                if not at_end() and tokens[i][0] == "op" and tokens[i][1] == "^":
                    i += 1
                    if at_end() or tokens[i][0] != "number":
                        raise PolyParseError("expected integer exponent after '^'", pos)
                    num = tokens[i][1]
                    if not num.isdigit():
                        raise PolyParseError(f"exponent must be a nonnegative integer, got {num!r}",
                                             tokens[i][2])
                    power = int(num)
                    i += 1
                alpha[index[value]] += power
            saw_factor = True
        if not saw_factor:
            raise PolyParseError("empty term", tokens[min(i, len(tokens) - 1)][2])
        key = tuple(alpha)
        terms[key] = terms.get(key, 0.0) + coeff
    return Polynomial(n, terms)


# -------------------------------------------------------------------- matrices

class PolyMatrix:
    """Symmetric square matrix with Polynomial entries."""

    __slots__ = ("p", "entries")

    def __init__(self, entries: Iterable[Iterable[Polynomial]]):
        rows = [list(r) for r in entries]
        p = len(rows)
        if any(len(r) != p for r in rows):
            raise ValueError("entries must form a square grid")
        if p == 0:
            raise ValueError("matrix must be nonempty")
        for i in range(p):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) differ: not symmetric")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, *_):  # pragma: no cover
        raise AttributeError("PolyMatrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def n(self) -> int:
        return self.entries[0][0].n

    def evaluate(self, point: Sequence[float]) -> np.ndarray:
        return np.array([[e.evaluate(point) for e in row] for row in self.entries])

    def __repr__(self):
        return f"PolyMatrix(p={self.p})"
