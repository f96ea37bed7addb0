"""Split finitely generated commutative monoids ``N^a (+) Z^b`` and repletion.

Elements are integer vectors of length ``a + b``: the first ``a`` coordinates
are the free ``N`` part, the rest the free ``Z`` part.  Group completion just
forgets the sign condition.  For a map ``P -> M`` the amalgamated sum of
``n`` copies of ``M`` over ``P`` has group completion
``(M^gp)^n / K`` with ``K = {(phi p_1, ..., phi p_n) : sum p_i = 0}``, and the
repletion of its fold map is the part whose coordinate sum lies in ``M``.
"""
import re
from dataclasses import dataclass

from .linalg import IntMatrix, smith_normal_form


@dataclass(frozen=True)
class FgAbMonoid:
    a: int
    b: int = 0

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("generator counts must be non-negative")

    @property
    def rank(self):
        return self.a + self.b

    def contains(self, g):
        if len(g) != self.rank:
            raise ValueError(f"vector of length {len(g)} for a rank-{self.rank} monoid")
        return all(v >= 0 for v in g[:self.a])

    def is_group(self):
        return self.a == 0

    def __str__(self):
        parts = []
        if self.a:
            parts.append(f"N^{self.a}")
        if self.b:
            parts.append(f"Z^{self.b}")
        return "+".join(parts) or "0"

    @classmethod
    def parse(cls, text):
        """Parse ``N^2+Z^1`` (``N``, ``Z`` alone mean exponent 1; ``0`` is trivial)."""
        a = b = 0
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls(0, 0)
        for part in text.split("+"):
            match = re.fullmatch(r"([NZ])(?:\^(\d+))?", part)
            if not match:
                raise ValueError(f"bad monoid summand {part!r}")
            k = int(match.group(2) or 1)
            if match.group(1) == "N":
                a += k
            else:
                b += k
        return cls(a, b)


def group_completion(m):
    return FgAbMonoid(0, m.rank)


@dataclass(frozen=True)
class MonoidMap:
    """``matrix`` has one column per source generator (target rank x source rank)."""
    source: FgAbMonoid
    target: FgAbMonoid
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise ValueError(f"map matrix must be {self.target.rank}x{self.source.rank}, "
                             f"got {self.matrix.shape}")
        for j in range(self.source.a):
            col = [self.matrix[i, j] for i in range(self.target.rank)]
            if any(v < 0 for v in col[:self.target.a]):
                raise ValueError(f"generator {j} of N-part maps outside the target monoid")
        for j in range(self.source.a, self.source.rank):
            # group generators must land in the unit group of the target
            if any(self.matrix[i, j] for i in range(self.target.a)):
                raise ValueError(f"Z-generator {j} must map into the group part of the target")

    def __call__(self, g):
        return self.matrix @ g

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, IntMatrix.zero(target.rank, source.rank))

    @classmethod
    def inclusion_of_group_part(cls, target):
        """``Z^b -> N^a + Z^b`` onto the group summand."""
        source = FgAbMonoid(0, target.b)
        rows = [[0] * target.b for _ in range(target.a)]
        rows += [[int(i == j) for j in range(target.b)] for i in range(target.b)]
        return cls(source, target, IntMatrix(rows, target.b))


def rep_membership(m, n, g):
    """Is ``(g_1, ..., g_n) in (M^gp)^n`` in the repletion, i.e. ``sum g_i in M``?"""
    g = [tuple(v) for v in g]
    if len(g) != n:
        raise ValueError(f"expected {n} components, got {len(g)}")
    for v in g:
        if len(v) != m.rank:
            raise ValueError(f"component {v} has wrong length for {m}")
    return m.contains(tuple(map(sum, zip(*g))) if g else (0,) * m.rank)


class Quotient:
    """``Z^rank / image(phi)`` presented through a Smith normal form.

    Canonical coordinates: ``(U g)_i mod d_i`` on the torsion/trivial slots
    (``d_i > 0``) and ``(U g)_i`` on the free slots.
    """

    def __init__(self, phi_matrix):
        self.rank = phi_matrix.rows
        u, d, v = smith_normal_form(phi_matrix)
        self.u = u
        self.u_inv = _unimodular_inverse(u)
        self.diag = [d[i, i] if i < d.cols else 0 for i in range(self.rank)]

    @property
    def invariant_factors(self):
        """Nontrivial torsion orders then a 0 for every free ``Z``."""
        tors = [x for x in self.diag if x > 1]
        free = [0 for x in self.diag if x == 0]
        return tors + free

    def coords(self, g):
        ug = self.u @ g
        return tuple(x % dd if dd > 0 else x for x, dd in zip(ug, self.diag))

    def lift(self, coords):
        return self.u_inv @ coords

    def contains_zero_class(self, g):
        return not any(self.coords(g))

    def add(self, c1, c2):
        return tuple((a + b) % dd if dd > 0 else a + b for a, b, dd in zip(c1, c2, self.diag))


def _unimodular_inverse(u):
    """Exact inverse of a unimodular integer matrix via Gauss-Jordan on ints."""
    n = u.rows
    aug = [row[:] + [int(i == j) for j in range(n)] for i, row in enumerate(u.data)]
    for col in range(n):
        # Euclid down the column until one pivot remains
        while True:
            nz = [r for r in range(col, n) if aug[r][col]]
            if not nz:
                raise ValueError("matrix is singular")
            piv = min(nz, key=lambda r: abs(aug[r][col]))
            aug[col], aug[piv] = aug[piv], aug[col]
            done = True
            for r in range(col + 1, n):
                if aug[r][col]:
                    q = aug[r][col] // aug[col][col]
                    aug[r] = [a - q * b for a, b in zip(aug[r], aug[col])]
                    if aug[r][col]:
                        done = False
            if done:
                break
        if abs(aug[col][col]) != 1:
            raise ValueError("matrix is not unimodular")
        if aug[col][col] < 0:
            aug[col] = [-a for a in aug[col]]
    for col in range(n - 1, -1, -1):
        for r in range(col):
            q = aug[r][col]
            if q:
                aug[r] = [a - q * b for a, b in zip(aug[r], aug[col])]
    return IntMatrix([row[n:] for row in aug], n)


@dataclass
class RepletionResult:
    """``(⊕_P^n M)^rep ≅ M ⊕ (M^gp / P^gp)^{n-1}`` with explicit maps.

    An element of the repletion is a tuple ``(g_1, ..., g_n)`` of vectors of
    ``M^gp`` with ``sum g_i in M``, taken modulo ``K``.  The image is
    ``(sum g_i, [g_2], ..., [g_n])`` with quotient classes in canonical
    coordinates.
    """
    monoid: FgAbMonoid
    phi: MonoidMap
    n: int
    quotient: Quotient

    @property
    def invariant_factors(self):
        return self.quotient.invariant_factors

    def contains(self, g):
        return rep_membership(self.monoid, self.n, g)

    def forward(self, g):
        g = [tuple(v) for v in g]
        if not self.contains(g):
            raise ValueError("element is not in the repletion")
        total = tuple(map(sum, zip(*g)))
        return (total,) + tuple(self.quotient.coords(v) for v in g[1:])

    def backward(self, image):
        total, classes = tuple(image[0]), image[1:]
        if not self.monoid.contains(total):
            raise ValueError("first component must lie in M")
        lifts = [self.quotient.lift(c) for c in classes]
        first = tuple(t - sum(vals) for t, vals in zip(total, zip(*lifts))) if lifts else total
        return (first,) + tuple(lifts)

    def equivalent(self, g, h):
        """Equality in ``(M^gp)^n / K``."""
        g = [tuple(v) for v in g]
        h = [tuple(v) for v in h]
        if tuple(map(sum, zip(*g))) != tuple(map(sum, zip(*h))):
            return False
        return all(self.quotient.contains_zero_class(tuple(a - b for a, b in zip(u, v)))
                   for u, v in zip(g, h))

    def add_image(self, x, y):
        total = tuple(a + b for a, b in zip(x[0], y[0]))
        return (total,) + tuple(self.quotient.add(c1, c2) for c1, c2 in zip(x[1:], y[1:]))


def repletion_iso(m, phi, n):
    """Repletion of the fold map ``⊕_P^n M -> M`` for ``phi: P -> M``."""
    if phi.target != m:
        raise ValueError("map target must be the monoid M")
    if n < 1:
        raise ValueError("need at least one summand")
    return RepletionResult(m, phi, n, Quotient(phi.matrix))


def replete_bar_predicate(p, n, tensor):
    """Monomial tensor lies in the replete bar construction for ``M = N^s ⊕ A^*``.

    ``n`` is the simplicial degree, so the tensor has ``n + 1`` factors.  Their
    x-exponent vectors form a tuple in ``(Z^s)^{n+1}``; the tensor is in the
    replete part when the sum lies in ``N^s`` (and y-exponents are
    non-negative, i.e. each factor lives in ``A[1/f]``).
    """
    tensor = [tuple(m) for m in tensor]
    if len(tensor) != n + 1:
        raise ValueError(f"expected {n + 1} factors in degree {n}, got {len(tensor)}")
    for m in tensor:
        if len(m) != p.nvars:
            raise ValueError(f"factor {m} does not match pair {p}")
        if any(v < 0 for v in m[p.s:]):
            return False
    return rep_membership(FgAbMonoid(p.s, 0), n + 1, [m[:p.s] for m in tensor])
