"""Monomial Hochschild chains of ``A[1/f]`` and their operators.

A chain of degree ``n`` is a rational combination of tensors
``m_0 (x) ... (x) m_n`` of monomials, stored as ``{(m_0, ..., m_n): coeff}``.
PHH and MHH are cut out termwise by the x-part of the factor sum: the
product of the factors must lie in ``A`` (sum ``>= 0``) for PHH, or in
``MO = x^{1-r} A`` (sum ``>= 1 - r``) for MHH.  The second description is
how MHH = MO · PHH looks on monomial tensors: moving the MO factor onto
``m_0`` only changes the sum.
"""
import enum
from fractions import Fraction
from itertools import permutations
from math import factorial

from .forms import FormClass, LogForm, classify, merge_sign
from .modpair import format_monomial, parse_monomial


class ChainClass(enum.Enum):
    P_HH = "P"
    M_HH = "M"
    FULL_HH = "FULL"


class ChainElement:
    __slots__ = ("pair", "degree", "terms")

    def __init__(self, pair, degree, terms=None):
        self.pair = pair
        self.degree = degree
        s, nv = pair.s, pair.nvars
        clean = {}
        for factors, c in (terms or {}).items():
            factors = tuple(tuple(m) for m in factors)
            if len(factors) != degree + 1:
                raise ValueError(f"tensor with {len(factors)} factors in degree {degree}")
            for m in factors:
                if len(m) != nv or any(v < 0 for v in m[s:]):
                    raise ValueError(f"factor {m} not a monomial of A[1/f] for {pair}")
            c = Fraction(c)
            if c:
                clean[factors] = clean.get(factors, 0) + c
                if not clean[factors]:
                    del clean[factors]
        self.terms = clean

    @classmethod
    def _raw(cls, pair, degree, terms):
        obj = cls.__new__(cls)
        obj.pair, obj.degree, obj.terms = pair, degree, terms
        return obj

    @classmethod
    def zero(cls, pair, degree):
        return cls._raw(pair, degree, {})

    @classmethod
    def tensor(cls, pair, factors, coeff=1):
        return cls(pair, len(factors) - 1, {tuple(factors): coeff})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ChainElement):
            return NotImplemented
        if self.pair != other.pair:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.pair, self.degree, frozenset(self.terms.items())))

    def _combine(self, other, sign):
        if self.pair != other.pair:
            raise ValueError("chains over different pairs")
        if self.terms and other.terms and self.degree != other.degree:
            raise ValueError("adding chains of different degrees")
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key, 0) + sign * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        degree = self.degree if self.terms else other.degree
        return ChainElement._raw(self.pair, degree, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return ChainElement._raw(self.pair, self.degree, {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return ChainElement.zero(self.pair, self.degree)
        return ChainElement._raw(self.pair, self.degree, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def multidegrees(self):
        return {tensor_multidegree(k) for k in self.terms}

    def __repr__(self):
        return f"ChainElement({format_chain(self)})"


def _acc(out, key, val):
    val = out.get(key, 0) + val
    if val:
        out[key] = val
    else:
        out.pop(key, None)


def _mul(a, b):
    return tuple(u + v for u, v in zip(a, b))


def tensor_multidegree(factors):
    return tuple(map(sum, zip(*factors)))


def _face_tensor(f, i):
    n = len(f) - 1
    if i < n:
        return f[:i] + (_mul(f[i], f[i + 1]),) + f[i + 2:]
    return (_mul(f[n], f[0]),) + f[1:n]


def face(c, idx):
    n = c.degree
    if n < 1 or not 0 <= idx <= n:
        raise IndexError(f"face d_{idx} undefined in degree {n}")
    out = {}
    for f, v in c.terms.items():
        _acc(out, _face_tensor(f, idx), v)
    return ChainElement._raw(c.pair, n - 1, out)


def degeneracy(c, idx):
    n = c.degree
    if not 0 <= idx <= n:
        raise IndexError(f"degeneracy s_{idx} undefined in degree {n}")
    one = c.pair.one
    return ChainElement._raw(c.pair, n + 1,
                             {f[:idx + 1] + (one,) + f[idx + 1:]: v for f, v in c.terms.items()})


def hochschild_b(c):
    n = c.degree
    if n < 1:
        return ChainElement.zero(c.pair, n - 1)
    out = {}
    for f, v in c.terms.items():
        for i in range(n + 1):
            _acc(out, _face_tensor(f, i), -v if i & 1 else v)
    return ChainElement._raw(c.pair, n - 1, out)


def cyclic_t(c):
    """``m_0 (x) ... (x) m_n  ->  m_n (x) m_0 (x) ... (x) m_{n-1}``."""
    return ChainElement._raw(c.pair, c.degree, {f[-1:] + f[:-1]: v for f, v in c.terms.items()})


def connes_B(c):
    """``B = (1 - (-1)^{n+1} t_{n+1}) t_{n+1} s_n sum_i (-1)^{ni} t_n^i``."""
    n = c.degree
    one = c.pair.one
    # norm: sum_i (-1)^{ni} t^i
    normed = {}
    for f, v in c.terms.items():
        g = f
        for i in range(n + 1):
            _acc(normed, g, -v if (n * i) & 1 else v)
            g = g[-1:] + g[:-1]
    # t_{n+1} s_n puts the unit in front
    out = {}
    sign = -1 if (n + 1) & 1 else 1  # (-1)^{n+1}
    for f, v in normed.items():
        g = (one,) + f
        _acc(out, g, v)
        _acc(out, g[-1:] + g[:-1], -sign * v)
    return ChainElement._raw(c.pair, n + 1, out)


def _shuffles(p, q):
    """(p,q)-shuffles as (positions of the first block, sign)."""
    from itertools import combinations

    for first in combinations(range(p + q), p):
        # sign = parity of inversions between the blocks
        inv = 0
        for k, pos in enumerate(first):
            inv += pos - k
        yield first, (-1 if inv & 1 else 1)


def shuffle(c, d):
    """Shuffle product: factor 0 multiplies, the rest interleave with shuffle signs."""
    if c.pair != d.pair:
        raise ValueError("shuffle of chains over different pairs")
    p, q = c.degree, d.degree
    shuffles = list(_shuffles(p, q))
    out = {}
    for f, u in c.terms.items():
        for g, v in d.terms.items():
            head = _mul(f[0], g[0])
            for first, sign in shuffles:
                tail = [None] * (p + q)
                for k, pos in enumerate(first):
                    tail[pos] = f[k + 1]
                it = iter(g[1:])
                for pos in range(p + q):
                    if tail[pos] is None:
                        tail[pos] = next(it)
                _acc(out, (head,) + tuple(tail), sign * u * v)
    return ChainElement._raw(c.pair, p + q, out)


def classify_chain(c):
    p = c.pair
    s = p.s
    lower = p.mo_bound
    tight = ChainClass.P_HH
    for f in c.terms:
        for j in range(s):
            total = 0
            for m in f:
                total += m[j]
            if total < 0:
                if total < lower[j]:
                    return ChainClass.FULL_HH
                tight = ChainClass.M_HH
    return tight


def tensor_in_class(p, f, cls):
    """Termwise class predicate on one monomial tensor."""
    if cls is ChainClass.FULL_HH:
        return True
    lower = (0,) * p.s if cls is ChainClass.P_HH else p.mo_bound
    for j in range(p.s):
        if sum(m[j] for m in f) < lower[j]:
            return False
    return True


# -- HKR maps -------------------------------------------------------------------

def _d_monomial(p, m):
    """``d(m)`` as ``{(monomial, (letter,)): coeff}``."""
    s = p.s
    out = {}
    for a, e in enumerate(m):
        if not e:
            continue
        if a < s:
            out[(m, (a,))] = Fraction(e)
        else:
            out[(m[:a] + (e - 1,) + m[a + 1:], (a,))] = Fraction(e)
    return out


def hkr_e(c):
    """``e(m_0 (x) ... (x) m_n) = (1/n!) m_0 dm_1 ^ ... ^ dm_n``."""
    p = c.pair
    n = c.degree
    inv = Fraction(1, factorial(n))
    out = {}
    dcache = {}
    for f, v in c.terms.items():
        partial = {(f[0], ()): v * inv}
        for m in f[1:]:
            dm = dcache.get(m)
            if dm is None:
                dm = dcache[m] = _d_monomial(p, m)
            nxt = {}
            for (m1, l1), c1 in partial.items():
                for (m2, l2), c2 in dm.items():
                    a = l2[0]
                    if a in l1:
                        continue
                    sign = merge_sign(l1, l2)
                    _acc(nxt, (_mul(m1, m2), tuple(sorted(l1 + l2))), sign * c1 * c2)
            partial = nxt
            if not partial:
                break
        for key, val in partial.items():
            _acc(out, key, val)
    return LogForm._raw(p, n, out)


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def hkr_eps(w):
    """Antisymmetrization section of ``e``; defined on MΩ."""
    if classify(w) is FormClass.FULL:
        raise ValueError("hkr_eps needs a form in MΩ")
    p = w.pair
    s = p.s
    q = w.degree
    perms = [(perm, _perm_sign(perm)) for perm in permutations(range(q))]
    out = {}
    for (m, letters), c in w.terms.items():
        carrier = list(m)
        for a in letters:
            if a < s:
                carrier[a] -= 1
        carrier = tuple(carrier)
        unit_letters = []
        for a in letters:
            e = [0] * p.nvars
            e[a] = 1
            unit_letters.append(tuple(e))
        for perm, sign in perms:
            _acc(out, (carrier,) + tuple(unit_letters[i] for i in perm), sign * c)
    return ChainElement._raw(p, q, out)


def random_chain(p, rng, n, cls, n_terms, window):
    """Random chain whose terms lie in ``cls`` (factor 0 is shifted into range)."""
    lo, hi = window
    s = p.s
    lower = (0,) * s if cls is ChainClass.P_HH else p.mo_bound
    terms = {}
    for _ in range(n_terms):
        factors = [[int(rng.integers(lo, hi + 1)) for _ in range(s)]
                   + [int(rng.integers(max(lo, 0), max(hi, 0) + 1)) for _ in range(p.t)]
                   for _ in range(n + 1)]
        if cls is not ChainClass.FULL_HH:
            for j in range(s):
                total = sum(fac[j] for fac in factors)
                if total < lower[j]:
                    factors[0][j] += lower[j] - total + int(rng.integers(0, 2))
        key = tuple(tuple(fac) for fac in factors)
        c = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
        terms[key] = terms.get(key, 0) + c
    return ChainElement(p, n, terms)


# -- text syntax --------------------------------------------------------------

def format_tensor(p, f):
    return " (x) ".join(format_monomial(p, m) for m in f)


def format_chain(c):
    if not c.terms:
        return "0"
    parts = []
    for f, v in sorted(c.terms.items()):
        body = format_tensor(c.pair, f)
        parts.append(body if v == 1 else f"({v})*[{body}]")
    return " + ".join(parts)


def parse_chain(p, text):
    """Parse ``x1^-1*y1 (x) x1^2``, optionally ``(c)*[...] + ...`` sums."""
    text = text.strip()
    total = None
    for chunk in text.split("+"):
        chunk = chunk.strip()
        coeff = Fraction(1)
        if chunk.startswith("("):
            close = chunk.index(")")
            coeff = Fraction(chunk[1:close])
            chunk = chunk[close + 1:].lstrip("*").strip()
        if chunk.startswith("[") and chunk.endswith("]"):
            chunk = chunk[1:-1]
        factors = tuple(parse_monomial(p, part) for part in chunk.split("(x)"))
        term = ChainElement.tensor(p, factors, coeff)
        total = term if total is None else total + term
    return total
