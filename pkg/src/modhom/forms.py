"""Log differential forms on ``A[1/f]`` for the monomial local model.

A basis term is a pair ``(m, L)``: an exponent tuple ``m`` and an ascending
tuple ``L`` of *letters*.  Letter ``j < s`` stands for ``dlog x_{j+1}`` and
letter ``s + l`` for ``dy_{l+1}``, so ``L`` lists the dlog factors first and
then the dy factors, both ascending.  In this basis PΩ and MΩ are cut out by
exponent bounds on the x-part of ``m``: ``i >= 0`` and ``i >= 1 - r``.
"""
import enum
from fractions import Fraction
from itertools import combinations

from .modpair import format_monomial, parse_monomial


class FormClass(enum.Enum):
    P_OMEGA = "P"
    M_OMEGA = "M"
    FULL = "FULL"


def class_lower_bound(p, cls):
    """x-exponent lower bound of a class, ``None`` for FULL."""
    if cls is FormClass.P_OMEGA:
        return (0,) * p.s
    if cls is FormClass.M_OMEGA:
        return p.mo_bound
    return None


def merge_sign(a, b):
    """Sign of sorting the concatenation ``a + b`` of two ascending tuples; 0 on overlap."""
    inversions = 0
    for u in a:
        for v in b:
            if u == v:
                return 0
            if v < u:
                inversions += 1
    return -1 if inversions & 1 else 1


class LogForm:
    """Finite rational combination of basis terms of one degree."""

    __slots__ = ("pair", "degree", "terms")

    def __init__(self, pair, degree, terms=None):
        self.pair = pair
        self.degree = degree
        clean = {}
        s, n = pair.s, pair.nvars
        for (m, letters), c in (terms or {}).items():
            m, letters = tuple(m), tuple(letters)
            if len(letters) != degree:
                raise ValueError(f"term with {len(letters)} factors in a {degree}-form")
            if len(m) != n or any(v < 0 for v in m[s:]):
                raise ValueError(f"exponent tuple {m} not in A[1/f] for {pair}")
            if list(letters) != sorted(set(letters)) or any(not 0 <= a < n for a in letters):
                raise ValueError(f"letters {letters} must be ascending and distinct")
            c = Fraction(c)
            if c:
                clean[(m, letters)] = c
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
    def monomial(cls, pair, m, letters=(), coeff=1):
        return cls(pair, len(letters), {(tuple(m), tuple(letters)): coeff})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, LogForm):
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
            raise ValueError("forms over different pairs")
        if self.terms and other.terms and self.degree != other.degree:
            raise ValueError("adding forms of different degrees")
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key, 0) + sign * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        degree = self.degree if self.terms else other.degree
        return LogForm._raw(self.pair, degree, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return LogForm._raw(self.pair, self.degree, {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return LogForm.zero(self.pair, self.degree)
        return LogForm._raw(self.pair, self.degree, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def multidegrees(self):
        return {term_multidegree(self.pair, key) for key in self.terms}

    def __repr__(self):
        return f"LogForm({format_form(self)})"


def term_multidegree(p, key):
    m, letters = key
    deg = list(m)
    for a in letters:
        if a >= p.s:
            deg[a] += 1
    return tuple(deg)


def classify(w):
    """Tightest of P_OMEGA ⊆ M_OMEGA ⊆ FULL containing every term of ``w``."""
    p = w.pair
    s = p.s
    lower = p.mo_bound
    tight = FormClass.P_OMEGA
    for m, _ in w.terms:
        for j in range(s):
            if m[j] < 0:
                if m[j] < lower[j]:
                    return FormClass.FULL
                tight = FormClass.M_OMEGA
    return tight


def wedge(w, v):
    if w.pair != v.pair:
        raise ValueError("wedge of forms over different pairs")
    out = {}
    for (m1, l1), c1 in w.terms.items():
        for (m2, l2), c2 in v.terms.items():
            sign = merge_sign(l1, l2)
            if not sign:
                continue
            key = (tuple(a + b for a, b in zip(m1, m2)), tuple(sorted(l1 + l2)))
            val = out.get(key, 0) + sign * c1 * c2
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return LogForm._raw(w.pair, w.degree + v.degree, out)


def de_rham_d(w):
    """Exterior derivative; ``dlog x_j`` and ``dy_l`` are closed."""
    p = w.pair
    s, n = p.s, p.nvars
    out = {}

    def add(key, val):
        val = out.get(key, 0) + val
        if val:
            out[key] = val
        else:
            out.pop(key, None)

    for (m, letters), c in w.terms.items():
        for a in range(n):
            e = m[a]
            if not e or a in letters:
                continue
            # new factor goes in front, then sorted into place
            pos = sum(1 for b in letters if b < a)
            sign = -1 if pos & 1 else 1
            new_letters = letters[:pos] + (a,) + letters[pos:]
            if a < s:
                add((m, new_letters), sign * e * c)
            else:
                m2 = m[:a] + (e - 1,) + m[a + 1:]
                add((m2, new_letters), sign * e * c)
    return LogForm._raw(p, w.degree + 1, out)


def basis_of(p, cls, q, deg):
    """Basis terms of the class in form degree ``q`` and multidegree ``deg``.

    Ordered by the letter tuple (dlog factors before dy factors); within a
    fixed multidegree the letters determine the monomial.
    """
    if cls is FormClass.FULL:
        raise ValueError("the ambient class has no finite basis enumeration here")
    deg = tuple(deg)
    if len(deg) != p.nvars:
        raise ValueError(f"multidegree {deg} does not match pair {p}")
    if any(v < 0 for v in deg[p.s:]):
        raise ValueError(f"multidegree {deg} has a negative y-part")
    if q < 0 or q > p.nvars:
        return []
    lower = class_lower_bound(p, cls)
    if any(v < b for v, b in zip(deg, lower)):
        return []
    # dy_l needs y-degree >= 1 in coordinate l
    allowed = list(range(p.s)) + [p.s + l for l in range(p.t) if deg[p.s + l] >= 1]
    out = []
    for letters in combinations(allowed, q):
        m = list(deg)
        for a in letters:
            if a >= p.s:
                m[a] -= 1
        out.append((tuple(m), letters))
    return out


def basis_form(p, key, coeff=1):
    return LogForm.monomial(p, key[0], key[1], coeff)


def random_form(p, rng, q, cls, n_terms, window):
    """Random form of degree ``q`` whose terms satisfy the class bound."""
    lo, hi = window
    lower = class_lower_bound(p, cls) or (lo,) * p.s
    terms = {}
    if q > p.nvars:
        return LogForm.zero(p, q)
    for _ in range(n_terms):
        letters = tuple(sorted(int(a) for a in rng.choice(p.nvars, size=q, replace=False))) if q else ()
        m = tuple(int(rng.integers(max(lo, lower[j]), max(hi, lower[j]) + 1)) for j in range(p.s)) + \
            tuple(int(rng.integers(0, max(hi, 0) + 1)) for _ in range(p.t))
        c = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4)))
        terms[(m, letters)] = terms.get((m, letters), 0) + c
    return LogForm(p, q, terms)


# -- text syntax --------------------------------------------------------------

def _letter_name(p, a):
    return f"dlogx{a + 1}" if a < p.s else f"dy{a - p.s + 1}"


def format_term(p, key, coeff=1):
    m, letters = key
    parts = []
    coeff = Fraction(coeff)
    if coeff != 1:
        parts.append(f"({coeff})")
    mono = format_monomial(p, m)
    if mono != "1" or not letters:
        parts.append(mono)
    parts.extend(_letter_name(p, a) for a in letters)
    return "*".join(parts)


def format_form(w):
    if not w.terms:
        return "0"
    return " + ".join(format_term(w.pair, key, c) for key, c in sorted(w.terms.items()))


def parse_form(p, text):
    """Parse e.g. ``(-1)*x1^-1*dlogx1 + y1*dy2``; letters multiply as a wedge."""
    text = text.strip()
    if text == "0":
        return LogForm.zero(p, 0)
    total = None
    for chunk in text.split("+"):
        coeff = Fraction(1)
        mono_parts = []
        letters = []
        for factor in chunk.strip().split("*"):
            factor = factor.strip()
            if factor.startswith("(") and factor.endswith(")"):
                coeff *= Fraction(factor[1:-1])
            elif factor.startswith("dlogx"):
                j = int(factor[5:])
                if not 1 <= j <= p.s:
                    raise ValueError(f"{factor} not in pair {p}")
                letters.append(j - 1)
            elif factor.startswith("dy"):
                l = int(factor[2:])
                if not 1 <= l <= p.t:
                    raise ValueError(f"{factor} not in pair {p}")
                letters.append(p.s + l - 1)
            elif factor and (factor[0].isdigit() or factor[0] == "-"):
                coeff *= Fraction(factor)
            else:
                mono_parts.append(factor)
        m = parse_monomial(p, "*".join(mono_parts))
        term = LogForm.monomial(p, m, (), coeff)
        for a in letters:
            term = wedge(term, LogForm.monomial(p, p.one, (a,)))
        total = term if total is None else total + term
    return total
