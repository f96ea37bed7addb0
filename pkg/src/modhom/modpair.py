"""The local model ``(A, f) = (k[x_1..x_s, y_1..y_t], x_1^{r_1} ... x_s^{r_s})``.

Monomials of ``A[1/f]`` are plain integer tuples of length ``s + t``: the
``s`` x-exponents first (any sign), then the ``t`` y-exponents (``>= 0``).
Coefficients live outside the monomial, in forms and chains, so the unit
group of ``A`` never has to be represented here.  A multidegree is the same
kind of tuple; the multidegree of a monomial is its exponent vector.
"""
import re
from dataclasses import dataclass


@dataclass(frozen=True)
class ModulusPair:
    s: int
    t: int
    r: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(v) for v in self.r))
        if self.s < 0 or self.t < 0:
            raise ValueError("variable counts must be non-negative")
        if len(self.r) != self.s:
            raise ValueError(f"expected {self.s} multiplicities, got {len(self.r)}")
        if any(v < 1 for v in self.r):
            raise ValueError("multiplicities must be positive")

    @classmethod
    def of(cls, s, t, r=None):
        """Build a pair; ``r`` defaults to all ones."""
        return cls(s, t, tuple(r) if r is not None else (1,) * s)

    @property
    def nvars(self):
        return self.s + self.t

    @property
    def mo_bound(self):
        """Lower bound ``1 - r`` on x-exponents of elements of MO(A, f)."""
        return tuple(1 - v for v in self.r)

    @property
    def one(self):
        return (0,) * (self.s + self.t)

    def to_dict(self):
        return {"s": self.s, "t": self.t, "r": list(self.r)}

    def __str__(self):
        return f"(s={self.s}, t={self.t}, r={list(self.r)})"


def _check(p, m):
    if len(m) != p.nvars:
        raise ValueError(f"monomial {m!r} has {len(m)} exponents, pair {p} needs {p.nvars}")


def monomial(p, i=(), k=()):
    """Assemble an exponent tuple from x-exponents ``i`` and y-exponents ``k``."""
    i, k = tuple(i), tuple(k)
    if len(i) != p.s or len(k) != p.t:
        raise ValueError(f"pair {p} needs {p.s} x- and {p.t} y-exponents")
    return i + k


def split(p, m):
    """Return ``(i, k)``."""
    _check(p, m)
    return m[:p.s], m[p.s:]


def in_localization(p, m):
    _check(p, m)
    return all(v >= 0 for v in m[p.s:])


def in_ring(p, m):
    _check(p, m)
    return all(v >= 0 for v in m)


def is_unit_monomial(p, m):
    _check(p, m)
    return not any(m[p.s:])


def in_MO(p, m):
    """Membership in ``sqrt(f)/f = x^{1-r} A``."""
    _check(p, m)
    return (all(v >= 1 - r for v, r in zip(m, p.r))
            and all(v >= 0 for v in m[p.s:]))


def multidegree_of(m):
    return tuple(m)


def mul(a, b):
    return tuple(u + v for u, v in zip(a, b))


def in_class_bound(p, exps, lower):
    """``exps`` x-part meets ``lower`` componentwise and its y-part is non-negative."""
    s = p.s
    for j in range(s):
        if exps[j] < lower[j]:
            return False
    for v in exps[s:]:
        if v < 0:
            return False
    return True


# -- text syntax --------------------------------------------------------------

_VAR = re.compile(r"^([xy])(\d+)(?:\^(-?\d+))?$")


def variable_names(p):
    return [f"x{j + 1}" for j in range(p.s)] + [f"y{l + 1}" for l in range(p.t)]


def parse_monomial(p, text):
    """Parse ``x1^-2*x2^3*y1^1``; ``1`` (or empty) is the unit monomial."""
    exps = [0] * p.nvars
    text = text.strip()
    if text in ("", "1"):
        return tuple(exps)
    for factor in text.split("*"):
        factor = factor.strip()
        if factor == "1":
            continue
        match = _VAR.match(factor)
        if not match:
            raise ValueError(f"bad monomial factor {factor!r}")
        kind, idx, power = match.group(1), int(match.group(2)), match.group(3)
        power = 1 if power is None else int(power)
        count = p.s if kind == "x" else p.t
        if not 1 <= idx <= count:
            raise ValueError(f"variable {kind}{idx} not in pair {p}")
        pos = idx - 1 if kind == "x" else p.s + idx - 1
        exps[pos] += power
    if any(v < 0 for v in exps[p.s:]):
        raise ValueError(f"negative y-exponent in {text!r}")
    return tuple(exps)


def format_monomial(p, m):
    _check(p, m)
    parts = []
    for name, e in zip(variable_names(p), m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def parse_multidegree(p, text):
    """Parse ``-1,1`` (x-part then y-part); the empty string is the degree of ``k``."""
    text = text.strip()
    vals = tuple(int(v) for v in text.split(",")) if text else ()
    if len(vals) != p.nvars:
        raise ValueError(f"multidegree {text!r} needs {p.nvars} entries for pair {p}")
    return vals
