"""Seeded property suites tying the modules together.

Each suite is a list of independent cases.  Case ``i`` draws its randomness
from ``SeedSequence(seed, spawn_key=(suite_key, i))``, so a case can be
replayed alone and the report does not depend on how cases are sharded
across workers.
"""
import json
import time
import zlib
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from math import comb

import numpy as np

from .forms import (FormClass, LogForm, basis_form, basis_of, classify, de_rham_d,
                    format_form, random_form)
from .hochschild import (ChainClass, ChainElement, classify_chain, connes_B, cyclic_t,
                         face, format_chain, hkr_e, hkr_eps, hochschild_b, shuffle,
                         tensor_in_class)
from .homology import (CyclicVariant, _formula_from_complex, build_forms_complex,
                       cohomology_dims, cyclic_dims_bicomplex, multidegree_window,
                       probe_escalating)
from .modpair import ModulusPair
from .monoids import (FgAbMonoid, MonoidMap, rep_membership, repletion_iso,
                      replete_bar_predicate)
from .linalg import IntMatrix
from .parallel import pmap

SHARD_SIZE = 32


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    samples: int = 100
    max_s: int = 2
    max_t: int = 2
    max_r: int = 3
    max_n: int = 4
    exponent_window: tuple = (-2, 2)
    multidegree_window: tuple = ((-3, 3), (0, 3))
    max_pole_bound: int = 4

    def __post_init__(self):
        if self.samples < 0 or self.max_s < 0 or self.max_t < 0 or self.max_n < 0:
            raise ValueError("suite bounds must be non-negative")
        if self.max_r < 1:
            raise ValueError("max_r must be positive")
        lo, hi = self.exponent_window
        if lo > hi:
            raise ValueError("exponent window must have lo <= hi")
        for lo, hi in self.multidegree_window:
            if lo > hi:
                raise ValueError("multidegree window must have lo <= hi")

    def to_dict(self):
        out = asdict(self)
        out["exponent_window"] = list(self.exponent_window)
        out["multidegree_window"] = [list(w) for w in self.multidegree_window]
        return out


@dataclass
class SuiteReport:
    name: str
    cases: int
    failures: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    wall_time: float = 0.0
    skipped: bool = False

    @property
    def passed(self):
        return not self.failures and not self.skipped

    def to_dict(self):
        # wall time is left out so equal seeds give byte-identical reports
        return {"suite": self.name, "cases": self.cases, "failures": self.failures,
                "skipped": self.skipped, "config": self.config}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def case_rng(seed, suite, index):
    key = zlib.crc32(suite.encode())
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(key, index)))


def random_pair(cfg, rng, min_vars=0):
    while True:
        s = int(rng.integers(0, cfg.max_s + 1))
        t = int(rng.integers(0, cfg.max_t + 1))
        if s + t >= min_vars:
            break
    r = [int(rng.integers(1, cfg.max_r + 1)) for _ in range(s)]
    return ModulusPair.of(s, t, r)


def _random_coeff(rng):
    num = int(rng.integers(1, 6)) * (1 if rng.integers(0, 2) else -1)
    return Fraction(num, int(rng.integers(1, 4)))


def generate_chain(cfg, pair, n, cls, rng, n_terms=3):
    """Random chain of degree ``n`` whose terms all lie in ``cls``.

    Small windows are enumerated and sampled; larger ones are drawn at
    random with factor 0 shifted up to meet the class bound.
    """
    if cls not in (ChainClass.P_HH, ChainClass.M_HH):
        raise ValueError("generate_chain supports P_HH and M_HH")
    lo, hi = cfg.exponent_window
    x_vals = range(lo, hi + 1)
    y_vals = range(max(lo, 0), max(hi, 0) + 1)
    per_factor = len(x_vals) ** pair.s * len(y_vals) ** pair.t
    if per_factor == 0:
        raise ValueError("empty exponent window")
    if per_factor ** (n + 1) <= 4096:
        monos = [tuple(m) for m in product(*([x_vals] * pair.s + [y_vals] * pair.t))]
        space = [f for f in product(monos, repeat=n + 1) if tensor_in_class(pair, f, cls)]
        if not space:
            raise ValueError(f"no {cls.name} tensors of degree {n} in window {cfg.exponent_window}")
        picks = rng.choice(len(space), size=min(n_terms, len(space)), replace=False)
        terms = {space[int(i)]: _random_coeff(rng) for i in picks}
        return ChainElement(pair, n, terms)
    lower = (0,) * pair.s if cls is ChainClass.P_HH else pair.mo_bound
    terms = {}
    for _ in range(n_terms):
        factors = [[int(rng.choice(x_vals)) for _ in range(pair.s)]
                   + [int(rng.choice(y_vals)) for _ in range(pair.t)] for _ in range(n + 1)]
        for j in range(pair.s):
            total = sum(f[j] for f in factors)
            if total < lower[j]:
                factors[0][j] += lower[j] - total
        terms[tuple(tuple(f) for f in factors)] = _random_coeff(rng)
    return ChainElement(pair, n, terms)


def generate_form(cfg, pair, q, cls, rng, n_terms=3):
    return random_form(pair, rng, q, cls, n_terms, cfg.exponent_window)


def _fail(index, check, pair, **inputs):
    out = {"index": index, "check": check, "pair": pair.to_dict() if pair else None}
    out.update({k: str(v) for k, v in inputs.items()})
    return out


# -- suites -------------------------------------------------------------------

def _case_identities(cfg, rng, index):
    p = random_pair(cfg, rng)
    n = int(rng.integers(0, cfg.max_n + 1))
    cls = ChainClass.M_HH if rng.integers(0, 2) else ChainClass.P_HH
    c = generate_chain(cfg, p, n, cls, rng)
    fails = []
    b, B = hochschild_b, connes_B
    if n >= 2 and not b(b(c)).is_zero():
        fails.append(_fail(index, "b∘b", p, chain=format_chain(c)))
    if not B(B(c)).is_zero():
        fails.append(_fail(index, "B∘B", p, chain=format_chain(c)))
    anti = b(B(c)) + (B(b(c)) if n >= 1 else ChainElement.zero(p, n))
    if not anti.is_zero():
        fails.append(_fail(index, "bB+Bb", p, chain=format_chain(c)))
    rotated = c
    for _ in range(n + 1):
        rotated = cyclic_t(rotated)
    if rotated != c:
        fails.append(_fail(index, "t^(n+1)", p, chain=format_chain(c)))
    for j in range(1, n + 1):
        for i in range(j):
            if n >= 2 and face(face(c, j), i) != face(face(c, i), j - 1):
                fails.append(_fail(index, f"d{i}d{j}", p, chain=format_chain(c)))
    return fails


def _case_closure(cfg, rng, index):
    p = random_pair(cfg, rng)
    fails = []
    q = int(rng.integers(0, p.nvars + 1))
    w = generate_form(cfg, p, q, FormClass.M_OMEGA, rng)
    dw = de_rham_d(w)
    if classify(dw) is FormClass.FULL:
        fails.append(_fail(index, "d(MΩ)⊆MΩ", p, form=format_form(w)))
    if not dw.multidegrees() <= w.multidegrees():
        fails.append(_fail(index, "d preserves multidegree", p, form=format_form(w)))
    n = int(rng.integers(0, cfg.max_n + 1))
    c = generate_chain(cfg, p, n, ChainClass.M_HH, rng)
    for name, op in (("b", hochschild_b), ("t", cyclic_t), ("B", connes_B)):
        if name == "b" and n == 0:
            continue
        image = op(c)
        if classify_chain(image) is ChainClass.FULL_HH:
            fails.append(_fail(index, f"{name}(MHH)⊆MHH", p, chain=format_chain(c)))
        if not image.multidegrees() <= c.multidegrees():
            fails.append(_fail(index, f"{name} preserves multidegree", p, chain=format_chain(c)))
    n1 = int(rng.integers(0, 3))
    n2 = int(rng.integers(0, 3))
    c1 = generate_chain(cfg, p, n1, ChainClass.P_HH, rng, n_terms=2)
    c2 = generate_chain(cfg, p, n2, ChainClass.P_HH, rng, n_terms=2)
    if classify_chain(shuffle(c1, c2)) is not ChainClass.P_HH:
        fails.append(_fail(index, "PHH∇PHH⊆PHH", p, left=format_chain(c1), right=format_chain(c2)))
    m1 = generate_chain(cfg, p, n1, ChainClass.M_HH, rng, n_terms=2)
    if classify_chain(shuffle(m1, c2)) is ChainClass.FULL_HH:
        fails.append(_fail(index, "MHH∇PHH⊆MHH", p, left=format_chain(m1), right=format_chain(c2)))
    return fails


def _case_hkr_roundtrip(cfg, rng, index):
    p = random_pair(cfg, rng)
    fails = []
    q = int(rng.integers(0, min(p.nvars, 4) + 1))
    w = generate_form(cfg, p, q, FormClass.M_OMEGA, rng)
    eps = hkr_eps(w)
    if hkr_e(eps) != w:
        fails.append(_fail(index, "e∘ε=id", p, form=format_form(w)))
    if q >= 1 and not hochschild_b(eps).is_zero():
        fails.append(_fail(index, "b∘ε=0", p, form=format_form(w)))
    if classify_chain(eps) is ChainClass.FULL_HH:
        fails.append(_fail(index, "ε(MΩ)⊆MHH", p, form=format_form(w)))
    n = int(rng.integers(0, cfg.max_n + 1))
    c = generate_chain(cfg, p, n, ChainClass.M_HH, rng)
    if n >= 1 and not hkr_e(hochschild_b(c)).is_zero():
        fails.append(_fail(index, "e∘b=0", p, chain=format_chain(c)))
    if hkr_e(connes_B(c)) != de_rham_d(hkr_e(c)):
        fails.append(_fail(index, "e∘B=d∘e", p, chain=format_chain(c)))
    if classify(hkr_e(c)) is FormClass.FULL:
        fails.append(_fail(index, "e(MHH)⊆MΩ", p, chain=format_chain(c)))
    return fails


def degree_one_certificate(p, c, m):
    """``w`` with ``c (x) m - ψ(e(c (x) m)) = b(w)`` for monomials ``c``, ``m``.

    Built by peeling one variable off ``m`` at a time through
    ``c (x) uv = cu (x) v + cv (x) u - b(c (x) u (x) v)``, with the base cases
    ``c (x) 1 = b(c (x) 1 (x) 1)`` and ``ψe`` fixing ``c (x) x_a``.
    """
    zero = ChainElement.zero(p, 2)
    w = zero
    one = p.one

    def unit(a, e):
        v = [0] * p.nvars
        v[a] = e
        return tuple(v)

    def mul(u, v):
        return tuple(a + b for a, b in zip(u, v))

    stack = [(Fraction(1), c, m)]
    while stack:
        coeff, c0, m0 = stack.pop()
        nz = [a for a, e in enumerate(m0) if e]
        if not nz:
            w = w + ChainElement.tensor(p, (c0, one, one), coeff)
            continue
        a = nz[0]
        e = m0[a]
        if len(nz) == 1 and e == 1:
            continue
        if len(nz) == 1 and e == -1:
            inv = unit(a, -1)
            w = w + ChainElement.tensor(p, (mul(c0, inv), one, one), coeff)
            w = w + ChainElement.tensor(p, (mul(c0, inv), unit(a, 1), inv), coeff)
            continue
        u = unit(a, 1 if e > 0 else -1)
        v = tuple(x - y for x, y in zip(m0, u))
        w = w - ChainElement.tensor(p, (c0, u, v), coeff)
        stack.append((coeff, mul(c0, u), v))
        stack.append((coeff, mul(c0, v), u))
    return w


def _psi(w):
    """ψ(a/b · dc) = a/b (x) c, the degree-one case of ε."""
    return hkr_eps(w)


def _degree_one_items(cfg):
    items = []
    for s in range(cfg.max_s + 1):
        for t in range(cfg.max_t + 1):
            for r in product(range(1, cfg.max_r + 1), repeat=s):
                items.append(ModulusPair.of(s, t, r))
    return items


def _case_degree_one(cfg, p, index):
    """Exhaustive degree-one check ``eψ = id`` and ``ψe = id`` (up to boundaries)."""
    fails = []
    (xlo, xhi), (ylo, yhi) = cfg.multidegree_window
    for deg in multidegree_window(p, (xlo, xhi), (ylo, yhi)):
        for cls in (FormClass.P_OMEGA, FormClass.M_OMEGA):
            for key in basis_of(p, cls, 1, deg):
                w = basis_form(p, key)
                if hkr_e(_psi(w)) != w:
                    fails.append(_fail(index, "eψ=id", p, form=format_form(w)))
    lo, hi = cfg.exponent_window
    x_vals = range(lo, hi + 1)
    y_vals = range(max(lo, 0), max(hi, 0) + 1)
    monos = [tuple(m) for m in product(*([x_vals] * p.s + [y_vals] * p.t))]
    for c0 in monos:
        for m in monos:
            if not tensor_in_class(p, (c0, m), ChainClass.M_HH):
                continue
            z = ChainElement.tensor(p, (c0, m))
            w = degree_one_certificate(p, c0, m)
            cls = ChainClass.P_HH if tensor_in_class(p, (c0, m), ChainClass.P_HH) else ChainClass.M_HH
            ok = (z - _psi(hkr_e(z)) == hochschild_b(w)
                  and (w.is_zero() or all(tensor_in_class(p, f, cls) for f in w.terms)))
            if not ok:
                fails.append(_fail(index, "ψe=id", p, chain=format_chain(z)))
    return fails


def _cohomology_oracle(p, deg, q):
    """Koszul count: the per-multidegree complex is ``wedge(v, -)`` on an exterior
    algebra, exact unless the multidegree is 0, where it is ``C(s, q)``."""
    if any(v < b for v, b in zip(deg, p.mo_bound)):
        return 0
    if any(deg):
        return 0
    return comb(p.s, q)


def _derham_items(cfg):
    items = []
    (xlo, xhi), (ylo, yhi) = cfg.multidegree_window
    for p in _degree_one_items(cfg):
        items.extend((p, d) for d in multidegree_window(p, (xlo, xhi), (ylo, yhi)))
    return items


def _case_derham(cfg, item, index):
    p, deg = item
    fails = []
    cx = build_forms_complex(p, deg)
    h = cohomology_dims(cx)
    for q in range(p.nvars + 1):
        if h[q] != _cohomology_oracle(p, deg, q):
            fails.append(_fail(index, f"H^{q} vs Koszul count", p, deg=deg, got=h[q]))
        kernel = cx.dim(q) - cx.rank_d(q)
        if cx.dim(q) != kernel + cx.rank_d(q) or kernel < 0:
            fails.append(_fail(index, f"SES in degree {q}", p, deg=deg))
        if all(v == 1 for v in p.r):
            if basis_of(p, FormClass.M_OMEGA, q, deg) != basis_of(p, FormClass.P_OMEGA, q, deg):
                fails.append(_fail(index, "MΩ=PΩ when r=1", p, deg=deg, q=q))
    mo = 1 if all(v >= b for v, b in zip(deg, p.mo_bound)) else 0
    if len(basis_of(p, FormClass.M_OMEGA, 0, deg)) != mo:
        fails.append(_fail(index, "degree-0 HKR = MO", p, deg=deg))
    return fails


def _cyclic_items(cfg):
    return _derham_items(cfg)


def _case_cyclic(cfg, item, index):
    p, deg = item
    fails = []
    cx = build_forms_complex(p, deg)
    for variant in CyclicVariant:
        for n in range(cfg.max_n + 1):
            formula = _formula_from_complex(cx, variant, n)
            oracle = cyclic_dims_bicomplex(p, deg, variant, n)
            if formula != oracle:
                fails.append(_fail(index, f"{variant.value}_{n}", p, deg=deg,
                                   formula=formula, bicomplex=oracle))
        if variant is CyclicVariant.HP:
            for n in range(cfg.max_n - 1):
                if _formula_from_complex(cx, variant, n) != _formula_from_complex(cx, variant, n + 2):
                    fails.append(_fail(index, f"HP periodicity at {n}", p, deg=deg))
    return fails


def _classical_items(cfg):
    items = [("field", None)]
    for t in range(cfg.max_t + 1):
        for total in range(cfg.multidegree_window[1][1] + 1):
            items.append(("polynomial", (t, total)))
    return items


def _case_classical(cfg, item, index):
    kind, data = item
    fails = []
    if kind == "field":
        p = ModulusPair.of(0, 0)
        for n in range(cfg.max_n + 1):
            expect = 1 if n % 2 == 0 else 0
            got = _formula_from_complex(build_forms_complex(p, ()), CyclicVariant.HC, n)
            oracle = cyclic_dims_bicomplex(p, (), CyclicVariant.HC, n)
            if got != expect or oracle != expect:
                fails.append(_fail(index, f"HC_{n}(k)", p, formula=got, bicomplex=oracle))
        return fails
    t, total = data
    p = ModulusPair.of(0, t)
    degs = [d for d in product(range(total + 1), repeat=t) if sum(d) == total]
    for q in range(t + 1):
        got = sum(len(basis_of(p, FormClass.P_OMEGA, q, d)) for d in degs)
        need = total - q
        count_k = comb(need + t - 1, t - 1) if need >= 0 and t > 0 else int(need == 0)
        expect = comb(t, q) * count_k
        if got != expect:
            fails.append(_fail(index, f"dim Ω^{q} total degree {total}", p, got=got, expect=expect))
        for cls in (FormClass.M_OMEGA,):
            if sum(len(basis_of(p, cls, q, d)) for d in degs) != got:
                fails.append(_fail(index, "MΩ=PΩ for s=0", p, q=q, total=total))
    return fails


REPLETION_CONFIGS = [
    ("N", FgAbMonoid(1, 0), "0"),
    ("N^2", FgAbMonoid(2, 0), "0"),
    ("N+Z", FgAbMonoid(1, 1), "0"),
    ("N+Z", FgAbMonoid(1, 1), "Z"),
    ("N+Z", FgAbMonoid(1, 1), "2Z"),
    ("Z^2", FgAbMonoid(0, 2), "Z"),
]


def _repletion_map(m, p_kind):
    if p_kind == "0":
        return MonoidMap.zero(FgAbMonoid(0, 0), m)
    if p_kind == "Z":
        return MonoidMap.inclusion_of_group_part(m) if m.a else \
            MonoidMap(FgAbMonoid(0, 1), m, IntMatrix([[1]] + [[0]] * (m.rank - 1), 1))
    # Z -> group part by multiplication by 2
    rows = [[0] for _ in range(m.a)] + [[2]] + [[0] for _ in range(m.b - 1)]
    return MonoidMap(FgAbMonoid(0, 1), m, IntMatrix(rows, 1))


def _random_rep_element(rng, m, n, width=4):
    rest = [tuple(int(v) for v in rng.integers(-width, width + 1, size=m.rank)) for _ in range(n - 1)]
    total = tuple(int(rng.integers(0, width + 1)) if j < m.a else int(rng.integers(-width, width + 1))
                  for j in range(m.rank))
    first = tuple(t - sum(vals) for t, vals in zip(total, zip(*rest))) if rest else total
    return (first,) + tuple(rest)


def _repletion_items(cfg):
    items = []
    per = max(cfg.samples, 1)
    for c_idx in range(len(REPLETION_CONFIGS)):
        for n in range(1, 5):
            items.extend(("iso", c_idx, n, k) for k in range(per))
    items.append(("chart", None, None, None))
    items.append(("bar", None, None, None))
    return items


def _case_repletion(cfg, item, index, rng):
    kind, c_idx, n, _ = item
    fails = []
    if kind == "iso":
        label, m, p_kind = REPLETION_CONFIGS[c_idx]
        phi = _repletion_map(m, p_kind)
        rep = repletion_iso(m, phi, n)
        g = _random_rep_element(rng, m, n)
        h = _random_rep_element(rng, m, n)
        fg = rep.forward(g)
        if not rep.equivalent(rep.backward(fg), g):
            fails.append(_fail(index, f"backward∘forward [{label} over {p_kind}, n={n}]", None, g=g))
        if rep.forward(rep.backward(fg)) != fg:
            fails.append(_fail(index, f"forward∘backward [{label} over {p_kind}, n={n}]", None, g=g))
        gh = tuple(tuple(a + b for a, b in zip(u, v)) for u, v in zip(g, h))
        if rep.forward(gh) != rep.add_image(fg, rep.forward(h)):
            fails.append(_fail(index, f"forward additive [{label} over {p_kind}, n={n}]", None, g=g, h=h))
        if m.is_group() and not all(rep.contains(x) for x in (g, h, gh)):
            fails.append(_fail(index, "repletion of a group is everything", None, g=g))
        return fails
    if kind == "chart":
        # M = M1 (+) M2 with M1 = N^a, M2 = Z^b a group: membership sees M1 only
        for a, b, max_n in ((1, 1, 3), (1, 2, 2), (2, 1, 2)):
            m = FgAbMonoid(a, b)
            m1 = FgAbMonoid(a, 0)
            vals = range(-2, 3)
            for n in range(1, max_n + 1):
                for g in product(product(vals, repeat=a + b), repeat=n):
                    if rep_membership(m, n, g) != rep_membership(m1, n, [v[:a] for v in g]):
                        fails.append(_fail(index, "chart splitting", None, monoid=m, g=g))
        return fails
    # replete bar construction vs PHH membership
    lo, hi = -3, 3
    for s, t, max_deg in ((1, 0, 3), (1, 1, 3), (2, 0, 2)):
        p = ModulusPair.of(s, t)
        x_vals = range(lo, hi + 1)
        y_vals = range(0, 2)
        monos = [tuple(m) for m in product(*([x_vals] * s + [y_vals] * t))]
        for n in range(max_deg + 1):
            for f in product(monos, repeat=n + 1):
                ours = replete_bar_predicate(p, n, f)
                theirs = classify_chain(ChainElement._raw(p, n, {f: Fraction(1)})) is ChainClass.P_HH
                if ours != theirs:
                    fails.append(_fail(index, "replete bar ⇔ PHH", p, tensor=f))
    return fails


def rotation_cases(p, z):
    """Powers ``t^j z`` (``1 <= j <= n``) that are again Hochschild cycles."""
    out = []
    cur = z
    for _ in range(z.degree):
        cur = cyclic_t(cur)
        if hochschild_b(cur).is_zero():
            out.append(cur)
    return out


def _probe_cycle(cfg, rng):
    """A cycle ``b(u) + ε(ω)`` in degree 1 or 2 with small exponents."""
    small = SuiteConfig(seed=cfg.seed, max_s=min(cfg.max_s, 2), max_t=min(cfg.max_t, 1),
                        max_r=cfg.max_r, exponent_window=(-1, 1))
    p = random_pair(small, rng, min_vars=1)
    n = 1 if p.nvars > 1 and rng.integers(0, 3) == 0 else int(rng.integers(1, min(p.nvars, 2) + 1))
    if p.nvars == 1:
        n = 1
    w = generate_form(small, p, n, FormClass.M_OMEGA, rng, n_terms=1)
    u = generate_chain(small, p, n + 1, ChainClass.M_HH, rng, n_terms=1)
    return p, hochschild_b(u) + hkr_eps(w), w


def _unit_carrier_cycle(rng, p, n):
    """``ε`` of a constant-coefficient ``dx/dy`` form; its rotations stay cycles."""
    letters = tuple(sorted(int(a) for a in rng.choice(p.nvars, size=n, replace=False)))
    m = [0] * p.nvars
    for a in letters:
        if a < p.s:
            m[a] = 1
    return hkr_eps(LogForm.monomial(p, m, letters, _random_coeff(rng)))


def _case_probe(cfg, rng, index):
    p, z, w = _probe_cycle(cfg, rng)
    fails = []
    cases = [("b(u)+ε(ω)", z)]
    if z.degree >= 2:
        # rotations of a general degree>=2 cycle are usually not cycles
        z2 = _unit_carrier_cycle(rng, p, z.degree)
        cases += [("t^j ε(dx)", r) for r in rotation_cases(p, z2)]
    cases += [("t^j z", r) for r in rotation_cases(p, z)]
    for label, chain in cases:
        res = probe_escalating(p, chain, cfg.max_pole_bound)
        if not res.confirmed:
            fails.append(_fail(index, f"probe inconclusive: {label}", p, chain=format_chain(chain),
                               pole_bound=res.pole_bound))
    return fails, len(cases)


# -- runner -------------------------------------------------------------------

SUITES = ("identities", "closure", "hkr_roundtrip", "degree_one", "derham",
          "cyclic_oracle", "classical", "repletion", "probe")
DEPENDS_ON_IDENTITIES = ("hkr_roundtrip", "cyclic_oracle", "probe")


def _sampled(case_fn):
    def run(cfg, name, index):
        out = case_fn(cfg, case_rng(cfg.seed, name, index), index)
        return out if isinstance(out, tuple) else (out, 1)
    return run


def _itemized(case_fn, items_fn, needs_rng=False):
    def run(cfg, name, index, items):
        if needs_rng:
            return case_fn(cfg, items[index], index, case_rng(cfg.seed, name, index)), 1
        return case_fn(cfg, items[index], index), 1
    run.items = items_fn
    return run


_SAMPLED = {
    "identities": _sampled(_case_identities),
    "closure": _sampled(_case_closure),
    "hkr_roundtrip": _sampled(_case_hkr_roundtrip),
    "probe": _sampled(_case_probe),
}
_ITEMIZED = {
    "degree_one": _itemized(_case_degree_one, _degree_one_items),
    "derham": _itemized(_case_derham, _derham_items),
    "cyclic_oracle": _itemized(_case_cyclic, _cyclic_items),
    "classical": _itemized(_case_classical, _classical_items),
    "repletion": _itemized(_case_repletion, _repletion_items, needs_rng=True),
}


def run_suite(name, cfg, workers=None):
    """Run one suite; shards of ``SHARD_SIZE`` cases go to the worker pool."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    start = time.perf_counter()
    if name in _SAMPLED:
        fn = _SAMPLED[name]
        total = cfg.samples

        def shard(bounds):
            res = [fn(cfg, name, i) for i in range(*bounds)]
            return [f for fails, _ in res for f in fails], sum(k for _, k in res)
    else:
        fn = _ITEMIZED[name]
        items = fn.items(cfg)
        total = len(items)

        def shard(bounds):
            res = [fn(cfg, name, i, items) for i in range(*bounds)]
            return [f for fails, _ in res for f in fails], sum(k for _, k in res)

    bounds = [(i, min(i + SHARD_SIZE, total)) for i in range(0, total, SHARD_SIZE)]
    results = pmap(shard, bounds, workers)
    failures = [f for fails, _ in results for f in fails]
    cases = sum(k for _, k in results)
    return SuiteReport(name, cases, failures, cfg.to_dict(), time.perf_counter() - start)


def run_all(cfg, names=SUITES, workers=None):
    """Run suites in order; identity failures skip the suites that rely on them."""
    reports = []
    broken = False
    for name in names:
        if broken and name in DEPENDS_ON_IDENTITIES:
            reports.append(SuiteReport(name, 0, [], cfg.to_dict(), 0.0, skipped=True))
            continue
        rep = run_suite(name, cfg, workers)
        reports.append(rep)
        if name == "identities" and rep.failures:
            broken = True
    return reports


def replay_case(name, cfg, index):
    """Re-run a single case of a suite (for failure reproduction)."""
    if name in _SAMPLED:
        return _SAMPLED[name](cfg, name, index)[0]
    fn = _ITEMIZED[name]
    return fn(cfg, name, index, fn.items(cfg))[0]
