"""Per-multidegree homology of the modulus log de Rham complex.

Every complex here splits by multidegree and each graded piece is finite, so
de Rham cohomology, the modulus Hochschild dimensions (through HKR) and the
three cyclic variants are computed exactly, one multidegree at a time.

Two independent routes give the cyclic dimensions: the closed formula in
terms of ``H^q`` and the truncated forms, and the total complex of the
``(0, d)`` bicomplex obtained from the ``(b, B)`` bicomplex through ``e``.
"""
import csv
import enum
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .forms import FormClass, LogForm, basis_of, de_rham_d
from .hochschild import (ChainClass, ChainElement, classify_chain, hkr_e, hkr_eps,
                         hochschild_b)
from .linalg import SparseMatrixQ, rank, solve
from .parallel import pmap


class CyclicVariant(enum.Enum):
    HC = "HC"
    HC_MINUS = "HC-"
    HP = "HP"

    @classmethod
    def parse(cls, text):
        key = text.strip().lower().replace("_", "").replace("-", "minus")
        table = {"hc": cls.HC, "hcminus": cls.HC_MINUS, "hp": cls.HP}
        if key not in table:
            raise ValueError(f"unknown cyclic variant {text!r}")
        return table[key]


@dataclass(frozen=True)
class GradedComplex:
    """``bases[q]`` spans MΩ^q in one multidegree; ``diffs[q]`` is ``d: q -> q+1``."""
    pair: object
    multidegree: tuple
    bases: tuple
    diffs: tuple
    ranks: tuple

    @property
    def top(self):
        return len(self.bases) - 1

    def dim(self, q):
        return len(self.bases[q]) if 0 <= q <= self.top else 0

    def rank_d(self, q):
        return self.ranks[q] if 0 <= q < self.top else 0


@dataclass
class DimensionReport:
    pair: object
    multidegree: tuple
    variant: str
    dims: dict = field(default_factory=dict)

    def to_dict(self):
        return {"pair": self.pair.to_dict(), "deg": list(self.multidegree),
                "variant": self.variant, "dims": {str(n): d for n, d in sorted(self.dims.items())}}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=False)

    def csv_rows(self):
        r = ";".join(str(v) for v in self.pair.r)
        deg = ";".join(str(v) for v in self.multidegree)
        return [(self.pair.s, self.pair.t, r, deg, self.variant, n, d)
                for n, d in sorted(self.dims.items())]


CSV_HEADER = ("s", "t", "r", "deg", "variant", "n", "dim")


def reports_to_csv(reports):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rep in reports:
        writer.writerows(rep.csv_rows())
    return buf.getvalue()


def _matrix_of_d(p, src, dst):
    index = {key: i for i, key in enumerate(dst)}
    entries = {}
    for j, (m, letters) in enumerate(src):
        image = de_rham_d(LogForm._raw(p, len(letters), {(m, letters): Fraction(1)}))
        for key, c in image.terms.items():
            entries[(index[key], j)] = c
    return SparseMatrixQ(len(dst), len(src), entries)


def build_forms_complex(p, deg, cls=FormClass.M_OMEGA):
    deg = tuple(deg)
    if len(deg) != p.nvars:
        raise ValueError(f"multidegree {deg} does not match pair {p}")
    if any(v < 0 for v in deg[p.s:]):
        raise ValueError(f"multidegree {deg} has a negative y-part")
    bases = tuple(tuple(basis_of(p, cls, q, deg)) for q in range(p.nvars + 1))
    diffs = tuple(_matrix_of_d(p, bases[q], bases[q + 1]) for q in range(p.nvars))
    for q in range(p.nvars - 1):
        if not (diffs[q + 1] @ diffs[q]).is_zero():
            raise ArithmeticError(f"d∘d != 0 in degree {q} for {p} at {deg}")
    return GradedComplex(p, deg, bases, diffs, tuple(rank(m) for m in diffs))


def cohomology_dims(cx):
    return {q: cx.dim(q) - cx.rank_d(q) - cx.rank_d(q - 1) for q in range(cx.top + 1)}


def de_rham_cohomology(p, deg):
    cx = build_forms_complex(p, deg)
    return DimensionReport(p, tuple(deg), "deRham", cohomology_dims(cx))


def hh_dimension(p, deg, n):
    """dim MHH_n in one multidegree, which HKR identifies with dim MΩ^n."""
    if n < 0:
        return 0
    return len(basis_of(p, FormClass.M_OMEGA, n, deg))


def _formula_from_complex(cx, variant, n):
    h = cohomology_dims(cx)

    def H(q):
        return h.get(q, 0)

    top = cx.top
    if variant is CyclicVariant.HC:
        head = cx.dim(n) - cx.rank_d(n - 1) if 0 <= n <= top else 0
        return head + sum(H(n - 2 * j) for j in range(1, max(n, 0) // 2 + 1))
    if variant is CyclicVariant.HC_MINUS:
        head = cx.dim(n) - cx.rank_d(n) if 0 <= n <= top else 0
        # H^{n+2j} vanishes once n + 2j > top
        return head + sum(H(n + 2 * j) for j in range(1, max(top - n, 0) // 2 + 1))
    # HP: all p with 0 <= 2p - n <= top
    return sum(H(q) for q in range(top + 1) if (q + n) % 2 == 0)


def cyclic_dims_formula(p, deg, variant, n):
    cx = build_forms_complex(p, deg)
    return _formula_from_complex(cx, variant, n)


def _columns(variant, total, top):
    """Column indices ``c`` with ``Ω^{total - 2c}`` nonzero, restricted by variant."""
    lo = -((top - total) // 2)  # ceil((total - top) / 2)
    hi = total // 2
    cols = range(lo, hi + 1)
    if variant is CyclicVariant.HC:
        return [c for c in cols if c >= 0]
    if variant is CyclicVariant.HC_MINUS:
        return [c for c in cols if c <= 0]
    return list(cols)


def _total_basis(p, deg, variant, total):
    top = p.nvars
    out = []
    for col in _columns(variant, total, top):
        for key in basis_of(p, FormClass.M_OMEGA, total - 2 * col, deg):
            out.append((col, key))
    return out


def _total_differential(p, deg, variant, total):
    """Matrix of ``Tot_total -> Tot_{total-1}``: column ``c`` maps by ``d`` into ``c - 1``."""
    src = _total_basis(p, deg, variant, total)
    dst = _total_basis(p, deg, variant, total - 1)
    index = {cell: i for i, cell in enumerate(dst)}
    entries = {}
    for j, (col, (m, letters)) in enumerate(src):
        image = de_rham_d(LogForm._raw(p, len(letters), {(m, letters): Fraction(1)}))
        for key, c in image.terms.items():
            i = index.get((col - 1, key))
            if i is not None:
                entries[(i, j)] = c
    return len(src), SparseMatrixQ(len(dst), len(src), entries)


def cyclic_dims_bicomplex(p, deg, variant, n):
    """Homology at ``n`` of the finite total complex, by direct rank computation."""
    deg = tuple(deg)
    if len(deg) != p.nvars or any(v < 0 for v in deg[p.s:]):
        raise ValueError(f"bad multidegree {deg} for pair {p}")
    dim_n, d_out = _total_differential(p, deg, variant, n)
    _, d_in = _total_differential(p, deg, variant, n + 1)
    return dim_n - rank(d_out) - rank(d_in)


def cyclic_report(p, deg, variant, ns, oracle=False):
    """Formula dims for ``ns``; with ``oracle`` also the bicomplex dims."""
    cx = build_forms_complex(p, deg)
    formula = {n: _formula_from_complex(cx, variant, n) for n in ns}
    rep = DimensionReport(p, tuple(deg), variant.value, formula)
    if not oracle:
        return rep, None
    return rep, {n: cyclic_dims_bicomplex(p, deg, variant, n) for n in ns}


def cyclic_table(p, degs, variant, ns, oracle=False, workers=None):
    return pmap(lambda d: cyclic_report(p, d, variant, ns, oracle), degs, workers)


def multidegree_window(p, x_range, y_range):
    """All multidegrees with x-part in ``x_range`` and y-part in ``y_range`` (inclusive)."""
    xs = range(x_range[0], x_range[1] + 1)
    ys = range(max(y_range[0], 0), y_range[1] + 1)
    return [tuple(d) for d in product(*([xs] * p.s + [ys] * p.t))]


# -- HKR probe ------------------------------------------------------------------

@dataclass
class ProbeResult:
    status: str  # "confirmed" | "inconclusive"
    pole_bound: int
    witness: object = None  # ChainElement w with z - eps(e(z)) = b(w)
    columns: int = 0

    @property
    def confirmed(self):
        return self.status == "confirmed"


def _compositions(total, parts, lo):
    """Tuples of ``parts`` integers ``>= lo`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= lo:
            yield (total,)
        return
    for first in range(lo, total - lo * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, lo):
            yield (first,) + rest


def tensors_of_multidegree(p, deg, n_factors, pole_bound):
    """Monomial tensors with the given factor-sum; x-exponents ``>= -pole_bound``."""
    per_coord = []
    for a, total in enumerate(deg):
        lo = -pole_bound if a < p.s else 0
        per_coord.append(list(_compositions(total, n_factors, lo)))
    for choice in product(*per_coord):
        yield tuple(zip(*choice)) if choice else ((),) * n_factors


def _splits(p, f, pole_bound):
    """Tensors ``g`` with ``n + 2`` factors having ``f`` as one of their faces."""
    n1 = len(f)
    for i in range(n1):
        target = f[i]
        ranges = [range(-pole_bound, v + pole_bound + 1) if a < p.s else range(0, v + 1)
                  for a, v in enumerate(target)]
        for u in product(*ranges):
            rest = tuple(v - w for v, w in zip(target, u))
            if i == 0:
                yield (rest,) + f[1:] + (u,)
            yield f[:i] + (u, rest) + f[i + 1:]


def _solve_block(p, n, cols, rhs):
    """Solve ``b(sum x_j cols_j) = rhs`` over ``cols``; ``None`` if impossible."""
    row_index = {}
    entries = {}
    for j, f in enumerate(cols):
        image = hochschild_b(ChainElement._raw(p, n + 1, {f: Fraction(1)}))
        for g, c in image.terms.items():
            i = row_index.setdefault(g, len(row_index))
            entries[(i, j)] = c
    if any(g not in row_index for g in rhs):
        return None
    b_vec = [Fraction(0)] * len(row_index)
    for g, c in rhs.items():
        b_vec[row_index[g]] = c
    x = solve(SparseMatrixQ(len(row_index), len(cols), entries), b_vec)
    if x is None:
        return None
    return {cols[j]: v for j, v in enumerate(x) if v}


def hkr_cycle_probe(p, z, pole_bound, max_columns=None, layers=2):
    """Look for ``w`` with ``z - eps(e(z)) = b(w)`` among bounded-pole MHH tensors.

    Per multidegree the candidate columns grow outward from the target: first
    the tensors having a target term as a face, then those touching their
    faces, and finally every tensor of that multidegree within the pole bound.
    Any witness found is checked exactly before it is returned.
    """
    if z.pair != p:
        raise ValueError("chain is over a different pair")
    if classify_chain(z) is ChainClass.FULL_HH:
        raise ValueError("probe needs an MHH chain")
    if not hochschild_b(z).is_zero():
        raise ValueError("probe needs a Hochschild cycle")
    n = z.degree
    target = z - hkr_eps(hkr_e(z))
    if target.is_zero():
        return ProbeResult("confirmed", pole_bound, ChainElement.zero(p, n + 1), 0)
    by_deg = {}
    for f, c in target.terms.items():
        by_deg.setdefault(tuple(map(sum, zip(*f))), {})[f] = c
    witness = ChainElement.zero(p, n + 1)
    used = 0
    for deg, rhs in sorted(by_deg.items()):
        rows = set(rhs)
        seen = set()
        cols = []
        x = None
        for _ in range(layers):
            fresh = []
            for f in sorted(rows):
                for g in _splits(p, f, pole_bound):
                    if g not in seen and all(v >= -pole_bound for m in g for v in m[:p.s]):
                        seen.add(g)
                        fresh.append(g)
            cols.extend(fresh)
            if max_columns is not None and used + len(cols) > max_columns:
                return ProbeResult("inconclusive", pole_bound, None, used + len(cols))
            x = _solve_block(p, n, cols, rhs)
            if x is not None:
                break
            rows = set()
            for g in fresh:
                rows.update(hochschild_b(ChainElement._raw(p, n + 1, {g: Fraction(1)})).terms)
        if x is None:
            cols = list(tensors_of_multidegree(p, deg, n + 2, pole_bound))
            if max_columns is not None and used + len(cols) > max_columns:
                return ProbeResult("inconclusive", pole_bound, None, used + len(cols))
            x = _solve_block(p, n, cols, rhs)
        used += len(cols)
        if x is None:
            return ProbeResult("inconclusive", pole_bound, None, used)
        witness = witness + ChainElement._raw(p, n + 1, x)
    if hochschild_b(witness) != target:
        raise ArithmeticError("probe witness failed verification")
    return ProbeResult("confirmed", pole_bound, witness, used)


def probe_escalating(p, z, max_pole_bound, max_columns=None):
    """Run the probe at increasing pole bounds until confirmed."""
    start = max([0] + [-v for f in z.terms for m in f for v in m[:p.s]])
    result = None
    for bound in range(min(start, max_pole_bound), max_pole_bound + 1):
        result = hkr_cycle_probe(p, z, bound, max_columns)
        if result.confirmed:
            return result
    return result
