"""Sparse rational polynomials, graded ideals, Hilbert functions, monomial ideals.

The rings here are standard graded (every variable has degree 1) with a torus
weight attached to each variable: variable i of a ring with n+1 variables has
weight 2i - n.  Every ideal this package builds is generated by
weight-homogeneous polynomials, so graded pieces split into weight blocks and
all echelon/rank work runs blockwise; results are identical to the unblocked
computation because distinct blocks touch disjoint monomial sets.

Graded pieces are echelonized bases (columns = basis vectors over the degree-k
monomial basis) and can be cached to disk in the matrix file format, keyed by
an ideal fingerprint and the degree.  Cache writes go through a temp file and
an atomic rename, so concurrent writers are last-writer-wins with identical
deterministic content.
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import NamedTuple

from .exactalg import ExactMatrix, blocked_rank_details, dump_matrix, load_matrix, rank_details
from .exactalg.matrix import RankResult, _normalize_scalar, rref_rows, split_blocks
from .sl2rep import coord_weight, plethysm_basis, plethysm_index


def cache_directory(override=None) -> Path | None:
    """Cache root from the BFSYZ_CACHE environment variable (None = disabled)."""
    base = override if override is not None else os.environ.get("BFSYZ_CACHE")
    if not base:
        return None
    path = Path(base)
    path.mkdir(parents=True, exist_ok=True)
    return path


def atomic_dump(matrix: ExactMatrix, path: Path) -> None:
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    dump_matrix(matrix, tmp)
    os.replace(tmp, path)


class PolyRing:
    """QQ[prefix0 .. prefix{n}] with variable i carrying torus weight 2i - n."""

    __slots__ = ("nvars", "prefix")

    def __init__(self, nvars: int, prefix: str = "c"):
        if nvars < 1:
            raise ValueError("ring needs at least one variable")
        self.nvars = nvars
        self.prefix = prefix

    @property
    def inner_degree(self) -> int:
        return self.nvars - 1

    def variable_names(self) -> list[str]:
        return [f"{self.prefix}{i}" for i in range(self.nvars)]

    def monomials(self, k: int):
        """Degree-k exponent vectors, lexicographically descending."""
        if k < 0:
            return ()
        return plethysm_basis(k, self.nvars - 1)

    def monomial_index(self, k: int) -> dict:
        return plethysm_index(k, self.nvars - 1)

    def monomial_weight(self, exp) -> int:
        return coord_weight(exp, self.nvars - 1)

    def dimension(self, k: int) -> int:
        if k < 0:
            return 0
        return comb(self.nvars - 1 + k, self.nvars - 1)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return MultiPoly(self, {(0,) * self.nvars: 1})

    def variable(self, i: int) -> "MultiPoly":
        exp = [0] * self.nvars
        exp[i] = 1
        return MultiPoly(self, {tuple(exp): 1})

    def monomial(self, exp) -> "MultiPoly":
        return MultiPoly(self, {tuple(exp): 1})

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyRing):
            return NotImplemented
        return self.nvars == other.nvars and self.prefix == other.prefix

    def __hash__(self):
        return hash((self.nvars, self.prefix))

    def __repr__(self) -> str:
        names = self.variable_names()
        shown = ", ".join(names) if len(names) <= 4 else f"{names[0]}..{names[-1]}"
        return f"PolyRing(QQ[{shown}])"


class MultiPoly:
    """Sparse polynomial {exponent tuple: coefficient}; zero coefficients dropped."""

    __slots__ = ("ring", "terms", "homogeneous_degree")

    def __init__(self, ring: PolyRing, terms):
        self.ring = ring
        clean = {}
        for exp, coeff in terms.items():
            exp = tuple(exp)
            if len(exp) != ring.nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {ring!r}")
            coeff = _normalize_scalar(coeff)
            if coeff:
                clean[exp] = coeff
        self.terms = clean
        degrees = {sum(e) for e in clean}
        self.homogeneous_degree = degrees.pop() if len(degrees) == 1 else None

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), 0)

    def weight(self) -> int | None:
        """Common torus weight of all terms, or None if mixed."""
        weights = {self.ring.monomial_weight(e) for e in self.terms}
        if len(weights) == 1:
            return weights.pop()
        return None

    def __add__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            # scalars embed as constants, so sum() and friends work
            other = MultiPoly(self.ring, {(0,) * self.ring.nvars: other})
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            out[exp] = out.get(exp, 0) + coeff
        return MultiPoly(self.ring, out)

    def __radd__(self, other) -> "MultiPoly":
        return self + other

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly(self.ring, {(0,) * self.ring.nvars: other})
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def scale(self, s) -> "MultiPoly":
        return MultiPoly(self.ring, {e: c * s for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return MultiPoly(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def power(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __pow__(self, k: int) -> "MultiPoly":
        return self.power(k)

    def evaluate(self, point):
        """Value at a rational point (sequence of length nvars)."""
        if len(point) != self.ring.nvars:
            raise ValueError("point length mismatch")
        total = 0
        for exp, coeff in self.terms.items():
            v = coeff
            for x, e in zip(point, exp):
                if e:
                    v *= x**e
            total += v
        return total

    def to_json(self) -> dict:
        terms = []
        for exp in sorted(self.terms, reverse=True):
            f = Fraction(self.terms[exp])
            terms.append({"exp": list(exp), "coeff": f"{f.numerator}/{f.denominator}"})
        return {"vars": self.ring.variable_names(), "terms": terms}

    @classmethod
    def from_json(cls, ring: PolyRing, data: dict) -> "MultiPoly":
        if data["vars"] != ring.variable_names():
            raise ValueError("variable list mismatch")
        terms = {}
        for t in data["terms"]:
            f = Fraction(t["coeff"])
            terms[tuple(t["exp"])] = f
        return cls(ring, terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {(0,) * self.ring.nvars: _normalize_scalar(other)}
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        raise TypeError("MultiPoly is not hashable")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.variable_names()
        parts = []
        for exp in sorted(self.terms, reverse=True):
            coeff = self.terms[exp]
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append((coeff, str(abs(coeff)) if coeff != 0 else "0"))
                continue
            if abs(coeff) == 1:
                parts.append((coeff, mono))
            else:
                parts.append((coeff, f"{abs(coeff)}*{mono}"))
        out = ""
        for coeff, text in parts:
            sign = "-" if coeff < 0 else "+"
            if not out:
                out = f"-{text}" if coeff < 0 else text
            else:
                out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


class PieceValue(NamedTuple):
    value: int
    rank: RankResult


class GradedIdeal:
    """Homogeneous ideal given by generators; graded pieces and their bases.

    The degree-k piece is span{m * g : g generator, m monomial of degree
    k - deg g}.  When every generator is weight-homogeneous the piece
    computation runs per weight block.
    """

    __slots__ = ("ring", "generators", "weight_graded")

    def __init__(self, ring: PolyRing, generators):
        gens = []
        for g in generators:
            if not isinstance(g, MultiPoly) or g.ring != ring:
                raise ValueError("generators must be MultiPoly in the ideal's ring")
            if g.is_zero():
                continue
            if g.homogeneous_degree is None:
                raise ValueError("generators must be homogeneous")
            if any(g.terms == h.terms for h in gens):
                continue
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.weight_graded = all(g.weight() is not None for g in gens)

    def generator_degrees(self) -> tuple[int, ...]:
        return tuple(g.homogeneous_degree for g in self.generators)

    def fingerprint(self) -> str:
        """Stable content hash over the ring and canonically sorted generators."""
        canon = []
        for g in self.generators:
            terms = []
            for exp in sorted(g.terms, reverse=True):
                f = Fraction(g.terms[exp])
                terms.append([list(exp), f"{f.numerator}/{f.denominator}"])
            canon.append(terms)
        canon.sort()
        payload = json.dumps(
            {"nvars": self.ring.nvars, "prefix": self.ring.prefix, "gens": canon},
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def spanning_data(self, k: int):
        """Sparse entries of the degree-k spanning matrix.

        Returns (entries, ncols, row_labels, col_labels): rows are indexed by
        the degree-k monomials, columns by the products m * g, labels are
        torus weights (all zero when the ideal is not weight-graded, which
        collapses the computation to a single block).
        """
        index = self.ring.monomial_index(k)
        row_labels = (
            [self.ring.monomial_weight(e) for e in self.ring.monomials(k)]
            if self.weight_graded
            else [0] * self.ring.dimension(k)
        )
        entries: dict = {}
        col_labels: list[int] = []
        col = 0
        for g in self.generators:
            dg = g.homogeneous_degree
            if dg > k:
                continue
            gw = g.weight() if self.weight_graded else 0
            for m in self.ring.monomials(k - dg):
                mw = self.ring.monomial_weight(m) if self.weight_graded else 0
                col_labels.append(gw + mw)
                for exp, coeff in g.terms.items():
                    key = tuple(a + b for a, b in zip(m, exp))
                    entries[(index[key], col)] = coeff
                col += 1
        return entries, col, row_labels, col_labels

    def graded_piece(self, k: int, mem_mb=None, cache=None) -> ExactMatrix:
        """Echelonized basis of the degree-k piece.

        Rows = degree-k monomials, columns = reduced basis vectors ordered by
        pivot monomial; the piece dimension is the column count.  Exact
        arithmetic always; cached to disk when a cache directory is active.
        """
        cdir = cache_directory(cache)
        path = None
        if cdir is not None:
            path = cdir / f"piece-{self.fingerprint()}-deg{k}.mat"
            if path.exists():
                return load_matrix(path)
        nrows = self.ring.dimension(k)
        entries, ncols, row_labels, col_labels = self.spanning_data(k)
        reduced_rows = []
        if entries:
            for _w, (row_ids, col_ids, sub) in split_blocks(
                {(j, i): v for (i, j), v in entries.items()}, col_labels, row_labels
            ).items():
                # block rows = products restricted to this weight's monomials
                if not sub:
                    continue
                dense = [[0] * len(col_ids) for _ in range(len(row_ids))]
                for (i, j), v in sub.items():
                    dense[i][j] = v
                red, piv = rref_rows(dense, len(col_ids))
                for row, p in zip(red, piv):
                    full = {}
                    for j, v in enumerate(row):
                        if v:
                            full[col_ids[j]] = v
                    reduced_rows.append((col_ids[p], full))
        reduced_rows.sort(key=lambda t: t[0])
        out_entries = {}
        for colno, (_pivot, vec) in enumerate(reduced_rows):
            for i, v in vec.items():
                out_entries[(i, colno)] = v
        out = ExactMatrix(nrows, len(reduced_rows), out_entries)
        if path is not None:
            atomic_dump(out, path)
        return out

    def basis_polys(self, k: int, mem_mb=None, cache=None) -> list[MultiPoly]:
        """The echelonized basis of the degree-k piece as polynomials."""
        piece = self.graded_piece(k, mem_mb, cache)
        monomials = self.ring.monomials(k)
        cols: list[dict] = [{} for _ in range(piece.ncols)]
        for (i, j), v in piece.entries.items():
            cols[j][monomials[i]] = v
        return [MultiPoly(self.ring, c) for c in cols]

    def piece_dimension_details(
        self, k: int, mode: str = "auto", *, rng=None, trials: int = 2,
        mem_mb=None, cache=None,
    ) -> RankResult:
        """dim I_k with provenance; exact mode reuses the cached echelon basis."""
        if k < 0 or not self.generators or k < min(self.generator_degrees()):
            return RankResult(0, "exact")
        nrows = self.ring.dimension(k)
        entries, ncols, row_labels, col_labels = self.spanning_data(k)
        if not entries:
            return RankResult(0, "exact")
        from .exactalg.matrix import _resolve_mode

        use = _resolve_mode(mode, nrows, ncols)
        if use == "exact":
            return RankResult(self.graded_piece(k, mem_mb, cache).ncols, "exact")
        return blocked_rank_details(
            nrows, ncols, entries, row_labels, col_labels, "modular",
            rng=rng, trials=trials, mem_mb=mem_mb,
        )


def ideal_power(ideal: GradedIdeal, j: int) -> GradedIdeal:
    """The ideal generated by all j-fold products of generators.

    Products are deduplicated by degreewise span reduction: within each
    product degree only a maximal independent subset is kept (greedy in
    product order), which leaves the ideal unchanged and keeps downstream
    matrices small.
    """
    from itertools import combinations_with_replacement

    if j < 1:
        raise ValueError("power must be at least 1")
    if j == 1:
        return ideal
    products: list[MultiPoly] = []
    for combo in combinations_with_replacement(range(len(ideal.generators)), j):
        p = ideal.ring.one()
        for i in combo:
            p = p * ideal.generators[i]
        if not p.is_zero():
            products.append(p)
    by_degree: dict[int, list[MultiPoly]] = {}
    for p in products:
        by_degree.setdefault(p.homogeneous_degree, []).append(p)
    kept: list[MultiPoly] = []
    for deg in sorted(by_degree):
        group = by_degree[deg]
        index = ideal.ring.monomial_index(deg)
        entries = {}
        for colno, p in enumerate(group):
            for exp, coeff in p.terms.items():
                entries[(index[exp], colno)] = coeff
        mat = ExactMatrix(ideal.ring.dimension(deg), len(group), entries)
        kept.extend(group[c] for c in independent_columns(mat))
    return GradedIdeal(ideal.ring, kept)


def independent_columns(m: ExactMatrix) -> tuple[int, ...]:
    """Greedy (leftmost-first) maximal independent column subset, exactly."""
    from .exactalg import rref

    return rref(m).pivot_cols


def hilbert_function_details(
    ideal: GradedIdeal, k_max: int, mode: str = "auto", *, rng=None, trials: int = 2,
    mem_mb=None, cache=None,
) -> list[PieceValue]:
    """HF(S/I)(k) for k = 0..k_max with per-degree rank provenance."""
    out = []
    for k in range(k_max + 1):
        res = ideal.piece_dimension_details(
            k, mode, rng=rng, trials=trials, mem_mb=mem_mb, cache=cache
        )
        out.append(PieceValue(ideal.ring.dimension(k) - res.rank, res))
    return out


def hilbert_function(ideal: GradedIdeal, k_max: int, mode: str = "auto", **kw) -> list[int]:
    """HF(S/I) in degrees 0..k_max."""
    return [pv.value for pv in hilbert_function_details(ideal, k_max, mode, **kw)]


# ---------------------------------------------------------------------------
# monomial ideals


def _divides(g, m) -> bool:
    return all(a <= b for a, b in zip(g, m))


class MonomialIdeal:
    """Monomial ideal held by its minimal generator set (pairwise non-divisible)."""

    __slots__ = ("ring", "generators")

    def __init__(self, ring: PolyRing, monomials):
        gens = []
        for exp in monomials:
            exp = tuple(exp)
            if len(exp) != ring.nvars or any(e < 0 for e in exp) or not any(exp):
                raise ValueError(f"bad monomial generator {exp}")
            gens.append(exp)
        gens = sorted(set(gens), reverse=True)
        minimal = [
            g for g in gens if not any(h != g and _divides(h, g) for h in gens)
        ]
        self.ring = ring
        self.generators = tuple(minimal)

    def contains_monomial(self, exp) -> bool:
        exp = tuple(exp)
        return any(_divides(g, exp) for g in self.generators)

    def standard_monomials(self, k: int) -> list[tuple[int, ...]]:
        """Degree-k monomials outside the ideal, by enumeration with pruning."""
        return [m for m in self.ring.monomials(k) if not self.contains_monomial(m)]

    def __repr__(self) -> str:
        shown = ", ".join(str(self.ring.monomial(g)) for g in self.generators[:6])
        more = "..." if len(self.generators) > 6 else ""
        return f"MonomialIdeal({shown}{more})"


def initial_ideal_Jab(a: int, b: int) -> MonomialIdeal:
    """The monomial ideal {c_i^a} + {c_i^j c_{i+1}^(a-j) : 1 <= j <= a-1}.

    Lead-term model for the power ideal in QQ[c_0..c_b]; for a = 1 this is
    the maximal ideal.
    """
    if a < 1 or b < 1:
        raise ValueError("need a >= 1 and b >= 1")
    ring = PolyRing(b + 1, "c")
    gens = []
    for i in range(b + 1):
        exp = [0] * (b + 1)
        exp[i] = a
        gens.append(tuple(exp))
    for i in range(b):
        for j in range(1, a):
            exp = [0] * (b + 1)
            exp[i] = j
            exp[i + 1] = a - j
            gens.append(tuple(exp))
    return MonomialIdeal(ring, gens)


def monomial_quotient_hf(ideal: MonomialIdeal, k_max: int) -> list[int]:
    """HF of (ring modulo monomial ideal) in degrees 0..k_max by enumeration."""
    return [len(ideal.standard_monomials(k)) for k in range(k_max + 1)]
