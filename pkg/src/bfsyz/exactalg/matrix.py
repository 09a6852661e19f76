"""Exact matrices over the rationals and prime fields.

Deterministic building blocks used by every other module:

* :class:`ExactMatrix` -- immutable sparse-storage matrix with an exact scalar
  type per entry (int / Fraction for field "QQ", residues for "GF:p").
* :func:`rank` / :func:`rank_details` -- rank in exact, modular, or auto mode.
  Modular mode draws two (or more) distinct random 50-62 bit primes and
  escalates to exact arithmetic whenever the per-prime ranks disagree, so a
  reported modular rank always carries agreeing primes in its provenance.
* :func:`rref` -- fully reduced row echelon form with leftmost-pivot
  deterministic pivoting; :func:`kernel_basis` -- primitive integer kernel
  vectors (content 1, first nonzero entry positive).

Row-level engines (`exact_rank_rows`, `rref_rows`, `mod_p_rank_rows`, ...) are
exposed for the modules that assemble large matrices blockwise and do not want
to round-trip through ExactMatrix.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple

import numpy as np

from ..errors import ConventionError, ResourceLimitError
from . import primes as _primes

if os.environ.get("BFSYZ_PURE") == "1":
    from . import _fallback as _kernel
else:
    try:
        from . import _speedups as _kernel  # type: ignore[no-redef]
    except ImportError:
        from . import _fallback as _kernel

KERNEL_BACKEND: str = _kernel.BACKEND_NAME

# auto mode: matrices whose larger dimension exceeds this go modular
EXACT_DIM_LIMIT = 2000

DEFAULT_MEM_MB = 4096

_EXACT_CELL_BYTES = 48  # conservative per-cell estimate for Fraction rows
_MOD_CELL_BYTES = 8


def memory_budget_mb(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("BFSYZ_MEM_MB")
    if env:
        return int(env)
    return DEFAULT_MEM_MB


def check_dense_budget(nrows: int, ncols: int, bytes_per_cell: int, mem_mb: int | None, what: str) -> None:
    budget = memory_budget_mb(mem_mb) * 1024 * 1024
    need = nrows * ncols * bytes_per_cell
    if need > budget:
        raise ResourceLimitError(
            f"{what}: dense {nrows} x {ncols} needs ~{need // (1024 * 1024)} MiB, "
            f"budget is {budget // (1024 * 1024)} MiB (set BFSYZ_MEM_MB to raise)"
        )


def default_rng() -> random.Random:
    """Seeded generator honouring BFSYZ_SEED (default 0)."""
    return random.Random(int(os.environ.get("BFSYZ_SEED", "0")))


def _normalize_scalar(v):
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, np.integer):
        return int(v)
    raise TypeError(f"exact matrices accept int/Fraction entries, got {type(v).__name__}")


class ExactMatrix:
    """Immutable exact matrix; zero entries are never stored.

    ``field`` is "QQ" or "GF:<p>"; GF matrices hold plain int residues in
    [0, p).  After :func:`rref` the result carries ``pivot_cols``.
    """

    __slots__ = ("nrows", "ncols", "field", "entries", "pivot_cols")

    def __init__(self, nrows: int, ncols: int, entries=None, field: str = "QQ"):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimensions")
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        clean = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise ValueError(f"entry index ({i}, {j}) outside {nrows} x {ncols}")
                v = _normalize_scalar(v)
                if v:
                    clean[(i, j)] = v
        self.entries = clean
        self.pivot_cols: tuple[int, ...] | None = None

    @classmethod
    def from_rows(cls, rows, field: str = "QQ") -> "ExactMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(nrows, ncols, entries, field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int):
        return self.entries.get((i, j), 0)

    def to_rows(self, mem_mb: int | None = None) -> list[list]:
        check_dense_budget(self.nrows, self.ncols, _EXACT_CELL_BYTES, mem_mb, "to_rows")
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()}, self.field
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        raise TypeError("ExactMatrix is not hashable")

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows} x {self.ncols}, nnz={self.nnz}, field={self.field})"


class RankResult(NamedTuple):
    rank: int
    mode: str  # "exact" or "modular"
    primes: tuple[int, ...] = ()
    escalated: bool = False


# ---------------------------------------------------------------------------
# row-level exact engines


def clear_denominators(row) -> list[int]:
    """Scale a row of int/Fraction by the lcm of denominators; returns ints."""
    mult = 1
    for v in row:
        if isinstance(v, Fraction):
            mult = lcm(mult, v.denominator)
    if mult == 1:
        return [int(v) for v in row]
    return [int(v * mult) for v in row]


def primitive_int_vector(vec) -> tuple[int, ...]:
    """Clear denominators, divide by the content, make first nonzero positive."""
    ints = clear_denominators(list(vec))
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-x for x in ints]
            break
    return tuple(ints)


def bareiss_rank_rows(rows: list[list[int]], ncols: int) -> int:
    """Fraction-free rank of integer rows.  Mutates ``rows``."""
    nrows = len(rows)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        pc = pr[c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (ri[j] * pc - f * pr[j]) // prev
            ri[c] = 0
        prev = pc
        r += 1
    return r


def exact_rank_rows(rows, ncols: int) -> int:
    """Rank over QQ of rows with int/Fraction entries (rows are not mutated)."""
    int_rows = [clear_denominators(row) for row in rows]
    return bareiss_rank_rows(int_rows, ncols)


def rref_rows(rows, ncols: int):
    """Fully reduced row echelon form over QQ.

    ``rows`` is a list of dense rows (int/Fraction); a *new* list of nonzero
    reduced rows is returned together with the pivot column list.  Pivots are
    1, pivot columns are zero elsewhere, pivoting is leftmost-column /
    first-nonzero-row, so the output depends only on the row span and the
    input row order.
    """
    work = [list(row) for row in rows]
    nrows = len(work)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if work[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            work[r], work[piv] = work[piv], work[r]
        pr = work[r]
        lead = pr[c]
        if lead != 1:
            inv = Fraction(1, 1) / Fraction(lead)
            for j in range(c, ncols):
                if pr[j]:
                    pr[j] = _frac_trim(pr[j] * inv)
        for i in range(nrows):
            if i == r:
                continue
            ri = work[i]
            f = ri[c]
            if f:
                for j in range(c, ncols):
                    if pr[j]:
                        ri[j] = _frac_trim(ri[j] - f * pr[j])
        pivots.append(c)
        r += 1
    return work[:r], pivots


def _frac_trim(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def kernel_rows_from_rref(reduced, pivots, ncols: int) -> list[tuple[int, ...]]:
    """Primitive integer kernel basis from a reduced echelon form."""
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [0] * ncols
        vec[f] = 1
        for k, pc in enumerate(pivots):
            v = reduced[k][f]
            if v:
                vec[pc] = -v
        basis.append(primitive_int_vector(vec))
    return basis


# ---------------------------------------------------------------------------
# modular engines


class _BadPrime(Exception):
    """A denominator vanished mod p; resample the prime."""


def _reduce_scalar(v, p: int) -> int:
    if isinstance(v, int):
        return v % p
    num = v.numerator % p
    den = v.denominator % p
    if den == 0:
        raise _BadPrime(p)
    return num * pow(den, p - 2, p) % p


def mod_p_rank_rows(rows, ncols: int, p: int, mem_mb: int | None = None) -> int:
    """Rank over F_p of dense int/Fraction rows."""
    nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    check_dense_budget(nrows, ncols, _MOD_CELL_BYTES, mem_mb, "mod_p_rank")
    arr = np.zeros((nrows, ncols), dtype=np.uint64)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                arr[i, j] = _reduce_scalar(v, p)
    return int(_kernel.rank_mod_p_dense(arr, p))


def mod_p_rank_sparse(entries, nrows: int, ncols: int, p: int, mem_mb: int | None = None) -> int:
    """Rank over F_p of a sparse entry dict {(i, j): value}."""
    if nrows == 0 or ncols == 0:
        return 0
    check_dense_budget(nrows, ncols, _MOD_CELL_BYTES, mem_mb, "mod_p_rank")
    arr = np.zeros((nrows, ncols), dtype=np.uint64)
    for (i, j), v in entries.items():
        r = _reduce_scalar(v, p)
        if r:
            arr[i, j] = r
    return int(_kernel.rank_mod_p_dense(arr, p))


def draw_primes(rng: random.Random | None, trials: int, avoid: tuple[int, ...] = ()) -> list[int]:
    if trials < 2:
        raise ValueError("modular mode needs at least 2 prime trials")
    if rng is None:
        rng = default_rng()
    return _primes.distinct_random_primes(rng, trials, avoid)


# ---------------------------------------------------------------------------
# public rank / rref / kernel operations


def _resolve_mode(mode: str, nrows: int, ncols: int) -> str:
    if mode == "auto":
        return "exact" if max(nrows, ncols) <= EXACT_DIM_LIMIT else "modular"
    if mode not in ("exact", "modular"):
        raise ValueError(f"unknown mode {mode!r}")
    return mode


def rank_details(
    m: ExactMatrix,
    mode: str = "auto",
    *,
    rng: random.Random | None = None,
    trials: int = 2,
    primes: list[int] | None = None,
    mem_mb: int | None = None,
) -> RankResult:
    """Rank with provenance.

    Modular mode computes the rank for ``trials`` distinct random primes; on
    any disagreement it recomputes exactly (``escalated=True``).  Exact mode
    is fraction-free integer elimination.
    """
    use = _resolve_mode(mode, m.nrows, m.ncols)
    if m.nnz == 0:
        return RankResult(0, "exact")
    if use == "exact":
        return RankResult(exact_rank_rows(m.to_rows(mem_mb), m.ncols), "exact")

    if rng is None:
        rng = default_rng()
    chosen = list(primes) if primes else draw_primes(rng, trials)
    ranks = []
    used: list[int] = []
    for p in chosen:
        while True:
            try:
                ranks.append(mod_p_rank_sparse(m.entries, m.nrows, m.ncols, p, mem_mb))
                used.append(p)
                break
            except _BadPrime:
                p = _primes.distinct_random_primes(rng, 1, tuple(used) + (p,))[0]
    if len(set(ranks)) == 1:
        return RankResult(ranks[0], "modular", tuple(used))
    exact = exact_rank_rows(m.to_rows(mem_mb), m.ncols)
    return RankResult(exact, "exact", tuple(used), escalated=True)


def rank(m: ExactMatrix, mode: str = "auto", **kw) -> int:
    return rank_details(m, mode, **kw).rank


def rref(m: ExactMatrix, mem_mb: int | None = None) -> ExactMatrix:
    """Reduced row echelon form (same shape, zero rows kept, pivots recorded)."""
    reduced, pivots = rref_rows(m.to_rows(mem_mb), m.ncols)
    entries = {}
    for i, row in enumerate(reduced):
        for j, v in enumerate(row):
            if v:
                entries[(i, j)] = v
    out = ExactMatrix(m.nrows, m.ncols, entries, m.field)
    out.pivot_cols = tuple(pivots)
    return out


def kernel_basis(m: ExactMatrix, mem_mb: int | None = None) -> list[tuple[int, ...]]:
    """Primitive integer basis of the right kernel, free columns in order.

    Each vector has content 1 and positive first nonzero entry; the identity
    matrix yields [] and a full-space kernel yields unit vectors.
    """
    if m.ncols == 0:
        return []
    if m.nnz == 0:
        basis = []
        for f in range(m.ncols):
            vec = [0] * m.ncols
            vec[f] = 1
            basis.append(tuple(vec))
        return basis
    reduced, pivots = rref_rows(m.to_rows(mem_mb), m.ncols)
    return kernel_rows_from_rref(reduced, pivots, m.ncols)


# ---------------------------------------------------------------------------
# weight-blocked rank for label-preserving (equivariant) matrices


def split_blocks(entries, row_labels, col_labels):
    """Group sparse entries of a label-preserving map by label.

    Every nonzero entry must connect a row and column with equal labels,
    otherwise the map is not equivariant for the labelling and a
    ConventionError is raised.  Returns {label: (row_ids, col_ids, subdict)}
    with deterministic (sorted) index order.
    """
    rows_by = {}
    cols_by = {}
    for i, w in enumerate(row_labels):
        rows_by.setdefault(w, []).append(i)
    for j, w in enumerate(col_labels):
        cols_by.setdefault(w, []).append(j)
    sub: dict = {w: {} for w in set(rows_by) | set(cols_by)}
    row_pos = {}
    for w, ids in rows_by.items():
        for k, i in enumerate(ids):
            row_pos[i] = (w, k)
    col_pos = {}
    for w, ids in cols_by.items():
        for k, j in enumerate(ids):
            col_pos[j] = (w, k)
    for (i, j), v in entries.items():
        wi, ki = row_pos[i]
        wj, kj = col_pos[j]
        if wi != wj:
            raise ConventionError(
                f"entry ({i}, {j}) connects label {wj} to label {wi}; matrix is not label-preserving"
            )
        sub[wi][(ki, kj)] = v
    out = {}
    for w in sorted(set(rows_by) | set(cols_by)):
        out[w] = (rows_by.get(w, []), cols_by.get(w, []), sub.get(w, {}))
    return out


def blocked_kernel_basis(
    nrows: int,
    ncols: int,
    entries,
    row_labels,
    col_labels,
    mem_mb: int | None = None,
) -> list[tuple[int, ...]]:
    """Primitive integer kernel basis of a label-preserving map, blockwise.

    The kernel of a block-diagonal matrix is the direct sum of the block
    kernels; vectors come out ordered by (label, free column order within the
    block) and are embedded back into the full column index space.
    """
    if ncols == 0:
        return []
    out: list[tuple[int, ...]] = []
    blocks = split_blocks(entries, row_labels, col_labels)
    for w in sorted(blocks):
        row_ids, col_ids, sub = blocks[w]
        if not col_ids:
            continue
        block = ExactMatrix(len(row_ids), len(col_ids), sub)
        for vec in kernel_basis(block, mem_mb):
            full = [0] * ncols
            for k, v in enumerate(vec):
                full[col_ids[k]] = v
            out.append(tuple(full))
    return out


def blocked_rank_details(
    nrows: int,
    ncols: int,
    entries,
    row_labels,
    col_labels,
    mode: str = "auto",
    *,
    rng: random.Random | None = None,
    trials: int = 2,
    primes: list[int] | None = None,
    mem_mb: int | None = None,
) -> RankResult:
    """Rank of a label-preserving map as the sum of per-label block ranks.

    The exact/modular decision is made once from the *full* matrix dimensions
    (so provenance matches the unblocked computation); all blocks then run in
    that mode with a shared prime set.
    """
    use = _resolve_mode(mode, nrows, ncols)
    if not entries:
        return RankResult(0, "exact")
    if use == "modular":
        if rng is None:
            rng = default_rng()
        chosen = list(primes) if primes else draw_primes(rng, trials)
    else:
        chosen = []
    total = 0
    escalated = False
    for _w, (row_ids, col_ids, sub) in split_blocks(entries, row_labels, col_labels).items():
        if not sub:
            continue
        block = ExactMatrix(len(row_ids), len(col_ids), sub)
        if use == "exact":
            total += exact_rank_rows(block.to_rows(mem_mb), block.ncols)
        else:
            res = rank_details(block, "modular", rng=rng, trials=trials, primes=chosen, mem_mb=mem_mb)
            total += res.rank
            escalated = escalated or res.escalated
    if use == "exact":
        return RankResult(total, "exact")
    # blocks that disagreed were settled exactly; the rest carry double-prime
    # confidence, so the aggregate is reported at modular strength
    return RankResult(total, "modular", tuple(chosen), escalated=escalated)
