"""Finite-field experiments on the loci W^r_2n(C), their closure, and the global locus.

Dimensions are estimated from exact point counts over several primes
(``|X(F_p)| ~ c p^dim``) and from tangent spaces computed by exact
differentiation of minors.  Neither is a proof; reports keep raw counts.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, Sequence

import numpy as np

from . import kernels
from .determinantal import (
    LinearMatrixSpace,
    affine_space,
    bn_space,
    build_A,
    catalecticant_space,
    clifford_check,
    in_W,
    projective_space,
    _check_bn_range,
)
from .exact import GF, QQ, ExactMatrix, Field, PrimeField, determinant, is_prime, rank_and_kernel, solve_linear
from .ribbon import BundleDatum, RibbonDatum

DEFAULT_BUDGET = 2_000_000
CHUNK = 1 << 15


class BudgetExceeded(RuntimeError):
    pass


class EmptyLocus(ValueError):
    pass


class DeeperStratum(ValueError):
    pass


class SamplingFailure(RuntimeError):
    def __init__(self, message: str, draws: int, inconsistent: int, degenerate: int):
        super().__init__(message)
        self.draws = draws
        self.inconsistent = inconsistent
        self.degenerate = degenerate


def rho(g: int, n: int, r: int) -> int:
    """Brill-Noether number for degree ``d = 2n``."""
    return g - (r + 1) * (g - 2 * n + r)


# ---------------------------------------------------------------------------
# Locus descriptions


class LocusKind(str, Enum):
    AFFINE_W = "affine"
    PROJECTIVE_BW = "projective"
    GLOBAL_W = "global"


@dataclass(frozen=True)
class LocusSpec:
    kind: LocusKind
    g: int
    n: int
    r: int
    ribbon: RibbonDatum | None = None
    boundary: bool = False  # restrict the closure to its hyperplane G_0 = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", LocusKind(self.kind))
        _check_bn_range(self.g, self.n, self.r)
        if self.kind is LocusKind.GLOBAL_W:
            if self.ribbon is not None:
                raise ValueError("the global locus lets F vary; do not pass a ribbon")
        elif self.ribbon is None:
            if not self.boundary:
                raise ValueError(f"{self.kind.value} locus needs a fixed ribbon")
        elif self.ribbon.g != self.g:
            raise ValueError("ribbon genus does not match")
        if self.boundary and self.kind is not LocusKind.PROJECTIVE_BW:
            raise ValueError("boundary slice only applies to the projective closure")

    @property
    def bound(self) -> int:
        return self.n - self.r

    @property
    def projective(self) -> bool:
        return self.kind is LocusKind.PROJECTIVE_BW

    def space(self, field: Field = QQ) -> LinearMatrixSpace:
        if self.kind is LocusKind.GLOBAL_W:
            return bn_space(self.g, self.n, field)
        if self.boundary:
            # on G_0 = 0 the closure is the Catalecticant locus for every F
            return catalecticant_space(self.g, self.n, field)
        ribbon = self.ribbon
        if ribbon.field != field:
            if isinstance(ribbon.field, PrimeField):
                raise ValueError(f"ribbon is defined over {ribbon.field!r}, cannot use {field!r}")
            ribbon = RibbonDatum.from_coefficients(ribbon.g, [field(c) for c in ribbon.coefficients], field)
        if self.kind is LocusKind.AFFINE_W:
            return affine_space(ribbon, self.n)
        return projective_space(ribbon, self.n)

    @property
    def ambient_dim(self) -> int:
        nv = {LocusKind.AFFINE_W: self.g, LocusKind.PROJECTIVE_BW: self.g + 1, LocusKind.GLOBAL_W: 2 * self.g - 2}[self.kind]
        if self.boundary:
            nv -= 1
        return nv - 1 if self.projective else nv

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "g": self.g, "n": self.n, "r": self.r, "boundary": self.boundary}
        out["F"] = self.ribbon.to_json()["F"] if self.ribbon is not None else None
        return out


# ---------------------------------------------------------------------------
# Point counting


@dataclass(frozen=True)
class Exhaustive:
    pass


@dataclass(frozen=True)
class MonteCarlo:
    samples: int
    seed: int = 0


EXHAUSTIVE = Exhaustive()


@dataclass(frozen=True)
class PointCount:
    prime: int
    count: float | int  # exact integer, or an estimate in Monte Carlo mode
    exhaustive: bool
    hits: int
    samples: int
    seed: int | None = None

    def to_json(self) -> dict:
        out = {"prime": self.prime, "count": self.count, "exhaustive": self.exhaustive, "hits": self.hits, "samples": self.samples}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _kernel_arrays(space: LinearMatrixSpace, p: int) -> tuple[np.ndarray, np.ndarray]:
    sp = space.over(GF(p))
    T = np.array(sp.coeffs, dtype=np.int64).reshape(sp.nvars, sp.rows * sp.cols)
    c = np.array(sp.const, dtype=np.int64)
    return np.ascontiguousarray(T), np.ascontiguousarray(c)


def _run_chunks(fn: Callable, tasks: Sequence, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def philox(seed: int, stream: int) -> np.random.Generator:
    """Counter-based generator: stream ``k`` of ``seed`` is fixed independently of scheduling."""
    return np.random.Generator(np.random.Philox(key=seed & ((1 << 64) - 1)).jumped(stream))


def count_rank_le_exhaustive(space: LinearMatrixSpace, p: int, bound: int, workers: int = 1) -> int:
    T, c = _kernel_arrays(space, p)
    total = p ** space.nvars
    tasks = [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]

    def work(rng):
        return kernels.count_rank_le(T, c, space.rows, space.cols, p, bound, rng[0], rng[1])

    return sum(_run_chunks(work, tasks, workers))


def count_points(spec: LocusSpec, p: int, mode=EXHAUSTIVE, budget: int = DEFAULT_BUDGET, workers: int = 1) -> PointCount:
    """F_p-points of the locus; projective loci are counted as projective points."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    field = QQ
    if spec.ribbon is not None and isinstance(spec.ribbon.field, PrimeField):
        if spec.ribbon.field.p != p:
            raise ValueError(f"ribbon is defined over {spec.ribbon.field!r}, cannot count over F_{p}")
        field = spec.ribbon.field
    space = spec.space(field)
    nv = space.nvars
    if isinstance(mode, Exhaustive):
        total = p ** nv
        if total > budget:
            raise BudgetExceeded(f"{p}^{nv} = {total} points exceeds budget {budget}")
        hits = count_rank_le_exhaustive(space, p, spec.bound, workers)
        count = (hits - 1) // (p - 1) if spec.projective else hits
        return PointCount(p, count, True, hits, total)
    if not isinstance(mode, MonteCarlo):
        raise TypeError(f"unknown counting mode {mode!r}")
    if mode.samples > budget:
        raise BudgetExceeded(f"{mode.samples} samples exceeds budget {budget}")
    T, c = _kernel_arrays(space, p)
    sizes = [min(CHUNK, mode.samples - s) for s in range(0, mode.samples, CHUNK)]

    def work(item):
        k, size = item
        pts = philox(mode.seed, k).integers(0, p, size=(size, nv), dtype=np.int64)
        return kernels.count_rank_le_points(T, c, space.rows, space.cols, p, spec.bound, np.ascontiguousarray(pts))

    hits = sum(_run_chunks(work, list(enumerate(sizes)), workers))
    estimate = hits / mode.samples * float(p) ** nv
    if spec.projective:
        estimate = max(estimate - 1.0, 0.0) / (p - 1)
    return PointCount(p, estimate, False, hits, mode.samples, mode.seed)


# ---------------------------------------------------------------------------
# Dimension fitting


@dataclass(frozen=True)
class DimensionFit:
    dim: int
    slope: float
    residual: float
    primes: tuple[int, int]

    @property
    def conclusive(self) -> bool:
        return self.residual <= 0.5

    def to_json(self) -> dict:
        return {"dim": self.dim, "slope": round(self.slope, 12), "residual": round(self.residual, 12), "primes": list(self.primes)}


def fit_dimension(counts: Mapping[int, float]) -> DimensionFit:
    """Log-ratio slope of the counts at the two largest primes, rounded."""
    if len(counts) < 2:
        raise ValueError("need counts for at least two primes")
    p1, p2 = sorted(counts)[-2:]
    n1, n2 = counts[p1], counts[p2]
    if isinstance(n1, PointCount):
        n1, n2 = n1.count, n2.count
    if n1 <= 0 or n2 <= 0:
        empty = [p for p, n in ((p1, n1), (p2, n2)) if n <= 0]
        raise EmptyLocus(f"no points over F_p for p in {empty}")
    slope = (math.log(n2) - math.log(n1)) / (math.log(p2) - math.log(p1))
    dim = round(slope)
    return DimensionFit(dim, slope, abs(slope - dim), (p1, p2))


# ---------------------------------------------------------------------------
# Tangent spaces


def _minor_derivative(M: ExactMatrix, C: ExactMatrix, rows: Sequence[int], cols: Sequence[int]) -> object:
    """Directional derivative of ``det M[rows, cols]`` along ``C`` (multilinearity in rows)."""
    f = M.field
    acc = f.zero
    base = [[M[i, j] for j in cols] for i in rows]
    for a, i in enumerate(rows):
        replaced = [r[:] for r in base]
        replaced[a] = [C[i, j] for j in cols]
        if all(f.is_zero(x) for x in replaced[a]):
            continue
        acc = f.add(acc, determinant(ExactMatrix.from_rows(replaced, f)))
    return acc


def minors_jacobian(space: LinearMatrixSpace, point: Sequence, size: int) -> ExactMatrix:
    """Jacobian of all ``size x size`` minors with respect to the space's variables."""
    M = space.evaluate(point)
    f = space.field
    Cs = [space.coefficient_matrix(v) for v in range(space.nvars)]
    rows_out = []
    for I in itertools.combinations(range(space.rows), size):
        for J in itertools.combinations(range(space.cols), size):
            rows_out.append([_minor_derivative(M, C, I, J) for C in Cs])
    if not rows_out:
        return ExactMatrix.zeros(0, space.nvars, f)
    return ExactMatrix.from_rows(rows_out, f, cols=space.nvars)


def tangent_dim(spec: LocusSpec, point: Sequence, field: Field = QQ) -> int:
    """Dimension of the Zariski tangent space at a point of the stratum rank = n - r.

    For the projective closure the point is ``[G_0 : ... : G_g]`` and the
    answer is for the projective variety (cone dimension minus one).
    """
    space = spec.space(field)
    point = [field(x) for x in point]
    if spec.projective and all(field.is_zero(x) for x in point):
        raise ValueError("projective point with all coordinates zero")
    rank = rank_and_kernel(space.evaluate(point))[0]
    if rank > spec.bound:
        raise ValueError(f"point is not on the locus (rank {rank} > {spec.bound})")
    if rank < spec.bound:
        raise DeeperStratum(f"rank {rank} < {spec.bound}: point lies in a deeper stratum")
    size = spec.bound + 1
    if size > min(space.rows, space.cols):
        tdim = space.nvars
    else:
        tdim = space.nvars - minors_jacobian(space, point, size).rank()
    return tdim - 1 if spec.projective else tdim


# ---------------------------------------------------------------------------
# Constructive sampling


@dataclass(frozen=True)
class SampleResult:
    bundle: BundleDatum
    rank: int
    draws: int
    inconsistent: int
    degenerate: int

    def to_json(self) -> dict:
        return {
            "bundle": self.bundle.to_json(),
            "rank": self.rank,
            "draws": self.draws,
            "inconsistent_draws": self.inconsistent,
            "degenerate_draws": self.degenerate,
        }


def _random_scalar(field: Field, rng: random.Random, height: int = 2):
    if isinstance(field, PrimeField):
        return rng.randrange(field.p)
    return field(rng.randint(-height, height))


def W_constraints(R: RibbonDatum, n: int, a: Sequence) -> tuple[ExactMatrix, list]:
    """Linear system in ``G_1..G_g`` forcing ``A_F(G) a = 0``.

    Row ``m``: ``sum_j a_j G_{m+j} = -sum_j j a_j F_{m+j-1}`` (``j = 0..n``).
    """
    f = R.field
    g = R.g
    rows, rhs = [], []
    for m in range(1, g - n + 1):
        row = [f.zero] * g
        b = f.zero
        for j in range(n + 1):
            aj = f(a[j])
            row[m + j - 1] = f.add(row[m + j - 1], aj)
            b = f.sub(b, f.mul(f.mul(f(j), aj), R.coeff(m + j - 1)))
        rows.append(row)
        rhs.append(b)
    return ExactMatrix.from_rows(rows, f, cols=g), rhs


def sample_W_point(R: RibbonDatum, n: int, r: int, seed: int = 0, max_draws: int = 100,
                   exact_rank: bool = False, height: int = 2) -> SampleResult:
    """Draw a bundle in W^r_2n(C) by forcing ``r+1`` random polynomials to be sections.

    Over Q the polynomial coefficients are integers in ``[-height, height]``;
    small heights make consistent systems far more likely.  With
    ``exact_rank`` draws landing in a deeper stratum are discarded.
    """
    _check_bn_range(R.g, n, r)
    f = R.field
    rng = random.Random(seed)
    inconsistent = degenerate = 0
    for draw in range(1, max_draws + 1):
        vectors = [[_random_scalar(f, rng, height) for _ in range(n + 1)] for _ in range(r + 1)]
        if ExactMatrix.from_rows(vectors, f, cols=n + 1).rank() < r + 1:
            degenerate += 1
            continue
        A_rows, rhs = [], []
        for a in vectors:
            A, b = W_constraints(R, n, a)
            A_rows.extend(A.to_rows())
            rhs.extend(b)
        solved = solve_linear(ExactMatrix.from_rows(A_rows, f, cols=R.g), rhs)
        if solved is None:
            inconsistent += 1
            continue
        particular, kernel = solved
        G = list(particular)
        for v in kernel:
            c = _random_scalar(f, rng, height)
            G = [f.add(x, f.mul(c, y)) for x, y in zip(G, v)]
        L = BundleDatum.from_coefficients(R, n, G)
        if not in_W(L, r):
            raise AssertionError("constructed bundle fails the rank condition")
        rank = build_A(L).rank()
        if exact_rank and rank != n - r:
            degenerate += 1
            continue
        return SampleResult(L, rank, draw, inconsistent, degenerate)
    raise SamplingFailure(
        f"no point of W^{r}_{2 * n} found in {max_draws} draws "
        f"({inconsistent} inconsistent, {degenerate} degenerate)",
        max_draws, inconsistent, degenerate,
    )


# ---------------------------------------------------------------------------
# m-genericity


CERTIFIED = "CertifiedExhaustive"
NO_COUNTEREXAMPLE = "NoCounterexampleFound"
COUNTEREXAMPLE = "Counterexample"


@dataclass(frozen=True)
class GenericityVerdict:
    space: str
    m: int
    prime: int
    verdict: str
    trials: int
    witness: dict | None = None

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "m": self.m,
            "prime": self.prime,
            "verdict": self.verdict,
            "trials": self.trials,
            "witness": self.witness,
        }


def _projective_reps(p: int, dim: int) -> np.ndarray:
    """One vector per line of F_p^dim (first nonzero coordinate 1)."""
    reps = []
    for lead in range(dim):
        for tail in itertools.product(range(p), repeat=dim - lead - 1):
            reps.append([0] * lead + [1] + list(tail))
    return np.array(reps, dtype=np.int64).reshape(-1, dim)


def _forms(T: np.ndarray, a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.einsum("ni,vij,nj->nv", a, T, b) % p


def _independent_pair(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    """Row-wise: are x and y linearly independent over F_p?"""
    d = x.shape[1]
    out = np.zeros(x.shape[0], dtype=bool)
    for u, v in itertools.combinations(range(d), 2):
        out |= (x[:, u] * y[:, v] - x[:, v] * y[:, u]) % p != 0
    return out


def _dependent_forms(f1: np.ndarray, f2: np.ndarray, p: int) -> np.ndarray:
    return ~_independent_pair(f1, f2, p)


def verify_witness(space: LinearMatrixSpace, m: int, p: int, witness: Mapping) -> bool:
    """Re-check a genericity counterexample with exact scalar arithmetic."""
    F = GF(p)
    sp = space.over(F)
    if m == 1:
        a, b = witness["a"], witness["b"]
        if not any(F(x) for x in a) or not any(F(x) for x in b):
            return False
        return all(F.is_zero(x) for x in sp.generalized_entry(a, b))
    a1, b1, a2, b2 = witness["a1"], witness["b1"], witness["a2"], witness["b2"]

    def rk(vs, n):
        return ExactMatrix.from_rows([[F(x) for x in v] for v in vs], F, cols=n).rank()

    ra, rb = rk([a1, a2], space.rows), rk([b1, b2], space.cols)
    same_rows = rk([a1], space.rows) == 1 and ra == 1
    same_cols = rk([b1], space.cols) == 1 and rb == 1
    admissible = (ra == 2 and rb == 2) or (same_rows and rb == 2) or (same_cols and ra == 2)
    if not admissible:
        return False
    f1 = sp.generalized_entry(a1, b1)
    f2 = sp.generalized_entry(a2, b2)
    return rk([f1, f2], space.nvars) < 2


def _witness_dict(m: int, vecs: Sequence[np.ndarray]) -> dict:
    keys = ("a", "b") if m == 1 else ("a1", "b1", "a2", "b2")
    return {k: [int(x) for x in v] for k, v in zip(keys, vecs)}


def _exhaustive_generic(T: np.ndarray, R: int, C: int, p: int, m: int, budget: int) -> tuple[int, dict | None] | None:
    na, nb = (p ** R - 1) // (p - 1), (p ** C - 1) // (p - 1)
    npos = na * nb
    if (npos if m == 1 else npos * (npos - 1) // 2) > budget:
        return None
    A = _projective_reps(p, R)
    B = _projective_reps(p, C)
    ai, bi = np.meshgrid(np.arange(na), np.arange(nb), indexing="ij")
    ai, bi = ai.ravel(), bi.ravel()
    forms = _forms(T, A[ai], B[bi], p)
    if m == 1:
        zero = ~forms.any(axis=1)
        if zero.any():
            k = int(np.argmax(zero))
            return na * nb, _witness_dict(1, (A[ai[k]], B[bi[k]]))
        return na * nb, None
    # unordered pairs of distinct (row line, column line) positions; any such
    # pair is admissible: equal row lines force distinct column lines and
    # vice versa
    checked = 0
    for i in range(npos - 1):
        j = np.arange(i + 1, npos)
        a_same = ai[j] == ai[i]
        b_same = bi[j] == bi[i]
        admissible = ~(a_same & b_same)
        dep = _dependent_forms(np.broadcast_to(forms[i], (len(j), forms.shape[1])), forms[j], p) & admissible
        checked += int(admissible.sum())
        if dep.any():
            k = j[int(np.argmax(dep))]
            return checked, _witness_dict(2, (A[ai[i]], B[bi[i]], A[ai[k]], B[bi[k]]))
    return checked, None


def _random_generic_chunk(T: np.ndarray, R: int, C: int, p: int, m: int, seed: int, k: int):
    """Returns (admissible mask, dependent mask, vectors) for chunk ``k``."""
    rng = philox(seed, k)
    size = CHUNK
    a1 = rng.integers(0, p, size=(size, R), dtype=np.int64)
    b1 = rng.integers(0, p, size=(size, C), dtype=np.int64)
    if m == 1:
        admissible = a1.any(axis=1) & b1.any(axis=1)
        dep = ~_forms(T, a1, b1, p).any(axis=1)
        return admissible, dep & admissible, (a1, b1)
    a2 = rng.integers(0, p, size=(size, R), dtype=np.int64)
    b2 = rng.integers(0, p, size=(size, C), dtype=np.int64)
    config = rng.integers(0, 3, size=size)
    a2 = np.where((config == 1)[:, None], a1, a2)  # same row
    b2 = np.where((config == 2)[:, None], b1, b2)  # same column
    ind_a = _independent_pair(a1, a2, p)
    ind_b = _independent_pair(b1, b2, p)
    admissible = np.where(
        config == 0, ind_a & ind_b,
        np.where(config == 1, a1.any(axis=1) & ind_b, b1.any(axis=1) & ind_a),
    )
    dep = _dependent_forms(_forms(T, a1, b1, p), _forms(T, a2, b2, p), p)
    return admissible, dep & admissible, (a1, b1, a2, b2)


def genericity_check(space: LinearMatrixSpace, m: int, p: int, mode: str = "auto", trials: int = 100_000,
                     seed: int = 0, budget: int = DEFAULT_BUDGET, workers: int = 1) -> GenericityVerdict:
    """Search for generalized entries violating m-genericity over F_p.

    ``mode`` is ``"exhaustive"``, ``"random"`` or ``"auto"`` (exhaustive when
    within budget).  An exhaustive search that is over budget downgrades to a
    random search with ``trials`` trials.
    """
    if m not in (1, 2):
        raise ValueError("only m in {1, 2} is supported")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not space.is_linear():
        raise ValueError("genericity is defined for linear spaces of matrices")
    sp = space.over(GF(p))
    T = np.array(sp.coeffs, dtype=np.int64).reshape(sp.nvars, sp.rows, sp.cols)
    label = space.label or f"space{sp.rows}x{sp.cols}"

    if mode in ("auto", "exhaustive"):
        result = _exhaustive_generic(T, sp.rows, sp.cols, p, m, budget)
        if result is not None:
            checked, witness = result
            if witness is not None:
                if not verify_witness(space, m, p, witness):
                    raise AssertionError("genericity witness failed re-verification")
                return GenericityVerdict(label, m, p, COUNTEREXAMPLE, checked, witness)
            return GenericityVerdict(label, m, p, CERTIFIED, checked)
    elif mode != "random":
        raise ValueError(f"unknown mode {mode!r}")

    done = 0
    k = 0
    batch = max(workers, 1)
    while done < trials:
        ks = list(range(k, k + batch))
        k += batch
        results = _run_chunks(lambda kk: _random_generic_chunk(T, sp.rows, sp.cols, p, m, seed, kk), ks, workers)
        for admissible, dep, vecs in results:
            idx = np.flatnonzero(admissible)[: trials - done]
            hit = idx[dep[idx]]
            if hit.size:
                t = int(hit[0])
                witness = _witness_dict(m, tuple(v[t] for v in vecs))
                if not verify_witness(space, m, p, witness):
                    raise AssertionError("genericity witness failed re-verification")
                done += int(np.searchsorted(idx, t)) + 1
                return GenericityVerdict(label, m, p, COUNTEREXAMPLE, done, witness)
            done += idx.size
            if done >= trials:
                break
    return GenericityVerdict(label, m, p, NO_COUNTEREXAMPLE, done)


# ---------------------------------------------------------------------------
# Clifford scan


@dataclass(frozen=True)
class CliffordScan:
    g: int
    n: int
    prime: int
    total: int
    violations: tuple[dict, ...]
    equality_cases: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "prime": self.prime,
            "total": self.total,
            "violations": list(self.violations),
            "equality_cases": list(self.equality_cases),
        }


def clifford_scan(g: int, n: int, p: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> CliffordScan:
    """Check ``h0 <= n+1`` (equality only at F = G = 0) for every (F, G) over F_p.

    h0 comes from the section computation, independent of A_F(G).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    total = p ** (2 * g - 2)
    if total > budget:
        raise BudgetExceeded(f"{total} bundles exceeds budget {budget}")
    F = GF(p)
    ribbons = [RibbonDatum.from_coefficients(g, list(Fc), F) for Fc in itertools.product(range(p), repeat=g - 2)]
    G_all = list(itertools.product(range(p), repeat=g))

    def work(R: RibbonDatum):
        bad, eq = [], []
        for Gc in G_all:
            L = BundleDatum.from_coefficients(R, n, Gc)
            rec = clifford_check(L)
            entry = {"F": list(R.coefficients), "G": list(Gc), "h0": rec.h0}
            if not rec.consistent():
                bad.append(entry)
            if rec.equality:
                eq.append(entry)
        return bad, eq

    violations, equality = [], []
    for bad, eq in _run_chunks(work, ribbons, workers):
        violations.extend(bad)
        equality.extend(eq)
    return CliffordScan(g, n, p, total, tuple(violations), tuple(equality))


# ---------------------------------------------------------------------------
# Reports and surveys


@dataclass
class DimensionReport:
    spec: LocusSpec
    ribbon_id: str
    counts: dict[int, PointCount]
    fit: DimensionFit | None
    rho: int
    expected_dim: int | None
    verdict: str
    tangent_dims: list[tuple[list[str], int]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def fitted_dim(self) -> int | None:
        return self.fit.dim if self.fit is not None else None

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "ribbon_id": self.ribbon_id,
            "counts": {str(p): c.to_json() for p, c in sorted(self.counts.items())},
            "fit": self.fit.to_json() if self.fit else None,
            "fitted_dim": self.fitted_dim,
            "rho": self.rho,
            "expected_dim": self.expected_dim,
            "verdict": self.verdict,
            "tangent_dims": [{"point": pt, "dim": d} for pt, d in self.tangent_dims],
            "notes": list(self.notes),
        }


def _verdict(fit: DimensionFit | None, empty: bool, target: int) -> str:
    if empty:
        return "empty"
    if fit is None or not fit.conclusive:
        return "inconclusive"
    if fit.dim == target:
        return "dim=rho"
    return "dim>rho" if fit.dim > target else "dim<rho"


def dimension_report(spec: LocusSpec, primes: Sequence[int], budget: int = DEFAULT_BUDGET, workers: int = 1,
                     seed: int = 0, ribbon_id: str = "", expected_dim: int | None = None,
                     tangent_samples: int = 0) -> DimensionReport:
    """Count over each prime (exhaustive within budget, else Monte Carlo) and fit a dimension."""
    counts: dict[int, PointCount] = {}
    notes = []
    for p in sorted(primes):
        try:
            counts[p] = count_points(spec, p, EXHAUSTIVE, budget, workers)
        except BudgetExceeded:
            counts[p] = count_points(spec, p, MonteCarlo(budget, seed), budget, workers)
            notes.append(f"p={p}: Monte Carlo with {budget} samples")
    fit, empty = None, False
    try:
        fit = fit_dimension(counts)
    except EmptyLocus as exc:
        empty = True
        notes.append(str(exc))
    if fit is not None and not fit.conclusive:
        notes.append(f"residual {fit.residual:.3f} > 0.5")
    r = rho(spec.g, spec.n, spec.r)
    report = DimensionReport(spec, ribbon_id, counts, fit, r, expected_dim, _verdict(fit, empty, r), notes=notes)
    if tangent_samples and spec.kind is LocusKind.AFFINE_W and spec.ribbon is not None:
        for s in range(tangent_samples):
            try:
                res = sample_W_point(spec.ribbon, spec.n, spec.r, seed=seed + s, max_draws=50, exact_rank=True)
            except SamplingFailure as exc:
                notes.append(f"tangent sample {s}: {exc}")
                continue
            pt = list(res.bundle.coefficients)
            fmt = res.bundle.field.format
            report.tangent_dims.append(([fmt(x) for x in pt], tangent_dim(spec, pt, res.bundle.field)))
    return report


def _survey_ribbons(g: int, count: int, seed: int) -> list[tuple[str, RibbonDatum]]:
    out = [("hyperelliptic", RibbonDatum.hyperelliptic(g))]
    rng = random.Random(seed * 1_000_003 + g)
    while len(out) < count + 1:
        coeffs = [rng.randint(-3, 3) for _ in range(g - 2)]
        if any(coeffs):
            out.append((f"F{len(out)}", RibbonDatum.from_coefficients(g, coeffs)))
    return out


def bn_survey(g_values: Sequence[int], n: int, r: int, primes: Sequence[int], budget: int = DEFAULT_BUDGET,
              ribbons_per_genus: int = 3, seed: int = 0, workers: int = 1, tangent_samples: int = 1) -> list[DimensionReport]:
    """Evidence table for the dimension of W^r_2n(C) across genera and ribbons.

    Per genus: the hyperelliptic ribbon (baseline 2n - 2r), several random
    ribbons (compared with rho), and the G_0 = 0 slice of the closure
    (baseline 2n - 2r - 1).
    """
    reports = []
    for g in g_values:
        try:
            _check_bn_range(g, n, r)
        except ValueError:
            continue
        for rid, R in _survey_ribbons(g, ribbons_per_genus, seed):
            spec = LocusSpec(LocusKind.AFFINE_W, g, n, r, R)
            expected = 2 * n - 2 * r if rid == "hyperelliptic" else rho(g, n, r)
            reports.append(dimension_report(spec, primes, budget, workers, seed, rid, expected, tangent_samples))
        boundary = LocusSpec(LocusKind.PROJECTIVE_BW, g, n, r, None, boundary=True)
        reports.append(dimension_report(boundary, primes, budget, workers, seed, "BW-boundary", 2 * n - 2 * r - 1))
    return reports


SURVEY_COLUMNS = ("g", "n", "r", "F-id", "prime", "count", "fitted_dim", "tangent_dim", "rho", "verdict")


def survey_csv(reports: Sequence[DimensionReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SURVEY_COLUMNS)
    for rep in reports:
        tdims = sorted({d for _, d in rep.tangent_dims})
        tcell = ";".join(str(d) for d in tdims)
        for p, c in sorted(rep.counts.items()):
            count = c.count if c.exhaustive else f"{c.count:.6g}"
            writer.writerow((rep.spec.g, rep.spec.n, rep.spec.r, rep.ribbon_id, p, count,
                             "" if rep.fitted_dim is None else rep.fitted_dim, tcell, rep.rho, rep.verdict))
    return buf.getvalue()
