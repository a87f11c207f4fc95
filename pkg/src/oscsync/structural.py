"""Existence and universality of synchronizing coupling weights.

Two questions about an interconnection:

* does SOME positive weight assignment give a positive margin (``is_ss``,
  with ``construct_synchronizing_weights`` producing an explicit pair), and
* does EVERY positive weight assignment do so (``is_sss``)?

The second is decided exactly: a non-universal interconnection is certified
by a rational sign witness x with sign(G_r^T G_r x) = sign(x) entrywise and
G_d^T G_r x = 0, found by enumerating sign patterns and solving each
candidate's linear system in exact arithmetic.  ``witness_to_laplacians``
turns the certificate into a concrete weight pair whose margin is pinned at
zero no matter which dissipative weights are chosen.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exactlin, graphs
from .graphs import Edge, Interconnection, components, incidence, is_connected
from .laplacians import (
    ConstructionError,
    WeightedLaplacian,
    generic_laplacian,
    laplacian,
    rescale,
    sample_laplacian,
)
from .spectral import spectrum

_PHI = (1 + math.sqrt(5)) / 2


class BudgetExceededError(RuntimeError):
    """Sign-pattern enumeration would exceed the configured budget; the
    verdict is undecided rather than guessed."""

    def __init__(self, p_r: int, budget: int):
        super().__init__(
            f"undecided-budget: {p_r} restorative edges exceed the enumeration "
            f"budget of {budget} (3**{p_r} sign patterns)"
        )
        self.p_r = p_r
        self.budget = budget


@dataclass(frozen=True)
class SSVerdict:
    """Can some positive weights synchronize the array?"""

    is_ss: bool
    reason: str  # "ok" | "disconnected-union" | "empty-dissipative"
    witness_weights: tuple[WeightedLaplacian, WeightedLaplacian] | None = None


@dataclass(frozen=True)
class SignWitness:
    """Integer certificate vector over the restorative edges of the reduced
    interconnection: gcd 1, first nonzero entry positive."""

    x: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.x or all(v == 0 for v in self.x):
            raise ValueError("witness must have a nonzero entry")
        if any(not isinstance(v, int) for v in self.x):
            raise TypeError("witness entries must be integers; use from_rationals")
        g = math.gcd(*[abs(v) for v in self.x])
        if g != 1:
            raise ValueError(f"witness entries must have gcd 1, got gcd {g}")
        if next(v for v in self.x if v != 0) < 0:
            raise ValueError("first nonzero witness entry must be positive")

    @property
    def sign_pattern(self) -> tuple[int, ...]:
        return tuple(0 if v == 0 else (1 if v > 0 else -1) for v in self.x)

    @classmethod
    def from_rationals(cls, xs: Sequence) -> "SignWitness":
        fr = [Fraction(v) for v in xs]
        if not fr or all(v == 0 for v in fr):
            raise ValueError("witness must have a nonzero entry")
        denom = math.lcm(*[v.denominator for v in fr])
        ints = [int(v * denom) for v in fr]
        g = math.gcd(*[abs(v) for v in ints])
        ints = [v // g for v in ints]
        if next(v for v in ints if v != 0) < 0:
            ints = [-v for v in ints]
        return cls(x=tuple(ints))


@dataclass(frozen=True)
class SSSVerdict:
    """Do ALL positive weights synchronize the array?

    For inputs that pass ``is_ss``, ``is_sss`` is false exactly when
    ``witness`` is present.  Non-SS inputs get is_sss False with reason
    "not-ss" and no witness.
    """

    is_sss: bool
    witness: SignWitness | None
    refuted_patterns: int
    reason: str


def is_ss(ic: Interconnection) -> SSVerdict:
    """Some positive weights give a positive margin iff the union graph is
    connected and at least one dissipative edge exists."""
    if not is_connected(ic.q, ic.union_edges):
        return SSVerdict(is_ss=False, reason="disconnected-union")
    if ic.p_d == 0:
        return SSVerdict(is_ss=False, reason="empty-dissipative")
    return SSVerdict(is_ss=True, reason="ok")


# ---------------------------------------------------------------------------
# Exact sign-pattern enumeration
# ---------------------------------------------------------------------------


def _sign_matrices(ric: Interconnection) -> tuple[list[list[int]], list[list[int]]]:
    gr = incidence(ric.q, ric.restorative_edges)
    gd = incidence(ric.q, ric.dissipative_edges)
    a = (gr.T @ gr).tolist()
    c = (gd.T @ gr).tolist()
    return a, c


def _decode_pattern(t: int, p: int) -> tuple[int, ...]:
    digits = []
    for _ in range(p):
        t, r = divmod(t, 3)
        digits.append(r - 1)
    return tuple(reversed(digits))


def _admissible(sig: tuple[int, ...]) -> bool:
    first = next((v for v in sig if v != 0), 0)
    return first == 1


class _PatternScanner:
    """Feasibility tester with a per-support cache.

    The equality part of a pattern's system (zero entries, their zero image
    entries, and the dissipative orthogonality rows) depends only on the
    support, so its null-space parameterization is shared by all sign
    choices over that support.
    """

    def __init__(self, a: list[list[int]], c: list[list[int]], p: int):
        self.a = a
        self.c = c
        self.p = p
        self.cache: dict[tuple[bool, ...], tuple | None] = {}

    def _support_data(self, support: tuple[bool, ...]):
        if support in self.cache:
            return self.cache[support]
        p = self.p
        rows: list[list[int]] = [list(r) for r in self.c]
        for i in range(p):
            if not support[i]:
                e = [0] * p
                e[i] = 1
                rows.append(e)
                rows.append(list(self.a[i]))
        basis = exactlin.null_space(rows, p)
        data = None
        if basis:
            k = len(basis)
            xrows: dict[int, list[Fraction]] = {}
            arows: dict[int, list[Fraction]] = {}
            dead = False
            for i in range(p):
                if not support[i]:
                    continue
                xr = [basis[b][i] for b in range(k)]
                ar = [
                    sum(
                        (Fraction(self.a[i][j]) * basis[b][j] for j in range(p)),
                        Fraction(0),
                    )
                    for b in range(k)
                ]
                if all(v == 0 for v in xr) or all(v == 0 for v in ar):
                    dead = True
                    break
                xrows[i] = xr
                arows[i] = ar
            if not dead:
                data = (basis, xrows, arows)
        self.cache[support] = data
        return data

    def witness_for(self, sig: tuple[int, ...]) -> list[Fraction] | None:
        support = tuple(v != 0 for v in sig)
        data = self._support_data(support)
        if data is None:
            return None
        basis, xrows, arows = data
        rows: list[list[Fraction]] = []
        for i, s in enumerate(sig):
            if s == 0:
                continue
            rows.append([s * v for v in xrows[i]])
            rows.append([s * v for v in arows[i]])
        y = exactlin.strictly_feasible(rows)
        if y is None:
            return None
        x = [Fraction(0)] * self.p
        for b, yb in enumerate(y):
            if yb != 0:
                for j in range(self.p):
                    x[j] += yb * basis[b][j]
        return x


def _scan_chunk(args) -> tuple[int, tuple | None]:
    """Scan raw pattern indices [start, stop); return (refuted-count, hit).

    hit is (raw-index, witness entries as strings) for the first feasible
    admissible pattern in the range, or None.  Fractions travel as strings
    to keep the payload picklable and exact.
    """
    q, d_edges, r_edges, start, stop = args
    ric = Interconnection(q, d_edges, r_edges)
    a, c = _sign_matrices(ric)
    scanner = _PatternScanner(a, c, ric.p_r)
    refuted = 0
    for t in range(start, stop):
        sig = _decode_pattern(t, ric.p_r)
        if not _admissible(sig):
            continue
        x = scanner.witness_for(sig)
        if x is not None:
            return refuted, (t, tuple(str(v) for v in x))
        refuted += 1
    return refuted, None


def is_sss(ic: Interconnection, budget: int = 14, jobs: int = 1) -> SSSVerdict:
    """Decide whether every positive weight assignment synchronizes.

    Reduces the interconnection, then enumerates candidate sign patterns in
    lexicographic order (-1 < 0 < +1, first nonzero positive) and decides
    each exactly over the rationals.  Returns the witness of the first
    feasible pattern, or is_sss=True once every pattern is refuted.

    Raises BudgetExceededError when the reduced restorative edge count
    exceeds ``budget``.  ``jobs`` > 1 splits the pattern range across
    processes; the verdict and witness are independent of ``jobs``.
    """
    ric = graphs.reduce(ic)
    ssv = is_ss(ric)
    if not ssv.is_ss:
        return SSSVerdict(is_sss=False, witness=None, refuted_patterns=0, reason="not-ss")
    p = ric.p_r
    if p == 0:
        return SSSVerdict(
            is_sss=True, witness=None, refuted_patterns=0, reason="no-restorative-edges"
        )
    if p > budget:
        raise BudgetExceededError(p, budget)

    total = 3**p
    hit = None
    refuted = 0
    if jobs <= 1:
        refuted, hit = _scan_chunk(
            (ric.q, ric.dissipative_edges, ric.restorative_edges, 0, total)
        )
    else:
        chunk = max(1, -(-total // (4 * jobs)))
        ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(
                    _scan_chunk,
                    (ric.q, ric.dissipative_edges, ric.restorative_edges, s, e),
                )
                for s, e in ranges
            ]
            for fut in futures:
                n, h = fut.result()
                refuted += n
                if h is not None:
                    hit = h
                    for rest in futures:
                        rest.cancel()
                    break

    if hit is None:
        return SSSVerdict(
            is_sss=True, witness=None, refuted_patterns=refuted, reason="patterns-exhausted"
        )
    _, entries = hit
    witness = SignWitness.from_rationals([Fraction(v) for v in entries])
    if not verify_witness(ric, witness.x):
        raise RuntimeError("internal: enumerated witness failed exact verification")
    return SSSVerdict(
        is_sss=False, witness=witness, refuted_patterns=refuted, reason="witness-found"
    )


def verify_witness(ic: Interconnection, x: Sequence | SignWitness) -> bool:
    """Exact check of the certificate conditions on the reduced
    interconnection: x nonzero, sign(G_r^T G_r x) = sign(x) entrywise, and
    G_d^T G_r x = 0.

    Raises ValueError when the length of x does not match the reduced
    restorative edge count; returns False for mathematically invalid x.
    """
    ric = graphs.reduce(ic)
    xs = [Fraction(v) for v in (x.x if isinstance(x, SignWitness) else x)]
    if len(xs) != ric.p_r:
        raise ValueError(
            f"witness has {len(xs)} entries but the reduced interconnection "
            f"has {ric.p_r} restorative edges"
        )
    if all(v == 0 for v in xs):
        return False
    a, c = _sign_matrices(ric)
    ax = exactlin.matvec(a, xs)
    cx = exactlin.matvec(c, xs)
    if any(v != 0 for v in cx):
        return False
    for xi, axi in zip(xs, ax):
        sx = (xi > 0) - (xi < 0)
        sa = (axi > 0) - (axi < 0)
        if sx != sa:
            return False
    return True


def witness_to_laplacians(
    ic: Interconnection, witness: Sequence | SignWitness, d_weights: Sequence | None = None
) -> tuple[WeightedLaplacian, WeightedLaplacian]:
    """Turn a sign witness into a weight pair with margin pinned at zero.

    The restorative weights are x_i / (G_r^T G_r x)_i on the witness support
    (positive because the signs agree) and 1 elsewhere; then v = G_r x is an
    eigenvector of R with eigenvalue 1, orthogonal to the all-ones vector and
    in the null space of every admissible D.  The dissipative weights are
    free; pass ``d_weights`` to pick an instance (default all ones).
    """
    ric = graphs.reduce(ic)
    xs = [Fraction(v) for v in (witness.x if isinstance(witness, SignWitness) else witness)]
    if not verify_witness(ric, xs):
        raise ValueError("not a valid sign witness for this interconnection")
    a, _ = _sign_matrices(ric)
    ax = exactlin.matvec(a, xs)
    lam = [xi / axi if xi != 0 else Fraction(1) for xi, axi in zip(xs, ax)]
    r = laplacian(ric.q, ric.restorative_edges, lam)
    if d_weights is None:
        d_weights = [Fraction(1)] * ric.p_d
    d = laplacian(ric.q, ric.dissipative_edges, d_weights)
    return d, r


def falsify_by_sampling(
    ic: Interconnection,
    trials: int,
    seed: int,
    weight_range: tuple[float, float] = (0.1, 10.0),
    candidates: Sequence[tuple] = (),
) -> tuple[WeightedLaplacian, WeightedLaplacian] | None:
    """Hunt for a weight pair whose margin is NOT classified positive.

    Tries ``candidates`` first, then ``trials`` log-uniform samples derived
    deterministically from ``seed``.  Returns the first non-positive pair or
    None.  The input must pass ``is_ss``; for universal (SSS)
    interconnections this returns None for every seed.
    """
    ssv = is_ss(ic)
    if not ssv.is_ss:
        raise ValueError(f"falsification needs an SS interconnection ({ssv.reason})")
    for d, r in candidates:
        if spectrum(d, r).classification() != "positive":
            return d, r
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        sd = int(rng.integers(0, 2**62))
        sr = int(rng.integers(0, 2**62))
        d = sample_laplacian(ic.q, ic.dissipative_edges, sd, weight_range)
        r = sample_laplacian(ic.q, ic.restorative_edges, sr, weight_range)
        if spectrum(d, r).classification() != "positive":
            return d, r
    return None


# ---------------------------------------------------------------------------
# Weight synthesis for SS interconnections
# ---------------------------------------------------------------------------

_ALPHA_LADDER = tuple(_PHI**k for k in range(16)) + tuple(_PHI**-k for k in range(1, 16))
_NORM_CAP = 100.0
_CROSS_FRACTIONS = (0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001)
# Weight-profile tapers tried per restorative component: flat first, then
# increasingly graded away from the dissipative attachment vertex, then
# toward it.
_TAPERS = (1.0, 0.618, 0.382, 0.236, 0.146, 1.618, 2.618, 4.236)
# Per-family rescale grid explored by _best_scaling (half-power steps).
_BETA_LADDER = tuple(2.0 ** (k / 2.0) for k in range(-12, 16))


def _disjoint_scale(fixed: list[float], candidate: list[float]) -> float:
    """Scale factor separating the candidate's nonzero spectrum from the
    already accepted eigenvalues.

    Near-coincident eigenvalues across blocks let the dissipative coupling
    mix the modes and collapse the margin, so a comfortable gap is tried
    first and the bare numeric minimum only as a fallback."""
    if not candidate or not fixed:
        return 1.0
    for gap in (0.1, 1e-9):
        for alpha in _ALPHA_LADDER:
            if all(abs(alpha * s - mu) > gap for s in candidate for mu in fixed):
                return alpha
    raise ConstructionError("could not separate component spectra")


def _component_generic_weights(
    q: int,
    edges: Sequence[Edge],
    members: Sequence[int],
    root: int | None = None,
    taper: float = 1.0,
) -> tuple[dict[Edge, float], list[float], np.ndarray]:
    """Generic laplacian on the subgraph induced by ``members``.

    ``root``/``taper`` steer the weight profile (growth starts at ``root``
    and grades downward by ``taper`` per step).  Returns (weight per edge,
    nonzero spectrum, eigenvectors of the nonzero spectrum embedded in R^q
    as columns).
    """
    order = sorted(members)
    local = {v: i + 1 for i, v in enumerate(order)}
    sub_edges = [(local[k], local[l]) for k, l in edges]
    local_root = local[root] if root is not None else 1
    wl, _ = generic_laplacian(len(order), sub_edges, root=local_root, taper=taper)
    weights = {e: float(w) for e, w in zip(tuple(edges), wl.weights)}
    if len(order) == 1:
        return weights, [], np.zeros((q, 0))
    sig, vecs = np.linalg.eigh(wl.matrix)
    scale = max(1.0, float(np.abs(sig).max()))
    nz = [i for i, s in enumerate(sig) if abs(s) > 1e-12 * scale]
    emb = np.zeros((q, len(nz)))
    for col, i in enumerate(nz):
        for li, v in enumerate(order):
            emb[v - 1, col] = vecs[li, i]
    return weights, [float(sig[i]) for i in nz], emb


def _split_across(q: int, edges: Sequence[Edge], a: int, b: int) -> set[int]:
    """Split a connected graph across the (a, b) axis.

    Builds a breadth-first spanning tree from ``a`` and removes the tree
    edge entering ``b``; returns the vertex set of b's side.  Both sides
    induce connected subgraphs and a, b land on opposite sides.
    """
    adj: dict[int, list[int]] = {v: [] for v in range(1, q + 1)}
    for k, l in edges:
        adj[k].append(l)
        adj[l].append(k)
    for v in adj:
        adj[v].sort()
    parent: dict[int, int | None] = {a: None}
    queue = [a]
    while queue:
        v = queue.pop(0)
        for u in adj[v]:
            if u not in parent:
                parent[u] = v
                queue.append(u)
    if b not in parent:
        raise ValueError(f"vertices {a} and {b} are not connected")
    children: dict[int, list[int]] = {v: [] for v in parent}
    for v, pv in parent.items():
        if pv is not None:
            children[pv].append(v)
    side = set()
    queue = [b]
    while queue:
        v = queue.pop(0)
        side.add(v)
        queue.extend(children[v])
    return side


def _canonical_rate(dm: np.ndarray, rm: np.ndarray) -> float:
    """Slowest non-synchronous decay rate of the unit oscillator array.

    Assembles the closed-loop state matrix for unit-mass unit-stiffness
    scalar oscillators and returns minus the largest real part outside the
    two undamped synchronous roots.  This is the quantity a fixed-horizon
    simulation actually resolves, unlike the spectral margin, which ignores
    overdamping (a heavily damped edge locks its endpoints together and the
    pair creeps instead of settling).
    """
    qn = dm.shape[0]
    a = np.zeros((2 * qn, 2 * qn))
    a[:qn, qn:] = np.eye(qn)
    a[qn:, :qn] = -(np.eye(qn) + rm)
    a[qn:, qn:] = -dm
    re = np.sort(np.linalg.eigvals(a).real)
    return -float(re[-3])


def _best_scaling(dm: np.ndarray, rm: np.ndarray) -> tuple[float, float, float]:
    """Best (rate, beta_d, beta_r) over the per-family rescale grid.

    Positive factors preserve laplacian membership and the sign of the
    margin, but move the unit-oscillator decay rate a lot: too little
    dissipative weight leaves modes ringing, too much overdamps them, and a
    small restorative scale lets the damping mix neighbouring modes.  Grid
    points whose margin is not strictly positive or whose norms exceed the
    cap are skipped.  Returns (-inf, 1, 1) if no grid point qualifies.
    """
    nd = float(np.abs(np.linalg.eigvalsh(dm)).max())
    nr = float(np.abs(np.linalg.eigvalsh(rm)).max())
    best_rate = -math.inf
    best = (1.0, 1.0)
    for beta_d in _BETA_LADDER:
        if beta_d * nd > _NORM_CAP:
            continue
        for beta_r in _BETA_LADDER:
            if beta_r * nr > _NORM_CAP:
                continue
            if spectrum(beta_d * dm, beta_r * rm).classification() != "positive":
                continue
            rate = _canonical_rate(beta_d * dm, beta_r * rm)
            if rate > best_rate + 1e-12:
                best_rate = rate
                best = (beta_d, beta_r)
    return best_rate, best[0], best[1]


def _finalize(
    d: WeightedLaplacian, r: WeightedLaplacian
) -> tuple[WeightedLaplacian, WeightedLaplacian]:
    """Check the margin and rescale the families for fast settling."""
    rep = spectrum(d, r)
    if rep.classification() != "positive":
        raise ConstructionError(f"synthesized margin is not positive: {rep.margin!r}")
    rate, beta_d, beta_r = _best_scaling(d.matrix, r.matrix)
    if not math.isfinite(rate) or (beta_d, beta_r) == (1.0, 1.0):
        return d, r
    d2, r2 = rescale(d, beta_d), rescale(r, beta_r)
    if spectrum(d2, r2).classification() != "positive":
        raise ConstructionError("rescaled pair lost its positive margin")
    return d2, r2


def construct_synchronizing_weights(
    ic: Interconnection,
) -> tuple[WeightedLaplacian, WeightedLaplacian]:
    """Explicit positive weights with a positive margin for an SS input.

    Dissipative weights are all ones.  When the restorative graph is
    disconnected, each component gets a generic laplacian and components are
    rescaled so their nonzero spectra never collide.  When it is connected,
    the vertex set is split in two across a dissipative edge, each side gets
    a generic laplacian (spectra separated), and the restorative edges that
    cross the split are restored at a common small weight chosen so the
    margin stays positive; the closed-form perturbation bound is kept as the
    last-resort candidate.  The final pair is rescaled by a common factor so
    the margin is comfortably positive for downstream simulation.

    Raises ValueError for non-SS input, ConstructionError if a numeric
    postcondition fails.
    """
    ssv = is_ss(ic)
    if not ssv.is_ss:
        raise ValueError(f"cannot synthesize weights: interconnection is not SS ({ssv.reason})")
    q = ic.q
    d = laplacian(q, ic.dissipative_edges, [1.0] * ic.p_d)
    comp = components(q, ic.restorative_edges)
    r_weights: list[float] = [0.0] * ic.p_r

    if comp.count >= 2:
        # Every component attaches to the rest through dissipative edges
        # only, so each has a port vertex; growing the component weights
        # from the port keeps every eigenmode visible to the damping.  Each
        # taper grades the profile differently; the one whose best rescale
        # settles fastest wins.
        port: dict[int, int] = {}
        for k, l in ic.dissipative_edges:
            for v in (k, l):
                cid = comp.assignment[v - 1]
                port.setdefault(cid, v)
        best_weights: list[float] | None = None
        best_rate = -math.inf
        failure: ConstructionError | None = None
        for taper in _TAPERS:
            trial = [0.0] * ic.p_r
            accepted: list[float] = []
            try:
                for cid in range(1, comp.count + 1):
                    members = comp.members(cid)
                    idxs = [
                        i
                        for i, (k, _) in enumerate(ic.restorative_edges)
                        if comp.assignment[k - 1] == cid
                    ]
                    if not idxs:
                        continue
                    edges = [ic.restorative_edges[i] for i in idxs]
                    weights, nonzero, _ = _component_generic_weights(
                        q, edges, members, root=port.get(cid), taper=taper
                    )
                    alpha = _disjoint_scale(accepted, nonzero)
                    accepted.extend(alpha * s for s in nonzero)
                    for i in idxs:
                        trial[i] = alpha * weights[ic.restorative_edges[i]]
            except ConstructionError as exc:
                failure = exc
                continue
            rate, _, _ = _best_scaling(
                d.matrix, laplacian(q, ic.restorative_edges, trial).matrix
            )
            if rate > best_rate + 1e-12:
                best_rate = rate
                best_weights = trial
            if not ic.p_r:
                break
        if best_weights is None:
            raise failure if failure is not None else ConstructionError(
                "no taper produced a usable weight profile"
            )
        r = laplacian(q, ic.restorative_edges, best_weights)
        return _finalize(d, r)

    # Restorative graph connected on all q vertices.
    if q == 2:
        r = laplacian(q, ic.restorative_edges, [1.0] * ic.p_r)
        return _finalize(d, r)

    a, b = ic.dissipative_edges[0]
    v2 = _split_across(q, ic.restorative_edges, a, b)
    v1 = set(range(1, q + 1)) - v2
    idx1 = [i for i, (k, l) in enumerate(ic.restorative_edges) if k in v1 and l in v1]
    idx2 = [i for i, (k, l) in enumerate(ic.restorative_edges) if k in v2 and l in v2]
    cross = [i for i in range(ic.p_r) if i not in set(idx1) | set(idx2)]
    if not cross:
        raise ConstructionError("split has no crossing edges; restorative graph was not connected")

    w1, nz1, emb1 = _component_generic_weights(
        q, [ic.restorative_edges[i] for i in idx1], sorted(v1)
    )
    w2, nz2, emb2 = _component_generic_weights(
        q, [ic.restorative_edges[i] for i in idx2], sorted(v2)
    )
    alpha = _disjoint_scale(nz1, nz2)
    for i in idx1:
        r_weights[i] = w1[ic.restorative_edges[i]]
    for i in idx2:
        r_weights[i] = alpha * w2[ic.restorative_edges[i]]

    # Two-block spectrum: the blocks' nonzero eigenvalues plus a double zero.
    vals = sorted(nz1 + [alpha * s for s in nz2] + [0.0, 0.0])
    radius = max(vals) if vals else 0.0
    if radius <= 0:
        raise ConstructionError("two-block spectrum is degenerate")
    gaps = [y - x for x, y in zip(vals, vals[1:]) if y - x > 1e-12 * radius]
    c1 = min(gaps) if gaps else 0.0

    dm = d.matrix
    ind1 = np.array([1.0 if v in v1 else 0.0 for v in range(1, q + 1)])
    ind2 = 1.0 - ind1
    z0 = len(v2) * ind1 - len(v1) * ind2
    z0 = z0 / np.linalg.norm(z0)
    cand_vecs = [emb1[:, i] for i in range(emb1.shape[1])]
    cand_vecs += [emb2[:, i] for i in range(emb2.shape[1])]
    cand_vecs.append(z0)
    c2 = min(float(np.linalg.norm(dm @ z)) for z in cand_vecs)

    cross_edges = [ic.restorative_edges[i] for i in cross]
    b_cross = incidence(q, cross_edges).astype(float)
    norm_b_sq = float(np.linalg.norm(b_cross, 2)) ** 2
    norm_d = float(np.linalg.norm(dm, 2))
    bound = 0.0
    if c1 > 0 and c2 > 0:
        bound = c1 * c2 / (4.0 * norm_b_sq * math.sqrt(c2 * c2 + norm_d * norm_d))

    candidates = [f * radius for f in _CROSS_FRACTIONS]
    if bound > 0:
        candidates.append(0.5 * bound)
    for w in candidates:
        trial = list(r_weights)
        for i in cross:
            trial[i] = w
        r = laplacian(q, ic.restorative_edges, trial)
        if spectrum(d, r).classification() == "positive":
            return _finalize(d, r)
    raise ConstructionError("no crossing weight produced a positive margin")
