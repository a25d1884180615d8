"""Inner-product models of orthogonalized layers and the srg(76,21,2,7) replay.

Fix a vertex ``u`` of a strongly regular graph realized by unit vectors in an
eigenspace.  Vectors of the first and second layers (distance 1 and 2 from
``u``) are shifted along ``u`` and rescaled so that they become orthogonal to
``u``; every inner product among the shifted vectors is then a fixed rational
determined by the cosine sequence and the adjacency relation.  The functions
below evaluate those rationals and the projection lengths built from them, and
:func:`replay_all` chains them into a certificate that no srg(76,21,2,7)
exists.

Relations accepted by :func:`hat_inner`::

    L1-same  L1-adjacent  L1-nonadjacent
    L2-same  L2-adjacent  L2-nonadjacent
    cross-adjacent  cross-nonadjacent        (first layer vs second layer)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import isqrt
from typing import Any, Callable, NamedTuple, Sequence

from .codes import DEFAULT_BUDGET, agreement_code_search
from .errors import InputError, SrgError
from .exactlin import (
    InconsistentSystem,
    RatMatrix,
    circulant_cycle,
    det,
    gram_cycle,
    gram_path,
    projection_sq_norm,
    rank,
    solve_consistent,
)
from .graphs import MarkedCycle
from .params import CosineSequence, SrgParams, cosine_sequence, spectrum, validate_params
from .roots import LatticeGram, cartan_gram, classify, max_roots, short_vectors

SCHEMA_VERSION = "1"
STAGE_LIST_VERSION = "1"

VERIFIED = "VERIFIED"
CONTRADICTION = "CONTRADICTION-REACHED"
FAILED = "FAILED"
NONEXISTENT = "NONEXISTENT"
INCONCLUSIVE = "INCONCLUSIVE"

RELATIONS = (
    "L1-same",
    "L1-adjacent",
    "L1-nonadjacent",
    "L2-same",
    "L2-adjacent",
    "L2-nonadjacent",
    "cross-adjacent",
    "cross-nonadjacent",
)


class DegenerateCosine(InputError):
    pass


class NonRationalScale(InputError):
    pass


class Infeasible(SrgError):
    def __init__(self, message: str, value=None):
        super().__init__(message)
        self.value = value


class NotDivisible(SrgError):
    pass


class BetaOutOfRange(InputError):
    pass


# -- model ------------------------------------------------------------------


@dataclass(frozen=True)
class HatTransform:
    """``x -> alpha*x + beta*u`` applied to vectors at distance ``layer`` from ``u``."""

    layer: int
    alpha: Fraction
    beta: Fraction
    sq_norm: Fraction


@dataclass(frozen=True)
class InnerModel:
    params: SrgParams
    theta: int
    cosines: CosineSequence
    layer1: HatTransform
    layer2: HatTransform

    def raw(self, distance: int) -> Fraction:
        return self.cosines.at_distance(distance)

    def table(self) -> dict[str, Fraction]:
        return {rel: hat_inner(self, rel) for rel in RELATIONS}

    # Projection bookkeeping used by several lemmas.

    @property
    def single_contribution(self) -> Fraction:
        """Squared projection of a second-layer vector onto one marked first-layer vector."""
        return hat_inner(self, "cross-adjacent") ** 2 / hat_inner(self, "L1-same")

    @property
    def pair_norm(self) -> Fraction:
        """Squared length of the sum of two adjacent first-layer vectors."""
        return 2 * hat_inner(self, "L1-same") + 2 * hat_inner(self, "L1-adjacent")

    @property
    def pair_contribution(self) -> Fraction:
        return (2 * hat_inner(self, "cross-adjacent")) ** 2 / self.pair_norm

    @property
    def half_pair_contribution(self) -> Fraction:
        """Squared projection onto the sum over two consecutive unmarked vertices."""
        return (2 * hat_inner(self, "cross-nonadjacent")) ** 2 / self.pair_norm


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def build_inner_model(params: SrgParams, theta: int, layer1_sq_norm=2) -> InnerModel:
    """Orthogonalizing transforms for both layers.

    Layer 1 is scaled to squared norm ``layer1_sq_norm``.  Layer 2 uses
    ``alpha = 2 / (1 - w2)``, which gives ``(9/4) w - (1/4) u`` for srg(76,21,2,7).
    """
    cs = cosine_sequence(params, theta)
    w1, w2 = cs.w1, cs.w2
    if w1 * w1 >= 1 or w2 * w2 >= 1:
        raise DegenerateCosine(f"cosines {w1}, {w2} must lie strictly inside (-1, 1)")
    n1 = Fraction(layer1_sq_norm)
    alpha1 = _rational_sqrt(n1 / (1 - w1 * w1))
    if alpha1 is None:
        raise NonRationalScale(f"layer-1 squared norm {n1} needs an irrational scale factor")
    alpha2 = 2 / (1 - w2)
    layer1 = HatTransform(1, alpha1, -alpha1 * w1, alpha1 * alpha1 * (1 - w1 * w1))
    layer2 = HatTransform(2, alpha2, -alpha2 * w2, alpha2 * alpha2 * (1 - w2 * w2))
    return InnerModel(params, theta, cs, layer1, layer2)


def hat_inner(model: InnerModel, relation: str) -> Fraction:
    """Exact inner product of two shifted vectors in the given relation."""
    try:
        scope, kind = relation.split("-", 1)
    except ValueError:
        raise InputError(f"unknown relation {relation!r}") from None
    if relation not in RELATIONS:
        raise InputError(f"unknown relation {relation!r}")
    if scope == "L1":
        ta = tb = model.layer1
    elif scope == "L2":
        ta = tb = model.layer2
    else:
        ta, tb = model.layer1, model.layer2
    between = {"same": 0, "adjacent": 1, "nonadjacent": 2}[kind]
    ab = model.raw(between)
    au, bu = model.raw(ta.layer), model.raw(tb.layer)
    return ta.alpha * tb.alpha * ab + ta.alpha * tb.beta * au + ta.beta * tb.alpha * bu + ta.beta * tb.beta


def layer1_vs_raw(model: InnerModel, adjacent: bool) -> Fraction:
    """``(v_hat, w)`` for ``v`` in layer 1 and an unshifted second-layer vector ``w``."""
    t = model.layer1
    return t.alpha * model.raw(1 if adjacent else 2) + t.beta * model.raw(2)


# -- first layer ------------------------------------------------------------


def lemma_three(model: InnerModel, t: int) -> int:
    """Number of marks forced on a neighbourhood cycle of length ``t``.

    The shifted cycle vectors sum to zero, so their inner products with any
    second-layer vector ``w`` must cancel: ``s*A + (t - s)*B = 0``.
    """
    if t < 3:
        raise InputError("cycle length must be >= 3")
    a = layer1_vs_raw(model, True)
    b = layer1_vs_raw(model, False)
    if a == b:
        raise Infeasible("marked and unmarked vertices are indistinguishable", None)
    s = t * b / (b - a)
    if s.denominator != 1 or not 0 <= s <= t:
        raise Infeasible(f"cycle of length {t} would need {s} marks", s)
    return int(s)


def component_size_bound(model: InnerModel, layer2_sq_norm=None) -> int:
    """Largest number of two-vertex components among the ``mu`` marks."""
    norm = model.layer2.sq_norm if layer2_sq_norm is None else Fraction(layer2_sq_norm)
    mu = model.params.mu
    single, pair = model.single_contribution, model.pair_contribution
    ok = [k for k in range(mu // 2 + 1) if k * pair + (mu - 2 * k) * single <= norm]
    if not ok:
        raise Infeasible(f"even all-singleton marks exceed the squared norm {norm}")
    return max(ok)


# -- projections onto one cycle ---------------------------------------------


@dataclass(frozen=True)
class ProjectionCertificate:
    t: int
    marks: MarkedCycle
    forced_pair: bool
    value: Fraction
    optimal: bool
    coefficient_vector: tuple[Fraction, ...]


def cycle_gram(model: InnerModel, t: int) -> RatMatrix:
    return circulant_cycle(
        t,
        hat_inner(model, "L1-same"),
        hat_inner(model, "L1-adjacent"),
        hat_inner(model, "L1-nonadjacent"),
    )


def lower_bound(model: InnerModel, s: int, forced_pair: bool) -> Fraction:
    """Closed-form minimum of the squared projection for ``s`` marks."""
    if forced_pair:
        return model.pair_contribution + (s - 1) * model.half_pair_contribution
    return s * model.single_contribution


def arrangement_projection(
    model: InnerModel, mc: MarkedCycle, pair_positions: tuple[int, int] | None = None
) -> ProjectionCertificate:
    t = mc.t
    marks = set(mc.marks)
    if pair_positions is not None:
        i, j = (p % t for p in pair_positions)
        if (j - i) % t != 1 or i not in marks or j not in marks:
            raise InputError(f"{pair_positions} is not an adjacent marked pair on C{t}")
        anchor = (j + 1) % t
    else:
        anchor = (mc.marks[0] + 1) % t if mc.marks else 0
    a = hat_inner(model, "cross-adjacent")
    b_un = hat_inner(model, "cross-nonadjacent")
    b = [a if i in marks else b_un for i in range(t)]
    gram = cycle_gram(model, t)
    value = projection_sq_norm(gram, b)
    x = solve_consistent(gram, b)
    if all(v == 0 for v in gram.matvec([1] * t)):
        shift = x[anchor]
        x = [xi - shift for xi in x]
    return ProjectionCertificate(
        t=t,
        marks=mc,
        forced_pair=pair_positions is not None,
        value=value,
        optimal=value == lower_bound(model, len(marks), pair_positions is not None),
        coefficient_vector=tuple(x),
    )


def cumulative_projection(b: Sequence[Fraction]) -> Fraction:
    """Independent route for the cycle case with Gram ``circ(2, -1, 0)``.

    The shifted cycle vectors can be taken as ``e_i - e_{i+1}`` in R^t, whose
    span is the sum-zero hyperplane.  The projection ``p`` then satisfies
    ``p_i - p_{i+1} = b_i`` and ``sum p = 0``, so it is a running sum.
    """
    t = len(b)
    if sum(b) != 0:
        raise InconsistentSystem("inner products with the cycle vectors do not sum to zero")
    run = [Fraction(0)]
    for bi in b[:-1]:
        run.append(run[-1] - bi)
    mean = sum(run, Fraction(0)) / t
    return sum(((r - mean) ** 2 for r in run), Fraction(0))


def runs(marks: Sequence[int], t: int) -> list[int]:
    """Lengths of the maximal runs of consecutive marked positions on ``C_t``."""
    ms = set(marks)
    if len(ms) == t:
        return [t]
    out = []
    for m in sorted(ms):
        if (m - 1) % t in ms:
            continue
        n = 1
        while (m + n) % t in ms:
            n += 1
        out.append(n)
    return out


def canonical_marks(marks: Sequence[int], t: int) -> tuple[int, ...]:
    """Lexicographically least image of ``marks`` under the dihedral group of ``C_t``."""
    images = []
    for r in range(t):
        images.append(tuple(sorted((m + r) % t for m in marks)))
        images.append(tuple(sorted((r - m) % t for m in marks)))
    return min(images)


def arrangements(t: int, s: int, forced_pair: bool, canonical: bool = True) -> list[tuple[int, ...]]:
    """All ``s``-subsets of ``C_t`` (dihedral classes if ``canonical``).

    With ``forced_pair`` only subsets consisting of one adjacent pair plus
    isolated marks are kept.
    """
    out = set() if canonical else []
    for combo in combinations(range(t), s):
        if forced_pair:
            rs = sorted(runs(combo, t))
            if rs != [1] * (s - 2) + [2]:
                continue
        if canonical:
            out.add(canonical_marks(combo, t))
        else:
            out.append(combo)
    return sorted(out)


def find_pair(marks: Sequence[int], t: int) -> tuple[int, int]:
    ms = set(marks)
    for m in sorted(ms):
        if (m + 1) % t in ms:
            return (m, (m + 1) % t)
    raise InputError("no adjacent marked pair")


class MinProjection(NamedTuple):
    min_value: Fraction
    argmin: list[tuple[int, ...]]
    evaluated: int


def min_projection(model: InnerModel, s: int, forced_pair: bool) -> MinProjection:
    """Exhaustive minimum of the squared projection over mark arrangements on ``C_{3s}``."""
    if not 1 <= s <= 5:
        raise InputError("s must lie in 1..5")
    if forced_pair and s < 2:
        raise InputError("a forced pair needs at least two marks")
    t = 3 * s
    best: Fraction | None = None
    argmin: list[tuple[int, ...]] = []
    cands = arrangements(t, s, forced_pair)
    for marks in cands:
        pair = find_pair(marks, t) if forced_pair else None
        val = arrangement_projection(model, MarkedCycle(t, marks), pair).value
        if best is None or val < best:
            best, argmin = val, [marks]
        elif val == best:
            argmin.append(marks)
    assert best is not None
    return MinProjection(best, argmin, len(cands))


def evenly_spaced(s: int) -> tuple[int, ...]:
    return tuple(range(0, 3 * s, 3))


def paired_pattern(s: int) -> tuple[int, ...]:
    """Pair at positions 0, 1 and single marks every third step after a gap of two."""
    return tuple([0, 1] + [3 * m + 2 for m in range(1, s - 1)])


def paired_pattern_coefficients(s: int) -> tuple[Fraction, ...]:
    """``-1`` on the pair and ``1/2`` on each unmarked couple ``(3m, 3m+1)``."""
    x = [Fraction(0)] * (3 * s)
    x[0] = x[1] = Fraction(-1)
    for m in range(1, s):
        x[3 * m] = x[3 * m + 1] = Fraction(1, 2)
    return tuple(x)


# -- contradiction for long cycles ------------------------------------------


@dataclass(frozen=True)
class CliqueBound:
    s: int
    min_inner: Fraction
    required: Fraction
    gap: Fraction
    contradiction: bool
    enumerated_min: Fraction | None = None
    patterns: int = 0


def _clique_terms(model: InnerModel):
    a = hat_inner(model, "cross-adjacent")
    b = hat_inner(model, "cross-nonadjacent")
    pn = model.pair_norm
    minus = 2 * a / pn  # coefficient on the marked pair
    half = 2 * b / pn  # coefficient on each unmarked couple
    single = a / hat_inner(model, "L1-same")  # coefficient on marks of other cycles
    pair_term = minus * (a + b)  # w' meets exactly one vertex of the pair
    half_terms = {"none": half * 2 * b, "one": half * (a + b)}
    out_terms = {"adjacent": single * a, "nonadjacent": single * b}
    return pair_term, half_terms, out_terms


def lemma_cliques_bound(model: InnerModel, s: int, enumerate_patterns: bool = True) -> CliqueBound:
    """Lowest possible ``(w_hat, w'_hat)`` when ``w`` sits on a cycle of length ``3s >= 6``."""
    if not 2 <= s <= 5:
        raise InputError("s must lie in 2..5")
    mu = model.params.mu
    pair_term, half_terms, out_terms = _clique_terms(model)
    closed = pair_term + (s - 1) * min(half_terms.values()) + (mu - s) * min(out_terms.values())
    enumerated = None
    count = 0
    if enumerate_patterns:
        for halves in product(("none", "first", "second"), repeat=s - 1):
            for outs in product(("adjacent", "nonadjacent"), repeat=mu - s):
                val = pair_term
                val += sum(half_terms["none" if h == "none" else "one"] for h in halves)
                val += sum(out_terms[o] for o in outs)
                count += 1
                if enumerated is None or val < enumerated:
                    enumerated = val
    required = hat_inner(model, "L2-adjacent")
    return CliqueBound(
        s=s,
        min_inner=closed,
        required=required,
        gap=closed - required,
        contradiction=closed > required,
        enumerated_min=enumerated,
        patterns=count,
    )


# -- after the clique lemma -------------------------------------------------


def clique_dimensions(k: int, multiplicity: int) -> tuple[int, int]:
    if k % 3:
        raise NotDivisible(f"valency {k} is not a multiple of 3")
    dim_s = 1 + 2 * (k // 3)
    return dim_s, multiplicity - dim_s


def post_clique_dimensions(model: InnerModel) -> tuple[int, int]:
    mult = spectrum(model.params).multiplicity(model.theta)
    return clique_dimensions(model.params.k, mult)


def _outside_projection_sq(model: InnerModel) -> Fraction:
    return model.layer2.sq_norm - model.params.mu * model.single_contribution


def _circ_scale_sq(model: InnerModel) -> Fraction:
    return 2 / _outside_projection_sq(model)


def _common_projection(model: InnerModel, beta: int) -> Fraction:
    """``(p, p')`` for the layer-1 projections of two second-layer vectors sharing ``beta`` marks."""
    coeff = hat_inner(model, "cross-adjacent") / hat_inner(model, "L1-same")
    a = hat_inner(model, "cross-adjacent")
    b = hat_inner(model, "cross-nonadjacent")
    return coeff * (beta * a + (model.params.mu - beta) * b)


def _circ_nonadjacent(model: InnerModel, beta: int) -> Fraction:
    return _circ_scale_sq(model) * (hat_inner(model, "L2-nonadjacent") - _common_projection(model, beta))


def beta_range(model: InnerModel) -> tuple[int, int]:
    """Admissible common-neighbour counts for distinct non-adjacent second-layer vertices."""
    ok = [b for b in range(model.params.mu + 1) if abs(_circ_nonadjacent(model, b)) <= 2]
    return (min(ok), max(ok))


def circ_inner(model: InnerModel, relation: str, beta: int | None = None) -> Fraction:
    """Inner product of the rescaled components orthogonal to ``u`` and layer 1."""
    scale = _circ_scale_sq(model)
    if relation == "same":
        return scale * _outside_projection_sq(model)
    if relation == "adjacent":
        # each edge lies in a unique 4-clique: one common neighbour in layer 1
        return scale * (hat_inner(model, "L2-adjacent") - _common_projection(model, 1))
    if relation == "nonadjacent":
        if beta is None:
            raise InputError("non-adjacent pairs need beta")
        lo, hi = beta_range(model)
        if not lo <= beta <= hi:
            raise BetaOutOfRange(f"beta={beta} outside admissible range {lo}..{hi}")
        return _circ_nonadjacent(model, beta)
    raise InputError(f"unknown relation {relation!r}")


def pigeonhole_pairs(population: int, buckets: int) -> int:
    if population < 1 or buckets < 1:
        raise InputError("inputs must be positive")
    return -(-population // buckets)


@dataclass(frozen=True)
class OppositeRootCertificate:
    set_size: int
    universe: int
    allowed: int
    min_intersection: int
    verdict: str


def opposite_root_case(set_size: int = 5, universe: int = 7, allowed: int = 1) -> OppositeRootCertificate:
    """Two ``set_size``-subsets of a ``universe``-set meet in at least ``2*set_size - universe``."""
    least = max(0, 2 * set_size - universe)
    return OppositeRootCertificate(
        set_size, universe, allowed, least, CONTRADICTION if least > allowed else VERIFIED
    )


# -- the replay -------------------------------------------------------------


@dataclass
class StageResult:
    name: str
    verdict: str
    certificate: dict[str, Any]


@dataclass
class ReplayReport:
    schema_version: str
    stage_list_version: str
    params: tuple[int, int, int, int]
    theta: int
    stages: list[StageResult] = field(default_factory=list)
    final_verdict: str = INCONCLUSIVE

    def stage(self, name: str) -> StageResult:
        for st in self.stages:
            if st.name == name:
                return st
        raise KeyError(name)


class _Ctx:
    def __init__(self, alphabet: int, budget: int):
        self.params = validate_params(76, 21, 2, 7)
        self.spectrum = spectrum(self.params)
        self.theta = int(self.spectrum.theta_minus)
        self.model = build_inner_model(self.params, self.theta, 2)
        self.alphabet = alphabet
        self.budget = budget


def _stage_params(c: _Ctx):
    lhs, rhs = c.params.identity_sides()
    return VERIFIED if lhs == rhs else FAILED, {"params": c.params.as_tuple(), "k(k-lambda-1)": lhs, "(v-k-1)mu": rhs}


def _stage_spectrum(c: _Ctx):
    eig = c.spectrum.eigenvalues()
    v, k = c.params.v, c.params.k
    trace = sum(th * m for th, m in eig.items())
    ok = sum(eig.values()) == v and trace == 0 and eig[c.theta] == 19
    return VERIFIED if ok else FAILED, {
        "eigenvalues": [[th, m] for th, m in sorted(eig.items(), reverse=True)],
        "trace": trace,
        "focus_eigenvalue": c.theta,
        "focus_multiplicity": eig[c.theta],
    }


def _stage_cosines(c: _Ctx):
    cs = c.model.cosines
    p = c.params
    rec = c.theta * cs.w1 == cs.w0 + p.lam * cs.w1 + (p.k - p.lam - 1) * cs.w2
    return VERIFIED if rec and cs.w1 == Fraction(c.theta, p.k) else FAILED, {
        "cosine_sequence": [cs.w0, cs.w1, cs.w2],
        "recurrence_holds": rec,
    }


def _stage_tables(c: _Ctx):
    m = c.model
    tab = m.table()
    ortho = all(t.alpha * m.raw(t.layer) + t.beta == 0 for t in (m.layer1, m.layer2))
    # the first-layer table must be the cycle Gram pattern used by later stages
    cyc = (tab["L1-same"], tab["L1-adjacent"], tab["L1-nonadjacent"]) == (2, -1, 0)
    return VERIFIED if ortho and cyc else FAILED, {
        "layer1": m.layer1,
        "layer2": m.layer2,
        "orthogonal_to_u": ortho,
        "table": tab,
        "raw_layer1_vs_w": {"adjacent": layer1_vs_raw(m, True), "nonadjacent": layer1_vs_raw(m, False)},
    }


def _stage_dimension(c: _Ctx):
    dets, ranks, ok = {1: det(gram_path(1))}, {}, True
    ok &= dets[1] == 2
    for t in range(3, 16):
        r = t - 1
        d = det(gram_path(r))
        dets[r] = d
        ok &= d == r + 1
        if r >= 3:
            ok &= d == 2 * dets[r - 1] - dets[r - 2]
        g = gram_cycle(t)
        ranks[t] = rank(g)
        ok &= ranks[t] == t - 1 and all(x == 0 for x in g.matvec([1] * t))
    return VERIFIED if ok else FAILED, {"path_determinants": dets, "cycle_ranks": ranks}


def _stage_three(c: _Ctx):
    table, ok = {}, True
    for t in range(3, c.params.k + 1):
        try:
            s = lemma_three(c.model, t)
            table[t] = s
            ok &= t == 3 * s
        except Infeasible as exc:
            table[t] = {"infeasible": exc.value}
            ok &= t % 3 != 0
    return VERIFIED if ok else FAILED, {"marks_per_cycle_length": table}


def _stage_components(c: _Ctx):
    try:
        lemma_three(c.model, 4)
        no_paths = False
    except Infeasible:
        no_paths = True
    kmax = component_size_bound(c.model)
    return VERIFIED if no_paths and kmax <= 1 else FAILED, {
        "two_paths_excluded_by_C4": no_paths,
        "single_contribution": c.model.single_contribution,
        "pair_contribution": c.model.pair_contribution,
        "layer2_sq_norm": c.model.layer2.sq_norm,
        "max_pair_components": kmax,
    }


def _stage_cycle_length(c: _Ctx):
    mult = c.spectrum.multiplicity(c.theta)
    dim_v = mult - 1
    k = c.params.k
    min_cycles = k - dim_v  # dim V = k - (number of cycles)
    t_max = k - 3 * (min_cycles - 1)
    return VERIFIED if t_max // 3 <= 5 else FAILED, {
        "dim_V_at_most": dim_v,
        "min_cycles": min_cycles,
        "max_cycle_length": t_max,
        "max_marks": t_max // 3,
    }


def _stage_lowest(c: _Ctx):
    out, ok = {}, True
    for s in range(1, 6):
        res = min_projection(c.model, s, False)
        ok &= res.min_value == Fraction(s, 2) and res.argmin == [evenly_spaced(s)]
        cert = arrangement_projection(c.model, MarkedCycle(3 * s, evenly_spaced(s)))
        ok &= cert.coefficient_vector == tuple(
            Fraction(-1, 2) if i % 3 == 0 else Fraction(0) for i in range(3 * s)
        )
        out[s] = {"min": res.min_value, "argmin": res.argmin, "classes": res.evaluated,
                  "coefficients": cert.coefficient_vector}
    return VERIFIED if ok else FAILED, {"by_marks": out}


def _stage_projections(c: _Ctx):
    m = c.model
    out, ok = {}, True
    for s in range(2, 6):
        res = min_projection(m, s, True)
        budget = m.layer2.sq_norm - (m.params.mu - s) * m.single_contribution
        target = Fraction(s + 3, 2)
        pat = paired_pattern(s)
        cert = arrangement_projection(m, MarkedCycle(3 * s, pat), (0, 1))
        ok &= res.min_value == target and budget == target
        ok &= res.argmin == [canonical_marks(pat, 3 * s)]
        ok &= cert.coefficient_vector == paired_pattern_coefficients(s)
        out[s] = {"min": res.min_value, "available": budget, "argmin": res.argmin,
                  "classes": res.evaluated, "coefficients": cert.coefficient_vector}
    return VERIFIED if ok else FAILED, {"by_marks": out}


def _stage_cliques(c: _Ctx):
    out, ok = {}, True
    for s in range(2, 6):
        cb = lemma_cliques_bound(c.model, s)
        ok &= cb.contradiction and cb.enumerated_min == cb.min_inner
        out[s] = cb
    return CONTRADICTION if ok else FAILED, {
        "assumption": "a cycle of length 3s >= 6 through v1 v2 yields an adjacent pair w, w' "
                      "in layer 2 with w on v1, v2 and w' on v1 only",
        "bounds": out,
        "conclusion": "every neighbourhood cycle is a triangle",
    }


def _stage_dimensions(c: _Ctx):
    ds, dt = post_clique_dimensions(c.model)
    return VERIFIED if dt == 4 else FAILED, {"dim_S": ds, "dim_T": dt}


def _stage_circ(c: _Ctx):
    m = c.model
    lo, hi = beta_range(m)
    non = {b: circ_inner(m, "nonadjacent", b) for b in range(lo, hi + 1)}
    same = circ_inner(m, "same")
    adj = circ_inner(m, "adjacent")
    integral = all(x.denominator == 1 for x in [same, adj, *non.values()])
    ok = integral and same == 2 and adj == -1 and all(v == 3 - b for b, v in non.items())
    return VERIFIED if ok else FAILED, {
        "scale_sq": _circ_scale_sq(m),
        "same": same,
        "adjacent": adj,
        "nonadjacent": non,
        "beta_range": [lo, hi],
        "integral_lattice": integral,
    }


def _stage_roots(c: _Ctx):
    _, dim_t = post_clique_dimensions(c.model)
    best = max_roots(dim_t)
    lat = LatticeGram.of(cartan_gram("D", 4))
    rs = short_vectors(lat, 2)
    cls = classify(rs, lat)
    ok = best == 24 and len(rs) == 24 and cls.as_tuples() == [("D", 4, 24)]
    return VERIFIED if ok else FAILED, {
        "rank": dim_t,
        "max_roots": best,
        "opposite_pairs": best // 2,
        "d4_roots": len(rs),
        "d4_classification": cls.as_tuples(),
    }


def _stage_pigeonhole(c: _Ctx):
    p = c.params
    pop = p.v - p.k - 1
    pairs = max_roots(post_clique_dimensions(c.model)[1]) // 2
    load = pigeonhole_pairs(pop, pairs)
    return VERIFIED if load >= 5 and pop > 4 * pairs else FAILED, {
        "second_layer": pop, "root_pairs": pairs, "guaranteed_load": load,
    }


def _stage_opposite(c: _Ctx):
    m = c.model
    lo, hi = beta_range(m)
    # opposite roots: value -2 means beta = hi; equal roots: value 2 means beta = lo
    cert = opposite_root_case(hi, m.params.mu, lo)
    return cert.verdict if cert.verdict == CONTRADICTION else FAILED, {
        "opposite_common_neighbours": hi,
        "equal_common_neighbours": lo,
        "certificate": cert,
    }


def _stage_same_root(c: _Ctx):
    p = c.params
    lo, _ = beta_range(c.model)
    load = pigeonhole_pairs(p.v - p.k - 1, max_roots(post_clique_dimensions(c.model)[1]) // 2)
    res = agreement_code_search(load, p.k // 3, c.alphabet, lo, budget=c.budget)
    return CONTRADICTION if not res.feasible else FAILED, {
        "instance": [load, p.k // 3, c.alphabet, lo],
        "search": res,
    }


STAGES: list[tuple[str, Callable[[_Ctx], tuple[str, dict]]]] = [
    ("params", _stage_params),
    ("spectrum", _stage_spectrum),
    ("cosine-sequence", _stage_cosines),
    ("inner-tables", _stage_tables),
    ("lemma-dimension", _stage_dimension),
    ("lemma-three", _stage_three),
    ("component-bound", _stage_components),
    ("cycle-length-bound", _stage_cycle_length),
    ("lemma-lowest", _stage_lowest),
    ("lemma-projections", _stage_projections),
    ("lemma-cliques", _stage_cliques),
    ("dimensions", _stage_dimensions),
    ("circ-table", _stage_circ),
    ("root-system-maximum", _stage_roots),
    ("pigeonhole", _stage_pigeonhole),
    ("opposite-root-case", _stage_opposite),
    ("same-root-code-search", _stage_same_root),
]

STAGE_NAMES = [name for name, _ in STAGES]


def replay_all(
    *, alphabet: int = 3, budget: int = DEFAULT_BUDGET, only: Sequence[str] | None = None
) -> ReplayReport:
    """Run the fixed stage list and combine the verdicts.

    ``alphabet`` overrides the letter count of the final code search (3 is
    the true instance: one neighbour per triangle).
    """
    if only is not None:
        unknown = [n for n in only if n not in STAGE_NAMES]
        if unknown:
            raise InputError(f"unknown stage(s): {', '.join(unknown)}")
    ctx = _Ctx(alphabet, budget)
    report = ReplayReport(SCHEMA_VERSION, STAGE_LIST_VERSION, ctx.params.as_tuple(), ctx.theta)
    for name, fn in STAGES:
        if only is not None and name not in only:
            continue
        try:
            verdict, cert = fn(ctx)
        except SrgError as exc:
            verdict, cert = FAILED, {"error": type(exc).__name__, "message": str(exc)}
        report.stages.append(StageResult(name, verdict, cert))
    complete = only is None or set(only) == set(STAGE_NAMES)
    ok = all(st.verdict in (VERIFIED, CONTRADICTION) for st in report.stages)
    report.final_verdict = NONEXISTENT if ok and complete else INCONCLUSIVE
    return report
