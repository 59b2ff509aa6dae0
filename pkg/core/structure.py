# structure.py

"""Submodules, quotient actions and decision predicates for loop modules.

* filtration layers W^(n) (x) C[t, t^-1] for lambda = 1
* the submodule L' = sum_n (d_{-1} - a - n) W (x) t^n for b = 1, the map tau
  and the quotient onto N((Soc W)_(1), a)
* the parity splitting of L(Verma b', -1, a, b' + 1)
* truncated cyclic-closure scans
* the closed-form simplicity predicate and its witnesses
* the X_{l,m} probes
"""

import logging
import random
from dataclasses import dataclass, field
from math import factorial
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.rings import ring

from core.algebra import x_word
from core.errors import (
    ConsistencyError,
    InvalidParameterError,
    NotHomogeneousError,
    NotInImageError,
    ProfileBoundsError,
    RequiresSimpleError,
    ZeroElementError,
)
from core.linalg import EchelonSpan
from core.linear import accumulate
from core.loopmod import LoopElement, LParams, NParams, apply_word, l_act, loop_monomial, tensor
from core.pbw import (
    Level,
    b_degree,
    b_words,
    d_minus_one_degree,
    is_in_socle,
    is_simple_induced,
    act,
    raise_by,
    socle_component,
    socle_order,
    split_word,
    order,
    top_degree,
)
from core.profiles import TruncationProfile
from core.sampling import random_loop_element
from core.scalars import ONE, ZERO, Scalar, binomial, ratio, scalar
from core.seqcalc import extract_components

YRing, Y = ring("y", QQ_I)


def _is(c: Scalar, value) -> bool:
    return c == scalar(value)


def _require_homogeneous(v: LoopElement) -> int:
    if not v:
        raise ZeroElementError("expected a nonzero loop element")
    indices = v.indices()
    if len(indices) != 1:
        raise NotHomogeneousError(f"not homogeneous: loop indices {indices}")
    return indices[0]


# ─── Filtration (lambda = 1) ─────────────────────────────────────────────────

def in_filtration(P: LParams, n: int, v: LoopElement) -> bool:
    """True iff v lies in W^(n) (x) C[t, t^-1]."""
    return all(d_minus_one_degree(word) <= n for word, _ in v.keys())


def layer_action(P: LParams, n: int, k: int, v: LoopElement) -> LoopElement:
    """
    Action of d_k on the n-th filtration layer.

    ``v`` is a B-level loop element standing for the coset of d_{-1}^n v.
    The result keeps the part of d_k . (d_{-1}^n v) with d_{-1}-exponent
    exactly n, with d_{-1}^n stripped.
    """
    if not _is(P.lam, 1):
        raise InvalidParameterError(f"filtration layers need lambda = 1, got {P.lam}")
    lifted = LoopElement._raw({((-1,) * n + word, j): c for (word, j), c in v.items()})
    acc = {}
    for (word, j), c in l_act(P, k, lifted).items():
        e, tail = split_word(word)
        if e == n:
            accumulate(acc, (tail, j), c)
        elif e > n:
            raise ConsistencyError(f"d_{k} left the filtration layer {n}")
    return LoopElement._raw(acc)


def layer_params(P: LParams, n: int) -> NParams:
    """The N-module realized by the n-th layer: twist b - n (d_0 d_{-1}^n = d_{-1}^n (d_0 - n))."""
    return NParams(P.spec, P.a, P.b - n)


# ─── L' and tau (b = 1) ──────────────────────────────────────────────────────

def _by_tail(component: Dict) -> Dict[Tuple[int, ...], Dict[int, Scalar]]:
    """Group W-level words by their B-level tail: tail -> {d_{-1}-exponent: coeff}."""
    grouped: Dict = {}
    for word, c in component.items():
        e, tail = split_word(word)
        grouped.setdefault(tail, {})[e] = c
    return grouped


def _components(v: LoopElement) -> Dict[int, Dict]:
    parts: Dict[int, Dict] = {}
    for (word, n), c in v.items():
        parts.setdefault(n, {})[word] = c
    return parts


def _evaluate(coeffs: Dict[int, Scalar], point: Scalar) -> Scalar:
    total = ZERO
    for e, c in coeffs.items():
        total += c * point ** e
    return total


def tau(P: LParams, v: LoopElement) -> LoopElement:
    """tau(w (x) t^n) = ((d_{-1} - a - n) w) (x) t^n, from L(W, lambda, a, 0) into L'(W, lambda, a, 1)."""
    if not _is(P.b, 1):
        raise InvalidParameterError(f"tau targets the b = 1 module, got b={P.b}")
    acc = {}
    for (word, n), c in v.items():
        accumulate(acc, ((-1,) + word, n), c)
        accumulate(acc, (word, n), -c * (P.a + n))
    return LoopElement._raw(acc)


def in_lprime(P: LParams, v: LoopElement) -> bool:
    """Each loop component lies in (d_{-1} - a - n) W, i.e. vanishes at d_{-1} = a + n."""
    for n, component in _components(v).items():
        point = P.a + n
        for coeffs in _by_tail(component).values():
            if _evaluate(coeffs, point):
                return False
    return True


def tau_inverse(P: LParams, v: LoopElement) -> LoopElement:
    """
    Exact inverse of tau on L', by synthetic division by d_{-1} - a - n.

    Raises:
        NotInImageError: if v is not in L'.
    """
    acc = {}
    for n, component in _components(v).items():
        divisor = Y - (P.a + n)
        for tail, coeffs in _by_tail(component).items():
            f = YRing.from_dict({(e,): c for e, c in coeffs.items()})
            q, rem = divmod(f, divisor)
            if rem:
                raise NotInImageError(f"component at t^{n} is not divisible by d_(-1) - a - {n}")
            for (e,), c in q.terms():
                accumulate(acc, ((-1,) * e + tail, n), c)
    return LoopElement._raw(acc)


def lprime_quotient(P: LParams, v: LoopElement) -> LoopElement:
    """w (x) t^n -> lambda^(-n) (w at d_{-1} = a + n) (x) t^n, onto N((Soc W)_(1), a). Kernel is L'."""
    acc = {}
    for n, component in _components(v).items():
        point = P.a + n
        rescale = P.lam ** (-n)
        for tail, coeffs in _by_tail(component).items():
            accumulate(acc, (tail, n), rescale * _evaluate(coeffs, point))
    return LoopElement._raw(acc)


def quotient_params(P: LParams) -> NParams:
    return NParams(P.spec, P.a, ONE)


# ─── Profiles ────────────────────────────────────────────────────────────────

def within_profile(v: LoopElement, profile: TruncationProfile) -> bool:
    return all(
        profile.in_window(n) and d_minus_one_degree(word) <= profile.dmax and b_degree(word) <= profile.bmax
        for word, n in v.keys()
    )


def _require_within(v: LoopElement, profile: TruncationProfile) -> None:
    if not within_profile(v, profile):
        raise ProfileBoundsError(f"element exceeds truncation profile {profile}")


def slice_dimension(P: LParams, profile: TruncationProfile) -> int:
    if P.spec.trivial:
        return 1
    return (profile.dmax + 1) * len(b_words(P.spec.r, profile.bmax))


# ─── Parity splitting (lambda = -1, b = b' + 1) ──────────────────────────────

def _require_parity_params(P: LParams) -> None:
    if not P.spec.is_verma or not P.spec.highest_weight:
        raise RequiresSimpleError("parity splitting requires a Verma W with nonzero highest weight")
    if not _is(P.lam, -1) or P.b != P.spec.highest_weight + 1:
        raise InvalidParameterError("parity splitting requires lambda = -1 and b = b' + 1")


def parity_basis(P: LParams, n: int, degree: int) -> List[LoopElement]:
    """g_i = d_1^i (w_0 (x) t^(n-i)) for i = 0..degree, all at loop index n."""
    basis = []
    for i in range(degree + 1):
        g = loop_monomial((), n - i)
        for _ in range(i):
            g = l_act(P, 1, g)
        basis.append(g)
    return basis


def parity_decompose(P: LParams, v: LoopElement, profile: TruncationProfile) -> Tuple[LoopElement, LoopElement]:
    """
    Split v = v_0 + v_1 with v_0 in the span of d_1^i (w_0 (x) t^even) and v_1
    in the span of d_1^i (w_0 (x) t^odd).

    g_i has d_{-1}-degree exactly i, so the system is solved top degree first.
    """
    _require_parity_params(P)
    _require_within(v, profile)
    parts = ({}, {})
    for n, component in _components(v).items():
        degree = max(d_minus_one_degree(word) for word in component)
        basis = parity_basis(P, n, degree)
        remaining = dict(component)
        for i in range(degree, -1, -1):
            top = (-1,) * i
            c = remaining.get(top, ZERO)
            if not c:
                continue
            g = basis[i]
            lead = g.coefficient((top, n))
            if not lead:
                raise ConsistencyError(f"parity basis vector g_{i} has no leading term")
            x = c / lead
            target = parts[(n - i) % 2]
            for (word, _), gc in g.items():
                accumulate(remaining, word, -x * gc)
                accumulate(target, (word, n), x * gc)
        if remaining:
            raise ConsistencyError(f"parity decomposition left a remainder at t^{n}")
    return LoopElement._raw(parts[0]), LoopElement._raw(parts[1])


def parity_of(P: LParams, v: LoopElement, profile: TruncationProfile) -> Optional[int]:
    """0 or 1 when v lies in one parity part, None when it is mixed."""
    v0, v1 = parity_decompose(P, v, profile)
    if not v1:
        return 0
    if not v0:
        return 1
    return None


# ─── Cyclic closure scans ────────────────────────────────────────────────────

@dataclass
class SliceScan:
    """Per loop index: (attained dimension, full truncated dimension), plus the attained bases."""
    dims: Dict[int, Tuple[int, int]]
    basis: Dict[int, List[LoopElement]] = field(default_factory=dict)

    def full_rank(self) -> bool:
        return all(attained == full for attained, full in self.dims.values())

    def max_attained(self) -> int:
        return max((attained for attained, _ in self.dims.values()), default=0)


def cyclic_slice_dims(P: LParams, generators: Sequence[LoopElement], profile: TruncationProfile) -> SliceScan:
    """
    Close the span of ``generators`` under d_k (|k| <= kmax) for up to ``fuel`` rounds.

    Images are never truncated: closure runs in the widened space reached by
    the rounds, so slice vectors obtained only by cancelling higher-degree
    terms are found. An image at index n is dropped only when n can no longer
    return to the window in the rounds left. The attained dimension at index n
    is the dimension of (span at n) intersected with the truncated slice, so a
    proper submodule never reports a full slice. Stops early once every slice is full.
    """
    if not generators:
        raise InvalidParameterError("empty generator list")
    for g in generators:
        if not g:
            raise ZeroElementError("generators must be nonzero")
        _require_within(g, profile)

    lo, hi = profile.window
    full = slice_dimension(P, profile)

    def in_slice(word) -> bool:
        return d_minus_one_degree(word) <= profile.dmax and b_degree(word) <= profile.bmax

    def reachable(n: int, rounds_left: int) -> bool:
        return lo - profile.kmax * rounds_left <= n <= hi + profile.kmax * rounds_left

    def attained(span: EchelonSpan) -> List:
        return [p for p in span.pivots() if in_slice(p[0])]

    def all_full() -> bool:
        return all(len(attained(spans[n])) == full for n in profile.indices())

    # keys outside the slice sort first, so rows pivoting inside the slice span the intersection
    spans: Dict[int, EchelonSpan] = {}

    def span_at(n: int) -> EchelonSpan:
        if n not in spans:
            spans[n] = EchelonSpan(sort_key=lambda key: (in_slice(key[0]), key[0]))
        return spans[n]

    for n in profile.indices():
        span_at(n)
    frontier: List[LoopElement] = []
    for g in generators:
        for n, part in g.homogeneous_parts().items():
            if span_at(n).add(part.terms):
                frontier.append(part)

    for round_no in range(profile.fuel):
        if all_full():
            break
        rounds_left = profile.fuel - round_no - 1
        added: List[LoopElement] = []
        for v in frontier:
            n = v.indices()[0]
            for k in range(-profile.kmax, profile.kmax + 1):
                # d_0 is a scalar on homogeneous vectors
                if k == 0 or not reachable(n + k, rounds_left):
                    continue
                w = l_act(P, k, v)
                if w and span_at(n + k).add(w.terms):
                    added.append(w)
        logging.debug(f"Closure round {round_no + 1}: {len(added)} new vectors over {len(spans)} indices")
        frontier = added
        if not frontier:
            break

    dims, basis = {}, {}
    for n in profile.indices():
        span = spans[n]
        rows = [LoopElement._raw(span.rows[p]) for p in attained(span)]
        dims[n] = (len(rows), full)
        basis[n] = rows
    return SliceScan(dims, basis)


# ─── Simplicity ──────────────────────────────────────────────────────────────

def _l_params(desc) -> LParams:
    params = getattr(desc, "params", desc)
    if not isinstance(params, LParams):
        raise InvalidParameterError("simplicity predicate applies to L-modules only")
    return params


def is_simple_L(desc) -> bool:
    """
    Closed-form simplicity of L(W, lambda, a, b) for a simple nontrivial W.

    Highest-weight W (weight b'): simple iff lambda != +-1 and b != 1, or
    lambda = -1, b != 1 and b != b' + 1. Otherwise: simple iff lambda != 1 and b != 1.
    """
    P = _l_params(desc)
    if not is_simple_induced(P.spec):
        raise RequiresSimpleError(f"requires simple W, got {P.spec}")
    if _is(P.b, 1):
        return False
    if P.spec.r == 0:
        if _is(P.lam, -1):
            return P.b != P.spec.highest_weight + 1
        return not _is(P.lam, 1)
    return not _is(P.lam, 1)


def _witness_generators(rng: random.Random, P: LParams, profile: TruncationProfile, samples: int,
                        level: Level = Level.W, dmax: Optional[int] = None) -> List[LoopElement]:
    dmax = profile.dmax if dmax is None else dmax
    return [
        random_loop_element(rng, P.spec, dmax, profile.bmax, profile.window, level=level,
                            index=rng.randint(*profile.window))
        for _ in range(samples)
    ]


def non_simplicity_witness(P: LParams, profile: TruncationProfile, samples: int = 3,
                           rng: Optional[random.Random] = None) -> Optional[dict]:
    """
    Build and verify the proper invariant subspace behind a non-simple verdict.

    Returns None for simple modules, otherwise a record naming the construction
    (filtration layer, L' or parity part) and how many images were checked.

    Raises:
        ConsistencyError: if an image leaves the claimed submodule.
    """
    if is_simple_L(P):
        return None
    rng = rng or random.Random(0)
    ks = [k for k in range(-profile.kmax, profile.kmax + 1)]
    checked = 0

    if _is(P.lam, 1):
        for g in _witness_generators(rng, P, profile, samples, level=Level.B):
            for k in ks:
                if not in_filtration(P, 0, l_act(P, k, g)):
                    raise ConsistencyError(f"d_{k} maps the bottom layer outside itself")
                checked += 1
        outside = loop_monomial((-1,), 0)
        return {"kind": "filtration", "layer": 0, "checked": checked,
                "outside": not in_filtration(P, 0, outside)}

    if _is(P.b, 1):
        P0 = P.with_b(0)
        for v in _witness_generators(rng, P0, profile, samples):
            u = tau(P, v)
            for k in ks:
                image = l_act(P, k, u)
                if not in_lprime(P, image):
                    raise ConsistencyError(f"d_{k} maps L' outside itself")
                if image != tau(P, l_act(P0, k, v)):
                    raise ConsistencyError(f"tau does not intertwine d_{k}")
                checked += 1
        return {"kind": "lprime", "checked": checked,
                "outside": not in_lprime(P, loop_monomial((), 0))}

    # remaining branch: lambda = -1, highest-weight W, b = b' + 1
    for j in profile.indices():
        g = loop_monomial((), j)
        for k in ks:
            image = l_act(P, k, g)
            if not image or not within_profile(image, profile):
                continue
            if parity_of(P, image, profile) != j % 2:
                raise ConsistencyError(f"d_{k} breaks the parity splitting")
            checked += 1
    return {"kind": "parity", "checked": checked,
            "outside": parity_of(P, loop_monomial((), 1), profile) == 1}


# ─── Descent through exponential-polynomial components ───────────────────────

def descent_components(P: LParams, v: LoopElement, l: int) -> Dict[Tuple[Scalar, int], LoopElement]:
    """
    Split m -> d_{l-m} d_m v into its components lambda_i^m m^j u_{i,j} with
    lambda_i in {1, 1/lambda, lambda} by exact extraction.

    Requires lambda != +-1 so the three bases are distinct.
    """
    i0 = _require_homogeneous(v)
    if _is(P.lam, 1) or _is(P.lam, -1):
        raise InvalidParameterError("descent components need lambda != 1, -1")
    # ord(v) = r + s for simple W; either way it bounds the m-degree by 2(ord(v) + 1)
    k = 2 * (order(P.spec, v.component(i0)) + 1)
    lambdas = [ONE, ONE / P.lam, P.lam]
    values = [(m, l_act(P, l - m, l_act(P, m, v))) for m in range(len(lambdas) * (k + 1) + 2)]
    keys = sorted({key for _, value in values for key in value.keys()})
    if not keys:
        return {}
    samples = [(m, tuple(value.coefficient(key) for key in keys)) for m, value in values]
    logging.debug(f"Descent extraction over {len(keys)} coordinates, degree bound {k}")
    components = {}
    for lam, j, vec in extract_components(samples, lambdas, k):
        components[(lam, j)] = LoopElement._raw({key: c for key, c in zip(keys, vec) if c})
    return components


def top_descent_component(P: LParams, v: LoopElement, l: int) -> LoopElement:
    """
    The lambda^m m^(r+s+2) component of d_{l-m} d_m v, checked against
    (1 - b)(-1)^s / (r+1)! d_r w_s (x) t^(l + i0), r the socle order.
    """
    i0 = _require_homogeneous(v)
    r = socle_order(P.spec)
    component = v.component(i0)
    s = top_degree(component)
    w_s = socle_component(component, s)
    expected = tensor(raise_by(act(P.spec, r, w_s), 0), l + i0).scale(
        (ONE - P.b) * ratio((-1) ** s, factorial(r + 1))
    )
    found = descent_components(P, v, l).get((P.lam, r + s + 2), expected.zero())
    if found != expected:
        raise ConsistencyError(f"top descent component differs from (1-b)(-1)^s/(r+1)! d_r w_s")
    return found


# ─── X_{l,m} probes ──────────────────────────────────────────────────────────

class ProbeResult(NamedTuple):
    result: LoopElement
    leading: Scalar


def x_leading_coefficient(lam, l: int, m: int) -> Scalar:
    """(lambda - 1)^3 (lambda^(l-m-3) - lambda^m)."""
    lam = scalar(lam)
    return (lam - 1) ** 3 * (lam ** (l - m - 3) - lam ** m)


def x_probe(P: LParams, l: int, m: int, v: LoopElement) -> ProbeResult:
    """
    Apply X_{l,m} to a loop-homogeneous v and read off the coefficient of its
    top d_{-1}-degree part (d_{-1}^(s+2) w_s, with s the top degree of v).
    """
    n = _require_homogeneous(v)
    result = apply_word(x_word(l, m), P, v)
    component = v.component(n)
    s = top_degree(component)
    w_s = socle_component(component, s)
    top = socle_component(result.component(n + l), s + 2)
    pivot = min(w_s.keys())
    leading = top.coefficient(pivot) / w_s.coefficient(pivot)
    if top != w_s.scale(leading):
        raise ConsistencyError("top part of the probe is not a multiple of the top socle coefficient")
    if is_in_socle(component):
        expected = x_leading_coefficient(P.lam, l, m)
        if leading != expected:
            raise ConsistencyError(f"probe leading coefficient {leading} differs from closed form {expected}")
    return ProbeResult(result, leading)


def omega3_on_A(a1, b1, l: int, m: int, n: int) -> Scalar:
    """sum_j (-1)^j C(3,j) (a1 + n + b1(m+j)) (a1 + n + m + j + b1(l-m-j)); identically zero."""
    a1, b1 = scalar(a1), scalar(b1)
    total = ZERO
    for j in range(4):
        total += ratio((-1) ** j * binomial(3, j)) * (a1 + n + b1 * (m + j)) * (a1 + n + m + j + b1 * (l - m - j))
    return total
