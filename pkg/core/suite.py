# suite.py

"""Named checks and the suite runner.

Each check yields check instances ``(params, run)``; ``run()`` returns
``(samples, witness)`` or raises. Instances run in registry order with a
per-check RNG seeded from ``f"{seed}:{name}"``, so a fixed config gives a
byte-identical JSON-lines report.
"""

import logging
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from math import factorial
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

import orjson
from tqdm import tqdm

from core.algebra import bracket, bracket_elements, commutator_word, generator, jacobi_sum
from core.classify import (
    A,
    IsoVerdict,
    L,
    ModuleDescriptor,
    Parity,
    Witness,
    are_isomorphic,
    classify_E,
    dual_pair,
    phi,
)
from core.cm_compat import (
    EParams,
    TBasisElement,
    cm_act,
    dual_map,
    e_dual,
    e_to_l,
    level1_act,
    t_basis,
    to_loop,
    validate_level1_degeneration,
)
from core.errors import ConsistencyError, InvalidParameterError, UnknownCheckError, VirasoroError
from core.grammar import parse_spec, render_descriptor, render_spec
from core.linalg import EchelonSpan, span_rank
from core.loopmod import LParams, NParams, act_element, apply_word, l_act, loop_monomial, n_act
from core.pbw import (
    VacuumSpec,
    b_words,
    clear_caches,
    essential_descent,
    is_in_socle,
    is_simple_induced,
    order,
    socle_component,
    socle_operator_injective,
    socle_order,
    top_degree,
)
from core.profiles import CHECK_NAMES, SuiteConfig
from core.sampling import random_loop_element, random_module_element, random_scalar, random_virasoro
from core.scalars import ONE, Scalar, format_scalar, parse_scalar, ratio, scalar
from core.seqcalc import (
    ExpPolySequence,
    annihilator_check,
    cascade_extract,
    extract_components,
    linear_factor,
    shift_act,
)
from core.structure import (
    cyclic_slice_dims,
    in_filtration,
    in_lprime,
    is_simple_L,
    layer_action,
    layer_params,
    lprime_quotient,
    non_simplicity_witness,
    omega3_on_A,
    parity_basis,
    parity_decompose,
    parity_of,
    quotient_params,
    tau,
    tau_inverse,
    top_descent_component,
    within_profile,
)
from core.structure import x_leading_coefficient, x_probe

Instance = Tuple[Dict[str, Any], Callable[[], Tuple[int, Any]]]
CheckFn = Callable[[SuiteConfig, random.Random], Iterator[Instance]]

CHECKS: Dict[str, CheckFn] = {}


def check(name: str):
    def register(fn: CheckFn) -> CheckFn:
        if name not in CHECK_NAMES:
            raise UnknownCheckError(f"check {name!r} is not a known check name")
        CHECKS[name] = fn
        return fn
    return register


# ─── Records ─────────────────────────────────────────────────────────────────

@dataclass
class CheckRecord:
    check: str
    params: Dict[str, Any]
    samples: int
    status: str
    witness: Any = None
    elapsed: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> bytes:
        return orjson.dumps(asdict(self), option=orjson.OPT_SORT_KEYS)


@dataclass
class SuiteReport:
    records: List[CheckRecord] = field(default_factory=list)

    @property
    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if not r.passed]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def lines(self) -> bytes:
        return b"".join(r.to_json() + b"\n" for r in self.records)


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ConsistencyError(message)


# ─── Grid ────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Grid:
    lambdas: Tuple[Scalar, ...]
    ab_pairs: Tuple[Tuple[Scalar, Scalar], ...]
    specs: Tuple[VacuumSpec, ...]

    @property
    def verma_weights(self) -> List[Scalar]:
        return [s.highest_weight for s in self.specs if s.is_verma and s.highest_weight]

    @property
    def charge_specs(self) -> List[VacuumSpec]:
        return [s for s in self.specs if s.r == 1]

    @property
    def simple_specs(self) -> List[VacuumSpec]:
        return [s for s in self.specs if is_simple_induced(s)]


def grid_of(cfg: SuiteConfig) -> Grid:
    return Grid(
        tuple(parse_scalar(x) for x in cfg.lambdas),
        tuple((parse_scalar(a), parse_scalar(b)) for a, b in cfg.ab_pairs),
        tuple(parse_spec(s) for s in cfg.specs),
    )


def _l_record(P: LParams) -> Dict[str, str]:
    return {"module": render_descriptor(ModuleDescriptor.of(P))}


def _window(cfg: SuiteConfig) -> Tuple[int, int]:
    return cfg.profile.window


# ─── Algebra ─────────────────────────────────────────────────────────────────

@check("bracket-laws")
def _bracket_laws(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    span = 6

    def run():
        count = 0
        indices = range(-span, span + 1)
        for m in indices:
            for n in indices:
                _expect(bracket(m, n) == -bracket(n, m), f"antisymmetry fails at ({m}, {n})")
                for k in indices:
                    _expect(not jacobi_sum(generator(m), generator(n), generator(k)),
                            f"Jacobi identity fails at ({m}, {n}, {k})")
                    count += 1
        for _ in range(10 * cfg.samples):
            x, y, w = random_virasoro(rng), random_virasoro(rng), random_virasoro(rng)
            _expect(bracket_elements(x, y) == -bracket_elements(y, x), "antisymmetry fails on combinations")
            _expect(not jacobi_sum(x, y, w), "Jacobi identity fails on combinations")
            count += 1
        return count, {"triples": (2 * span + 1) ** 3}

    yield {"span": span}, run


@check("module-axiom")
def _module_axiom(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    grid = grid_of(cfg)
    for spec in grid.specs:
        for lam in grid.lambdas:
            for a, b in grid.ab_pairs:
                P = LParams(spec, lam, a, b)

                def run(P=P):
                    count = 0
                    for _ in range(cfg.samples):
                        v = random_loop_element(rng, P.spec, 3, cfg.profile.bmax, (-3, 3))
                        for m in range(-4, 5):
                            for n in range(-4, 5):
                                lhs = act_element(P, bracket(m, n), v)
                                rhs = apply_word(commutator_word(m, n), P, v)
                                _expect(lhs == rhs, f"[d_{m}, d_{n}] v differs from d_{m} d_{n} v - d_{n} d_{m} v")
                                count += 1
                    return count, None

                yield _l_record(P), run


@check("socle")
def _socle(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    grid = grid_of(cfg)
    profile = cfg.profile
    for spec in grid.simple_specs:
        def run(spec=spec):
            r = socle_order(spec)
            _expect(socle_operator_injective(spec, profile.bmax), f"d_{r} is not injective on the socle slice")
            count = 0
            for _ in range(3 * cfg.samples):
                v = random_module_element(rng, spec, profile.dmax, profile.bmax)
                s = top_degree(v)
                _expect(bool(essential_descent(spec, v)), "essential descent vanished")
                _expect(order(spec, v) == r + s, f"order of v is not {r} + {s}")
                _expect(is_in_socle(socle_component(v, s)), "top coefficient left the socle")
                count += 1
            return count, {"socle_order": r}

        yield {"spec": render_spec(spec)}, run


# ─── Oracles ─────────────────────────────────────────────────────────────────

def _e_params(grid: Grid) -> Iterator[EParams]:
    for lam in grid.lambdas:
        for bprime in grid.verma_weights:
            for a, b in grid.ab_pairs:
                yield EParams(lam, a, -bprime, b + bprime)


def _e_record(E: EParams) -> Dict[str, str]:
    return {"module": render_descriptor(E)}


def crosscheck_cm(E: EParams, kmax: int = 5, span: int = 4) -> int:
    """Compare cm_act with the engine on T_i^k, k <= kmax, |i|, |n| <= span."""
    P = e_to_l(E)
    count = 0
    for k in range(kmax + 1):
        for i in range(-span, span + 1):
            t = t_basis(k, i)
            for n in range(-span, span + 1):
                _expect(to_loop(cm_act(E, n, t)) == l_act(P, n, to_loop(t)),
                        f"closed form differs from the engine on d_{n} T_{i}^{k}")
                count += 1
    return count


def crosscheck_level1(P: LParams, degree: int = 3, span: int = 3) -> int:
    """Compare the level-1 direct formula with the engine for i + j <= degree, |m|, |k| <= span."""
    if P.spec.r != 1:
        raise InvalidParameterError(f"direct formula needs a level-1 spec, got r={P.spec.r}")
    mu1, mu2 = P.spec.charges
    count = 0
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            for k in range(-span, span + 1):
                validate_level1_degeneration(mu1, mu2, P.lam, P.a, P.b, i, j, k)
                v = loop_monomial((-1,) * i + (0,) * j, k)
                for m in range(-span, span + 1):
                    got = level1_act(mu1, mu2, P.lam, P.a, P.b, m, (i, j, k))
                    _expect(got == l_act(P, m, v),
                            f"direct formula differs from the engine at m={m}, (i, j, k)={(i, j, k)}")
                    count += 1
    return count


@check("oracle-cm")
def _oracle_cm(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    for E in _e_params(grid_of(cfg)):
        def run(E=E):
            count = crosscheck_cm(E)
            # module axiom of the closed form on its own
            for m in range(-3, 4):
                for n in range(-3, 4):
                    t = t_basis(rng.randint(0, 3), rng.randint(-2, 2))
                    lhs = cm_act(E, m, cm_act(E, n, t)) - cm_act(E, n, cm_act(E, m, t))
                    _expect(lhs == cm_act(E, m + n, t).scale(n - m), f"closed form breaks [d_{m}, d_{n}]")
            return count, None

        yield _e_record(E), run


@check("oracle-level1")
def _oracle_level1(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    grid = grid_of(cfg)
    for spec in grid.charge_specs:
        for lam in grid.lambdas:
            for a, b in grid.ab_pairs:
                P = LParams(spec, lam, a, b)
                yield _l_record(P), (lambda P=P: (crosscheck_level1(P), None))


@check("duality")
def _duality(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    for E in _e_params(grid_of(cfg)):
        D = e_dual(E)
        if not D.gamma:
            continue

        def run(E=E, D=D):
            count = 0
            for _ in range(3 * cfg.samples):
                v = TBasisElement({(rng.randint(0, 3), rng.randint(-3, 3)): random_scalar(rng) for _ in range(3)})
                for n in range(-3, 4):
                    _expect(dual_map(E, cm_act(E, n, v)) == cm_act(D, n, dual_map(E, v)),
                            f"dual map does not intertwine d_{n}")
                    count += 1
            return count, {"dual": render_descriptor(D)}

        yield _e_record(E), run


# ─── Sequences ───────────────────────────────────────────────────────────────

@check("shift-identities")
def _shift_identities(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    for lam in grid_of(cfg).lambdas:
        def run(lam=lam):
            count = 0
            for k in range(7):
                p = linear_factor(lam) ** k
                image = shift_act(p, ExpPolySequence.basic(lam, k, (ONE,)))
                const = ratio(factorial(k)) * lam ** k
                _expect(image == ExpPolySequence.basic(lam, 0, (const,)), f"(x - lambda)^{k} closed form fails")
                for m in range(-5, 6):
                    direct = sum((c * lam ** (m + i) * ratio((m + i) ** k) for (i,), c in p.terms()), scalar(0))
                    _expect(direct == const * lam ** m, f"(x - lambda)^{k} fails at m={m}")
                    count += 1
                _expect(annihilator_check(linear_factor(lam) ** (k + 1), lam, k), "divisible polynomial does not annihilate")
                _expect(not annihilator_check(p, lam, k), "non-divisible polynomial annihilates")
                extra = linear_factor(lam) ** (k + 1) * linear_factor(random_scalar(rng))
                _expect(annihilator_check(extra, lam, k), "multiple of (x - lambda)^(k+1) does not annihilate")
            return count, None

        yield {"lambda": format_scalar(lam)}, run


def _distinct_scalars(rng: random.Random, count: int) -> List[Scalar]:
    chosen: List[Scalar] = []
    while len(chosen) < count:
        c = random_scalar(rng)
        if c not in chosen:
            chosen.append(c)
    return chosen


@check("extraction")
def _extraction(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    instances = 50 * cfg.samples

    def run():
        for _ in range(instances):
            s, k, dim = rng.randint(1, 3), rng.randint(0, 3), rng.randint(1, 4)
            lambdas = _distinct_scalars(rng, s)
            plane = [tuple(random_scalar(rng) for _ in range(dim)) for _ in range(2)]
            components = {}
            for lam in lambdas:
                for j in range(k + 1):
                    x, y = random_scalar(rng), random_scalar(rng)
                    components.setdefault(lam, {})[j] = tuple(x * u + y * w for u, w in zip(*plane))
            T = ExpPolySequence(dim, components)
            expected = [
                (lam, j, T.components[lam][j])
                for lam in lambdas for j in range(k + 1)
                if j in T.components.get(lam, {})
            ]
            samples = [(m, T(m)) for m in range(-2, s * (k + 1) + 1)]
            got = extract_components(samples, lambdas, k)
            _expect(got == expected, "extracted components differ from the construction")
            _expect(cascade_extract(T, lambdas, k) == expected, "cascade extraction differs")
            span = EchelonSpan()
            span.extend({i: c for i, c in enumerate(u) if c} for u in plane)
            _expect(all({i: c for i, c in enumerate(vec) if c} in span for _, _, vec in got),
                    "component left the subspace containing every sample")
        return instances, None

    yield {"instances": instances}, run


# ─── Submodules ──────────────────────────────────────────────────────────────

@check("filtration")
def _filtration(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    grid = grid_of(cfg)
    profile = cfg.profile
    for spec in grid.specs:
        for a, b in grid.ab_pairs:
            P = LParams(spec, 1, a, b)

            def run(P=P):
                count = 0
                for n in range(4):
                    for _ in range(cfg.samples):
                        v = random_loop_element(rng, P.spec, n, profile.bmax, profile.window)
                        for k in range(-4, 5):
                            _expect(in_filtration(P, n, l_act(P, k, v)), f"d_{k} leaves filtration level {n}")
                    N = layer_params(P, n)
                    for word in b_words(P.spec.r, profile.bmax):
                        for j in profile.indices():
                            w = loop_monomial(word, j)
                            for k in range(-4, 5):
                                _expect(layer_action(P, n, k, w) == n_act(N, k, w),
                                        f"layer {n} action of d_{k} differs from the N-module with twist b - {n}")
                                count += 1
                return count, None

            yield _l_record(P), run


@check("lprime")
def _lprime(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    grid = grid_of(cfg)
    profile = cfg.profile
    for spec in grid.specs:
        for lam in grid.lambdas:
            for a, _ in grid.ab_pairs:
                P = LParams(spec, lam, a, 1)

                def run(P=P):
                    P0, Q = P.with_b(0), quotient_params(P)
                    count = 0
                    for _ in range(cfg.samples):
                        v = random_loop_element(rng, P.spec, profile.dmax, profile.bmax, profile.window)
                        u = tau(P, v)
                        _expect(in_lprime(P, u), "tau image is not in L'")
                        _expect(tau_inverse(P, u) == v, "tau inverse does not recover the input")
                        w = random_loop_element(rng, P.spec, profile.dmax, profile.bmax, profile.window)
                        for k in range(-4, 5):
                            image = l_act(P, k, u)
                            _expect(image == tau(P, l_act(P0, k, v)), f"tau does not intertwine d_{k}")
                            _expect(in_lprime(P, image), f"d_{k} leaves L'")
                            _expect(lprime_quotient(P, l_act(P, k, w)) == n_act(Q, k, lprime_quotient(P, w)),
                                    f"quotient by L' does not intertwine d_{k}")
                            count += 1
                    return count, None

                yield _l_record(P), run


@check("parity")
def _parity(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    grid = grid_of(cfg)
    profile = cfg.parity_profile
    for bprime in (parse_scalar(x) for x in cfg.parity_bprimes):
        for a, _ in grid.ab_pairs:
            P = LParams(VacuumSpec.verma(bprime), -1, a, bprime + 1)

            def run(P=P):
                count = 0
                for _ in range(2 * cfg.samples):
                    v = random_loop_element(rng, P.spec, profile.dmax, 0, profile.window, terms=4)
                    v0, v1 = parity_decompose(P, v, profile)
                    _expect(v0 + v1 == v, "parity parts do not sum to the input")
                    _expect(parity_decompose(P, v0, profile) == (v0, v0.zero()), "even part is not idempotent")
                    _expect(parity_decompose(P, v1, profile) == (v1.zero(), v1), "odd part is not idempotent")
                    for part, parity in ((v0, 0), (v1, 1)):
                        for k in range(-profile.kmax, profile.kmax + 1):
                            image = l_act(P, k, part)
                            if image and within_profile(image, profile):
                                _expect(parity_of(P, image, profile) == parity, f"d_{k} mixes the parity parts")
                                count += 1
                full = profile.dmax + 1
                for n in profile.indices():
                    basis = parity_basis(P, n, profile.dmax)
                    _expect(span_rank([g.terms for g in basis]) == full,
                            f"parity basis at t^{n} does not span the slice")
                    parts = [parity_decompose(P, loop_monomial((-1,) * i, n), profile) for i in range(full)]
                    even = span_rank([v0.terms for v0, _ in parts if v0])
                    odd = span_rank([v1.terms for _, v1 in parts if v1])
                    _expect(even + odd == full,
                            f"parity slice dimensions at t^{n} do not add up: {even} + {odd} != {full}")
                    _expect(even == sum(1 for i in range(full) if (n - i) % 2 == 0),
                            f"even slice dimension at t^{n} is {even}")
                    count += 1
                return count, None

            yield _l_record(P), run


# ─── Predicates ──────────────────────────────────────────────────────────────

_SIMPLICITY_LAMBDAS = (ONE, -ONE, scalar(2), ratio(1, 2))


@check("simplicity-evidence")
def _simplicity_evidence(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    grid = grid_of(cfg)
    scan = cfg.scan_profile
    for spec in grid.simple_specs:
        bs = (scalar(0), ONE, spec.highest_weight + 1) if spec.is_verma else (scalar(0), ONE, scalar(2))
        for lam in _SIMPLICITY_LAMBDAS:
            for b in bs:
                P = LParams(spec, lam, 0, b)

                def run(P=P):
                    if is_simple_L(P):
                        generators = [
                            random_loop_element(rng, P.spec, scan.dmax, scan.bmax, scan.window,
                                                index=rng.randint(*scan.window))
                            for _ in range(5)
                        ]
                        result = cyclic_slice_dims(P, generators, scan)
                        _expect(result.full_rank(), f"closure scan stopped short of the full slices: {result.dims}")
                        return len(generators), {"simple": True, "attained": result.max_attained()}
                    witness = non_simplicity_witness(P, cfg.profile, cfg.samples, rng)
                    _expect(witness["outside"], "witness subspace is not proper")
                    return witness["checked"], {"simple": False, **witness}

                yield _l_record(P), run


@check("descent")
def _descent(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    grid = grid_of(cfg)
    lambdas = [lam for lam in grid.lambdas if lam not in (ONE, -ONE)]
    for spec in grid.simple_specs:
        for lam in lambdas:
            for a, b in grid.ab_pairs:
                P = LParams(spec, lam, a, b)

                def run(P=P):
                    for _ in range(cfg.samples):
                        n = rng.randint(-2, 2)
                        v = random_loop_element(rng, P.spec, 1, 1, (-2, 2), index=n)
                        essential_descent(P.spec, v.component(n))
                        top_descent_component(P, v, rng.randint(-3, 3))
                    return cfg.samples, None

                yield _l_record(P), run


def _iso_pairs() -> List[Tuple[ModuleDescriptor, ModuleDescriptor, bool]]:
    v1, vm2, v3 = VacuumSpec.verma(1), VacuumSpec.verma(-2), VacuumSpec.verma(3)
    charge = VacuumSpec(1, (0, 1))
    half = ratio(1, 2)
    n_module = ModuleDescriptor.of(NParams(v1, 0, 1))
    return [
        (L(v1, 2, 0, 0), L(v1, 2, 0, 0), True),
        (L(v1, 2, 0, 0), L(v1, 2, 1, 0), True),
        (L(v1, 2, 0, 0), L(v1, 2, half, 0), False),
        (L(v1, 2, 0, 0), L(v1, half, 0, 0), False),
        (L(v1, 2, 0, 2), L(v1, half, 0, 2), True),
        (L(vm2, 2, 0, 4), L(v3, half, 0, -1), True),
        (L(v1, 2, 0, 0), L(charge, 2, 0, 0), False),
        (L(v1, 2, 0, 0), n_module, False),
        (L(v1, 2, 0, 0), A(0, 0), False),
        (n_module, ModuleDescriptor.of(NParams(v1, 1, 1)), True),
        (n_module, ModuleDescriptor.of(NParams(v1, 0, 2)), False),
        (A(0, 0), A(1, 0), True),
        (A(ratio(1, 3), 1), A(ratio(1, 3), 2), False),
        (A(0, 1), n_module, False),
        (Parity(0, 0, 1), Parity(0, 0, 1), True),
        (Parity(1, 0, 1), Parity(0, 1, 1), True),
        (Parity(0, 0, 1), Parity(0, 2, 1), True),
        (Parity(0, 0, 1), Parity(1, 0, 1), False),
        (Parity(0, 0, 1), Parity(0, half, 1), False),
        (Parity(0, 0, 1), L(v1, -1, 0, 0), False),
        (L(charge, -1, 0, 0), L(charge, -1, 1, 0), True),
    ]


@check("isomorphism")
def _isomorphism(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    grid = grid_of(cfg)
    a = grid.ab_pairs[0][0] if grid.ab_pairs else scalar(0)
    window = _window(cfg)
    for bprime, bprime0 in ((1, 1), (1, -2), (-2, 3)):
        for lam in (scalar(2), ratio(1, 2)):
            def run(bprime=bprime, bprime0=bprime0, lam=lam):
                source, target = dual_pair(lam, a, bprime, bprime0)
                count = 0
                for _ in range(2 * cfg.samples):
                    v = random_loop_element(rng, source.spec, cfg.profile.dmax, 0, window)
                    image = phi(lam, a, bprime, bprime0, v)
                    for m in range(-3, 4):
                        _expect(phi(lam, a, bprime, bprime0, l_act(source, m, v)) == l_act(target, m, image),
                                f"phi does not intertwine d_{m}")
                        count += 1
                verdict = are_isomorphic(ModuleDescriptor.of(source), ModuleDescriptor.of(target))
                _expect(verdict == IsoVerdict(True, Witness.DUAL_MAP), f"unexpected verdict {verdict}")
                return count, {"verdict": verdict.witness.value}

            yield {"bprime": str(bprime), "bprime0": str(bprime0), "lambda": format_scalar(lam)}, run

    for left, right, expected in _iso_pairs():
        def run(left=left, right=right, expected=expected):
            verdict = are_isomorphic(left, right)
            _expect(verdict.iso == expected, f"expected iso={expected}, got {verdict}")
            _expect(are_isomorphic(right, left).iso == expected, "verdict is not symmetric")
            return 1, {"verdict": verdict.witness.value}

        yield {"left": render_descriptor(left), "right": render_descriptor(right)}, run


@check("probes")
def _probes(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    for a1, b1 in ((scalar(0), scalar(0)), (ratio(1, 2), scalar(3))):
        def run(a1=a1, b1=b1):
            count = 0
            for l in range(-6, 7):
                for m in range(-6, 7):
                    for n in range(-6, 7):
                        _expect(not omega3_on_A(a1, b1, l, m, n), f"omega3 nonzero at ({l}, {m}, {n})")
                        count += 1
            return count, None

        yield {"a1": format_scalar(a1), "b1": format_scalar(b1)}, run

    grid = grid_of(cfg)
    for spec in grid.simple_specs:
        P = LParams(spec, 2, *(grid.ab_pairs[0] if grid.ab_pairs else (0, 0)))

        def run(P=P):
            _expect(x_leading_coefficient(2, 10, 1) == scalar(62), "closed form at (10, 1) is not 62")
            count = 0
            for l, m in ((10, 1), (7, 2), (5, 1), (9, 3)):
                n = rng.randint(-2, 2)
                v = random_loop_element(rng, P.spec, 0, cfg.profile.bmax, (n, n), index=n)
                _, leading = x_probe(P, l, m, v)
                _expect(leading == x_leading_coefficient(P.lam, l, m), f"leading coefficient differs at ({l}, {m})")
                count += 1
            flat = LParams(P.spec, 1, P.a, P.b)
            _, leading = x_probe(flat, 10, 1, loop_monomial((), 0))
            _expect(not leading, "lambda = 1 probe has a nonzero leading coefficient")
            return count, {"leading_10_1": "62"}

        yield _l_record(P), run


@check("classify-e")
def _classify_e(cfg: SuiteConfig, rng: random.Random) -> Iterator[Instance]:
    grid = grid_of(cfg)
    lambdas = list(dict.fromkeys((ONE,) + grid.lambdas))
    b = grid.ab_pairs[0][0] if grid.ab_pairs else scalar(0)
    for lam in lambdas:
        def run(lam=lam):
            cases = {}
            count = 0
            for gamma in (scalar(1), ratio(-1, 2), scalar(0), scalar(2)):
                for p in dict.fromkeys((ONE, scalar(0), -ONE, ONE - gamma, ONE - gamma * 2)):
                    result = classify_E(lam, b, gamma, p)
                    key = f"gamma={format_scalar(gamma)}; p={format_scalar(p)}"
                    cases[key] = result.case
                    if gamma:
                        P = e_to_l(EParams(lam, b, gamma, p))
                        _expect(result.simple == is_simple_L(P), f"case table disagrees with the predicate at {key}")
                        if result.case == 3:
                            _expect(P.b == ONE, "case 3 without b = 1")
                        if result.case == 4:
                            _expect(P.b == P.spec.highest_weight + 1, "case 4 without b = b' + 1")
                    else:
                        _expect(not result.simple and result.case in (5, 6, 7, 8, None),
                                f"gamma = 0 classified as {result.case}")
                    count += 1
            return count, {"cases": cases}

        yield {"lambda": format_scalar(lam), "b": format_scalar(b)}, run


# ─── Runner ──────────────────────────────────────────────────────────────────

def _execute(name: str, params: Dict[str, Any], run, timings: bool) -> CheckRecord:
    start = time.perf_counter()
    try:
        samples, witness = run()
        status = "pass"
    except (VirasoroError, ArithmeticError) as e:
        logging.error(f"[suite] {name} failed at {params}: {e}", exc_info=True)
        samples, witness, status = 0, {"error": str(e)}, "fail"
    elapsed = round(time.perf_counter() - start, 6) if timings else None
    return CheckRecord(name, params, samples, status, witness, elapsed)


def write_report(report: SuiteReport, path: str) -> None:
    with open(path, "wb") as f:
        f.write(report.lines())
    logging.info(f"Report with {len(report.records)} records written to {path}")


def run_suite(config: SuiteConfig, quiet: bool = False) -> SuiteReport:
    """Run the selected checks in registry order and return every record."""
    report = SuiteReport()
    for name in config.selected_checks():
        if name not in CHECKS:
            raise UnknownCheckError(f"unknown check {name!r}")
        rng = random.Random(f"{config.seed}:{name}")
        instances = list(CHECKS[name](config, rng))
        logging.info(f"[suite] Running '{name}' over {len(instances)} instance(s)")
        bar = tqdm(instances, desc=name, leave=False, disable=quiet or not sys.stderr.isatty())
        for params, run in bar:
            report.records.append(_execute(name, params, run, config.timings))
    clear_caches()

    failed = report.failures
    logging.info(f"[suite] {len(report.records) - len(failed)}/{len(report.records)} instances passed")
    for record in failed:
        logging.warning(f"  • {record.check} {record.params}: {record.witness}")
    if config.output:
        write_report(report, config.output)
    return report
