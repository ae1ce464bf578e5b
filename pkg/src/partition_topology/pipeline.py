from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from .config import SUITES, ToolkitConfig, ensure_within_cap
from .debug import save_witness_artifacts
from .engine.combinatorics import (
    Permutation,
    PointedComposition,
    PointedIntegerPartition,
    beta,
    beta_inclusion_exclusion,
    compositions,
    euler_number,
    permutations_with_descent_composition,
)
from .engine.complexes import HomologyProfile, greedy_shelling_search, is_cone, reduced_homology, verify_shelling
from .engine.cycles import build_Sigma_alpha, build_Sigma_alpha_d, column_stabilizer_leq, row_stabilizer_geq
from .engine.errors import ErrorKind, InvalidInputError, TheoremViolation, classify_error
from .engine.knapsack import expected_mobius, generating_compositions, knapsack_partitions, v_set
from .engine.morse import build_matching, critical_cells, verify_acyclic
from .engine.ordered import build_Delta_c, build_Lambda, face_of, sigma, sigma_inverse
from .engine.partitions import (
    PointedSetPartition,
    build_filter_Pi_lambda_m,
    build_pointed_partition_lattice,
    build_subposet_Pi_c,
    check_isomorphism,
    d_divisible_partition_lattice,
    hyperplane_intersection_lattice,
    pointed_to_partition,
    set_partition_lattice,
    subspace_of,
)
from .engine.posets import FinitePoset, hall_check
from .engine.specht import (
    group_action_closure,
    is_split,
    knapsack_action_closure,
    polytabloid_matches_cycle,
    psi_equivariance,
    psi_image_check,
    verify_cycle_basis,
    verify_knapsack_cycle_basis,
)
from .engine.strips import border_strip, count_standard_tableaux
from .metrics import ClaimResult, VerificationReport

logger = logging.getLogger(__name__)

# Hyperplane arrangements are only compared for small n.
HYPERPLANE_MAX_N = 3
# Two elements of Pi*_(1,1,2,1) without a join.
NOT_LATTICE_PAIR = ("1|2|34|_5", "2|5|34|_1")

# Caps each suite must respect at max_n.
_SUITE_CAPS: Dict[str, Tuple[str, ...]] = {
    "mobius": ("pointed_lattice",),
    "homology": ("delta", "lambda", "pointed_lattice"),
    "morse": ("lambda",),
    "cycles": ("delta", "lambda"),
    "specht": ("delta", "lambda"),
}


@dataclass(frozen=True)
class Verdict:
    status: str = "pass"
    reason: Optional[str] = None
    witness: Optional[Any] = None


PASS = Verdict()


@dataclass(frozen=True)
class Claim:
    claim_id: str
    anchor: str
    func: Callable[..., Verdict]
    args: Tuple[Any, ...] = ()
    kwargs: Dict[str, Any] = field(default_factory=dict)


def _require(claim: str, ok: bool, message: str, witness: Optional[Any] = None) -> None:
    if not ok:
        raise TheoremViolation(claim, message, witness)


def _profile(h: HomologyProfile) -> Dict[str, Any]:
    return {
        "betti": {str(d): b for d, b in sorted(h.betti.items()) if b},
        "torsion": {str(d): list(t) for d, t in sorted(h.torsion.items()) if t},
    }


def _proper_part_homology(p: FinitePoset) -> HomologyProfile:
    return reduced_homology(p.without([p.top()]).order_complex())


# -- mobius ---------------------------------------------------------------------


def check_mobius_pi_c(c: PointedComposition, *, cap: Optional[int] = None) -> Verdict:
    mu = build_subposet_Pi_c(c, cap=cap).with_bottom().mobius()
    expected = (-1) ** c.k * beta(c)
    _require(f"mobius Pi*_{c}", mu == expected, "mu(Pi*_c + 0^) != (-1)^k beta(c)", {"mu": mu, "expected": expected})
    return Verdict(witness={"mu": mu})


def check_mobius_knapsack(pi: PointedIntegerPartition, *, cap: Optional[int] = None) -> Verdict:
    mu = build_filter_Pi_lambda_m(pi.lam, pi.m, cap=cap).with_bottom().mobius()
    expected = expected_mobius(pi.lam, pi.m)
    _require(f"mobius Pi*_{pi}", mu == expected, "mu(filter + 0^) != signed sum of beta over V", {"mu": mu, "expected": expected})
    return Verdict(witness={"mu": mu})


def check_not_lattice(c: PointedComposition, pair: Tuple[str, str], *, cap: Optional[int] = None) -> Verdict:
    """The two pointed partitions in `pair` lie in Pi*_c but have no join there."""
    claim = f"Pi*_{c} + 0^ is not a lattice"
    p = build_subposet_Pi_c(c, cap=cap).with_bottom()
    x, y = (PointedSetPartition.parse(text) for text in pair)
    _require(claim, x in p and y in p, "pair is not in Pi*_c", {"pair": list(pair)})
    upper = [z for z in p.elements if p.leq(x, z) and p.leq(y, z)]
    minimal = [z for z in upper if not any(w != z and p.leq(w, z) for w in upper)]
    _require(claim, p.join(x, y) is None, "the pair has a join", {"pair": list(pair), "upper_bounds": [str(z) for z in minimal]})
    return Verdict(witness={"operation": "join", "pair": list(pair), "minimal_upper_bounds": sorted(str(z) for z in minimal)})


def check_alternating(n: int, *, cap: Optional[int] = None) -> Verdict:
    """Pi*_(2,...,2,1) is Pi^2_{n+1}; its Mobius value is an Euler number up to sign."""
    c = PointedComposition((2,) * ((n - 1) // 2) + (1,))
    claim = f"Pi*_{c} and Pi^2_{n + 1}"
    pi_c = build_subposet_Pi_c(c, cap=cap)
    witness = check_isomorphism(pi_c, d_divisible_partition_lattice(n + 1, 2), pointed_to_partition)
    _require(claim, witness is None, "pointed_to_partition is not an isomorphism", witness)
    mu = pi_c.with_bottom().mobius()
    e = euler_number(n)
    expected = (-1) ** ((n + 1) // 2) * e
    _require(claim, mu == expected, "mu differs from the signed Euler number", {"mu": mu, "euler": e})
    _require(claim, beta(c) == e, "beta(2,...,2,1) differs from the Euler number", {"beta": beta(c), "euler": e})
    return Verdict(witness={"mu": mu, "euler": e})


def check_partition_isomorphism(n: int, *, cap: Optional[int] = None) -> Verdict:
    witness = check_isomorphism(build_pointed_partition_lattice(n, cap=cap), set_partition_lattice(n + 1), pointed_to_partition)
    _require(f"Pi*_{n} = Pi_{n + 1}", witness is None, "pointed_to_partition is not an isomorphism", witness)
    return PASS


def check_hyperplanes(n: int, *, cap: Optional[int] = None) -> Verdict:
    witness = check_isomorphism(build_pointed_partition_lattice(n, cap=cap), hyperplane_intersection_lattice(n), subspace_of)
    _require(f"Pi*_{n} = intersection lattice", witness is None, "subspace_of is not an isomorphism", witness)
    return PASS


def check_hall(n: int, *, cap: Optional[int] = None) -> Verdict:
    ensure_within_cap(n, "order_complex", cap)
    chi, mu = hall_check(build_pointed_partition_lattice(n))
    _require(f"Hall Pi*_{n}", chi == mu, "reduced Euler characteristic of the proper part != mu", {"chi": chi, "mu": mu})
    return Verdict(witness={"mu": mu})


# -- homology -------------------------------------------------------------------


def check_delta_homology(c: PointedComposition, *, cap: Optional[int] = None) -> Verdict:
    claim = f"homology Delta_{c}"
    k = build_Delta_c(c, cap=cap)
    h = reduced_homology(k)
    expected = beta(c)
    _require(claim, h.concentrated_in(c.k - 2, expected), f"expected a wedge of {expected} spheres", _profile(h))
    if c.last == 0:
        _require(claim, is_cone(k, k.apex()), "an empty last part should make a cone", {"apex": k.apex()})
    return Verdict(witness=_profile(h))


def check_lambda_homology(pi: PointedIntegerPartition, *, cap: Optional[int] = None) -> Verdict:
    h = reduced_homology(build_Lambda(pi.lam, pi.m, cap=cap))
    expected = sum(beta(d) for d in v_set(pi.lam, pi.m))
    ok = h.concentrated_in(len(pi.lam) - 1, expected)
    _require(f"homology Lambda_{pi}", ok, f"expected a wedge of {expected} spheres", _profile(h))
    return Verdict(witness=_profile(h))


def check_lambda_union(pi: PointedIntegerPartition, *, cap: Optional[int] = None) -> Verdict:
    k = build_Lambda(pi.lam, pi.m, cap=cap)
    union = set()
    for c in generating_compositions(pi.lam, pi.m):
        union |= build_Delta_c(c, cap=cap).faces
    extra = [k.label(f) for f in sorted(k.faces ^ union)][:5]
    _require(f"Lambda_{pi} as a union", k.faces == union, "faces differ from the union of Delta_c", {"faces": extra})
    return PASS


def check_shelling(c: PointedComposition, *, cap: Optional[int] = None) -> Verdict:
    claim = f"shelling Delta_{c}"
    k = build_Delta_c(c, cap=cap)
    order = sorted(k.facets(), key=lambda f: sigma_inverse(k.partition(f)).word)
    result = verify_shelling(k, order)
    if result.is_shelling:
        expected = {face_of(sigma(alpha, c)) for alpha in permutations_with_descent_composition(c)}
        spanning = set(result.spanning)
        _require(
            claim,
            spanning == expected,
            "spanning facets differ from sigma(alpha), Des(alpha) = c",
            {"spanning": sorted(k.label(f) for f in spanning), "expected": sorted(k.label(f) for f in expected)},
        )
        return Verdict(witness={"order": "lex", "spanning": len(spanning)})

    fallback = greedy_shelling_search(k)
    _require(claim, fallback is not None, "lex order fails and no shelling was found", result.to_json())
    logger.warning("%s: lex order fails at facet %s, fallback order found", claim, result.failure_index)
    return Verdict(witness={"order": "fallback", "order_discrepancy": True, "failure_index": result.failure_index})


def check_quillen_c(c: PointedComposition, *, cap: Optional[int] = None) -> Verdict:
    ensure_within_cap(c.n, "order_complex", cap)
    left = _profile(_proper_part_homology(build_subposet_Pi_c(c)))
    right = _profile(reduced_homology(build_Delta_c(c)))
    _require(f"Delta(Pi*_{c} - 1^) ~ Delta_{c}", left == right, "homology differs", {"poset": left, "complex": right})
    return Verdict(witness=right)


def check_quillen_lambda(pi: PointedIntegerPartition, *, cap: Optional[int] = None) -> Verdict:
    ensure_within_cap(pi.n, "order_complex", cap)
    left = _profile(_proper_part_homology(build_filter_Pi_lambda_m(pi.lam, pi.m)))
    right = _profile(reduced_homology(build_Lambda(pi.lam, pi.m)))
    _require(f"Delta(Pi*_{pi} - 1^) ~ Lambda_{pi}", left == right, "homology differs", {"poset": left, "complex": right})
    return Verdict(witness=right)


# -- morse ----------------------------------------------------------------------


def check_matching(pi: PointedIntegerPartition, *, cap: Optional[int] = None) -> Verdict:
    claim = f"matching on Lambda_{pi}"
    matching = build_matching(pi.lam, pi.m, cap=cap)
    _require(claim, matching.is_involution(), "decisions do not pair up")
    acyclic = verify_acyclic(matching)
    _require(claim, acyclic.is_acyclic, "modified Hasse diagram has a cycle", acyclic.to_json())
    cells = critical_cells(matching)
    expected = sum(beta(d) for d in v_set(pi.lam, pi.m))
    _require(claim, len(cells) == expected, "wrong number of critical cells", {"found": len(cells), "expected": expected})
    return Verdict(
        witness={
            "critical": len(cells),
            "pairs": len(matching.pairs()),
            "type_certificate": acyclic.certificate,
            "certificate_witness": acyclic.certificate_witness,
        }
    )


def check_matching_unpointed(pi: PointedIntegerPartition, *, cap: Optional[int] = None) -> Verdict:
    """m = 0: the matching is reported, contractibility is read off the homology."""
    matching = build_matching(pi.lam, pi.m, strict=False, cap=cap)
    h = reduced_homology(matching.complex)
    _require(f"Lambda_{pi} is contractible", h.is_acyclic(), "non-trivial reduced homology", _profile(h))
    cells = critical_cells(matching, verify=False)
    return Verdict(witness={"critical": [str(t) for t in cells], "conflicts": len(matching.conflicts)})


# -- cycles ---------------------------------------------------------------------


def check_cycle_basis(c: PointedComposition, *, cap: Optional[int] = None) -> Verdict:
    return Verdict(witness=verify_cycle_basis(c, cap=cap).to_json())


def check_knapsack_cycle_basis(pi: PointedIntegerPartition, *, cap: Optional[int] = None) -> Verdict:
    return Verdict(witness=verify_knapsack_cycle_basis(pi.lam, pi.m, cap=cap).to_json())


def check_stabilizer_order(c: PointedComposition) -> Verdict:
    claim = f"stabilizers and weak order for {c}"
    for alpha in permutations_with_descent_composition(c):
        witness = column_stabilizer_leq(alpha, c)
        _require(claim, witness is None, "alpha o gamma is not below alpha", witness)
        witness = row_stabilizer_geq(alpha, c)
        _require(claim, witness is None, "alpha o gamma is not above alpha", witness)
    return PASS


def check_sigma_alpha(alpha: Permutation, c: PointedComposition) -> Verdict:
    h = reduced_homology(build_Sigma_alpha(alpha, c))
    _require(f"Sigma_{alpha},{c} is a sphere", h.is_sphere(c.k - 2), f"not a {c.k - 2}-sphere", _profile(h))
    return PASS


def check_sigma_alpha_d(alpha: Permutation, d: PointedComposition, pi: PointedIntegerPartition) -> Verdict:
    h = reduced_homology(build_Sigma_alpha_d(alpha, d, pi.lam, pi.m))
    dim = len(pi.lam) - 1
    _require(f"Sigma_{alpha},{d} is a sphere", h.is_sphere(dim), f"not a {dim}-sphere", _profile(h))
    return PASS


# -- specht ---------------------------------------------------------------------


def check_standard_tableaux(c: PointedComposition) -> Verdict:
    syt = count_standard_tableaux(border_strip(c))
    b, b2 = beta(c), beta_inclusion_exclusion(c)
    _require(f"SYT(B{c}) = beta", syt == b == b2, "counts differ", {"syt": syt, "beta": b, "inclusion_exclusion": b2})
    return Verdict(witness={"count": syt})


def check_action_closure(c: PointedComposition, *, cap: Optional[int] = None) -> Verdict:
    return Verdict(witness=group_action_closure(c, cap=cap).to_json())


def check_knapsack_action_closure(pi: PointedIntegerPartition, *, cap: Optional[int] = None) -> Verdict:
    return Verdict(witness=knapsack_action_closure(pi.lam, pi.m, cap=cap).to_json())


def check_polytabloids(c: PointedComposition) -> Verdict:
    bad = [str(a) for a in permutations_with_descent_composition(c) if not polytabloid_matches_cycle(a, c)]
    _require(f"polytabloids of {c}", not bad, "e_t differs from g_alpha", {"alpha": bad[:5]})
    return PASS


def check_psi(pi: PointedIntegerPartition, d: PointedComposition) -> Verdict:
    claim = f"Psi on {pi}, d={d}"
    image = psi_image_check(pi.lam, pi.m, d)
    if is_split(d, pi.lam, pi.m):
        bad = [m["alpha"] for m in image.mismatches]
        reason = f"split shape: {len(bad)} of {image.checked} labels differ term by term"
        if bad:
            reason += f", e.g. alpha={bad[0]}"
        witness = {"d": str(d), "mismatched_alpha": bad}
        if image.mismatches:
            witness["counterexample"] = image.mismatches[0]
        return Verdict("skipped", reason=reason, witness=witness)
    _require(claim, image.holds, "Psi(e_t) != g_alpha,d", image.to_json())
    equivariance = psi_equivariance(pi.lam, pi.m, d)
    _require(claim, equivariance.holds, "Psi is not equivariant", equivariance.to_json())
    return Verdict(witness={"labels": image.checked, "actions": equivariance.checked})


# -- suites ---------------------------------------------------------------------


def _pointed_compositions(max_n: int) -> List[PointedComposition]:
    return [c for n in range(1, max_n + 1) for c in compositions(n, pointed=True)]


def _strict_compositions(max_n: int) -> List[PointedComposition]:
    return [c for n in range(1, max_n + 1) for c in compositions(n)]


def _knapsack_pairs(max_n: int, *, min_m: int = 0) -> List[PointedIntegerPartition]:
    return [pi for n in range(1, max_n + 1) for pi in knapsack_partitions(n, min_m=min_m)]


def _mobius_claims(cfg: ToolkitConfig, max_n: int) -> List[Claim]:
    cap = {"cap": cfg.cap("pointed_lattice")}
    claims = [
        Claim(f"mobius Pi*_{c}", "mu(Pi*_c + 0^) = (-1)^k beta(c)", check_mobius_pi_c, (c,), cap)
        for c in _pointed_compositions(max_n)
    ]
    claims += [
        Claim(f"mobius Pi*_{pi}", "mu(Pi*_lambda,m + 0^) = (-1)^(l+1) sum beta(d)", check_mobius_knapsack, (pi,), cap)
        for pi in _knapsack_pairs(max_n)
    ]
    if max_n >= 5:
        c = PointedComposition((1, 1, 2, 1))
        claims.append(Claim(f"Pi*_{c} + 0^ is not a lattice", "Pi*_c need not be a lattice", check_not_lattice, (c, NOT_LATTICE_PAIR), cap))
    claims += [
        Claim(f"Pi*_(2,...,2,1) n={n}", "Pi*_(2..2,1) = Pi^2_{n+1}, mu = +-E_n", check_alternating, (n,), cap)
        for n in range(1, max_n + 1, 2)
    ]
    claims += [
        Claim(f"Pi*_{n} = Pi_{n + 1}", "Pi*_n is isomorphic to Pi_{n+1}", check_partition_isomorphism, (n,), cap)
        for n in range(1, max_n + 1)
    ]
    claims += [
        Claim(f"Pi*_{n} = L(A_{n})", "Pi*_n is the intersection lattice of x_i = x_j, x_i = 0", check_hyperplanes, (n,), cap)
        for n in range(1, min(max_n, HYPERPLANE_MAX_N) + 1)
    ]
    claims += [
        Claim(f"Hall Pi*_{n}", "reduced Euler characteristic of the proper part = mu", check_hall, (n,), {"cap": cfg.cap("order_complex")})
        for n in range(1, min(max_n, cfg.cap("order_complex")) + 1)
    ]
    return claims


def _homology_claims(cfg: ToolkitConfig, max_n: int) -> List[Claim]:
    delta = {"cap": cfg.cap("delta")}
    lam = {"cap": cfg.cap("lambda")}
    ocx = {"cap": cfg.cap("order_complex")}
    quillen_n = min(max_n, cfg.cap("order_complex"))
    claims = [
        Claim(f"homology Delta_{c}", "Delta_c is a wedge of beta(c) (k-2)-spheres", check_delta_homology, (c,), delta)
        for c in _pointed_compositions(max_n)
    ]
    claims += [
        Claim(f"homology Lambda_{pi}", "Lambda is a wedge of sum beta(d) (l-1)-spheres", check_lambda_homology, (pi,), lam)
        for pi in _knapsack_pairs(max_n)
    ]
    claims += [
        Claim(f"Lambda_{pi} as a union", "Lambda is the union of Delta_c over its generating compositions", check_lambda_union, (pi,), lam)
        for pi in _knapsack_pairs(max_n)
    ]
    claims += [
        Claim(f"shelling Delta_{c}", "lex order on sigma^-1 shells Delta_c", check_shelling, (c,), delta)
        for c in _strict_compositions(max_n)
        if c.k >= 2
    ]
    claims += [
        Claim(f"Delta(Pi*_{c} - 1^) ~ Delta_{c}", "order complex and Delta_c have the same homology", check_quillen_c, (c,), ocx)
        for c in _pointed_compositions(quillen_n)
    ]
    claims += [
        Claim(f"Delta(Pi*_{pi} - 1^) ~ Lambda_{pi}", "order complex and Lambda have the same homology", check_quillen_lambda, (pi,), ocx)
        for pi in _knapsack_pairs(quillen_n)
    ]
    return claims


def _morse_claims(cfg: ToolkitConfig, max_n: int) -> List[Claim]:
    cap = {"cap": cfg.cap("lambda")}
    claims = []
    for pi in _knapsack_pairs(max_n):
        if pi.m > 0:
            total = sum(beta(d) for d in v_set(pi.lam, pi.m))
            claims.append(
                Claim(f"critical cells of {pi} = {total}", "acyclic matching with critical cells sigma(alpha, epsilon(d))", check_matching, (pi,), cap)
            )
        else:
            claims.append(Claim(f"matching on {pi}", "Lambda with m = 0 is contractible", check_matching_unpointed, (pi,), cap))
    return claims


def _cycle_claims(cfg: ToolkitConfig, max_n: int, rng: random.Random) -> List[Claim]:
    delta = {"cap": cfg.cap("delta")}
    lam = {"cap": cfg.cap("lambda")}
    comps = _strict_compositions(max_n)
    claims = [
        Claim(f"g_alpha basis for Delta_{c}", "g_alpha form a unitriangular basis of top homology", check_cycle_basis, (c,), delta)
        for c in comps
    ]
    pairs = _knapsack_pairs(max_n, min_m=1)
    claims += [
        Claim(f"g_alpha,d basis for Lambda_{pi}", "g_alpha,d form a unitriangular basis of top homology", check_knapsack_cycle_basis, (pi,), lam)
        for pi in pairs
    ]
    claims += [
        Claim(f"stabilizers and weak order for {c}", "alpha o gamma <= alpha on columns, >= on rows", check_stabilizer_order, (c,))
        for c in comps
    ]
    for n in range(1, max_n + 1):
        labels = [(alpha, c) for c in comps if c.n == n for alpha in permutations_with_descent_composition(c)]
        for alpha, c in rng.sample(labels, min(cfg.sphere_samples, len(labels))):
            claims.append(Claim(f"Sigma_{alpha},{c} is a sphere", "Sigma_alpha is a (k-2)-sphere", check_sigma_alpha, (alpha, c)))
    for pi in pairs:
        labels = [(alpha, d) for d in v_set(pi.lam, pi.m) for alpha in permutations_with_descent_composition(d)]
        for alpha, d in rng.sample(labels, min(cfg.sphere_samples, len(labels))):
            claims.append(
                Claim(f"Sigma_{alpha},{d} for {pi} is a sphere", "Sigma_alpha,d is a sphere", check_sigma_alpha_d, (alpha, d, pi))
            )
    return claims


def _specht_claims(cfg: ToolkitConfig, max_n: int) -> List[Claim]:
    delta = {"cap": cfg.cap("delta")}
    lam = {"cap": cfg.cap("lambda")}
    comps = _strict_compositions(max_n)
    claims = [
        Claim(f"SYT(B{c}) = beta", "standard tableaux of B(c) are counted by beta(c)", check_standard_tableaux, (c,))
        for c in comps
    ]
    claims += [
        Claim(f"S_n closure of g_alpha for {c}", "span of g_alpha is an S_n-module of dimension #SYT", check_action_closure, (c,), delta)
        for c in comps
    ]
    claims += [
        Claim(f"polytabloids of {c}", "e_t is g_alpha under tabloids = facets", check_polytabloids, (c,))
        for c in comps
    ]
    pairs = _knapsack_pairs(max_n, min_m=1)
    claims += [
        Claim(f"S_n closure of g_alpha,d for {pi}", "span of g_alpha,d is an S_n-module of dimension sum #SYT", check_knapsack_action_closure, (pi,), lam)
        for pi in pairs
    ]
    claims += [
        Claim(f"Psi on {pi}, d={d}", "Psi(e_t) = g_alpha,d and Psi is equivariant", check_psi, (pi, d))
        for pi in pairs
        for d in v_set(pi.lam, pi.m)
    ]
    return claims


def build_claims(suite: str, max_n: int, cfg: ToolkitConfig) -> List[Claim]:
    """Deterministic claim list; 'all' concatenates cfg.suites in order."""
    if suite == "all":
        return [claim for s in cfg.suites for claim in build_claims(s, max_n, cfg)]
    if suite not in SUITES:
        raise InvalidInputError(f"unknown suite '{suite}'")
    if max_n < 1:
        raise InvalidInputError("--max-n must be at least 1")
    for key in _SUITE_CAPS[suite]:
        ensure_within_cap(max_n, key, cfg.cap(key))
    if suite == "mobius":
        return _mobius_claims(cfg, max_n)
    if suite == "homology":
        return _homology_claims(cfg, max_n)
    if suite == "morse":
        return _morse_claims(cfg, max_n)
    if suite == "cycles":
        return _cycle_claims(cfg, max_n, random.Random(cfg.rng_seed))
    return _specht_claims(cfg, max_n)


def run_claim(claim: Claim) -> ClaimResult:
    """Runs one claim; usage errors propagate, everything else ends up in the result."""
    m = ClaimResult(claim_id=claim.claim_id, anchor=claim.anchor, start_ts=time.time())
    try:
        verdict = claim.func(*claim.args, **claim.kwargs)
        m.finish(verdict.status, witness=verdict.witness, error_reason=verdict.reason)
    except TheoremViolation as e:
        m.finish("fail", witness=e.witness, error_reason=str(e))
    except Exception as e:
        kind = classify_error(e)
        if kind is ErrorKind.USAGE:
            raise
        m.finish("fail", error_reason=f"{kind.value}: {type(e).__name__}: {e}")
    return m


class VerificationPipeline:
    """
    Runs the claims of one suite and collects a VerificationReport.
    Claims fan out over worker processes when cfg.jobs > 1; report order is claim order.
    """

    def __init__(self, cfg: ToolkitConfig, *, suite: str = "all", log: Optional[Callable[[str], None]] = None):
        self.cfg = cfg
        self.suite = suite
        self.log = log or logger.info

    def claims(self) -> List[Claim]:
        return build_claims(self.suite, self.cfg.max_n, self.cfg)

    def run(self) -> VerificationReport:
        claims = self.claims()
        self.log(f"Running {len(claims)} claims (suite={self.suite}, max_n={self.cfg.max_n}, jobs={self.cfg.jobs})...")

        report = VerificationReport(suite=self.suite, max_n=self.cfg.max_n)
        if self.cfg.jobs > 1:
            with ProcessPoolExecutor(max_workers=self.cfg.jobs) as pool:
                for result in pool.map(run_claim, claims):
                    self._record(report, result)
        else:
            for claim in claims:
                self._record(report, run_claim(claim))
        return report

    def _record(self, report: VerificationReport, result: ClaimResult) -> None:
        report.claims.append(result)
        self.log(str(result))
        if result.status == "fail":
            path = save_witness_artifacts(self.cfg.witness_dir, result)
            if path:
                self.log(f"  witness saved to {path}")
