"""Named, reproducible verifications of the quotient theorems.

Each ``verify_*`` function returns a :class:`VerificationReport`.  Checks are
evaluated independently: an exception inside one check is recorded as a
failed check and the remaining checks still run.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .braid_core import (
    BraidWord,
    Permutation,
    artin_generators,
    compose_all,
    conjugate,
    pairs,
    permutation_of,
    power,
    pure_generator,
    make_pure,
    random_word,
)
from .burau_rep import burau_int, burau_mod, is_congruence_member
from .group_closure import (
    DEFAULT_CAP,
    close,
    complement_search,
    find_isomorphism,
    structure_invariants,
)
from .pure_abelianization import ExponentVector, phi_mod2
from .symplectic_form import (
    check_invariance,
    form_equations,
    invariant_forms,
    is_alternating_nondegenerate,
    symplectic_witness,
)

DEFAULT_SAMPLES = 500
DEFAULT_LENGTH = 40
DEFAULT_SEED = 0


class PreconditionError(ValueError):
    pass


@dataclass
class Check:
    name: str
    expected: Any
    observed: Any
    passed: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    command: str
    parameters: dict[str, Any]
    checks: list[Check] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)
    runtime: float = 0.0
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, expected: Any, compute: Callable[[], Any]) -> Check:
        try:
            observed = compute()
            ok = observed == expected
        except Exception as exc:  # recorded, never propagated
            observed = f"error: {type(exc).__name__}: {exc}"
            ok = False
        c = Check(name, expected, observed, ok)
        self.checks.append(c)
        return c

    def to_json(self, timing: bool = True) -> dict[str, Any]:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "checks": [c.to_json() for c in self.checks],
            "stats": self.stats,
            "pass": self.passed,
            "runtime_seconds": round(self.runtime, 6) if timing else None,
            "version": self.version,
        }


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self) -> VerificationReport:
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc) -> None:
        self.report.runtime = time.perf_counter() - self.t0


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def _require_odd(ell: int, minimum: int = 1) -> None:
    _require(ell % 2 == 1, "theorem requires odd ℓ")
    _require(ell >= minimum, f"ℓ must be >= {minimum}")


def _images(words: list[BraidWord], m: int):
    return [burau_mod(w, m) for w in words]


def _pure_generators(n: int) -> list[BraidWord]:
    return [pure_generator(n, i, j) for i, j in pairs(n)]


def kill_phi(w: BraidWord) -> BraidWord:
    """Multiply a pure word by A_{i,j}^{-1} wherever its mod-2 linking vector is 1."""
    v = phi_mod2(w)
    fix = [
        power(pure_generator(w.strands, i, j), -1)
        for i, j in pairs(w.strands)
        if v[(i, j)]
    ]
    return compose_all(w.strands, [w, *fix])


def _closure_kw(cache_dir: str | Path | None, cap: int) -> dict[str, Any]:
    return {"cache_dir": cache_dir, "cap": cap}


def verify_arnold(
    n: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    length: int = DEFAULT_LENGTH,
    cache_dir: str | Path | None = None,
    cap: int = DEFAULT_CAP,
) -> VerificationReport:
    _require(3 <= n <= 6, "arnold requires 3 <= n <= 6")
    report = VerificationReport(
        "arnold", {"n": n, "samples": samples, "seed": seed, "length": length}
    )
    with _Timer(report):
        rng = random.Random(seed)
        sigmas = artin_generators(n)
        report.check(
            "order of B_n mod 2 equals n!",
            math.factorial(n),
            lambda: close(_images(sigmas, 2), **_closure_kw(cache_dir, cap)).order,
        )

        pure_count = 0

        def biconditional() -> int:
            nonlocal pure_count
            bad = 0
            for s in range(samples):
                if s % 2 == 0:
                    w = random_word(n, length, sigmas, rng)
                else:
                    w = random_word(n, length, _pure_generators(n), rng)
                pure = permutation_of(w).is_identity()
                pure_count += pure
                if pure != burau_mod(w, 2).is_identity():
                    bad += 1
            return bad

        report.check("pure <=> identity mod 2 on sampled words (violations)", 0, biconditional)
        report.stats = {"sampled_pure": pure_count, "sampled_total": samples}
    return report


def verify_symquot(
    n: int,
    ell: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    length: int = DEFAULT_LENGTH,
    cache_dir: str | Path | None = None,
    cap: int = DEFAULT_CAP,
) -> VerificationReport:
    _require_odd(ell)
    _require(3 <= n <= 5, "symquot requires 3 <= n <= 5")
    if ell == 1:
        report = verify_arnold(n, samples, seed, length, cache_dir, cap)
        report.command = "symquot"
        report.parameters["ell"] = 1
        return report
    report = VerificationReport(
        "symquot", {"n": n, "ell": ell, "samples": samples, "seed": seed, "length": length}
    )
    with _Timer(report):
        rng = random.Random(seed)
        powers = [power(s, ell) for s in artin_generators(n)]
        report.check(
            "sigma_i^ℓ in B_n[ℓ] (failing i)",
            [],
            lambda: [i for i, p in enumerate(powers, 1) if not is_congruence_member(p, ell)],
        )
        report.check(
            "tau(sigma_i^ℓ) = (i, i+1) (failing i)",
            [],
            lambda: [
                i
                for i, p in enumerate(powers, 1)
                if permutation_of(p) != Permutation.transposition(n, i, i + 1)
            ],
        )
        report.check(
            "order of <sigma_i^ℓ> mod 2ℓ equals n!",
            math.factorial(n),
            lambda: close(_images(powers, 2 * ell), **_closure_kw(cache_dir, cap)).order,
        )

        def sampled() -> int:
            bad = 0
            for _ in range(samples):
                w = make_pure(random_word(n, length, powers, rng), ell)
                if not permutation_of(w).is_identity():
                    raise AssertionError("sampler produced a non-pure word")
                if not burau_mod(w, 2 * ell).is_identity():
                    bad += 1
            return bad

        report.check(
            "trivial-permutation words over sigma_i^{±ℓ} are identity mod 2ℓ (violations)",
            0,
            sampled,
        )
    return report


def verify_abquot(
    n: int,
    ell: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    length: int = DEFAULT_LENGTH,
    cache_dir: str | Path | None = None,
    cap: int = DEFAULT_CAP,
) -> VerificationReport:
    _require_odd(ell)
    _require(3 <= n <= 5, "abquot requires 3 <= n <= 5")
    report = VerificationReport(
        "abquot", {"n": n, "ell": ell, "samples": samples, "seed": seed, "length": length}
    )
    with _Timer(report):
        rng = random.Random(seed)
        prs = pairs(n)
        apowers = [power(pure_generator(n, i, j), ell) for i, j in prs]
        report.check(
            "A_ij^ℓ in B_n[2ℓ] (failing pairs)",
            [],
            lambda: [list(p) for p, a in zip(prs, apowers) if not is_congruence_member(a, 2 * ell)],
        )
        report.check(
            "phi(A_ij^ℓ) = e_ij (failing pairs)",
            [],
            lambda: [
                list(p)
                for p, a in zip(prs, apowers)
                if phi_mod2(a) != ExponentVector.basis(n, *p).mod2()
            ],
        )
        inv: dict[str, Any] = {}

        def invariants():
            if "s" not in inv:
                G = close(_images(apowers, 4 * ell), **_closure_kw(cache_dir, cap))
                inv["s"] = structure_invariants(G)
            return inv["s"]

        c2 = n * (n - 1) // 2
        report.check("order of <A_ij^ℓ> mod 4ℓ equals 2^C(n,2)", 2**c2, lambda: invariants().order)
        report.check("<A_ij^ℓ> mod 4ℓ is abelian", True, lambda: invariants().abelian)
        report.check("<A_ij^ℓ> mod 4ℓ has exponent 2", 2, lambda: invariants().exponent)

        sigmas = artin_generators(n)

        def sampled() -> int:
            bad = 0
            for _ in range(samples):
                w = kill_phi(make_pure(random_word(n, length, sigmas, rng)))
                if not phi_mod2(w).is_zero():
                    raise AssertionError("sampler produced a word with phi != 0")
                if not burau_mod(w, 4).is_identity():
                    bad += 1
            return bad

        report.check("phi-trivial pure words are identity mod 4 (violations)", 0, sampled)
    return report


def verify_fivelem(
    n: int,
    ell: int,
    cache_dir: str | Path | None = None,
    cap: int = DEFAULT_CAP,
) -> VerificationReport:
    _require_odd(ell, minimum=3)
    _require(3 <= n <= 4, "fivelem requires 3 <= n <= 4")
    report = VerificationReport("fivelem", {"n": n, "ell": ell})
    with _Timer(report):
        sigmas = artin_generators(n)
        level_gens = [power(s, ell) for s in sigmas] + [
            power(a, ell) for a in _pure_generators(n)
        ]
        kw = _closure_kw(cache_dir, cap)
        groups: dict[str, Any] = {}

        def g1():
            if "g1" not in groups:
                groups["g1"] = close(_images(sigmas, 4), **kw)
            return groups["g1"]

        def g2():
            if "g2" not in groups:
                groups["g2"] = close(_images(level_gens, 4 * ell), **kw)
            return groups["g2"]

        expected = math.factorial(n) * 2 ** (n * (n - 1) // 2)
        report.check("order of B_n mod 4 equals n!·2^C(n,2)", expected, lambda: g1().order)
        report.check(
            "order of <sigma_i^ℓ, A_ij^ℓ> mod 4ℓ equals n!·2^C(n,2)",
            expected,
            lambda: g2().order,
        )
        fp: dict[str, Any] = {}

        def fingerprints():
            if not fp:
                fp["g1"] = structure_invariants(g1()).to_json()
                fp["g2"] = structure_invariants(g2()).to_json()
            return fp

        report.check(
            "structure invariants agree",
            "equal",
            lambda: "equal" if fingerprints()["g1"] == fingerprints()["g2"] else "different",
        )
        if fp:
            report.stats = {"invariants_mod4": fp["g1"], "invariants_mod4ℓ": fp["g2"]}
        if n == 3:
            report.check(
                "explicit isomorphism found (|G| <= 100)",
                True,
                lambda: find_isomorphism(g1(), g2()) is not None,
            )
    return report


def verify_nonsplit(
    n: int = 3, cache_dir: str | Path | None = None, cap: int = DEFAULT_CAP
) -> VerificationReport:
    _require(n == 3, "probe not exhaustive for n != 3")
    report = VerificationReport("nonsplit", {"n": n})
    with _Timer(report):
        kw = _closure_kw(cache_dir, cap)
        groups: dict[str, Any] = {}

        def group(name: str):
            if name not in groups:
                words = artin_generators(n) if name == "G" else _pure_generators(n)
                groups[name] = close(_images(words, 4), **kw)
            return groups[name]

        report.check("|G| (image of B_3 mod 4)", 48, lambda: group("G").order)
        report.check("|K| (image of PB_3 mod 4)", 8, lambda: group("K").order)
        report.check(
            "order-6 complement of K in G",
            "none",
            lambda: "none" if complement_search(group("G"), group("K"), 6) is None else "found",
        )
        trivial = close([], modulus=4, dim=n - 1)
        report.check(
            "control: complement of trivial subgroup is G",
            "found",
            lambda: "found"
            if complement_search(group("G"), trivial, group("G").order) is not None
            else "none",
        )
    return report


def verify_crt(
    n: int,
    a: int,
    b: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    length: int = DEFAULT_LENGTH,
) -> VerificationReport:
    _require(a >= 2 and b >= 2, "crt requires a, b >= 2")
    _require(n >= 2, "need n >= 2")
    L = math.lcm(a, b)
    report = VerificationReport(
        "crt",
        {"n": n, "a": a, "b": b, "lcm": L, "samples": samples, "seed": seed, "length": length},
    )
    with _Timer(report):
        rng = random.Random(seed)
        sigmas = artin_generators(n)
        counts = {"random": 0, "constructed": 0, "members_lcm": 0, "members_a_only": 0,
                  "members_b_only": 0}

        def biconditional(w: BraidWord) -> bool:
            in_a = is_congruence_member(w, a)
            in_b = is_congruence_member(w, b)
            in_l = is_congruence_member(w, L)
            counts["members_lcm"] += in_l
            counts["members_a_only"] += in_a and not in_b
            counts["members_b_only"] += in_b and not in_a
            return (in_a and in_b) == in_l

        def constructed(e: int) -> BraidWord:
            factors = []
            for _ in range(3):
                s = BraidWord(n, (rng.randrange(1, n),))
                u = random_word(n, length // 4, sigmas, rng)
                factors.append(conjugate(power(s, e * rng.choice((1, -1))), u))
            return compose_all(n, factors)

        report.check(
            "sigma_1^lcm in B_n[a], B_n[b], B_n[lcm]",
            [True, True, True],
            lambda: [is_congruence_member(power(sigmas[0], L), lv) for lv in (a, b, L)],
        )

        def run() -> int:
            bad = 0
            for _ in range(samples):
                counts["random"] += 1
                bad += not biconditional(random_word(n, length, sigmas, rng))
            exps = (L, a, b)
            for s in range(samples):
                counts["constructed"] += 1
                bad += not biconditional(constructed(exps[s % 3]))
            return bad

        report.check("membership in a and b <=> membership in lcm (violations)", 0, run)
        report.stats = counts
    return report


def verify_symplectic(
    n: int, samples: int = 100, seed: int = DEFAULT_SEED, length: int = DEFAULT_LENGTH
) -> VerificationReport:
    _require(n % 2 == 1, "b=2 case out of scope")
    _require(3 <= n <= 9, "symplectic requires 3 <= n <= 9")
    report = VerificationReport(
        "symplectic", {"n": n, "samples": samples, "seed": seed, "length": length}
    )
    with _Timer(report):
        rng = random.Random(seed)
        space = invariant_forms(n)
        J = symplectic_witness(space)
        report.stats = {
            "solution_space_dim": space.rank,
            "form": J.to_json() if J is not None else None,
        }
        report.check(
            "nondegenerate alternating invariant form exists",
            True,
            lambda: J is not None and is_alternating_nondegenerate(J),
        )
        gens = [burau_int(s) for s in artin_generators(n)]

        def residual() -> int:
            eqs = form_equations(gens)
            nonzero = 0
            for B in space.basis:
                flat = [x for r in B.rows for x in r]
                nonzero += sum(1 for row in eqs if sum(c * x for c, x in zip(row, flat)))
            return nonzero

        report.check("basis re-substitution residual (nonzero equations)", 0, residual)
        words = [random_word(n, length, artin_generators(n), rng) for _ in range(samples)]
        report.check(
            "form invariant on sampled words (violations)",
            0,
            lambda: len(check_invariance(J, words)),
        )
    return report


def burau_matrix(word: str, n: int, mod: int | None = None) -> dict[str, Any]:
    w = BraidWord.parse(n, word)
    M = burau_int(w) if mod is None else burau_mod(w, mod)
    return {"word": str(w), "n": n, "matrix": M.to_json()}
