"""Check catalog, sweep configuration, and report assembly.

Each check id names one exact verification sweep.  A sweep enumerates a
deterministic list of cases, evaluates every case (optionally across a
process pool), and collects the failing ones into a Report whose JSON
form is byte-stable across runs and across parallelism degrees; only the
elapsed_ms field varies.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, partial
from typing import Callable, Iterable

from .apoly import APoly
from .jetlie import GL2Module, LElem, lelem_from_smash, lelem_to_smash, lift_gl2, theta, theta_inv
from .jetmod import Variant, WeightDMod, eval_jet_axiom_case, jet_axiom_cases
from .matrices import mat_is_zero, mat_mul, mat_render, mat_sub
from .phirho import DLElem, TruncationEscape, phi, rho
from .smash import SmashElem, xk
from .vfields import NotInSubalgebra, VField
from .weyl import DOp

CATALOG = (
    "weyl-assoc",
    "g-jacobi",
    "lemma-3.1",
    "lemma-3.2",
    "lemma-3.3",
    "lemma-3.4",
    "gl2-lift",
    "thm-2.3-hom",
    "lemma-4.2-roundtrip",
    "jet-axioms",
    "negative-control",
)

VARIANTS = ("poly", "laurent", "quotient")
REPS = ("natural", "adjoint", "sym2")


class UnknownCheck(ValueError):
    """Check id outside the closed catalog."""


class InvalidConfig(ValueError):
    """Rejected sweep configuration."""


@dataclass(frozen=True)
class CheckConfig:
    """Grid and module parameters for one sweep.

    jobs controls execution only and is deliberately not echoed into
    reports, so reports stay byte-identical across parallelism degrees.
    """

    m1: tuple[int, int] = (-3, 3)
    m2: tuple[int, int] = (0, 3)
    s1: tuple[int, int] = (-3, 3)
    s2: tuple[int, int] = (0, 3)
    a1: Fraction = Fraction(1, 2)
    a2: Fraction = Fraction(0)
    variant: str = "poly"
    rep: str = "natural"
    samples: int = 500
    jobs: int = 1

    def validate(self) -> None:
        for name in ("m1", "m2", "s1", "s2"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise InvalidConfig(f"empty {name} range {lo}..{hi}")
        for name in ("m2", "s2"):
            if getattr(self, name)[0] < 0:
                raise InvalidConfig(f"{name} range must be nonnegative")
        if self.variant not in VARIANTS:
            raise InvalidConfig(f"unknown variant {self.variant!r}")
        if self.rep not in REPS:
            raise InvalidConfig(f"unknown rep {self.rep!r}")
        if self.variant != "laurent" and Fraction(self.a2).denominator != 1:
            raise InvalidConfig(f"variant {self.variant!r} needs integer a2, got {self.a2}")
        if self.samples < 1:
            raise InvalidConfig("samples must be positive")
        if self.jobs < 1:
            raise InvalidConfig("jobs must be positive")

    def m1_range(self) -> range:
        return range(self.m1[0], self.m1[1] + 1)

    def m2_range(self) -> range:
        return range(self.m2[0], self.m2[1] + 1)

    def s1_range(self) -> range:
        return range(self.s1[0], self.s1[1] + 1)

    def s2_range(self) -> range:
        return range(self.s2[0], self.s2[1] + 1)

    def echo(self) -> dict:
        return {
            "m1": list(self.m1),
            "m2": list(self.m2),
            "s1": list(self.s1),
            "s2": list(self.s2),
            "a1": str(Fraction(self.a1)),
            "a2": str(Fraction(self.a2)),
            "variant": self.variant,
            "rep": self.rep,
            "samples": self.samples,
        }


@dataclass
class Report:
    """Outcome of one sweep; passes iff the failure list is empty."""

    check: str
    config: dict
    cases: int
    failures: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "config": self.config,
            "cases": self.cases,
            "failures": self.failures,
            "elapsed_ms": self.elapsed_ms,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self, max_failures: int = 20) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.check}: {status} ({self.cases} cases, {len(self.failures)} failures, {self.elapsed_ms} ms)"]
        for f in self.failures[:max_failures]:
            lines.append(f"  {f['key']}")
            lines.append(f"    expected: {f['expected']}")
            lines.append(f"    actual:   {f['actual']}")
        if len(self.failures) > max_failures:
            lines.append(f"  ... and {len(self.failures) - max_failures} more")
        return "\n".join(lines)


CaseResult = tuple[str, bool, str, str]


def run_check(check_id: str, cfg: CheckConfig | None = None) -> Report:
    """Execute one catalog sweep and assemble its report."""
    if check_id not in CATALOG:
        raise UnknownCheck(f"unknown check {check_id!r}; catalog: {', '.join(CATALOG)}")
    cfg = cfg if cfg is not None else CheckConfig()
    cfg.validate()
    cases = _CASE_BUILDERS[check_id](cfg)
    start = time.monotonic()
    evaluate = partial(_eval_case, check_id, cfg)
    if cfg.jobs > 1 and len(cases) > 1:
        chunk = max(1, len(cases) // (cfg.jobs * 8))
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(evaluate, cases, chunksize=chunk))
    else:
        results = [evaluate(c) for c in cases]
    elapsed = int((time.monotonic() - start) * 1000)
    failures = [
        {"key": key, "expected": expected, "actual": actual}
        for key, ok, expected, actual in results
        if not ok
    ]
    return Report(check_id, cfg.echo(), len(cases), failures, elapsed)


def run_catalog(cfg: CheckConfig | None = None) -> list[Report]:
    """Run every check in catalog order with the same base configuration."""
    return [run_check(check_id, cfg) for check_id in CATALOG]


def reports_to_json(reports: Iterable[Report]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# Case enumeration and evaluation per check id
# ---------------------------------------------------------------------------


def _gen_keys(cfg: CheckConfig, which: str = "m") -> list[tuple[int, tuple[int, int]]]:
    r1 = cfg.m1_range() if which == "m" else cfg.s1_range()
    r2 = cfg.m2_range() if which == "m" else cfg.s2_range()
    return [(k, (x1, x2)) for k in (1, 2) for x1 in r1 for x2 in r2]


def _l_keys(cfg: CheckConfig, which: str = "m") -> list[tuple[int, tuple[int, int]]]:
    return [(k, m) for (k, m) in _gen_keys(cfg, which) if m != (0, 0)]


def _smash_generator(k: int, m: tuple[int, int]) -> SmashElem:
    """The smash generator 1 . t^(m + [k=1]e1) d_k."""
    return SmashElem.cover_term((0, 0), (m[0] + (1 if k == 1 else 0), m[1]), k)


def _rng(check_id: str, index) -> random.Random:
    return random.Random(f"jetalg:{check_id}:{index}")


def _random_dop(rng: random.Random) -> DOp:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        key = (rng.randint(-3, 3), rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3))
        terms[key] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
    return DOp(terms)


def _random_apoly(rng: random.Random) -> APoly:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        terms[(rng.randint(-3, 3), rng.randint(0, 3))] = Fraction(
            rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)
        )
    return APoly(terms)


def _random_smash(rng: random.Random) -> SmashElem:
    cover = {}
    for _ in range(rng.randint(1, 3)):
        key = (
            (rng.randint(-2, 2), rng.randint(0, 2)),
            (rng.randint(-2, 2), rng.randint(0, 2)),
            rng.randint(1, 2),
        )
        cover[key] = Fraction(rng.choice([-2, -1, 1, 2]), rng.randint(1, 2))
    return SmashElem(cover, _random_apoly(rng) if rng.random() < 0.5 else None)


# -- weyl-assoc --------------------------------------------------------------


def _cases_weyl_assoc(cfg: CheckConfig) -> list:
    return [("assoc", i) for i in range(cfg.samples)] + [("faith", i) for i in range(cfg.samples)]


def _eval_weyl_assoc(cfg: CheckConfig, case) -> CaseResult:
    kind, i = case
    rng = _rng("weyl-assoc", f"{kind}:{i}")
    x, y = _random_dop(rng), _random_dop(rng)
    if kind == "assoc":
        z = _random_dop(rng)
        lhs = (x * y) * z
        rhs = x * (y * z)
        return (f"assoc #{i}", lhs == rhs, rhs.render(), lhs.render())
    p = _random_apoly(rng)
    lhs = (x * y).apply(p)
    rhs = x.apply(y.apply(p))
    return (f"faith #{i}", lhs == rhs, rhs.render(), lhs.render())


# -- g-jacobi ----------------------------------------------------------------


def _cases_g_jacobi(cfg: CheckConfig) -> list:
    return [("jacobi", i) for i in range(cfg.samples)]


def _eval_g_jacobi(cfg: CheckConfig, case) -> CaseResult:
    _, i = case
    rng = _rng("g-jacobi", i)
    keys = _gen_keys(cfg, "m")
    x, y, z = (
        VField.basis(k, (m[0] + (1 if k == 1 else 0), m[1]))
        for k, m in (rng.choice(keys) for _ in range(3))
    )
    total = x.bracket(y).bracket(z) + y.bracket(z).bracket(x) + z.bracket(x).bracket(y)
    return (f"jacobi #{i} [{x}; {y}; {z}]", total.is_zero(), "0", total.render())


# -- lemma-3.1 ---------------------------------------------------------------


def _cases_lemma_31(cfg: CheckConfig) -> list:
    cases = []
    for (k, m) in _gen_keys(cfg, "m"):
        for target in ("t1", "t2", "t1d1", "d2"):
            cases.append((k, m, target))
    return cases


def _eval_lemma_31(cfg: CheckConfig, case) -> CaseResult:
    k, m, target = case
    x = xk(k, m)
    other = {
        "t1": SmashElem.embed_a(APoly.mono(1, 0)),
        "t2": SmashElem.embed_a(APoly.mono(0, 1)),
        "t1d1": SmashElem.embed_g(VField.basis(1, (1, 0))),
        "d2": SmashElem.embed_g(VField.basis(2, (0, 0))),
    }[target]
    got = x.bracket(other)
    return (f"[X{k}({m[0]},{m[1]}), {target}]", got.is_zero(), "0", got.render())


# -- lemma-3.2 ---------------------------------------------------------------


def _cases_lemma_32(cfg: CheckConfig) -> list:
    cases = []
    for family in ((1, 1), (2, 2), (1, 2)):
        for m1 in cfg.m1_range():
            for m2 in cfg.m2_range():
                for s1 in cfg.s1_range():
                    for s2 in cfg.s2_range():
                        cases.append((family, (m1, m2), (s1, s2)))
    return cases


def _eval_lemma_32(cfg: CheckConfig, case) -> CaseResult:
    (k, l), m, s = case
    key = f"[X{k}({m[0]},{m[1]}), X{l}({s[0]},{s[1]})]"
    x = LElem({(k, m): 1})
    y = LElem({(l, s): 1})
    abstract = x.bracket(y)
    smash_lhs = xk(k, m).bracket(xk(l, s))
    ok1 = lelem_to_smash(abstract) == smash_lhs
    g_lhs = theta(x).bracket(theta(y))
    ok2 = theta(abstract) == g_lhs
    try:
        ok3 = lelem_from_smash(smash_lhs) == theta_inv(g_lhs)
    except ValueError:
        ok3 = False
    ok = ok1 and ok2 and ok3
    detail = f"smash={'ok' if ok1 else 'MISMATCH'} theta={'ok' if ok2 else 'MISMATCH'} cross={'ok' if ok3 else 'MISMATCH'}"
    return (key, ok, abstract.render(), detail if not ok else abstract.render())


# -- lemma-3.3 ---------------------------------------------------------------


def _cases_lemma_33(cfg: CheckConfig) -> list:
    mkeys = _l_keys(cfg, "m")
    skeys = _l_keys(cfg, "s")
    cases = [("hom", km, ls) for km in mkeys for ls in skeys]
    cases.extend(("roundtrip", km, None) for km in mkeys)
    return cases


def _eval_lemma_33(cfg: CheckConfig, case) -> CaseResult:
    kind, (k, m), rest = case
    x = LElem.basis(k, m)
    if kind == "roundtrip":
        got = theta_inv(theta(x))
        return (f"theta_inv(theta(X{k}({m[0]},{m[1]})))", got == x, x.render(), got.render())
    l, s = rest
    y = LElem.basis(l, s)
    lhs = theta(x.bracket(y))
    rhs = theta(x).bracket(theta(y))
    key = f"theta[X{k}({m[0]},{m[1]}), X{l}({s[0]},{s[1]})]"
    return (key, lhs == rhs, rhs.render(), lhs.render())


# -- lemma-3.4 ---------------------------------------------------------------


@lru_cache(maxsize=8)
def _m10_generators(cfg: CheckConfig) -> tuple[tuple[str, VField], ...]:
    t1m1 = APoly.mono(1, 0) - APoly.one()
    t2 = APoly.mono(0, 1)
    gens = []
    for m1 in cfg.m1_range():
        for m2 in cfg.m2_range():
            mono = APoly.mono(m1, m2)
            for k in (1, 2):
                for label, f in ((f"(t1-1)*t1^{m1}*t2^{m2}*d{k}", t1m1 * mono), (f"t2*t1^{m1}*t2^{m2}*d{k}", t2 * mono)):
                    gens.append((label, VField(f, None) if k == 1 else VField(None, f)))
    return tuple(gens)


@lru_cache(maxsize=8)
def _kernel_samples(cfg: CheckConfig) -> tuple[tuple[str, VField], ...]:
    t1m1 = APoly.mono(1, 0) - APoly.one()
    t2 = APoly.mono(0, 1)
    quads = (("(t1-1)^2", t1m1 * t1m1), ("(t1-1)*t2", t1m1 * t2), ("t2^2", t2 * t2))
    out = []
    for m1 in cfg.m1_range():
        for m2 in cfg.m2_range():
            mono = APoly.mono(m1, m2)
            for k in (1, 2):
                for label, f in quads:
                    g = f * mono
                    out.append((f"{label}*t1^{m1}*t2^{m2}*d{k}", VField(g, None) if k == 1 else VField(None, g)))
    return tuple(out)


def _cases_lemma_34(cfg: CheckConfig) -> list:
    n = len(_m10_generators(cfg))
    cases = [("hom", i, j) for i in range(n) for j in range(n) if i <= j]
    cases.extend(("kernel", i, None) for i in range(len(_kernel_samples(cfg))))
    return cases


def _eval_lemma_34(cfg: CheckConfig, case) -> CaseResult:
    kind, i, j = case
    if kind == "kernel":
        label, x = _kernel_samples(cfg)[i]
        got = x.pi_project()
        return (f"pi({label})", mat_is_zero(got), "[[0, 0], [0, 0]]", mat_render(got))
    gens = _m10_generators(cfg)
    xlabel, x = gens[i]
    ylabel, y = gens[j]
    key = f"pi[{xlabel}, {ylabel}]"
    try:
        lhs = x.bracket(y).pi_project()
    except NotInSubalgebra as exc:
        return (key, False, "a gl2 element", f"NotInSubalgebra: {exc}")
    rhs = mat_sub(  # matrix commutator of the projections
        mat_mul(x.pi_project(), y.pi_project()), mat_mul(y.pi_project(), x.pi_project())
    )
    return (key, lhs == rhs, mat_render(rhs), mat_render(lhs))


# -- gl2-lift ----------------------------------------------------------------


def _cases_gl2_lift(cfg: CheckConfig) -> list:
    mkeys = _l_keys(cfg, "m")
    skeys = _l_keys(cfg, "s")
    return [(rep, km, ls) for rep in REPS for km in mkeys for ls in skeys]


def _eval_gl2_lift(cfg: CheckConfig, case) -> CaseResult:
    rep, (k, m), (l, s) = case
    module = GL2Module.by_name(rep)
    x = LElem.basis(k, m)
    y = LElem.basis(l, s)
    lhs = lift_gl2(x.bracket(y), module)
    a = lift_gl2(x, module)
    b = lift_gl2(y, module)
    rhs = mat_sub(mat_mul(a, b), mat_mul(b, a))
    key = f"{rep} lift[X{k}({m[0]},{m[1]}), X{l}({s[0]},{s[1]})]"
    return (key, lhs == rhs, mat_render(rhs), mat_render(lhs))


# -- thm-2.3-hom -------------------------------------------------------------


def _cases_thm_23(cfg: CheckConfig) -> list:
    mkeys = _gen_keys(cfg, "m")
    skeys = _gen_keys(cfg, "s")
    cases = [("gg", km, ls) for km in mkeys for ls in skeys]
    for km in mkeys:
        for s1 in cfg.s1_range():
            for s2 in cfg.s2_range():
                cases.append(("ga", km, (s1, s2)))
    cases.extend(("purity", km, None) for km in mkeys)
    return cases


def _eval_thm_23(cfg: CheckConfig, case) -> CaseResult:
    kind, (k, m), rest = case
    x = _smash_generator(k, m)
    if kind == "purity":
        img = phi(x)
        ok = all(q.is_multiplication() for q in img.part1.values())
        key = f"phi-part1-multiplicative X{k}-gen m=({m[0]},{m[1]})"
        return (key, ok, "multiplication operators only", img.render())
    if kind == "gg":
        l, s = rest
        y = _smash_generator(l, s)
        key = f"phi[gen({k},{m[0]},{m[1]}), gen({l},{s[0]},{s[1]})]"
    else:
        s = rest
        y = SmashElem.embed_a(APoly.mono(*s))
        key = f"phi[gen({k},{m[0]},{m[1]}), t^({s[0]},{s[1]}).1]"
    lhs = phi(x.bracket(y))
    try:
        rhs = phi(x).bracket(phi(y))
    except TruncationEscape as exc:
        return (key, False, lhs.render(), f"TruncationEscape: {exc}")
    return (key, lhs == rhs, lhs.render(), rhs.render())


# -- lemma-4.2-roundtrip -----------------------------------------------------


def _cases_lemma_42(cfg: CheckConfig) -> list:
    cases = []
    for km in _gen_keys(cfg, "m"):
        cases.append(("rho_phi_gen", km))
    for i in range(min(cfg.samples, 50)):
        cases.append(("rho_phi_rand", i))
    for name in ("t1", "t2", "d1", "d2"):
        cases.append(("phi_rho_d", name))
    for m1 in cfg.m1_range():
        for m2 in cfg.m2_range():
            cases.append(("phi_rho_tm", (m1, m2)))
    for km in _l_keys(cfg, "m"):
        cases.append(("phi_rho_x", km))
    return cases


def _eval_lemma_42(cfg: CheckConfig, case) -> CaseResult:
    kind, data = case
    if kind == "rho_phi_gen":
        k, m = data
        x = _smash_generator(k, m)
        got = rho(phi(x))
        return (f"rho(phi(gen({k},{m[0]},{m[1]})))", got == x, x.render(), got.render())
    if kind == "rho_phi_rand":
        x = _random_smash(_rng("lemma-4.2", data))
        got = rho(phi(x))
        return (f"rho(phi(random #{data}))", got == x, x.render(), got.render())
    if kind == "phi_rho_d":
        d = {
            "t1": DOp.mono(1, 0, 0, 0),
            "t2": DOp.mono(0, 1, 0, 0),
            "d1": DOp.mono(0, 0, 1, 0),
            "d2": DOp.mono(0, 0, 0, 1),
        }[data]
        x = DLElem.from_dop(d)
        got = phi(rho(x))
        return (f"phi(rho({data} (x) 1))", got == x, x.render(), got.render())
    if kind == "phi_rho_tm":
        m1, m2 = data
        x = DLElem.from_dop(DOp.mono(m1, m2, 0, 0))
        got = phi(rho(x))
        return (f"phi(rho(t^({m1},{m2}) (x) 1))", got == x, x.render(), got.render())
    k, m = data
    x = DLElem.tensor(DOp.one(), (k, m))
    got = phi(rho(x))
    return (f"phi(rho(1 (x) X{k}({m[0]},{m[1]})))", got == x, x.render(), got.render())


# -- jet-axioms and negative-control ----------------------------------------


def _jet_mod(cfg: CheckConfig) -> WeightDMod:
    return WeightDMod(Fraction(cfg.a1), Fraction(cfg.a2), Variant(cfg.variant))


def _cases_jet_axioms(cfg: CheckConfig) -> list:
    return jet_axiom_cases(
        cfg.m1_range(), cfg.m2_range(), cfg.s1_range(), cfg.s2_range(), _jet_mod(cfg), GL2Module.by_name(cfg.rep)
    )


def _eval_jet_axioms(cfg: CheckConfig, case) -> CaseResult:
    return eval_jet_axiom_case(_jet_mod(cfg), GL2Module.by_name(cfg.rep), case)


def _cases_negative_control(cfg: CheckConfig) -> list:
    return jet_axiom_cases(
        cfg.m1_range(),
        cfg.m2_range(),
        cfg.s1_range(),
        cfg.s2_range(),
        _jet_mod(cfg),
        GL2Module.by_name(cfg.rep).corrupted(),
    )


def _eval_negative_control(cfg: CheckConfig, case) -> CaseResult:
    return eval_jet_axiom_case(_jet_mod(cfg), GL2Module.by_name(cfg.rep).corrupted(), case)


_CASE_BUILDERS: dict[str, Callable[[CheckConfig], list]] = {
    "weyl-assoc": _cases_weyl_assoc,
    "g-jacobi": _cases_g_jacobi,
    "lemma-3.1": _cases_lemma_31,
    "lemma-3.2": _cases_lemma_32,
    "lemma-3.3": _cases_lemma_33,
    "lemma-3.4": _cases_lemma_34,
    "gl2-lift": _cases_gl2_lift,
    "thm-2.3-hom": _cases_thm_23,
    "lemma-4.2-roundtrip": _cases_lemma_42,
    "jet-axioms": _cases_jet_axioms,
    "negative-control": _cases_negative_control,
}

_CASE_EVALUATORS: dict[str, Callable[[CheckConfig, tuple], CaseResult]] = {
    "weyl-assoc": _eval_weyl_assoc,
    "g-jacobi": _eval_g_jacobi,
    "lemma-3.1": _eval_lemma_31,
    "lemma-3.2": _eval_lemma_32,
    "lemma-3.3": _eval_lemma_33,
    "lemma-3.4": _eval_lemma_34,
    "gl2-lift": _eval_gl2_lift,
    "thm-2.3-hom": _eval_thm_23,
    "lemma-4.2-roundtrip": _eval_lemma_42,
    "jet-axioms": _eval_jet_axioms,
    "negative-control": _eval_negative_control,
}


def _eval_case(check_id: str, cfg: CheckConfig, case) -> CaseResult:
    return _CASE_EVALUATORS[check_id](cfg, case)
