"""Suite catalog, scenario configs, and deterministic scheduling.

The batch front-end resolves a scenario into an ordered list of suite
invocations.  Invocation i of suite `name` gets its own seed from the
master seed by a counter scheme: the first eight bytes, big endian, of
sha256("{master}:{name}:{i}"), where i is the position in the resolved
run order.  Workers may execute invocations in any order; reports are
collected single-threaded in resolved order, so structured output
depends only on the config and the master seed, never on the worker
count.

Configs are flat "key = value" text with '#' comments; list-valued
keys repeat (suite, kappa, curvature_diag, phi_cos).  Every numeric
value is an exact rational in text form, "3/4".
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

from hkcalc.bundle import (
    ExpWeight, standard_weights, verify_bundle_laplacians,
    verify_bundle_tables, verify_chern_connection, verify_curvature_dual,
    verify_twisted_curvature,
)
from hkcalc.calculus import verify_hodge_identities, verify_twisted_table
from hkcalc.curvature_algebra import (
    CurvatureTensor, verify_inner_expansion, verify_lemma42, verify_prop44,
    verify_prop45,
)
from hkcalc.exterior import verify_algebra
from hkcalc.positivity import (
    Certificate, MetricJet, vanishing_certificate, verify_fiber_positivity,
    verify_jet_normalization, verify_rescale, verify_vanishing,
)
from hkcalc.report import Report
from hkcalc.scalars import FourierPoly, Jet, Scalar

_ARENAS = ("scalar", "jet", "fourier")
_METRICS = ("identity", "exp-weight", "jet-matrix")
_FORMATS = ("text", "records")


class ConfigError(ValueError):
    """Malformed scenario config or metric-jet file."""


@dataclass(frozen=True)
class ScenarioConfig:
    """One batch scenario; field defaults give the desk profile.

    An empty `suites` tuple selects the desk profile: every suite on
    its own grid (n in {1,2}, r in {1,2} where the knob exists).
    Explicitly requested suites run at the configured (n, rank) point
    and must be compatible with the declared arena and metric family.
    """

    n: int = 1
    rank: int = 1
    arena: str = "scalar"
    jet_order: int = 3
    fourier_degree: int = 1
    metric: str = "identity"
    phi_cos: tuple = ()
    suites: tuple = ()
    trials: int = 4
    seed: int = 0
    k: int = 0
    kappa_schedule: tuple = ()
    curvature_diag: tuple = ()
    p_range: Optional[tuple] = None
    q_range: Optional[tuple] = None
    inject_sign_error: bool = False
    time_budget: Fraction = Fraction(300)
    output: Optional[str] = None
    format: str = "text"
    threads: Optional[int] = None

    @property
    def desk(self) -> bool:
        return not self.suites

    def n_grid(self) -> tuple:
        return (1, 2) if self.desk else (self.n,)

    def nr_grid(self) -> tuple:
        if self.desk:
            return tuple(product((1, 2), (1, 2)))
        return ((self.n, self.rank),)


def derive_seed(master: int, name: str, counter: int) -> int:
    """Per-invocation seed: sha256 of "master:name:counter", 8 bytes."""
    digest = hashlib.sha256(f"{master}:{name}:{counter}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# config parsing --------------------------------------------------------


def _parse_fraction(key: str, value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{key}: {value!r} is not an exact rational")


def _parse_int(key: str, value: str) -> int:
    frac = _parse_fraction(key, value)
    if frac.denominator != 1:
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    return int(frac)


def _parse_bool(key: str, value: str) -> bool:
    if value not in ("true", "false"):
        raise ConfigError(f"{key}: expected true or false, got {value!r}")
    return value == "true"


def _parse_range(key: str, value: str) -> tuple:
    if ".." in value:
        lo_text, hi_text = value.split("..", 1)
        lo = _parse_int(key, lo_text.strip())
        hi = _parse_int(key, hi_text.strip())
        if hi < lo:
            raise ConfigError(f"{key}: empty range {value!r}")
        return tuple(range(lo, hi + 1))
    return (_parse_int(key, value),)


def _parse_phi_cos(value: str) -> tuple:
    if ":" not in value:
        raise ConfigError(
            f"phi_cos: expected 'f1 f2 ... : amplitude', got {value!r}")
    freq_text, amp_text = value.rsplit(":", 1)
    freq = tuple(_parse_int("phi_cos", tok) for tok in freq_text.split())
    if not freq:
        raise ConfigError("phi_cos: needs at least one frequency")
    return freq, _parse_fraction("phi_cos", amp_text.strip())


_INT_KEYS = ("n", "rank", "jet_order", "fourier_degree", "trials", "seed",
             "k", "threads")
_CHOICE_KEYS = {"arena": _ARENAS, "metric": _METRICS, "format": _FORMATS}


def parse_config(text: str) -> ScenarioConfig:
    """Parse the flat key-value scenario format; raises ConfigError."""
    values: dict = {}
    lists: dict = {"suites": [], "kappa_schedule": [], "curvature_diag": [],
                   "phi_cos": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in _INT_KEYS:
            values[key] = _parse_int(key, value)
        elif key in _CHOICE_KEYS:
            if value not in _CHOICE_KEYS[key]:
                raise ConfigError(
                    f"{key}: {value!r} is not one of "
                    f"{', '.join(_CHOICE_KEYS[key])}")
            values[key] = value
        elif key == "suite":
            lists["suites"].append(value)
        elif key == "kappa":
            lists["kappa_schedule"].append(_parse_fraction(key, value))
        elif key == "curvature_diag":
            lists["curvature_diag"].append(_parse_fraction(key, value))
        elif key == "phi_cos":
            lists["phi_cos"].append(_parse_phi_cos(value))
        elif key in ("p_range", "q_range"):
            values[key] = _parse_range(key, value)
        elif key == "inject_sign_error":
            values[key] = _parse_bool(key, value)
        elif key == "time_budget":
            values[key] = _parse_fraction(key, value)
        elif key == "output":
            values[key] = value
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    for key, seq in lists.items():
        if seq:
            values[key] = tuple(seq)
    cfg = ScenarioConfig(**values)
    validate_config(cfg)
    return cfg


def validate_config(cfg: ScenarioConfig) -> None:
    if cfg.n < 1:
        raise ConfigError("n must be at least 1")
    if cfg.rank < 1:
        raise ConfigError("rank must be at least 1")
    if cfg.trials < 1:
        raise ConfigError("trials must be at least 1")
    if cfg.k < 0:
        raise ConfigError("k must be nonnegative")
    if cfg.jet_order < 1 or cfg.fourier_degree < 1:
        raise ConfigError("jet_order and fourier_degree must be positive")
    if cfg.time_budget <= 0:
        raise ConfigError("time_budget must be positive")
    if cfg.threads is not None and cfg.threads < 1:
        raise ConfigError("threads must be at least 1")
    if any(kappa <= 0 for kappa in cfg.kappa_schedule):
        raise ConfigError("kappa entries must be positive")
    by_name = {spec.name: spec for spec in CATALOG}
    for name in cfg.suites:
        if name not in by_name:
            raise ConfigError(
                f"unknown suite {name!r}; run list-suites for the catalog")
        spec = by_name[name]
        if spec.arena is not None and cfg.arena != spec.arena:
            raise ConfigError(
                f"suite {name} requires the {spec.arena} arena, "
                f"config says {cfg.arena}")
        if spec.metric is not None and cfg.metric != spec.metric:
            raise ConfigError(
                f"suite {name} requires an {spec.metric} metric, "
                f"config says {cfg.metric}")
    if cfg.metric == "exp-weight":
        for freq, _ in cfg.phi_cos:
            if len(freq) != 4 * cfg.n:
                raise ConfigError(
                    f"phi_cos frequency needs {4 * cfg.n} entries "
                    f"for n = {cfg.n}")


def config_echo(cfg: ScenarioConfig) -> dict:
    """JSON-ready copy of every config field, rationals as strings."""
    def enc(value):
        if isinstance(value, Fraction):
            return str(value)
        if isinstance(value, tuple):
            return [enc(v) for v in value]
        return value
    return {f.name: enc(getattr(cfg, f.name)) for f in fields(cfg)}


# suite runners ---------------------------------------------------------


def _merge(reports) -> Report:
    out = None
    for rep in reports:
        out = rep if out is None else out.merge(rep)
    return out


def _weights(cfg: ScenarioConfig):
    n = 1 if cfg.desk else cfg.n
    if cfg.metric == "exp-weight" and cfg.phi_cos:
        phi = FourierPoly(4 * n)
        for freq, amp in cfg.phi_cos:
            phi = phi + FourierPoly.real_cosine(freq, amp)
        return (("config", ExpWeight(phi)),)
    return standard_weights(n)


def _run_algebra(cfg, seed):
    return _merge(verify_algebra(n, inject_sign_error=cfg.inject_sign_error)
                  for n in cfg.n_grid())


def _run_lemma42(cfg, seed):
    return _merge(verify_lemma42(n) for n in cfg.n_grid())


def _run_inner(cfg, seed):
    return verify_inner_expansion(2 if cfg.desk else cfg.n, cfg.trials, seed)


def _run_hodge(cfg, seed):
    return _merge(verify_hodge_identities(n, cfg.trials, seed)
                  for n in cfg.n_grid())


def _run_twisted(cfg, seed):
    # the n=2 table costs ~5s per trial; the desk grid halves the draws
    return _merge(
        verify_twisted_table(
            n, cfg.trials if n == 1 else max(1, cfg.trials // 2), seed)
        for n in cfg.n_grid())


def _run_bundle_tables(cfg, seed):
    return _merge(verify_bundle_tables(h, cfg.trials, seed)
                  for _, h in _weights(cfg))


def _run_bundle_laplacians(cfg, seed):
    return _merge(verify_bundle_laplacians(h, cfg.trials, seed)
                  for _, h in _weights(cfg))


def _run_chern(cfg, seed):
    return verify_chern_connection(cfg.trials, seed)


def _run_dual(cfg, seed):
    # each draw differentiates r x r jet matrices to order 4; keep the
    # desk profile inside its budget
    return verify_curvature_dual(max(1, cfg.trials // 4), seed)


def _run_twisted_curvature(cfg, seed):
    return verify_twisted_curvature(cfg.trials, seed)


def _run_prop44(cfg, seed):
    return _merge(verify_prop44(n, r, cfg.trials, seed)
                  for n, r in cfg.nr_grid())


def _run_prop45(cfg, seed):
    return _merge(verify_prop45(n, r, cfg.trials, seed)
                  for n, r in cfg.nr_grid())


def _run_rescale(cfg, seed):
    return verify_rescale()


def _run_fiber(cfg, seed):
    return verify_fiber_positivity(seed)


def _run_vanishing(cfg, seed):
    return verify_vanishing()


def _run_jet_normalization(cfg, seed):
    return verify_jet_normalization(10 if cfg.desk else cfg.trials, seed)


@dataclass(frozen=True)
class SuiteSpec:
    """Catalog entry: suite name, its source anchor, and the runner.

    `arena` and `metric` record hard requirements enforced when the
    suite is requested explicitly; None accepts any declared value.
    """

    name: str
    anchor: str
    runner: Callable[[ScenarioConfig, int], Report]
    arena: Optional[str] = None
    metric: Optional[str] = None


CATALOG = (
    SuiteSpec("algebra", "eq-kd3 / e_k i_k + i_k e_k = 2", _run_algebra),
    SuiteSpec("lemma-4.2", "lemma-4.2 / [ē_pē_q, ī_kī_{k+n}] case table",
              _run_lemma42),
    SuiteSpec("inner-expansion",
              "prop-4.3 / (e_qi_kξ,ξ) common-remainder sum", _run_inner),
    SuiteSpec("hodge-identities", "lemma-3.2 / [Λ,∂]=i∂̄*", _run_hodge),
    SuiteSpec("twisted-hodge-table",
              "prop-3.3 / sixteen twisted commutators", _run_twisted),
    SuiteSpec("bundle-bkn-tables",
              "prop-3.4 / bracket table with weighted adjoints",
              _run_bundle_tables, arena="fourier", metric="exp-weight"),
    SuiteSpec("bkn-laplacians", "prop-3.5 / △''-△'_J=[e(Θ_J),Λ_J]",
              _run_bundle_laplacians, arena="fourier", metric="exp-weight"),
    SuiteSpec("chern-connection",
              "eq-cc2 / ϑ^α_β=Σ h^{αγ̄}∂_j h_{βγ̄}dz^j", _run_chern,
              arena="jet"),
    SuiteSpec("curvature-dual", "prop-4.1 / Θ_J=∂̄ϑ_J", _run_dual,
              arena="jet"),
    SuiteSpec("twisted-curvature",
              "eq-curr3 / Θ_J component assembly", _run_twisted_curvature,
              arena="jet"),
    SuiteSpec("bkn-expansion-I", "prop-4.4 / ⟨[e(iΘ),Λ]ξ,ξ⟩ expansion",
              _run_prop44),
    SuiteSpec("bkn-expansion-J", "prop-4.5 / ⟨[e(Θ_J),Λ_J]ξ,ξ⟩ expansion",
              _run_prop45),
    SuiteSpec("rescale-arithmetic",
              "thm-5.3 / r_j = nu_j/(kappa mu_j + nu_j)", _run_rescale),
    SuiteSpec("fiber-positivity",
              "eq-213 / diagonal sum over the antiholomorphic mask",
              _run_fiber),
    SuiteSpec("vanishing-certificate", "cor-5.4 / p > n + floor(k/2)",
              _run_vanishing),
    SuiteSpec("jet-normalization", "prop-2.3 / b_klj = -a_jkl",
              _run_jet_normalization, arena="jet"),
)


def resolve_suites(cfg: ScenarioConfig) -> tuple:
    if cfg.desk:
        return CATALOG
    by_name = {spec.name: spec for spec in CATALOG}
    return tuple(by_name[name] for name in cfg.suites)


def run_suites(cfg: ScenarioConfig, threads: int = 1) -> list:
    """Run the resolved suites; reports come back in resolved order."""
    specs = resolve_suites(cfg)
    tasks = [(spec, derive_seed(cfg.seed, spec.name, i))
             for i, spec in enumerate(specs)]
    if threads <= 1:
        return [spec.runner(cfg, seed) for spec, seed in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(spec.runner, cfg, seed)
                   for spec, seed in tasks]
        return [future.result() for future in futures]


# certify and normalize plumbing ----------------------------------------


def certificate_from_config(cfg: ScenarioConfig) -> Certificate:
    """Build the line-bundle curvature from the config and certify it."""
    if cfg.rank != 1:
        raise ConfigError("certify covers rank-1 twists only")
    m = 2 * cfg.n
    diag = cfg.curvature_diag or (Fraction(1),) * m
    if len(diag) != m:
        raise ConfigError(
            f"curvature_diag needs {m} entries for n = {cfg.n}")
    R = CurvatureTensor(
        cfg.n, 1,
        ((tuple(tuple(Scalar(diag[p]) if p == q else Scalar(0)
                      for q in range(m)) for p in range(m)),),))
    schedule = cfg.kappa_schedule or None
    return vanishing_certificate(R, cfg.k, schedule,
                                 p_range=cfg.p_range, q_range=cfg.q_range)


def _parse_scalar(key: str, value: str) -> Scalar:
    parts = value.split(",")
    if len(parts) > 2:
        raise ConfigError(f"{key}: expected 're' or 're,im', got {value!r}")
    re_part = _parse_fraction(key, parts[0].strip())
    im_part = _parse_fraction(key, parts[1].strip()) if len(parts) == 2 \
        else Fraction(0)
    return Scalar(re_part, im_part)


def parse_metric_jet(text: str) -> MetricJet:
    """Metric-jet interchange format: m plus constant and linear terms.

    Lines are "m = 2", "g j k const = re[,im]", "g j k z l = re[,im]",
    "g j k zbar l = re[,im]".  Unlisted diagonal constants default to
    1 and off-diagonal ones to 0; only data the normalization consumes
    is carried.
    """
    m = None
    entries: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        tokens = key.split()
        if tokens == ["m"]:
            m = _parse_int("m", value)
            if m < 1:
                raise ConfigError("m must be at least 1")
            continue
        if tokens[0] != "g" or len(tokens) not in (4, 5):
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if m is None:
            raise ConfigError("m must be declared before entries")
        j, kk = (_parse_int("g", tok) for tok in tokens[1:3])
        if not (1 <= j <= m and 1 <= kk <= m):
            raise ConfigError(f"line {lineno}: indices must lie in 1..{m}")
        slot = tokens[3]
        terms = entries.setdefault((j - 1, kk - 1), {})
        if slot == "const":
            if len(tokens) != 4:
                raise ConfigError(f"line {lineno}: const takes no index")
            terms[(0,) * (2 * m)] = _parse_scalar(key, value)
            continue
        if slot not in ("z", "zbar") or len(tokens) != 5:
            raise ConfigError(f"line {lineno}: unknown slot {slot!r}")
        ell = _parse_int("g", tokens[4])
        if not 1 <= ell <= m:
            raise ConfigError(f"line {lineno}: indices must lie in 1..{m}")
        exps = [0] * (2 * m)
        exps[(ell - 1) + (m if slot == "zbar" else 0)] = 1
        terms[tuple(exps)] = _parse_scalar(key, value)
    if m is None:
        raise ConfigError("missing m declaration")
    grid = []
    for j in range(m):
        row = []
        for kk in range(m):
            terms = entries.get((j, kk), {})
            terms.setdefault((0,) * (2 * m), Scalar(1 if j == kk else 0))
            row.append(Jet(m, 1, terms))
        grid.append(tuple(row))
    return MetricJet(m, tuple(grid))
