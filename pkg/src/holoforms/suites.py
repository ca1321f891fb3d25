"""Named verification suites and the registry behind ``holoforms verify``.

Every suite draws its random samples from a generator seeded by the string
``"<suite>:<seed>"``, so reports depend only on the suite name, the seed and
the sample count.  Wall-clock time is recorded only on request.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from . import cone, gauge, structures
from .polyforms import sample_family, verify_kahler_identities
from .report import SuiteReport

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 100


class UnknownSuite(KeyError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    timing: bool = False

    def rng(self, suite: str) -> random.Random:
        return random.Random(f"{suite}:{self.seed}")


def _eigen(cfg: SuiteConfig) -> SuiteReport:
    return structures.eigen_suite()


def _g2(cfg: SuiteConfig) -> SuiteReport:
    return structures.identity_suite_g2(structures.default_samples(7, cfg.rng("g2-identities"), cfg.samples))


def _spin7(cfg: SuiteConfig) -> SuiteReport:
    return structures.identity_suite_spin7(
        structures.default_samples(8, cfg.rng("spin7-identities"), cfg.samples))


def kahler_forms() -> list[tuple[str, object]]:
    g2 = structures.canonical_structure("g2")
    return [
        ("phi", g2["phi"]),
        ("psi", g2["psi"]),
        ("Omega", structures.canonical_structure("spin7")["Omega"]),
        ("omega", structures.canonical_structure("cy3")["omega"]),
    ]


def _kahler(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("kahler-identities")
    rng = cfg.rng("kahler-identities")
    for label, form in kahler_forms():
        fam = sample_family(form.n, rng, random_count=cfg.samples)
        rep.extend(verify_kahler_identities(form, fam, label=label))
    return rep


def _cone(preset: str) -> Callable[[SuiteConfig], SuiteReport]:
    return lambda cfg: cone.verify_structure_preset(preset)


def _potentials(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("potentials")
    for name in cone.PRESET_NAMES:
        cone.potential_report(name, rep)
    return rep


def _growth(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("growth")
    for name in cone.PRESET_NAMES:
        cone.growth_report(name, rep)
    return rep


def _gauge(kind: str) -> Callable[[SuiteConfig], SuiteReport]:
    def run(cfg: SuiteConfig) -> SuiteReport:
        gcfg = gauge.GaugeConfig(seed=cfg.seed, samples=cfg.samples, instanton_samples=2 * cfg.samples,
                                 connections=max(1, cfg.samples // 2))
        return gauge.gauge_suite(kind, gcfg)
    return run


REGISTRY: dict[str, Callable[[SuiteConfig], SuiteReport]] = {
    "eigen-decompositions": _eigen,
    "g2-identities": _g2,
    "spin7-identities": _spin7,
    "kahler-identities": _kahler,
    **{f"cone:{p}": _cone(p) for p in cone.PRESET_NAMES},
    "potentials": _potentials,
    "growth": _growth,
    "gauge-g2": _gauge("g2"),
    "gauge-spin7": _gauge("spin7"),
    "gauge-kahler": _gauge("cy3"),
}


def suite_names() -> list[str]:
    return list(REGISTRY) + ["all"]


def run_suite(name: str, config: SuiteConfig | None = None) -> SuiteReport:
    """Run one named suite, or every suite in registry order for ``all``."""
    cfg = config or SuiteConfig()
    if name != "all" and name not in REGISTRY:
        raise UnknownSuite(f"unknown suite {name!r}; expected one of {', '.join(suite_names())}")
    start = time.perf_counter()
    if name == "all":
        rep = SuiteReport("all")
        for sub in REGISTRY:
            rep.extend(REGISTRY[sub](cfg), prefix=sub)
    else:
        rep = REGISTRY[name](cfg)
    rep.suite = name
    rep.seed = cfg.seed
    rep.elapsed_ms = int((time.perf_counter() - start) * 1000) if cfg.timing else 0
    return rep
