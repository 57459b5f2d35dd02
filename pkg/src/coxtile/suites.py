"""Named verification cases run by ``coxtile verify``."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache

from .config import DEFAULT, Config
from .coxeter import GroupElement, build_system, longest_element
from .embeddings import induced_relation_set, table_row, tabulated_relation_set
from .errors import UsageError
from .tilings import BijectionReport, basis_for, coverage, verify_bijection
from .words import elnitsky_relations

EXHAUSTIVE = {"a3-exhaustive": "A3", "a4-exhaustive": "A4", "d4-exhaustive": "D4"}
SUBTILINGS = {
    "b3-in-a5": "A5-B3",
    "b3-in-a6": "A6-B3",
    "b3-in-d4": "D4-B3",
    "b4-in-d5": "D5-B4",
    "h3-in-d6": "D6-H3",
}
CASES = tuple(EXHAUSTIVE) + tuple(SUBTILINGS)


@dataclass
class CaseResult:
    name: str
    report: BijectionReport
    tilings: list = field(default_factory=list, repr=False)
    basis: object = None
    notes: list[str] = field(default_factory=list)
    coverage_ok: bool | None = None

    @property
    def ok(self) -> bool:
        return self.report.ok and self.coverage_ok is not False

    def lines(self) -> list[str]:
        line = self.report.summary(self.name)
        if self.coverage_ok is not None:
            line += f" coverage={str(self.coverage_ok).lower()}"
        return [line] + [f"# {note}" for note in self.notes]


@lru_cache(maxsize=None)
def _host(name: str, config: Config):
    return build_system(name, config)


def _check_element(args):
    host_name, mapping, config = args
    system = _host(host_name, config)
    r = verify_bijection(system, GroupElement(mapping), elnitsky_relations(system), config.enumeration_cap)
    # drop the host reference so results pickle cheaply across workers
    return mapping, replace(r, distinct=tuple(replace(t, host=None) for t in r.distinct))


def run_case(name: str, config: Config = DEFAULT, jobs: int = 1, geometry: bool = False) -> CaseResult:
    if name in EXHAUSTIVE:
        host_name = EXHAUSTIVE[name]
        system = _host(host_name, config)
        todo = [(host_name, m, config) for m in sorted(system.table.length)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_check_element, todo, chunksize=8))
        else:
            results = [_check_element(t) for t in todo]
        results.sort(key=lambda pair: pair[0])
        reports = [r for _, r in results]
        report = BijectionReport(
            words=sum(r.words for r in reports),
            classes=sum(r.classes for r in reports),
            tilings=sum(r.tilings for r in reports),
            constant_on_classes=all(r.constant_on_classes for r in reports),
            injective=all(r.injective and r.classes == r.tilings for r in reports),
        )
        tilings = [t for r in reports for t in r.distinct]
        result = CaseResult(name, report, tilings, basis_for(system, config=config))
        result.notes.append(f"{len(reports)} elements checked individually")
    elif name in SUBTILINGS:
        p = table_row(SUBTILINGS[name], config, host=_host(SUBTILINGS[name].split("-")[0], config))
        x0 = longest_element(p.x_system)
        k_rels = induced_relation_set(p, elnitsky_relations(p.host))
        report = verify_bijection(p, x0, k_rels, config.enumeration_cap)
        result = CaseResult(name, report, list(report.distinct), basis_for(p.host, config=config))
        tab = tabulated_relation_set(p)
        if tab != k_rels:
            alt = verify_bijection(p, x0, tab, config.enumeration_cap)
            pairs = ",".join(f"t{i}t{j}" for i, j in sorted(tab)) or "none"
            result.notes.append(
                f"tabulated K ({pairs}) gives classes={alt.classes} against tilings={alt.tilings}"
            )
        pairs = ",".join(f"t{i}t{j}" for i, j in sorted(k_rels)) or "none"
        result.notes.append(f"K induced from host relations: {pairs}")
    else:
        raise UsageError(f"unknown case {name!r}; choose from {', '.join(CASES)} or all")
    if geometry:
        result.coverage_ok = all(coverage(t, result.basis).ok() for t in result.tilings)
    return result
