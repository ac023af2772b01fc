"""The four-dimensional appendix catalog and batch verification of its claims.

Parameter kinds: ``sign`` ranges over +-1, ``kappa`` over {0, +-1}, ``real``
is sampled from a fixed grid plus one seeded random rational per parameter.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable

from ..cohomology import TwoCochain, cohomology_index, cohomology_report, is_cocycle
from ..errors import EntryNotFound, JacobiViolation
from ..exact import format_fraction
from ..lie_core import DEFAULT_TRIALS, LieAlgebra, jacobi_violation, validate_algebra
from . import expr

REAL_GRID = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "0", "1/2", "1", "2"))
KIND_VALUES = {"sign": (Fraction(-1), Fraction(1)), "kappa": (Fraction(-1), Fraction(0), Fraction(1))}
MAX_VIOLATIONS = 5


@lru_cache(maxsize=1)
def _document() -> dict:
    text = resources.files(__package__).joinpath("appendix.json").read_text(encoding="utf-8")
    return json.loads(text)


def catalog_document() -> dict:
    """The embedded appendix data (a fresh copy)."""
    return json.loads(json.dumps(_document()))


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    item: int
    dim: int
    params: dict
    brackets: tuple
    families: tuple
    claims: tuple
    notes: tuple
    semisimple_part: tuple | None = None

    @classmethod
    def from_json(cls, d: dict) -> "CatalogEntry":
        return cls(
            d["id"],
            d["item"],
            d["dim"],
            dict(d["params"]),
            tuple(d["brackets"]),
            tuple(d["families"]),
            tuple(d["claims"]),
            tuple(d.get("notes", ())),
            tuple(d["semisimple_part"]) if d.get("semisimple_part") else None,
        )

    def family(self, name: str) -> dict:
        for f in self.families:
            if f["name"] == name:
                return f
        raise KeyError(f"{self.id} has no family {name!r}")

    def algebra(self, env: dict | None = None) -> LieAlgebra:
        """Instantiate the algebra; raises JacobiViolation on a bad reading."""
        env = env or {}
        table: dict = {}
        for br in self.brackets:
            terms = {}
            for t in br["terms"]:
                v = expr.evaluate(t["v"], env)
                if v:
                    terms[t["c"]] = v
            if terms:
                table[(br["a"], br["b"])] = terms
        return validate_algebra(_label(self.id, env, self.params), self.dim, table)

    def cochain(self, family: str, env: dict) -> TwoCochain:
        terms: dict = {}
        for t in self.family(family)["terms"]:
            key = (t["a"], t["b"])
            terms[key] = terms.get(key, 0) + expr.evaluate(t["v"], env)
        return TwoCochain.from_terms(self.dim, terms)

    def summary(self) -> dict:
        return {
            "id": self.id,
            "kind": "algebra",
            "item": self.item,
            "dim": self.dim,
            "params": dict(sorted(self.params.items())),
            "families": [{"name": f["name"], "printed": f["printed"]} for f in self.families],
            "claims": [c["printed"] + f" ({c['family']})" for c in self.claims],
            "flagged": any("flag" in c for c in self.claims) or bool(self.notes),
        }


def _label(eid: str, env: dict, keys: Iterable[str]) -> str:
    ks = [k for k in sorted(keys) if k in env]
    if not ks:
        return eid
    return eid + "(" + ",".join(f"{k}={format_fraction(env[k])}" for k in ks) + ")"


@lru_cache(maxsize=1)
def _entries() -> tuple[CatalogEntry, ...]:
    return tuple(CatalogEntry.from_json(d) for d in _document()["entries"])


def entry_ids() -> list[str]:
    return [e.id for e in _entries()]


def get_entry(entry_id: str) -> CatalogEntry:
    for e in _entries():
        if e.id == entry_id:
            return e
    raise EntryNotFound(entry_id)


def list_entries() -> list[dict]:
    from .charts import chart_entries

    return [e.summary() for e in _entries()] + [c.summary() for c in chart_entries()]


def _kind_of(name: str) -> str:
    if name in ("delta", "eps"):
        return "sign"
    if name.startswith("kappa"):
        return "kappa"
    return "real"


def _random_rational(rng: random.Random) -> Fraction:
    while True:
        q = Fraction(rng.randint(-99, 99), rng.randint(2, 97))
        if q not in REAL_GRID and q.denominator != 1:
            return q


def sampling_plan(entry: CatalogEntry, family: dict, rng: random.Random, extra: Iterable[str] = ()) -> list[dict]:
    """All parameter assignments checked for one family, in a fixed order."""
    kinds = dict(entry.params)
    kinds.update(family["params"])
    for name in extra:
        kinds.setdefault(name, _kind_of(name))
    names = sorted(kinds)
    axes = []
    for name in names:
        kind = kinds[name]
        if kind == "real":
            axes.append(REAL_GRID + (_random_rational(rng),))
        else:
            axes.append(KIND_VALUES[kind])
    plan = []
    for values in itertools.product(*axes):
        env = dict(zip(names, values))
        if "domain" in family and not expr.evaluate(family["domain"], env):
            continue
        plan.append(env)
    return plan


def _claim_names(claims) -> set[str]:
    out: set[str] = set()
    for c in claims:
        out |= expr.names(c["condition"])
        if "corrected" in c:
            out |= expr.names(c["corrected"])
    return out - {"true"}


@dataclass
class ConditionOutcome:
    condition: str
    checked: int = 0
    under_condition: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "checked": self.checked,
            "under_condition": self.under_condition,
            "ok": self.ok,
            "violations": self.violations[:MAX_VIOLATIONS],
            "violation_count": len(self.violations),
        }


def _check_condition(condition, claimed, exclusive, samples) -> ConditionOutcome:
    out = ConditionOutcome(condition)
    for env, ind in samples:
        holds = bool(expr.evaluate(condition, env))
        out.checked += 1
        out.under_condition += holds
        if holds and ind != claimed:
            out.violations.append({"params": _env_json(env), "index": ind, "expected": claimed})
        elif not holds and exclusive and ind == claimed:
            out.violations.append({"params": _env_json(env), "index": ind, "expected": f"!= {claimed}"})
    return out


def _env_json(env: dict) -> dict:
    return {k: format_fraction(v) for k, v in sorted(env.items())}


@dataclass
class EntryReport:
    id: str
    item: int
    jacobi_ok: bool
    cocycles_ok: bool
    families: list
    claims: list
    semisimple: dict | None
    notes: list
    errors: list

    @property
    def ok(self) -> bool:
        return self.jacobi_ok and self.cocycles_ok and not self.errors and all(
            c["status"] in ("pass", "flagged") for c in self.claims
        )

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "item": self.item,
            "ok": self.ok,
            "jacobi_ok": self.jacobi_ok,
            "cocycles_ok": self.cocycles_ok,
            "families": self.families,
            "claims": self.claims,
            "semisimple_part": self.semisimple,
            "notes": self.notes,
            "errors": self.errors,
        }


def verify_entry(entry_id: str, seed: int = 42, trials: int = DEFAULT_TRIALS, exact: bool = False) -> EntryReport:
    """Check every family instance is a cocycle and every printed claim both ways.

    A claim carrying a ``flag`` is a suspected misprint: its verbatim failure
    is reported but only the ``corrected`` condition decides pass/fail. A
    flagged claim whose verbatim reading passes is reported as a stale flag.
    """
    entry = get_entry(entry_id)
    rng = random.Random(f"{seed}:{entry_id}")
    jacobi_ok, cocycles_ok = True, True
    errors: list = []
    fam_reports, claim_reports = [], []
    for fam in entry.families:
        claims = [c for c in entry.claims if c["family"] == fam["name"]]
        plan = sampling_plan(entry, fam, rng, _claim_names(claims))
        samples = []
        histogram: dict[int, int] = {}
        for env in plan:
            try:
                alg = entry.algebra(env)
            except JacobiViolation as exc:
                jacobi_ok = False
                errors.append(f"{fam['name']} {_env_json(env)}: {exc}")
                continue
            F = entry.cochain(fam["name"], env)
            check = is_cocycle(alg, F)
            if not check:
                cocycles_ok = False
                errors.append(f"{fam['name']} {_env_json(env)}: not a cocycle")
                continue
            ind = cohomology_index(alg, F, seed=rng.getrandbits(32), trials=trials, exact=exact)
            histogram[ind] = histogram.get(ind, 0) + 1
            samples.append((env, ind))
        fam_reports.append(
            {
                "family": fam["name"],
                "printed": fam["printed"],
                "instances": len(samples),
                "index_counts": {str(k): v for k, v in sorted(histogram.items())},
            }
        )
        for c in claims:
            verbatim = _check_condition(c["condition"], c["index"], c["exclusive"], samples)
            rep = {
                "family": c["family"],
                "printed": c["printed"],
                "claimed_index": c["index"],
                "exclusive": c["exclusive"],
                "verbatim": verbatim.to_json(),
            }
            if "flag" in c:
                corrected = _check_condition(c["corrected"], c["index"], c["exclusive"], samples)
                rep["flag"] = c["flag"]
                rep["corrected"] = corrected.to_json()
                if verbatim.ok:
                    rep["status"] = "stale-flag"
                elif corrected.ok:
                    rep["status"] = "flagged"
                else:
                    rep["status"] = "fail"
            else:
                rep["status"] = "pass" if verbatim.ok else "fail"
            claim_reports.append(rep)
    semisimple = None
    if entry.semisimple_part:
        semisimple = semisimple_h2(entry)
        if semisimple["h2"] != 0:
            errors.append(f"semisimple part {entry.semisimple_part} has H^2 = {semisimple['h2']}")
    return EntryReport(
        entry.id, entry.item, jacobi_ok, cocycles_ok, fam_reports, claim_reports, semisimple, list(entry.notes), errors
    )


def semisimple_h2(entry: CatalogEntry) -> dict:
    """Cohomology of the subalgebra spanned by ``entry.semisimple_part``."""
    alg = entry.algebra({})
    keep = list(entry.semisimple_part)
    relabel = {old: new for new, old in enumerate(keep, start=1)}
    table = {}
    for (a, b), terms in alg.table().items():
        if a in relabel and b in relabel:
            if any(c not in relabel for c in terms):
                raise ValueError(f"{keep} is not a subalgebra of {entry.id}")
            table[(relabel[a], relabel[b])] = {relabel[c]: v for c, v in terms.items()}
    sub = validate_algebra(f"{entry.id}|{keep}", len(keep), table)
    rep = cohomology_report(sub)
    return {"basis": keep, "z2": rep.dim_Z2, "b2": rep.dim_B2, "h2": rep.dim_H2}


@dataclass
class CatalogReport:
    seed: int
    entries: list[EntryReport]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def counts(self) -> dict:
        out = {"pass": 0, "flagged": 0, "stale-flag": 0, "fail": 0}
        for e in self.entries:
            for c in e.claims:
                out[c["status"]] += 1
        return out

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "ok": self.ok,
            "claims": self.counts(),
            "flagged": [
                {"entry": e.id, "family": c["family"], "printed": c["printed"], "corrected": c["corrected"]["condition"]}
                for e in self.entries
                for c in e.claims
                if "flag" in c
            ],
            "entries": [e.to_json() for e in self.entries],
        }


def verify_all(seed: int = 42, trials: int = DEFAULT_TRIALS, jobs: int = 4, ids: Iterable[str] | None = None,
               exact: bool = False) -> CatalogReport:
    """Verify entries concurrently; results are independent of ``jobs``."""
    ids = list(ids) if ids is not None else entry_ids()
    for i in ids:
        get_entry(i)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        reports = list(pool.map(lambda i: verify_entry(i, seed, trials, exact), ids))
    return CatalogReport(seed, reports)


def export_entry(entry_id: str) -> dict:
    """Entry with its parameter-free algebra in the interchange schema, when it has one."""
    from ..io import algebra_to_json

    entry = get_entry(entry_id)
    raw = next(d for d in _document()["entries"] if d["id"] == entry_id)
    out = json.loads(json.dumps(raw))
    if not entry.params:
        out["algebra"] = algebra_to_json(entry.algebra({}))
    return out
