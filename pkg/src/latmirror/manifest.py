"""Verification manifests: what to run, on which fixtures, with what seeds.

A manifest is strict JSON:

    {"version": "1",
     "fixtures": ["quintic.json", ...],
     "suites": [{"name": "cy3-skew", "params": {"samples": 1000}}, ...]}

Unknown top-level keys, unknown suite names and unknown suite parameters
are rejected at parse time, as are missing or non-JSON fixture files.
Semantic fixture validation (an odd Gram diagonal, a wrong fibre count)
happens while the verifier runs and is recorded as a failing report
without aborting the remaining suites.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

from .fixtures import FixtureError, load_fixture, resolve_fixture
from .report import Check, SuiteReport
from .suites import SUITES, SuiteInputError

MANIFEST_VERSION = "1"
DEFAULT_MANIFEST = Path(__file__).parent / "fixtures" / "manifest_default.json"


class ManifestError(ValueError):
    """The manifest (or a file it references) does not parse."""


@dataclass(frozen=True)
class SuiteSpec:
    name: str
    params: dict


@dataclass(frozen=True)
class Manifest:
    version: str
    fixtures: tuple
    suites: tuple
    base: Path


def parse_manifest(path: str | Path) -> Manifest:
    """Parse and statically validate a manifest file."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ManifestError("manifest must be a JSON object")
    unknown = set(payload) - {"version", "fixtures", "suites"}
    if unknown:
        raise ManifestError(f"unknown manifest keys: {sorted(unknown)}")
    version = payload.get("version")
    if version != MANIFEST_VERSION:
        raise ManifestError(
            f"unsupported manifest version {version!r} (expected {MANIFEST_VERSION!r})"
        )
    base = path.parent
    fixtures = []
    for name in payload.get("fixtures", ()):
        try:
            resolved = resolve_fixture(str(name), base)
            json.loads(resolved.read_text())  # must at least be JSON
        except (FixtureError, OSError) as exc:
            raise ManifestError(str(exc)) from exc
        except json.JSONDecodeError as exc:
            raise ManifestError(f"fixture {name} is not valid JSON: {exc}") from exc
        fixtures.append(str(name))
    suites = []
    for entry in payload.get("suites", ()):
        if not isinstance(entry, dict):
            raise ManifestError(f"suite entry must be an object, got {entry!r}")
        extra = set(entry) - {"name", "params"}
        if extra:
            raise ManifestError(f"unknown suite entry keys: {sorted(extra)}")
        name = entry.get("name")
        if name not in SUITES:
            raise ManifestError(
                f"unknown suite {name!r}; known: {sorted(SUITES)}"
            )
        params = entry.get("params", {})
        bad = set(params) - set(SUITES[name].defaults)
        if bad:
            raise ManifestError(
                f"suite {name!r} does not take parameters {sorted(bad)}"
            )
        suites.append(SuiteSpec(name=name, params=dict(params)))
    return Manifest(
        version=version, fixtures=tuple(fixtures), suites=tuple(suites), base=base
    )


@dataclass(frozen=True)
class VerifyResult:
    reports: tuple
    passed: bool

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "suites": {
                "total": len(self.reports),
                "failed": sum(1 for r in self.reports if not r.passed),
            },
            "reports": [r.to_json() for r in self.reports],
        }


def _load_fixtures(manifest: Manifest) -> tuple[dict, list[Check]]:
    loaded: dict = {}
    checks: list[Check] = []
    for name in manifest.fixtures:
        try:
            fx = load_fixture(name, manifest.base)
        except FixtureError as exc:
            checks.append(
                Check(name=f"load {name}", ok=False, got=str(exc))
            )
            continue
        loaded[fx.label] = fx
        checks.append(
            Check(name=f"load {name}", ok=True, got=f"label {fx.label!r}")
        )
    return loaded, checks


def run_verify(manifest: Manifest) -> VerifyResult:
    """Run every suite in the manifest; never abort on a failing suite.

    Reports are assembled in suite-name order (fixture loading reports
    first under the name "fixtures"); all randomness is seeded by suite
    parameters, so two runs differ only in durations.
    """
    fixtures, fixture_checks = _load_fixtures(manifest)
    reports = [
        SuiteReport(
            suite="fixtures",
            status="pass" if all(c.ok for c in fixture_checks) else "fail",
            checks=tuple(fixture_checks),
            duration_s=0.0,
        )
    ]
    for spec in sorted(manifest.suites, key=lambda s: s.name):
        suite = SUITES[spec.name]
        params = {**suite.defaults, **spec.params}
        start = time.perf_counter()
        try:
            checks = tuple(suite.run(params, fixtures))
            status = "pass" if all(c.ok for c in checks) else "fail"
        except SuiteInputError as exc:
            checks = (Check(name="suite preconditions", ok=False, got=str(exc)),)
            status = "error"
        except Exception as exc:  # a crashing suite must not kill the run
            checks = (
                Check(name="suite crashed", ok=False, got=f"{type(exc).__name__}: {exc}"),
            )
            status = "error"
        reports.append(
            SuiteReport(
                suite=spec.name,
                status=status,
                checks=checks,
                duration_s=time.perf_counter() - start,
            )
        )
    reports.sort(key=lambda r: r.suite)
    passed = all(r.passed for r in reports)
    return VerifyResult(reports=tuple(reports), passed=passed)
