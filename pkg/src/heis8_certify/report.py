"""Report data model: per-claim certificate results, run configuration, and
the deterministic JSON/text report emitted by the CLI.

Payload values are always strings (canonical polynomial text or decimal
integers) so the JSON never depends on numeric formatting.  Two runs with the
same configuration produce byte-identical JSON except for the elapsed-time
fields; ``normalized_json`` zeroes those for comparisons.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvalidPrime, UnknownCheckId, ZeroPoint
from .exactmath import is_prime

VERSION = "0.1.0"

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class CertificateResult:
    id: str
    status: str
    field: str
    prime: int | None = None
    seed: int | None = None
    elapsed_ms: int = 0
    payload: dict = None

    def __post_init__(self):
        if self.payload is None:
            self.payload = {}
        self.payload = {str(k): str(v) for k, v in self.payload.items()}

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "field": self.field,
            "prime": self.prime,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
            "payload": dict(sorted(self.payload.items())),
        }


@dataclass(frozen=True)
class RunConfig:
    checks: tuple = ("all",)
    primes: tuple = (17, 41, 73)
    seed: int = 42
    base_point: tuple = (1, 2, 3)
    json_path: str | None = None
    fast: bool = False
    jobs: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "checks": list(self.checks),
            "primes": list(self.primes),
            "seed": self.seed,
            "y": list(self.base_point),
            "fast": self.fast,
            "jobs": self.jobs,
        }


def validate_config(config: RunConfig, known_ids) -> None:
    for p in config.primes:
        if p <= 2 or not is_prime(p) or p % 8 != 1:
            raise InvalidPrime(f"prime {p} must be an odd prime congruent to 1 mod 8")
    if not (0 <= config.seed < 2**64):
        raise InvalidPrime(f"seed {config.seed} is not a 64-bit integer")
    if config.checks != ("all",):
        for cid in config.checks:
            if cid not in known_ids:
                raise UnknownCheckId(cid)
    if len(config.base_point) != 3 or not any(config.base_point):
        raise ZeroPoint(f"base point {config.base_point} must be a nonzero integer triple")


@dataclass
class Report:
    version: str
    config: RunConfig
    results: list
    total_elapsed_ms: int = 0

    @property
    def status(self) -> str:
        return PASS if all(r.status == PASS for r in self.results) else FAIL

    def to_json_dict(self) -> dict:
        return {
            "version": self.version,
            "config": self.config.to_json_dict(),
            "results": [r.to_json_dict() for r in self.results],
            "status": self.status,
            "total_elapsed_ms": self.total_elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"heis8-certify {self.version}"]
        cfg = self.config
        lines.append(
            f"config: primes={list(cfg.primes)} seed={cfg.seed} y={list(cfg.base_point)}"
            f" fast={cfg.fast}"
        )
        width = max((len(r.id) for r in self.results), default=10)
        for r in self.results:
            lines.append(f"  {r.status.upper():<4s} {r.id:<{width}s}  [{r.field}]  {r.elapsed_ms} ms")
        lines.append(f"overall: {self.status.upper()} ({self.total_elapsed_ms} ms)")
        return "\n".join(lines) + "\n"


def normalized_json(text: str) -> str:
    """Zero every elapsed-time field; the rest must be byte-identical across runs."""
    data = json.loads(text)
    data["total_elapsed_ms"] = 0
    for r in data.get("results", []):
        r["elapsed_ms"] = 0
    return json.dumps(data, indent=2) + "\n"
