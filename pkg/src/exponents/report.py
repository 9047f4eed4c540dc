import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

import jsonschema
import numpy as np

from src import settings
from src.errors import FormatError


@dataclass(frozen=True)
class ClaimResult:
    """
    Outcome of one numerical check: `estimate` passes when it lies within `tolerance` of `theoretical_value`.
    `paper_anchor` names the result the check reproduces and `statement` says in words what was checked.
    """
    claim_id: str
    paper_anchor: str
    theoretical_value: float
    estimate: float
    stderr: float
    n_paths: int
    n_steps: int
    tolerance: float
    bootstrap_stderr: Optional[float] = None
    statement: str = ''

    @property
    def passed(self) -> bool:
        return bool(abs(self.estimate - self.theoretical_value) <= self.tolerance)

    def as_dict(self) -> dict:
        bootstrap = None if self.bootstrap_stderr is None else float(self.bootstrap_stderr)
        return {'claim_id': self.claim_id, 'paper_anchor': self.paper_anchor, 'statement': self.statement,
                'theoretical_value': float(self.theoretical_value), 'estimate': float(self.estimate),
                'stderr': float(self.stderr), 'bootstrap_stderr': bootstrap, 'n_paths': int(self.n_paths),
                'n_steps': int(self.n_steps), 'pass': self.passed, 'tolerance': float(self.tolerance)}


@dataclass
class VerificationReport:
    claims: List[ClaimResult] = field(default_factory=list)
    version: str = ''
    seed: int = 0
    wall_time: float = 0.

    @property
    def passed(self) -> bool:
        return all(claim.passed for claim in self.claims)

    def add(self, claim: ClaimResult):
        if any(c.claim_id == claim.claim_id for c in self.claims):
            raise ValueError(f"claim {claim.claim_id} reported twice")
        self.claims.append(claim)

    def as_dict(self) -> dict:
        return {'claims': [claim.as_dict() for claim in self.claims],
                'environment': {'version': self.version, 'seed': int(self.seed),
                                'wall_time': float(self.wall_time)}}


def _load_schema() -> dict:
    with open(settings.report_schema_file, 'r') as schema_file:
        return json.load(schema_file)


def validate_report(document: dict):
    jsonschema.validate(instance=document, schema=_load_schema())


def write_report(report: Union[VerificationReport, List[ClaimResult]], destination: Union[str, Path]) -> dict:
    """Writes the report as JSON after validating it against the shipped schema; returns the written document."""
    if not isinstance(report, VerificationReport):
        report = VerificationReport(claims=list(report))
    document = report.as_dict()
    for claim in document['claims']:
        if not all(np.isfinite(claim[key]) for key in ('theoretical_value', 'estimate', 'stderr', 'tolerance')):
            raise ValueError(f"claim {claim['claim_id']} carries a non-finite number")
    validate_report(document)
    with open(destination, 'w') as report_file:
        json.dump(document, report_file, indent=4, sort_keys=True)
        report_file.write('\n')
    return document


def read_report(source: Union[str, Path]) -> dict:
    try:
        with open(source, 'r') as report_file:
            document = json.load(report_file)
    except json.JSONDecodeError as e:
        raise FormatError(f"malformed report: {e.msg} at line {e.lineno}", path=source, offset=e.pos)
    validate_report(document)
    return document
