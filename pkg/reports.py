import csv
import io
import json
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from error_handler import ConfigError, InvariantError, ScenarioFailure
from log_handler import logger, log_claim

FORMATS = ("table", "json", "csv")
CSV_HEADER = ["id", "description", "paper_anchor", "provenance", "expected", "computed", "verdict", "certificate_kind"]

PUBLISHED = "published"   # stated in the source note
DERIVED = "derived"       # follows from published numbers by counting
TRIVIAL = "trivial"
REGRESSION = "regression" # pinned after a first computation
REFERENCE = "reference"   # classification data cited from the literature

PROOF = "proof-mod-p-specialization"
EVIDENCE = "evidence"

PASS = "pass"
FAIL = "fail"
RECORDED = "recorded"
UNLUCKY = "unlucky-specialization"

Certificate = Union[str, Callable[[Any], str]]

# =================================================================================================
# CLAIMS
# =================================================================================================

@dataclass(frozen=True)
class Expectation:
    """A pinned value; relation "ge" turns it into a lower bound."""

    value: Any
    relation: str = "eq"

    def holds(self, computed: Any) -> bool:
        if computed is None:
            return False
        if self.relation == "ge":
            return computed >= self.value
        return computed == self.value

    def render(self) -> Any:
        return f">={self.value}" if self.relation == "ge" else self.value

    @classmethod
    def parse(cls, raw: Any) -> "Expectation":
        """Pins file values: a JSON value, or a string ">=N" for a lower bound."""
        if isinstance(raw, str):
            text = raw.strip()
            if text.startswith(">="):
                try:
                    return cls(int(text[2:]), "ge")
                except ValueError:
                    raise ConfigError(f"malformed lower bound pin '{raw}'")
        return cls(raw)


@dataclass(frozen=True)
class ClaimReport:
    id: str
    description: str
    paper_anchor: str
    provenance: str
    expected: Optional[Expectation]
    computed: Any
    verdict: str
    certificate_kind: str
    attempts: int = 1

    @property
    def pinned(self) -> bool:
        return self.expected is not None

    @property
    def passed(self) -> bool:
        return self.verdict in (PASS, UNLUCKY, RECORDED)

    def as_record(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "description": self.description,
            "paper_anchor": self.paper_anchor,
            "provenance": self.provenance,
            "expected": self.expected.render() if self.expected else None,
            "computed": self.computed,
            "verdict": self.verdict,
            "certificate_kind": self.certificate_kind,
        }


class ClaimBook:
    """
    Evaluates claims in order and keeps the resulting records.

    `pins` overrides the expectation of any claim id it names. A pinned claim that
    fails on attempt 0 is recomputed on up to `retries` fresh specializations; passing
    on one of them yields the verdict "unlucky-specialization".
    """

    def __init__(self, pins: Optional[Dict[str, Any]] = None, retries: int = 2):
        self.pins = dict(pins or {})
        self.retries = retries
        self.claims: List[ClaimReport] = []

    def expectation(self, claim_id: str, default: Any, relation: str = "eq") -> Optional[Expectation]:
        if claim_id in self.pins:
            return Expectation.parse(self.pins[claim_id])
        if default is None:
            return None
        return Expectation(default, relation)

    def check(
        self,
        claim_id: str,
        description: str,
        anchor: str,
        provenance: str,
        expected: Any,
        compute: Callable[[int], Any],
        relation: str = "eq",
        certificate: Certificate = EVIDENCE,
        reseed: bool = True,
    ) -> ClaimReport:
        expectation = self.expectation(claim_id, expected, relation)
        computed = self._attempt(claim_id, compute, 0)
        attempts = 1

        if expectation is None:
            verdict = RECORDED
        elif expectation.holds(computed):
            verdict = PASS
        else:
            verdict = FAIL
            for attempt in range(1, self.retries + 1 if reseed else 1):
                attempts += 1
                logger.warning(f"⚠️ Claim {claim_id} re-seeded (attempt {attempt}) after computing {computed}")
                retried = self._attempt(claim_id, compute, attempt)
                if expectation.holds(retried):
                    computed, verdict = retried, UNLUCKY
                    break

        kind = certificate(computed) if callable(certificate) else certificate
        claim = ClaimReport(claim_id, description, anchor, provenance, expectation, computed, verdict, kind, attempts)
        log_claim(claim_id, verdict, claim.as_record()["expected"], computed)
        self.claims.append(claim)
        return claim

    def record(self, claim_id: str, description: str, value: Any, anchor: str = "", provenance: str = TRIVIAL,
               certificate: Certificate = EVIDENCE) -> ClaimReport:
        """A computed value with no expectation unless the pins file names it."""
        return self.check(claim_id, description, anchor, provenance, None, lambda _: value, certificate=certificate, reseed=False)

    def _attempt(self, claim_id: str, compute: Callable[[int], Any], attempt: int) -> Any:
        try:
            return compute(attempt)
        except (ScenarioFailure, InvariantError) as e:
            logger.error(f"❌ Claim {claim_id} could not be computed on attempt {attempt}: {e}")
            return None


def certify_when(predicate: Callable[[Any], bool]) -> Callable[[Any], str]:
    """Certificate that is a proof exactly when the predicate holds for the computed value."""
    return lambda computed: PROOF if computed is not None and predicate(computed) else EVIDENCE

# =================================================================================================
# DOCUMENTS
# =================================================================================================

@dataclass(frozen=True)
class ScenarioReport:
    name: str
    seed: int
    prime: int
    claims: Tuple[ClaimReport, ...]

    @property
    def passed(self) -> bool:
        return all(claim.passed for claim in self.claims)


@dataclass(frozen=True)
class ReportDocument:
    meta: Dict[str, Any]
    claims: Tuple[ClaimReport, ...] = dataclass_field(default_factory=tuple)

    @property
    def exit_status(self) -> int:
        return 0 if all(claim.passed for claim in self.claims if claim.pinned) else 1

    @classmethod
    def from_scenarios(cls, meta: Dict[str, Any], scenarios: Sequence[ScenarioReport]) -> "ReportDocument":
        return cls(meta, tuple(claim for scenario in scenarios for claim in scenario.claims))

    def as_dict(self) -> Dict[str, Any]:
        return {
            "meta": dict(self.meta),
            "claims": [claim.as_record() for claim in self.claims],
            "exit_status": self.exit_status,
        }

# =================================================================================================
# RENDERING
# =================================================================================================

def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def _render_table(doc: ReportDocument) -> str:
    header = " | ".join(f"{key}: {_cell(value)}" for key, value in doc.meta.items())
    columns = ["ID", "EXPECTED", "COMPUTED", "VERDICT", "CERTIFICATE", "DESCRIPTION"]
    rows = [
        [c["id"], _cell(c["expected"]), _cell(c["computed"]), c["verdict"], c["certificate_kind"], c["description"]]
        for c in (claim.as_record() for claim in doc.claims)
    ]
    widths = [max([len(columns[i])] + [len(row[i]) for row in rows]) for i in range(len(columns) - 1)]

    def line(cells: List[str]) -> str:
        padded = [cell.ljust(width) for cell, width in zip(cells, widths)]
        return "  ".join(padded + [cells[-1]]).rstrip()

    out = [header, line(columns), "  ".join("-" * w for w in widths) + "  " + "-" * len(columns[-1])]
    out += [line(row) for row in rows]
    out.append(f"exit status: {doc.exit_status}")
    return "\n".join(out) + "\n"


def _render_csv(doc: ReportDocument) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for claim in doc.claims:
        record = claim.as_record()
        writer.writerow([_cell(record[key]) for key in CSV_HEADER])
    return buffer.getvalue()


def render_report(doc: ReportDocument, output_format: str) -> bytes:
    """Byte-identical output for identical documents."""
    if output_format == "json":
        text = json.dumps(doc.as_dict(), indent=2, ensure_ascii=False) + "\n"
    elif output_format == "csv":
        text = _render_csv(doc)
    elif output_format == "table":
        text = _render_table(doc)
    else:
        raise ConfigError(f"unsupported output format '{output_format}' (choose from {', '.join(FORMATS)})")
    return text.encode("utf-8")
