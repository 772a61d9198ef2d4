from argparse import Namespace

from config import RunConfig, report_meta
from constructions import decomposition_report, verify_claims
from reports import ReportDocument


class ClaimCommands:
    """Acceptance entry point for the eight-cubes instance and the cokernel probe."""

    def __init__(self, registry):
        self.registry = registry

    def register(self):
        self.registry.add_command("paper-verify", self.verify,
                                  "every claim about eight general cubes in 7 variables")
        self.registry.add_command("probe-decomposition", self.probe_decomposition,
                                  "quantities behind the degree-6 cokernel accounting")

    def verify(self, args: Namespace, config: RunConfig) -> ReportDocument:
        return verify_claims(config)

    def probe_decomposition(self, args: Namespace, config: RunConfig) -> ReportDocument:
        report = decomposition_report(config.seed, config.field)
        return ReportDocument(report_meta(config, "probe-decomposition"), report.claims)


def setup(registry):
    ClaimCommands(registry).register()
