from argparse import ArgumentParser, Namespace
from typing import Tuple

from artinian import (
    PowerIdealSpec,
    froberg_expected,
    general_instance,
    hilbert_dimension,
    hilbert_function,
    koszul_basis,
    lefschetz_step,
    syzygy_dimension,
    wlp_profile,
)
from config import RunConfig, int_list, report_meta
from log_handler import logger
from poly_ring import LinearForm
from reports import EVIDENCE, PROOF, ClaimBook, ReportDocument, certify_when


def _instance_arguments(parser: ArgumentParser):
    parser.add_argument("--vars", type=int, default=7, help="number of variables v")
    parser.add_argument("--gens", type=int, default=8, help="number of general linear forms")
    parser.add_argument("--power", type=int, default=3, help="common power k of the generators")
    parser.add_argument("--powers", type=int_list, default=None, help="one power per generator, overrides --power")


def _instance(args: Namespace, config: RunConfig) -> Tuple[PowerIdealSpec, LinearForm]:
    power = args.powers if args.powers else args.power
    count = len(args.powers) if args.powers else args.gens
    return general_instance(args.vars, count, power, config.seed, config.field)


class AlgebraCommands:
    """Hilbert functions, Lefschetz steps and syzygies of ideals of powers of general linear forms."""

    def __init__(self, registry):
        self.registry = registry

    def register(self):
        hilbert = self.registry.add_command("hilbert", self.hilbert, "dimensions of A = R/I degree by degree")
        _instance_arguments(hilbert)
        hilbert.add_argument("--degree", type=int, default=None, help="a single degree instead of the whole function")

        wlp = self.registry.add_command("wlp", self.wlp, "rank of multiplication by a general linear form")
        _instance_arguments(wlp)
        wlp.add_argument("--degree", type=int, default=None, help="a single map A_d -> A_{d+1}")

        syzygies = self.registry.add_command("syzygies", self.syzygies, "syzygies among the generators")
        _instance_arguments(syzygies)
        syzygies.add_argument("--t", type=int, required=True, help="degree of the syzygy coefficients")
        syzygies.add_argument("--koszul", action="store_true", help="also build and verify the Koszul basis")

    # =============================================================================================
    # HILBERT
    # =============================================================================================

    def hilbert(self, args: Namespace, config: RunConfig) -> ReportDocument:
        spec, _ = _instance(args, config)
        book = ClaimBook()
        if args.degree is not None:
            degrees = [args.degree]
            dims = [hilbert_dimension(spec, args.degree)]
        else:
            function = hilbert_function(spec, config.max_degree)
            degrees, dims = list(range(len(function.dims))), list(function.dims)

        # generic series: annotation only
        generic = froberg_expected(spec.v, spec.powers, max(degrees))
        for d, dim in zip(degrees, dims):
            book.record(f"A{d}.dim", f"dim A_{d} (generic series {generic[d]})", dim,
                        certificate=certify_when(lambda v, g=generic[d]: v == g))
        if args.degree is None:
            book.record("hilbert.socle_degree", "largest degree with A_d nonzero", function.socle_degree)
            book.record("hilbert.terminated", "how the computation stopped", function.terminated)
        logger.info(f"✅ Hilbert function of {len(spec.generators)} generators in {spec.v} variables: {dims}")
        return ReportDocument(report_meta(config, "hilbert"), tuple(book.claims))

    # =============================================================================================
    # WLP
    # =============================================================================================

    def wlp(self, args: Namespace, config: RunConfig) -> ReportDocument:
        spec, L = _instance(args, config)
        book = ClaimBook()
        if args.degree is not None:
            steps = [lefschetz_step(spec, L, args.degree)]
        else:
            profile = wlp_profile(spec, L, config.max_degree)
            steps = [step for step in profile.steps if step.dim_source and step.dim_target]

        for step in steps:
            certificate = PROOF if step.maximal_rank else EVIDENCE
            arrow = f"xL: A_{step.degree} ({step.dim_source}) -> A_{step.degree + 1} ({step.dim_target}), rank {step.rank}"
            book.record(f"step.{step.degree}.kernel", f"kernel of {arrow}", step.kernel_dim, certificate=certificate)
            book.record(f"step.{step.degree}.coker", f"cokernel of {arrow}", step.coker_dim, certificate=certificate)

        if args.degree is None:
            book.record("wlp.failing", "degrees where xL has not maximal rank", list(profile.failing_degrees))
            book.record("wlp.injectivity_propagates", "injectivity in degree d implies injectivity below d",
                        profile.injectivity_propagates)
        return ReportDocument(report_meta(config, "wlp"), tuple(book.claims))

    # =============================================================================================
    # SYZYGIES
    # =============================================================================================

    def syzygies(self, args: Namespace, config: RunConfig) -> ReportDocument:
        spec, _ = _instance(args, config)
        book = ClaimBook()
        count = syzygy_dimension(spec, args.t)
        book.record(f"syz.t{args.t}", f"syzygies with coefficients of degree {args.t}", count.dimension,
                    certificate=certify_when(lambda v: v == count.koszul_lower_bound))
        book.record(f"syz.t{args.t}.koszul_bound", "Koszul lower bound", count.koszul_lower_bound, certificate=PROOF)
        if args.koszul:
            basis = koszul_basis(spec, args.t)
            book.record(f"syz.t{args.t}.koszul_basis", "Koszul vectors verified in the kernel and independent",
                        len(basis), certificate=PROOF)
        return ReportDocument(report_meta(config, "syzygies"), tuple(book.claims))


def setup(registry):
    AlgebraCommands(registry).register()
