from argparse import Namespace
from pathlib import Path

from config import RunConfig, int_list, load_pins, report_meta
from constructions import pencil_report
from error_handler import ConfigError
from fat_points import (
    FatPointSystem,
    ah_exceptional,
    ah_sweep,
    general_points,
    linear_system_dimension,
    load_points_file,
)
from log_handler import logger
from reports import EVIDENCE, PROOF, REFERENCE, ClaimBook, ReportDocument


class GeometryCommands:
    """Linear systems with fat base points, the double point classification and the pencil of cubics."""

    def __init__(self, registry):
        self.registry = registry

    def register(self):
        fatpoints = self.registry.add_command("fatpoints", self.fatpoints, "dimension of a linear system with fat points")
        fatpoints.add_argument("--proj-dim", type=int, required=True, help="projective dimension n")
        fatpoints.add_argument("--degree", type=int, required=True, help="degree d of the hypersurfaces")
        fatpoints.add_argument("--mults", type=int_list, required=True, help="multiplicities m1,m2,...")
        fatpoints.add_argument("--points", type=Path, default=None, help="points file overriding the random points")

        table = self.registry.add_command("ah-table", self.ah_table, "double point systems against the exceptional list")
        table.add_argument("--n-max", type=int, default=5, help="largest projective dimension")
        table.add_argument("--degrees", type=int_list, default=[2, 3, 4], help="degrees to sweep")
        table.add_argument("--s-max", type=int, default=20, help="largest number of double points")
        table.add_argument("--seeds", type=int, default=3, help="random configurations per system")

        self.registry.add_command("pencil", self.pencil, "the pencil of cubics through 9 double points of P^5")

    # =============================================================================================
    # FAT POINTS
    # =============================================================================================

    def fatpoints(self, args: Namespace, config: RunConfig) -> ReportDocument:
        field = config.field
        mults = list(args.mults)
        if args.points is not None:
            points = load_points_file(args.points, args.proj_dim, field)
            if len(mults) == 1:
                mults = mults * len(points)
            if len(mults) != len(points):
                raise ConfigError(f"{len(mults)} multiplicities for {len(points)} points in {args.points}")
        else:
            points = general_points(len(mults), args.proj_dim, config.seed, field)

        system = FatPointSystem(args.proj_dim, args.degree, tuple(zip(points, mults)), field)
        result = linear_system_dimension(system)

        book = ClaimBook()
        book.record("fat.actual", f"degree-{args.degree} forms on P^{args.proj_dim} with the given fat points",
                    result.actual, certificate=PROOF if not result.special else EVIDENCE)
        book.record("fat.expected", "expected dimension", result.expected)
        book.record("fat.raw_expected", "unclamped expected dimension", result.raw_expected)
        book.record("fat.defect", "actual minus expected", result.defect)
        book.record("fat.conditions", "condition rows", result.conditions)
        book.record("fat.conditions_imposed", "rank of the condition matrix", result.conditions_imposed)
        if mults and all(m == 2 for m in mults):
            book.record("fat.ah_listed", "on the double point exceptional list",
                        ah_exceptional(args.proj_dim, args.degree, len(mults)))
        return ReportDocument(report_meta(config, "fatpoints"), tuple(book.claims))

    # =============================================================================================
    # AH TABLE
    # =============================================================================================

    def ah_table(self, args: Namespace, config: RunConfig) -> ReportDocument:
        if args.seeds < 1:
            raise ConfigError(f"seeds must be at least 1, got {args.seeds}")
        seeds = [config.seed + i for i in range(args.seeds)]
        rows = ah_sweep(args.n_max, args.degrees, args.s_max, seeds, config.field)

        book = ClaimBook()
        for row in rows:
            listed = "listed" if row.listed else "not listed"
            book.check(
                f"ah.n{row.n}.d{row.d}.s{row.s}",
                f"defect of {row.s} double points on degree-{row.d} forms of P^{row.n} ({listed}, actual {row.actual})",
                "exceptional cases listed by the double point classification",
                REFERENCE,
                1 if row.listed else 0,
                lambda _, row=row: row.defect,
                relation="ge" if row.listed else "eq",
                certificate=EVIDENCE if row.defect else PROOF,
                reseed=False,
            )
        mismatches = sum(not row.consistent for row in rows)
        if mismatches:
            logger.warning(f"⚠️ {mismatches} systems disagree with the exceptional list")
        return ReportDocument(report_meta(config, "ah-table"), tuple(book.claims))

    # =============================================================================================
    # PENCIL
    # =============================================================================================

    def pencil(self, args: Namespace, config: RunConfig) -> ReportDocument:
        book = ClaimBook(load_pins(config.pins_path))
        report = pencil_report(config.seed, config.field, book)
        return ReportDocument(report_meta(config, "pencil"), report.claims)


def setup(registry):
    GeometryCommands(registry).register()
