import argparse
import logging
import logging.handlers
import os
import sys
from pathlib import Path

import config
from algebra import AlgebraError, check_axioms, direct_sum, invariants, with_field
from algebra_document import DocumentParseError, load_algebra, serialize_algebra
from catalog import CATALOG_NAMES, catalog_entry
from derivations import (ClosureError, SolverConsistencyError, der_structure_constants,
                         derivation_basis, render_parametric, verify_catalog)
from exact_arith import FieldDescriptor, FieldError, FieldMismatchError, parse_field
from linalg import ExactMatrix, ShapeError
from reference_families import ReferenceFamilyError
from report import build_report, to_json, verification_dict

EXIT_OK = 0
EXIT_AXIOM_VIOLATION = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3

# Input problems the user can fix; reported as a one-line error with exit 2
USER_ERRORS = (DocumentParseError, FieldError, FieldMismatchError, AlgebraError, ReferenceFamilyError,
               ShapeError, OSError)


def format_matrix(m: ExactMatrix, indent: str = "") -> str:
    cells = [[str(x) for x in row] for row in m.as_rows()]
    if not cells:
        return indent + "[]"
    width = max(len(c) for row in cells for c in row)
    return "\n".join(indent + "[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def _describe_witness(report) -> list[str]:
    lines = []
    if report.commutative:
        lines.append("commutative: yes")
    else:
        i, j, k = report.commutative_witness
        lines.append(f"commutative: no (e{i}*e{j} and e{j}*e{i} differ in coordinate {k})")
    if report.jacobi:
        lines.append("jacobi: yes")
    else:
        i, j, k, l = report.jacobi_witness
        lines.append(f"jacobi: no (jacobiator of e{i}, e{j}, e{k} is nonzero in coordinate {l})")
    lines.append(f"mock-lie: {'yes' if report.mock_lie else 'no'}")
    return lines


class CliRunner:

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.as_json = args.json
        self.field_override = parse_field(args.field) if args.field else None
        self.handlers = {
            "check": self.check,
            "derive": self.derive,
            "bracket-table": self.bracket_table,
            "sum": self.sum_documents,
            "catalog": self.catalog,
            "verify-catalog": self.verify_catalog,
            "fingerprint": self.fingerprint,
        }

    def emit(self, text: str):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")

    def _load(self, path: str):
        return load_algebra(path, self.field_override)

    def check(self) -> int:
        algebra = self._load(self.args.file)
        report = check_axioms(algebra)
        if self.as_json:
            self.emit(to_json(build_report(algebra, axioms=report)))
        else:
            self.emit("\n".join([f"{algebra.name}: dim {algebra.dim} over {algebra.field}"] + _describe_witness(report)))
        return EXIT_OK if report.mock_lie else EXIT_AXIOM_VIOLATION

    def derive(self) -> int:
        algebra = self._load(self.args.file)
        space = derivation_basis(algebra)
        if self.as_json:
            self.emit(to_json(build_report(algebra, der=space)))
            return EXIT_OK
        lines = [f"Der({algebra.name}): dim {space.dim} over {algebra.field}", "basis:"]
        for idx, d in enumerate(space.basis, start=1):
            lines.append(f"  D{idx} =")
            lines.append(format_matrix(d, indent="    "))
        lines.append("parametric:")
        lines.append(render_parametric(space).render())
        self.emit("\n".join(lines))
        return EXIT_OK

    def bracket_table(self) -> int:
        algebra = self._load(self.args.file)
        space = derivation_basis(algebra)
        tensor = der_structure_constants(algebra, space)
        if self.as_json:
            doc = build_report(algebra)
            doc["der_dim"] = space.dim
            doc["brackets"] = [[p, q, r, str(c)] for (p, q, r), c in tensor.coeffs.items()]
            self.emit(to_json(doc))
            return EXIT_OK
        lines = [f"Der({algebra.name}): dim {space.dim}"]
        for p, q in tensor.pairs():
            if p > q:
                continue
            terms = " + ".join(f"{c}*D{r}" if str(c) != "1" else f"D{r}" for r, c in tensor.pair_terms(p, q))
            lines.append(f"[D{p}, D{q}] = {terms}")
        if len(lines) == 1:
            lines.append("all brackets vanish")
        self.emit("\n".join(lines))
        return EXIT_OK

    def sum_documents(self) -> int:
        left = self._load(self.args.left)
        right = self._load(self.args.right)
        total = direct_sum(left, right)
        document = serialize_algebra(total)
        if self.args.output:
            Path(self.args.output).write_text(document, encoding="utf-8")
            logging.info(f"Wrote {total.name} to {self.args.output}")
            if self.as_json:
                self.emit(to_json(build_report(total)))
        elif self.as_json:
            doc = build_report(total)
            doc["document"] = document
            self.emit(to_json(doc))
        else:
            self.emit(document)
        return EXIT_OK

    def catalog(self) -> int:
        field = self.field_override or FieldDescriptor.rationals()
        if self.args.action == "show":
            if not self.args.name:
                raise AlgebraError("catalog show needs an entry name")
            entry = with_field(catalog_entry(self.args.name), field)
            if self.as_json:
                self.emit(to_json(build_report(entry, axioms=check_axioms(entry), der=derivation_basis(entry),
                                               invariants=invariants(entry))))
            else:
                self.emit(serialize_algebra(entry))
            return EXIT_OK

        records = [(name, invariants(with_field(catalog_entry(name), field))) for name in CATALOG_NAMES]
        if self.as_json:
            self.emit(to_json({
                "format": 1,
                "field": field.label(),
                "catalog": [build_report(with_field(catalog_entry(name), field), invariants=inv)
                            for name, inv in records],
            }))
        else:
            for name, inv in records:
                self.emit(f"{name:<20} dim {inv.dim}  square {inv.dim_square}  "
                          f"annihilator {inv.dim_annihilator}  der {inv.dim_der}")
        return EXIT_OK

    def verify_catalog(self) -> int:
        field = self.field_override or FieldDescriptor.rationals()
        reports = verify_catalog(field)
        if self.as_json:
            self.emit(to_json({
                "format": 1,
                "field": field.label(),
                "verification": [verification_dict(r) for r in reports],
            }))
        else:
            for r in reports:
                status = "EQUAL" if r.spaces_equal else "MISMATCH"
                self.emit(f"{status:<8} {r.catalog_name:<20} computed {r.computed_dim}  reference {r.reference_dim}")
                if r.discrepancy is not None:
                    self.emit(f"  witness in {r.discrepancy_side} space only:")
                    self.emit(format_matrix(r.discrepancy, indent="    "))
        return EXIT_OK if all(r.spaces_equal for r in reports) else EXIT_MISMATCH

    def fingerprint(self) -> int:
        algebra = self._load(self.args.file)
        inv = invariants(algebra)
        if self.as_json:
            self.emit(to_json(build_report(algebra, invariants=inv)))
        else:
            self.emit(f"{algebra.name}: dim {inv.dim}  square {inv.dim_square}  "
                      f"annihilator {inv.dim_annihilator}  der {inv.dim_der}")
        return EXIT_OK

    def run(self) -> int:
        return self.handlers[self.args.command]()


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool):
    # Subcommands get the flags too, without clobbering values given before the subcommand.
    default_json = argparse.SUPPRESS if suppress else False
    default_field = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true", default=default_json, help="emit a JSON report")
    parser.add_argument("--field", default=default_field, metavar="gf:<p>",
                        help="reinterpret integer coefficients in another field")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="main.py", description="Exact derivation algebras of Mock-Lie algebras")
    _add_global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        _add_global_flags(p, suppress=True)
        return p

    command("check", "check commutativity and the Jacobi identity").add_argument("file")
    command("derive", "basis and parametric form of Der(L)").add_argument("file")
    command("bracket-table", "Lie structure constants of Der(L)").add_argument("file")
    p = command("sum", "direct sum of two algebras")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("-o", "--output", help="write the document here instead of stdout")
    p = command("catalog", "the algebras of dimension at most 4")
    p.add_argument("action", nargs="?", choices=["list", "show"], default="list")
    p.add_argument("name", nargs="?")
    command("verify-catalog", "compare Der(L) with the reference families")
    command("fingerprint", "isomorphism invariants").add_argument("file")
    return parser


def validate_configuration() -> bool:
    validation_errors = []

    if not isinstance(logging.getLevelName(config.LOG_LEVEL), int):
        validation_errors.append(f"LOG_LEVEL {config.LOG_LEVEL} is not a logging level")
    if config.VERIFY_MAX_WORKERS < 1:
        validation_errors.append("VERIFY_MAX_WORKERS must be positive")
    if config.ORACLE_MAX_MATRICES < 1:
        validation_errors.append("ORACLE_MAX_MATRICES must be positive")
    if config.PROPERTY_SAMPLES < 1:
        validation_errors.append("PROPERTY_SAMPLES must be positive")
    if config.RANDOM_ENTRY_BOUND < 1:
        validation_errors.append("RANDOM_ENTRY_BOUND must be positive")
    if config.JSON_INDENT < 0:
        validation_errors.append("JSON_INDENT must be non-negative")
    if config.LOG_FILE_ENABLED and config.LOG_FILE_BACKUP_COUNT < 0:
        validation_errors.append("LOG_FILE_BACKUP_COUNT must be non-negative")

    if validation_errors:
        for error in validation_errors:
            logging.error(f"Configuration error: {error}")
        return False
    logging.debug("Configuration validation passed")
    return True


def run_cli(argv: list[str]) -> int:
    """Run one command and return its exit code: 0 ok, 1 axiom violation, 2 usage or input error, 3 mismatch."""
    if not validate_configuration():
        return EXIT_USAGE

    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse has already printed usage or help
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        return CliRunner(args).run()
    except USER_ERRORS as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except (ClosureError, SolverConsistencyError) as e:
        logging.error(f"Derivation solver failed: {e}")
        return EXIT_USAGE
    except Exception as e:
        logging.exception(f"Unexpected failure in {args.command}: {e}")
        return EXIT_USAGE


def setup_logging():
    handlers = [logging.StreamHandler(sys.stderr)]  # stdout carries the reports
    if config.LOG_FILE_ENABLED:
        os.makedirs(config.LOG_DIR, exist_ok=True)
        handlers.append(logging.handlers.RotatingFileHandler(
            os.path.join(config.LOG_DIR, "derivation_tool.log"),
            maxBytes=config.LOG_FILE_MAX_BYTES,
            backupCount=config.LOG_FILE_BACKUP_COUNT,
        ))

    logging.basicConfig(
        level=config.LOG_LEVEL if isinstance(logging.getLevelName(config.LOG_LEVEL), int) else logging.WARNING,
        format=(
            "%(asctime)s [%(levelname)s] [%(process)d:%(threadName)s] "
            "%(name)s:%(filename)s:%(lineno)d - %(message)s"
        ),
        handlers=handlers,
    )


if __name__ == "__main__":
    setup_logging()
    sys.exit(run_cli(sys.argv[1:]))
