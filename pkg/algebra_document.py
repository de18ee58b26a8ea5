import logging
from pathlib import Path

import pyparsing as pp

import config
from algebra import Algebra, StructureTensor, check_axioms, with_field
from exact_arith import FieldDescriptor, FieldError
from grammar import DIM_LINE, FIELD_LINE, NAME_LINE, PRODUCT_LINE, SYMMETRIC_LINE

FORMAT_HEADER = "# format 1"


class DocumentParseError(ValueError):
    """Parse failure with the 1-based line and column of the offending text."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


def document_name(label: str) -> str:
    """Single-line form of an algebra name, with whitespace runs collapsed to one space."""
    return " ".join(label.split())


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _parse_line(grammar: pp.ParserElement, text: str, lineno: int) -> pp.ParseResults:
    try:
        return grammar.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise DocumentParseError(f"syntax error: {e.msg}", lineno, e.col) from e


def parse_algebra(text: str, name: str = "document") -> Algebra:
    """
    Parse an algebra document.

    One statement per line, "#" starts a comment:
        field rational | field gf <p>     (optional, before dim; default rational)
        dim <n>                          (required before any product)
        name <label>                     (optional; the rest of the line, "#" included)
        symmetric on|off                 (optional, default from config)
        e<i> * e<j> = <terms> | 0

    With symmetric on, each stated product e_i*e_j is mirrored to e_j*e_i unless
    e_j*e_i is stated explicitly. Stating the same ordered pair twice is an error.

    Raises:
        DocumentParseError: with line and column of the failure.
    """
    field = None
    dim = None
    symmetric = None
    explicit: dict[tuple[int, int], dict[int, object]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.split(None, 1)[:1] == ["name"]:
            # The label runs to the end of the line, "#" included
            name = document_name(_parse_line(NAME_LINE, raw.strip(), lineno)["name"])
            continue
        line = _strip_comment(raw)
        if not line.strip():
            continue
        keyword = line.split()[0]

        if keyword == "field":
            if field is not None or dim is not None:
                raise DocumentParseError("field must be stated once, before dim", lineno)
            tokens = _parse_line(FIELD_LINE, line, lineno)
            try:
                field = (FieldDescriptor.rationals() if tokens["kind"] == "rational"
                         else FieldDescriptor.prime(tokens["modulus"]))
            except FieldError as e:
                raise DocumentParseError(str(e), lineno, line.index(keyword) + 1) from e
        elif keyword == "dim":
            if dim is not None:
                raise DocumentParseError("dim stated twice", lineno)
            dim = _parse_line(DIM_LINE, line, lineno)["dim"]
            field = field or FieldDescriptor.rationals()
        elif keyword == "symmetric":
            if symmetric is not None:
                raise DocumentParseError("symmetric stated twice", lineno)
            symmetric = _parse_line(SYMMETRIC_LINE, line, lineno)["state"] == "on"
        else:
            if dim is None:
                raise DocumentParseError("dim must be stated before products", lineno)
            tokens = _parse_line(PRODUCT_LINE, line, lineno)
            left, right, rhs = tokens[0], tokens[1], tokens[2]
            for symbol in [left, right] + [term.symbol for term in rhs]:
                if not 1 <= symbol.value <= dim:
                    raise DocumentParseError(f"index {symbol.value} exceeds dim {dim}", lineno, symbol.column)
            pair = (left.value, right.value)
            if pair in explicit:
                raise DocumentParseError(f"product e{pair[0]} * e{pair[1]} stated twice", lineno, left.column)
            terms: dict[int, object] = {}
            for term in rhs:
                try:
                    coefficient = field.scalar(term.literal)
                except (FieldError, ZeroDivisionError) as e:
                    raise DocumentParseError(f"malformed scalar: {e}", lineno, term.symbol.column) from e
                k = term.symbol.value
                terms[k] = terms.get(k, field.zero()) + coefficient
            explicit[pair] = terms

    if dim is None:
        raise DocumentParseError("missing dim statement", max(1, len(text.splitlines())))
    if symmetric is None:
        symmetric = config.DEFAULT_SYMMETRIC

    products = dict(explicit)
    if symmetric:
        for (i, j), terms in explicit.items():
            products.setdefault((j, i), terms)

    coeffs = {(i, j, k): c for (i, j), terms in products.items() for k, c in terms.items()}
    algebra = Algebra(name, StructureTensor(dim, coeffs, field))
    logging.debug(f"Parsed {name}: dim {dim} over {field}, {len(algebra.tensor.coeffs)} nonzero constants")
    return algebra


def _format_rhs(terms: list[tuple[int, object]]) -> str:
    out = ""
    for k, c in terms:
        text = str(c)
        negative = text.startswith("-")
        magnitude = text[1:] if negative else text
        body = f"e{k}" if magnitude == "1" else f"{magnitude}e{k}"
        if not out:
            out = ("-" if negative else "") + body
        else:
            out += (" - " if negative else " + ") + body
    return out


def serialize_algebra(a: Algebra) -> str:
    """
    Canonical, byte-deterministic document for an algebra.

    Commutative tensors are written with "symmetric on" and i <= j products only;
    anything else uses "symmetric off" and lists every product.
    """
    commutative = check_axioms(a).commutative
    lines = [
        FORMAT_HEADER,
        f"name {document_name(a.name)}",
        "field rational" if not a.field.is_prime_field else f"field gf {a.field.modulus}",
        f"dim {a.dim}",
        f"symmetric {'on' if commutative else 'off'}",
    ]
    for i, j in sorted(a.tensor.pairs()):
        if commutative and i > j:
            continue
        lines.append(f"e{i} * e{j} = {_format_rhs(a.tensor.pair_terms(i, j))}")
    return "\n".join(lines) + "\n"


def load_algebra(path: str | Path, field_override: FieldDescriptor | None = None) -> Algebra:
    """
    Read a document from disk; the default name is the file stem.

    A field override reinterprets integer coefficients; non-integer rationals are rejected.
    """
    path = Path(path)
    algebra = parse_algebra(path.read_text(encoding="utf-8"), name=document_name(path.stem))
    if field_override is not None:
        algebra = with_field(algebra, field_override)
        logging.info(f"Reinterpreted {algebra.name} over {field_override}")
    return algebra
