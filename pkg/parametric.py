import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

from exact_arith import FieldDescriptor, Scalar
from grammar import parse_linear_form
from linalg import ExactMatrix

LinearForm = Mapping[str, Scalar]


def parameter_name(r: int, s: int, n: int) -> str:
    """Name of the matrix coordinate at 1-based position (r, s)."""
    return f"d{r}{s}" if n < 10 else f"d{r}_{s}"


def format_linear_form(form: LinearForm) -> str:
    """Render a linear form the way the derivation matrices are displayed: "2d44-2d33", "-d41", "0"."""
    pieces = []
    for name, coefficient in form.items():
        if coefficient.value == 0:
            continue
        text = str(coefficient)
        negative = text.startswith("-")
        magnitude = text[1:] if negative else text
        if magnitude == "1":
            magnitude = ""
        elif "/" in magnitude:
            magnitude = f"({magnitude})"
        sign = "-" if negative else "+"
        pieces.append((sign, f"{magnitude}{name}"))
    if not pieces:
        return "0"
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, piece in pieces[1:]:
        out += f"{sign}{piece}"
    return out


@dataclass(frozen=True)
class ParametricFamily:
    """
    An n x n grid of linear forms in named parameters.

    The family is the linear space of matrices obtained by substituting arbitrary
    field values for the parameters; constant terms never occur.
    """
    n: int
    entries: tuple[tuple[LinearForm, ...], ...]
    parameters: tuple[str, ...]
    field: FieldDescriptor

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(row) != self.n for row in self.entries):
            raise ValueError(f"parametric grid is not {self.n}x{self.n}")
        known = set(self.parameters)
        for row in self.entries:
            for form in row:
                unknown = set(form) - known
                if unknown:
                    raise ValueError(f"entry uses undeclared parameters {sorted(unknown)}")

    @classmethod
    def from_strings(cls, grid: Sequence[Sequence[str]], field: FieldDescriptor) -> "ParametricFamily":
        """Build a family from displayed entries such as [["d11", "0"], ["d21", "2d11"]]."""
        n = len(grid)
        parameters: list[str] = []
        rows = []
        for row in grid:
            forms = []
            for text in row:
                form: dict[str, Scalar] = {}
                for term in parse_linear_form(text):
                    name = term.symbol.value
                    if name not in parameters:
                        parameters.append(name)
                    form[name] = form.get(name, field.zero()) + field.scalar(term.literal)
                forms.append({k: v for k, v in form.items() if v.value != 0})
            rows.append(tuple(forms))
        return cls(n, tuple(rows), tuple(parameters), field)

    @property
    def used_parameters(self) -> tuple[str, ...]:
        used = {name for row in self.entries for form in row for name in form}
        return tuple(p for p in self.parameters if p in used)

    @property
    def dimension(self) -> int:
        return len(self.used_parameters)

    def substitute(self, values: Mapping[str, object]) -> ExactMatrix:
        """Matrix obtained by giving each parameter a value (missing parameters are 0)."""
        scalars = {name: self.field.scalar(values.get(name, 0)) for name in self.parameters}
        zero = self.field.zero()
        rows = []
        for row in self.entries:
            rows.append([sum((c * scalars[name] for name, c in form.items()), zero) for form in row])
        return ExactMatrix.from_rows(rows, self.field, cols=self.n)

    def basis(self) -> list[ExactMatrix]:
        """One matrix per used parameter: that parameter set to 1, the others to 0."""
        return [self.substitute({name: 1}) for name in self.used_parameters]

    def render(self) -> str:
        cells = [[format_linear_form(form) for form in row] for row in self.entries]
        if not cells:
            return "[]"
        width = max(len(c) for row in cells for c in row)
        lines = ["[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells]
        logging.debug(f"Rendered {self.n}x{self.n} family with {self.dimension} parameters")
        return "\n".join(lines)

    def as_strings(self) -> list[list[str]]:
        return [[format_linear_form(form) for form in row] for row in self.entries]
