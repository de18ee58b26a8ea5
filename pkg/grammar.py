"""
pyparsing grammar shared by the algebra document parser and the reference families.

Both formats write signed sums of coefficient-times-symbol terms:
"e2 + 2e4", "-1/2 * e3", "d44-d33", "2d44-2d33".
"""
from dataclasses import dataclass
from typing import Any

import pyparsing as pp


@dataclass(frozen=True)
class Symbol:
    value: Any
    column: int


@dataclass(frozen=True)
class Term:
    sign: int
    coefficient: str | None
    symbol: Symbol

    @property
    def literal(self) -> str:
        """Signed coefficient literal, "1" when omitted."""
        text = self.coefficient or "1"
        return text if self.sign > 0 else "-" + text


# Parse actions take the full (s, loc, toks) signature; pyparsing's arity detection for
# shorter ones is not thread-safe and the catalog is verified on worker threads.
def _symbol(pattern: str, convert) -> pp.ParserElement:
    def action(s, loc, toks):
        return Symbol(convert(toks[0]), pp.col(loc, s))
    return pp.Regex(pattern).set_parse_action(action)


BASIS = _symbol(r"e\d+", lambda text: int(text[1:]))
PARAMETER = _symbol(r"d\d+(?:_\d+)?", str)
COEFFICIENT = pp.Regex(r"\d+(?:/\d+)?")
INTEGER = pp.Regex(r"\d+").set_parse_action(lambda s, loc, toks: int(toks[0]))


def _to_term(s, loc, toks) -> Term:
    group = toks[0]
    return Term(
        sign=-1 if group.get("sign") == "-" else 1,
        coefficient=group.get("coefficient"),
        symbol=group["symbol"],
    )


def linear_combination(atom: pp.ParserElement) -> pp.ParserElement:
    """Signed sum of terms "[coefficient][*] atom"; the first sign is optional."""
    sign = pp.one_of("+ -")("sign")
    body = pp.Opt(COEFFICIENT("coefficient") + pp.Opt(pp.Suppress("*"))) + atom("symbol")
    first = pp.Group(pp.Opt(sign) + body).set_parse_action(_to_term)
    rest = pp.Group(sign + body).set_parse_action(_to_term)
    return first + pp.ZeroOrMore(rest)


def zero_or(combination: pp.ParserElement) -> pp.ParserElement:
    """Either the literal 0 or a linear combination, filling the whole input."""
    zero = pp.Group(pp.Suppress("0")) + pp.StringEnd()
    return zero | (pp.Group(combination) + pp.StringEnd())


FIELD_LINE = pp.Keyword("field") + (
    pp.Keyword("rational")("kind") | (pp.Keyword("gf")("kind") + INTEGER("modulus"))
) + pp.StringEnd()
DIM_LINE = pp.Keyword("dim") + INTEGER("dim") + pp.StringEnd()
SYMMETRIC_LINE = pp.Keyword("symmetric") + (pp.Keyword("on") | pp.Keyword("off"))("state") + pp.StringEnd()
NAME_LINE = pp.Keyword("name") + pp.Regex(r".+")("name") + pp.StringEnd()
PRODUCT_LINE = (
    BASIS("left") + pp.Suppress("*") + BASIS("right") + pp.Suppress("=")
    + zero_or(linear_combination(BASIS))
)
LINEAR_FORM = zero_or(linear_combination(PARAMETER))


def parse_linear_form(text: str) -> list[Term]:
    """Parse an entry such as "2d44-2d33" or "0" into its terms."""
    return list(LINEAR_FORM.parse_string(text, parse_all=True)[0])
