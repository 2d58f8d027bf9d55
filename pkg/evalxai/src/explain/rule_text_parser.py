from typing import List, Optional

import rply  # type: ignore

from evalxai.src.explain.rule import Rule
from evalxai.src.explain.rule_normalizer import normalize_two_sided
from evalxai.src.explain.rule_text_lexer import RULE_TOKENS, RuleTextLexer


class RuleBounds:
    """an interval rule as written by a tabular explainer, either bound may be open"""

    def __init__(self, feature: str, lower: Optional[float] = None, upper: Optional[float] = None):
        self._feature = feature
        self._lower = lower
        self._upper = upper

    @property
    def feature(self) -> str:
        return self._feature

    @property
    def lower(self) -> Optional[float]:
        return self._lower

    @property
    def upper(self) -> Optional[float]:
        return self._upper

    def to_rule(self, instance_value: float) -> Rule:
        return normalize_two_sided(self._lower, self._upper, self._feature, instance_value)

    def __eq__(self, other: object) -> bool:
        return str(self) == str(other)

    def __ne__(self, other: object) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        return hash(self.__str__())

    def __str__(self) -> str:
        return f"{RuleBounds.__name__}: {self._lower!r} < {self._feature} <= {self._upper!r}"

    def __repr__(self) -> str:
        return self.__str__()


class RuleTextParser:
    """
    parses rules such as "AddedLOC > 95.00", "nCommit <= 0.62" or "2.00 < LOC <= 10.00"

    strict and non strict comparisons are treated alike since the one sided rules they normalise to
    only carry a threshold and a side.
    """

    def __init__(self, lexer: Optional[RuleTextLexer] = None):
        if lexer is None:
            lexer = RuleTextLexer()
        self._lexer = lexer
        parser_generator = rply.ParserGenerator([name for name, _ in RULE_TOKENS])

        #  pylint: disable=unused-variable
        @parser_generator.production("rule : NAME below NUMBER")
        def upper_bound(tokens: List) -> RuleBounds:
            return RuleBounds(tokens[0].getstr(), upper=float(tokens[2].getstr()))

        @parser_generator.production("rule : NAME above NUMBER")
        def lower_bound(tokens: List) -> RuleBounds:
            return RuleBounds(tokens[0].getstr(), lower=float(tokens[2].getstr()))

        @parser_generator.production("rule : NUMBER below NAME")
        def reversed_lower_bound(tokens: List) -> RuleBounds:
            return RuleBounds(tokens[2].getstr(), lower=float(tokens[0].getstr()))

        @parser_generator.production("rule : NUMBER above NAME")
        def reversed_upper_bound(tokens: List) -> RuleBounds:
            return RuleBounds(tokens[2].getstr(), upper=float(tokens[0].getstr()))

        @parser_generator.production("rule : NUMBER below NAME below NUMBER")
        def ascending_interval(tokens: List) -> RuleBounds:
            return RuleBounds(tokens[2].getstr(), lower=float(tokens[0].getstr()), upper=float(tokens[4].getstr()))

        @parser_generator.production("rule : NUMBER above NAME above NUMBER")
        def descending_interval(tokens: List) -> RuleBounds:
            return RuleBounds(tokens[2].getstr(), lower=float(tokens[4].getstr()), upper=float(tokens[0].getstr()))

        @parser_generator.production("below : LESS")
        @parser_generator.production("below : LESS_EQUAL")
        @parser_generator.production("above : GREATER")
        @parser_generator.production("above : GREATER_EQUAL")
        def comparison(tokens: List) -> rply.Token:
            return tokens[0]

        @parser_generator.error
        def error_handler(token: rply.Token):
            raise ValueError(
                f"Ran into a {token.gettokentype()} ({token.getstr()}) where it wasn't expected, "
                f"at position {token.getsourcepos()}."
            )

        self._parser = parser_generator.build()

    def parse(self, input_text: str) -> RuleBounds:
        return self._parser.parse(iter(self._lexer.lex(input_text)))


def parse_rule_text(input_text: str) -> RuleBounds:
    return RuleTextParser().parse(input_text)
