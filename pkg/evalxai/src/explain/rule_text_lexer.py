from typing import List, Tuple

import rply  # type: ignore

# earlier entries win, so the two character comparisons come before their prefixes
RULE_TOKENS: List[Tuple[str, str]] = [
    ("LESS_EQUAL", r"<="),
    ("GREATER_EQUAL", r">="),
    ("LESS", r"<"),
    ("GREATER", r">"),
    ("NUMBER", r"[-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?"),
    ("NAME", r"[A-Za-z_][A-Za-z0-9_.]*"),
]


class RuleTextLexer:
    def __init__(self):
        partial_lexer = rply.LexerGenerator()
        for name, regex in RULE_TOKENS:
            partial_lexer.add(name, regex)
        partial_lexer.ignore(r"\s+")
        self._lexer = partial_lexer.build()

    def lex(self, input_text: str) -> List[rply.Token]:
        try:
            return list(self._lexer.lex(input_text))
        except rply.errors.LexingError as exception:
            column = exception.getsourcepos().idx
            start = max(0, column - 50)
            message = f"unexpected character in rule\n{input_text[start:column + 50]}\n{'-' * (column - start)}^"
            raise ValueError(message) from exception
