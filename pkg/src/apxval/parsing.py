"""Series and polynomial literals.

Grammar (whitespace insignificant):

    series := term ('+' term)* ('+' 'O(' 't^' rational ')')?
    term   := coeff? ('*')? 't^' '(' rational ')'  |  't^' '(' rational ')'
            | coeff
    coeff  := '-'? integer           (reduced mod p)
    rational := '-'? int ('/' int)?

    poly   := pterm ('+' pterm)*
    pterm  := '(' series ')' ('*')? 'X' ('^' int)?  |  'X' ('^' int)?
            | '(' series ')'  |  coeff

Example: "t^(-1/2) + 2*t^(1/3) + O(t^2)".  The printer round-trips exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import PreconditionError
from .ordval import INF, GroupValue
from .hahn import Series


class ParseError(PreconditionError):
    """Syntax error with position information."""

    def __init__(self, text: str, pos: int, message: str):
        super().__init__(f"at position {pos}: {message} in {text!r}")
        self.pos = pos


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, tok: str) -> bool:
        self.skip_ws()
        if self.text.startswith(tok, self.pos):
            self.pos += len(tok)
            return True
        return False

    def expect(self, tok: str):
        if not self.eat(tok):
            raise ParseError(self.text, self.pos, f"expected {tok!r}")

    def integer(self) -> int:
        self.skip_ws()
        m = re.match(r"-?\d+", self.text[self.pos :])
        if not m:
            raise ParseError(self.text, self.pos, "expected an integer")
        self.pos += m.end()
        return int(m.group())

    def rational(self) -> Fraction:
        num = self.integer()
        if self.eat("/"):
            den = self.integer()
            if den == 0:
                raise ParseError(self.text, self.pos, "zero denominator")
            return Fraction(num, den)
        return Fraction(num)

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_exponent(sc: _Scanner) -> Fraction:
    sc.expect("t")
    if not sc.eat("^"):
        return Fraction(1)
    if sc.eat("("):
        e = sc.rational()
        sc.expect(")")
        return e
    return Fraction(sc.integer())


def parse_series(text: str, p: int) -> Series:
    sc = _Scanner(text)
    terms: list[tuple[Fraction, int]] = []
    precision: GroupValue = INF
    while True:
        sc.skip_ws()
        if sc.eat("O("):
            precision = _parse_exponent(sc)
            sc.expect(")")
            if not sc.at_end():
                raise ParseError(text, sc.pos, "trailing input after O-term")
            break
        if sc.peek() == "t":
            terms.append((_parse_exponent(sc), 1))
        else:
            c = sc.integer()
            if sc.eat("*"):
                sc.skip_ws()
                terms.append((_parse_exponent(sc), c % p))
            elif sc.peek() == "t":
                terms.append((_parse_exponent(sc), c % p))
            else:
                terms.append((Fraction(0), c % p))
        if not sc.eat("+"):
            if not sc.at_end():
                raise ParseError(text, sc.pos, "expected '+' or end")
            break
    return Series.make(p, terms, precision)


def _format_exponent(e: Fraction) -> str:
    if e.denominator == 1 and e >= 0:
        return f"t^{e.numerator}" if e != 1 else "t"
    return f"t^({e})"


def format_series(s: Series) -> str:
    parts = []
    for e, c in s.terms:
        if e == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(_format_exponent(e))
        else:
            parts.append(f"{c}*{_format_exponent(e)}")
    if s.precision is not INF:
        parts.append(f"O({_format_exponent(s.precision)})")
    if not parts:
        return "0"
    return " + ".join(parts)


def parse_poly(text: str, p: int):
    from .valpoly import ValPoly

    sc = _Scanner(text)
    coeffs: dict[int, Series] = {}
    while True:
        coeff = Series.one(p)
        have_coeff = False
        sc.skip_ws()
        if sc.peek() == "(":
            sc.expect("(")
            depth = 1
            start = sc.pos
            while depth:
                if sc.pos >= len(sc.text):
                    raise ParseError(text, start, "unbalanced parenthesis")
                ch = sc.text[sc.pos]
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
                sc.pos += 1
            coeff = parse_series(sc.text[start : sc.pos - 1], p)
            have_coeff = True
            sc.eat("*")
        elif sc.peek() == "t":
            coeff = parse_series_prefix(sc, p)
            have_coeff = True
            sc.eat("*")
        elif sc.peek() not in ("X", ""):
            coeff = Series.make(p, [(0, sc.integer())])
            have_coeff = True
            sc.eat("*")
        if sc.eat("X"):
            deg = sc.integer() if sc.eat("^") else 1
        else:
            if not have_coeff:
                raise ParseError(text, sc.pos, "expected a term")
            deg = 0
        coeffs[deg] = coeffs.get(deg, Series.zero(p)) + coeff
        if not sc.eat("+"):
            if not sc.at_end():
                raise ParseError(text, sc.pos, "expected '+' or end")
            break
    top = max(coeffs) if coeffs else 0
    return ValPoly(p, tuple(coeffs.get(i, Series.zero(p)) for i in range(top + 1)))


def parse_series_prefix(sc: _Scanner, p: int) -> Series:
    e = _parse_exponent(sc)
    return Series.make(p, [(e, 1)])


def format_poly(f) -> str:
    parts = []
    for i in range(f.degree(), -1, -1):
        c = f.coeffs[i]
        if not c.terms and c.precision is INF:
            continue
        if i == 0:
            parts.append(f"({format_series(c)})")
        else:
            x = "X" if i == 1 else f"X^{i}"
            if len(c.terms) == 1 and c.terms[0] == (Fraction(0), 1) and c.precision is INF:
                parts.append(x)
            else:
                parts.append(f"({format_series(c)})*{x}")
    if not parts:
        return "(0)"
    return " + ".join(parts)
