"""Rendering of canonical polynomials and ratios in the expression grammar."""

import sympy

from .symbols import ordered_atoms


def _format_monomial(coeff: sympy.Rational, powers: tuple[int, ...], gens: list[sympy.Symbol]) -> tuple[bool, str]:
    factors = []
    for gen, power in zip(gens, powers):
        if power == 0:
            continue
        factors.append(gen.name if power == 1 else f"{gen.name}^{power}")

    magnitude = abs(coeff)
    if not factors:
        body = str(magnitude)
    elif magnitude == 1:
        body = "*".join(factors)
    else:
        body = f"{magnitude}*" + "*".join(factors)
    return bool(coeff < 0), body


def format_polynomial(expr: sympy.Expr) -> str:
    """Terms in descending graded-lex order over the canonical symbol order."""
    expr = sympy.sympify(expr)
    if expr == 0:
        return "0"
    gens = ordered_atoms(expr.free_symbols)
    if not gens:
        return str(sympy.Rational(expr))

    poly = sympy.Poly(expr, *gens, domain=sympy.QQ)
    parts: list[str] = []
    for i, (monom, coeff) in enumerate(poly.terms(order="grlex")):
        negative, body = _format_monomial(sympy.Rational(coeff), monom, gens)
        if i == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


def _is_bare_power(expr: sympy.Expr) -> bool:
    if expr.is_Symbol:
        return True
    return bool(expr.is_Pow and expr.base.is_Symbol and expr.exp.is_Integer and expr.exp > 0)


def format_ratio(num: sympy.Expr, den: sympy.Expr) -> str:
    numerator = format_polynomial(num)
    if den == 1:
        return numerator
    denominator = format_polynomial(den)
    if len(sympy.Add.make_args(num)) > 1:
        numerator = f"({numerator})"
    if not _is_bare_power(den):
        denominator = f"({denominator})"
    return f"{numerator}/{denominator}"
