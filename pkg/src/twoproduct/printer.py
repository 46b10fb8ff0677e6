"""Text forms of scalars, polynomials, matrices and tensor elements.

Everything printed here (except tensor elements) parses back to an equal value
with :func:`twoproduct.parser.parse_expression`.
"""

from __future__ import annotations


def format_scalar(x) -> str:
    re, im = x.re, x.im
    if not im:
        return str(re)
    if im == 1:
        j = "J"
    elif im == -1:
        j = "-J"
    else:
        j = f"{im}*J"
    if not re:
        return j
    if j.startswith("-"):
        return f"{re} - {j[1:]}"
    return f"{re} + {j}"


def _var_names(n: int) -> list[str]:
    if n == 1:
        return ["q", "p"]
    names = []
    for i in range(1, n + 1):
        names += [f"q{i}", f"p{i}"]
    return names


def _monomial(key: tuple, names: list[str]) -> str:
    parts = []
    for name, e in zip(names, key[1:]):
        if e:
            parts.append(name if e == 1 else f"{name}^{e}")
    if key[0]:
        parts.append("hbar" if key[0] == 1 else f"hbar^{key[0]}")
    return "*".join(parts)


def _term(c, mono: str) -> tuple[bool, str]:
    """Return ``(negative, body)`` for one term."""
    if c.im and c.re:
        body = f"({format_scalar(c)})"
        return False, f"{body}*{mono}" if mono else body
    neg = (c.re < 0) if not c.im else (c.im < 0)
    mag = -c if neg else c
    s = format_scalar(mag)
    if not mono:
        return neg, s
    if s == "1":
        return neg, mono
    return neg, f"{s}*{mono}"


def _order(key: tuple):
    return (-sum(key[1:]), -key[0], tuple(-e for e in key[1:]))


def format_poly(poly) -> str:
    if not poly.terms:
        return "0"
    names = _var_names(poly.n)
    out = ""
    for i, key in enumerate(sorted(poly.terms, key=_order)):
        neg, body = _term(poly.terms[key], _monomial(key, names))
        if i == 0:
            out = f"-{body}" if neg else body
        else:
            out += f" - {body}" if neg else f" + {body}"
    return out


def format_matrix(m) -> str:
    return "[" + ", ".join("[" + ", ".join(format_scalar(x) for x in row) + "]" for row in m.rows) + "]"


def format_element(x) -> str:
    return str(x)


def format_tensor(t) -> str:
    if not t.summands:
        return "0"
    parts = []
    for c, left, right in t.summands:
        coeff = format_scalar(c)
        prefix = "" if coeff == "1" else f"({coeff}) "
        parts.append(f"{prefix}({left}) ⊗ ({right})")
    return " + ".join(parts)
