"""Text formats: polynomials, algebra-input files, machine reports.

The polynomial form is a sum of "coef * x1^a1 x2^a2 ..." terms.  Multi-term
coefficients are parenthesized so the grammar stays unambiguous; writers
emit a canonical ordering (terms ascending in the exponent tuple, scalar
terms ascending in the v-exponent) so that serialization is bit-exact
reproducible and parse/serialize round-trips are the identity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import PresentationError
from .ore import CGLPresentation, NCPoly
from .scalars import LaurentScalar, parse_scalar, scalar_to_text

ALGEBRA_FORMAT = "qnca-algebra 1"
MACHINE_FORMAT = "qnca-machine 1"


# -- polynomial text --------------------------------------------------------


def monomial_to_text(exp: Sequence[int], names: Sequence[str] | None = None,
                     sep: str = " ", show_unit_power: bool = True) -> str:
    parts = []
    for i, a in enumerate(exp):
        if not a:
            continue
        name = names[i] if names else "x%d" % (i + 1)
        if a == 1 and not show_unit_power:
            parts.append(name)
        else:
            parts.append("%s^%d" % (name, a))
    return sep.join(parts) if parts else "1"


def poly_to_text(poly: NCPoly, names: Sequence[str] | None = None) -> str:
    if poly.is_zero():
        return "0"
    chunks = []
    for exp, coeff in poly.items():
        scalar = scalar_to_text(coeff)
        if len(coeff.items()) > 1:
            scalar = "(%s)" % scalar
        if all(a == 0 for a in exp):
            chunks.append(scalar)
        else:
            chunks.append("%s * %s" % (scalar, monomial_to_text(exp, names)))
    return " + ".join(chunks)


def poly_to_pretty(poly: NCPoly, names: Sequence[str]) -> str:
    """Display form: q-powers shown via q, ^1 omitted, factors joined by *."""
    if poly.is_zero():
        return "0"
    out = ""
    for exp, coeff in poly.items():
        mono = monomial_to_text(exp, names, sep="*", show_unit_power=False)
        body = scalar_to_text(coeff, use_q=True)
        if len(coeff.items()) > 1:
            body = "(%s)" % body
        constant = all(a == 0 for a in exp)
        if constant:
            term = body
        elif body == "1":
            term = mono
        elif body == "-1":
            term = "-" + mono
        else:
            term = "%s*%s" % (body, mono)
        if not out:
            out = term
        elif term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


def parse_poly(text: str, n: int) -> NCPoly:
    """Parse the polynomial text form (either canonical or hand-written)."""
    stripped = text.strip()
    if stripped == "0" or not stripped:
        return NCPoly.zero(n)
    terms: dict[tuple[int, ...], LaurentScalar] = {}
    for piece, sign in _split_top_level(stripped):
        exp, coeff = _parse_poly_term(piece, n)
        if sign < 0:
            coeff = -coeff
        prev = terms.get(exp)
        total = coeff if prev is None else prev + coeff
        if total.is_zero():
            terms.pop(exp, None)
        else:
            terms[exp] = total
    return NCPoly(n, terms)


def _split_top_level(text: str) -> list[tuple[str, int]]:
    pieces: list[tuple[str, int]] = []
    depth = 0
    current: list[str] = []
    sign = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
            current.append(ch)
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced parentheses in %r" % text)
            current.append(ch)
        elif depth == 0 and ch in "+-" and current and current[-1] == " " \
                and i + 1 < len(text) and text[i + 1] == " ":
            pieces.append(("".join(current).strip(), sign))
            sign = -1 if ch == "-" else 1
            current = []
            i += 1  # skip the following space
        else:
            current.append(ch)
        i += 1
    if depth:
        raise ValueError("unbalanced parentheses in %r" % text)
    tail = "".join(current).strip()
    if not tail:
        raise ValueError("empty trailing term in %r" % text)
    pieces.append((tail, sign))
    return pieces


def _parse_poly_term(piece: str, n: int) -> tuple[tuple[int, ...], LaurentScalar]:
    piece = piece.strip()
    coeff = LaurentScalar.one()
    if piece.startswith("("):
        close = piece.index(")")
        coeff = parse_scalar(piece[1:close])
        piece = piece[close + 1:].strip()
        if piece.startswith("*"):
            piece = piece[1:].strip()
    tokens = [t for chunk in piece.split() for t in chunk.split("*") if t]
    exp = [0] * n
    scalar_tokens: list[str] = []
    for tok in tokens:
        if tok.startswith("x") and len(tok) > 1 and (tok[1].isdigit()):
            name, _, power = tok.partition("^")
            idx = int(name[1:]) - 1
            if not 0 <= idx < n:
                raise ValueError("generator %s out of range" % name)
            exp[idx] += int(power) if power else 1
        else:
            scalar_tokens.append(tok)
    if scalar_tokens:
        coeff = coeff * parse_scalar("*".join(scalar_tokens))
    return tuple(exp), coeff


# -- rational vectors (poisson flavor) ---------------------------------------


def _format_rational_row(row: Sequence) -> str:
    return " ".join(str(Fraction(x)) for x in row)


def _parse_rational_row(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(tok) for tok in text.split())


def _parse_int_row(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split())


# -- algebra files -----------------------------------------------------------
#
#   format qnca-algebra 1
#   flavor quantum            (or: poisson)
#   generators N
#   torus_rank r
#   weights                   followed by N rows of r integers
#   h                         followed by N rows (integers; rationals for poisson)
#   hstar                     optional, same shape as h
#   delta K L <polynomial>    one line per nonzero image, 1-based K > L
#   end


def algebra_to_text(p, flavor: str = "quantum") -> str:
    lines = ["format %s" % ALGEBRA_FORMAT, "flavor %s" % flavor,
             "generators %d" % p.N, "torus_rank %d" % p.r, "weights"]
    for w in p.weights:
        lines.append(" ".join(str(x) for x in w))
    lines.append("h")
    if flavor == "quantum":
        for v in p.h:
            lines.append(" ".join(str(x) for x in v))
    else:
        for v in p.h:
            lines.append(_format_rational_row(v))
    if p.hstar is not None:
        lines.append("hstar")
        if flavor == "quantum":
            for v in p.hstar:
                lines.append(" ".join(str(x) for x in v))
        else:
            for v in p.hstar:
                lines.append(_format_rational_row(v))
    for (k, l) in sorted(p.delta):
        body = (poly_to_text(p.delta[(k, l)]) if flavor == "quantum"
                else cpoly_to_text(p.delta[(k, l)]))
        lines.append("delta %d %d %s" % (k + 1, l + 1, body))
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_algebra(text: str):
    """Parse an algebra file; returns (flavor, presentation)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(lines):
            raise ValueError("unexpected end of algebra file")
        out = lines[pos]
        pos += 1
        return out

    header = take()
    if header != "format %s" % ALGEBRA_FORMAT:
        raise ValueError("unsupported algebra format line %r" % header)
    flavor_line = take()
    if not flavor_line.startswith("flavor "):
        raise ValueError("missing flavor line")
    flavor = flavor_line.split()[1]
    if flavor not in ("quantum", "poisson"):
        raise ValueError("unknown flavor %r" % flavor)
    gen_line = take()
    if not gen_line.startswith("generators "):
        raise ValueError("missing generators line")
    n = int(gen_line.split()[1])
    rank_line = take()
    if not rank_line.startswith("torus_rank "):
        raise ValueError("missing torus_rank line")
    r = int(rank_line.split()[1])
    if take() != "weights":
        raise ValueError("missing weights section")
    weights = []
    for _ in range(n):
        row = _parse_int_row(take())
        if len(row) != r:
            raise ValueError("weight row has wrong length")
        weights.append(row)
    if take() != "h":
        raise ValueError("missing h section")
    parse_row = _parse_int_row if flavor == "quantum" else _parse_rational_row
    h = []
    for _ in range(n):
        row = parse_row(take())
        if len(row) != r:
            raise ValueError("h row has wrong length")
        h.append(row)
    hstar = None
    delta = {}
    while True:
        line = take()
        if line == "end":
            break
        if line == "hstar":
            hstar = []
            for _ in range(n):
                row = parse_row(take())
                if len(row) != r:
                    raise ValueError("hstar row has wrong length")
                hstar.append(row)
        elif line.startswith("delta "):
            _, k_text, l_text, body = line.split(None, 3)
            k, l = int(k_text) - 1, int(l_text) - 1
            poly = parse_poly(body, n) if flavor == "quantum" else parse_cpoly(body, n)
            delta[(k, l)] = poly
        else:
            raise ValueError("unrecognized line %r" % line)
    if flavor == "quantum":
        return flavor, CGLPresentation(weights, h, delta, hstar)
    from .poisson import PoissonPresentation
    return flavor, PoissonPresentation(weights, h, delta, hstar)


def read_algebra(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_algebra(fh.read())


def write_algebra(path, p, flavor: str = "quantum") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(algebra_to_text(p, flavor))


# -- commutative polynomial text (poisson flavor) -----------------------------


def cpoly_to_text(poly, names: Sequence[str] | None = None) -> str:
    from .poisson import CPoly
    if poly.is_zero():
        return "0"
    chunks = []
    for exp, coeff in poly.items():
        body = str(coeff)
        if all(a == 0 for a in exp):
            chunks.append(body)
        else:
            chunks.append("%s * %s" % (body, monomial_to_text(exp, names)))
    return " + ".join(chunks)


def parse_cpoly(text: str, n: int):
    from .poisson import CPoly
    stripped = text.strip()
    if stripped == "0" or not stripped:
        return CPoly.zero(n)
    terms: dict[tuple[int, ...], Fraction] = {}
    for piece, sign in _split_top_level(stripped):
        tokens = [t for chunk in piece.split() for t in chunk.split("*") if t]
        exp = [0] * n
        coeff = Fraction(1)
        for tok in tokens:
            if tok.startswith("x") and len(tok) > 1 and tok[1].isdigit():
                name, _, power = tok.partition("^")
                idx = int(name[1:]) - 1
                if not 0 <= idx < n:
                    raise ValueError("generator %s out of range" % name)
                exp[idx] += int(power) if power else 1
            else:
                coeff *= Fraction(tok)
        key = tuple(exp)
        total = terms.get(key, Fraction(0)) + sign * coeff
        if total == 0:
            terms.pop(key, None)
        else:
            terms[key] = total
    return CPoly(n, terms)


# -- matrices in machine reports ----------------------------------------------


def matrix_lines(name: str, mat: Sequence[Sequence[int]]) -> list[str]:
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    lines = ["matrix %s %d %d" % (name, rows, cols)]
    for row in mat:
        lines.append(" ".join(str(x) for x in row))
    return lines


def index_map_line(name: str, values, none_symbol_low: str = "-inf",
                   none_symbol_high: str = "+inf", high: bool = False) -> str:
    symbol = none_symbol_high if high else none_symbol_low
    body = " ".join(symbol if v is None else str(v + 1) for v in values)
    return "%s %s" % (name, body)
