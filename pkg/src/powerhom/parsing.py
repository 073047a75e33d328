"""Problem files: field, variables, generators, optional experiment blocks.

Line-oriented format:

    # comment
    field Q            (or: field GF 32003)
    vars x y
    ideal:
    x^2
    x*y
    y^2
    experiment quick:
    powers 1..4
    order 6
    metrics betti,reg,rho

A `/` acts as a line separator, so one-liners like
"field Q / vars x y / ideal: x^2, x*y, y^2" parse too; after `ideal:`,
commas separate generators.  Polynomials are terms joined by + and -; a
term is an optional integer or a/b coefficient times variables with
optional positive integer exponents, '*' optional.  All errors carry
line and column.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from fractions import Fraction

from .poly import PolyRing, Polynomial
from .rings import QQ, PrimeField


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[\^*/+\-]))")


def _tokenize(text, line_no, col_offset=0):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_at = pos + (len(text[pos:]) - len(stripped))
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             line_no, col_offset + bad_at + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), line_no, col_offset + m.start(kind) + 1))
        pos = m.end()
    return tokens


def parse_polynomial(text, ring, line_no=1, col_offset=0):
    """Parse one polynomial with exact coefficients; positional errors."""
    tokens = _tokenize(text, line_no, col_offset)
    if not tokens:
        raise ParseError("empty polynomial", line_no, col_offset + 1)
    i = 0
    n = len(tokens)
    result = ring.zero()
    sign = 1
    first = True
    while i < n:
        kind, val, ln, col = tokens[i]
        if kind == "op" and val in "+-":
            sign = 1 if val == "+" else -1
            i += 1
            if i >= n:
                raise ParseError("dangling sign", ln, col)
        elif not first:
            raise ParseError(f"expected '+' or '-', found {val!r}", ln, col)
        first = False

        coeff = Fraction(sign)
        mono = [0] * ring.ngens
        saw_factor = False
        expect_factor = True
        while i < n:
            kind, val, ln, col = tokens[i]
            if kind == "num":
                num = int(val)
                i += 1
                if i < n and tokens[i][:2] == ("op", "/"):
                    i += 1
                    if i >= n or tokens[i][0] != "num":
                        where = tokens[i - 1]
                        raise ParseError("expected denominator after '/'",
                                         where[2], where[3])
                    den = int(tokens[i][1])
                    if den == 0:
                        raise ParseError("zero denominator", tokens[i][2], tokens[i][3])
                    i += 1
                    coeff *= Fraction(num, den)
                else:
                    coeff *= num
                saw_factor = True
            elif kind == "name":
                if val not in ring.names:
                    raise ParseError(f"unknown variable {val!r}", ln, col)
                e = 1
                i += 1
                if i < n and tokens[i][:2] == ("op", "^"):
                    i += 1
                    if i >= n or tokens[i][0] != "num" or int(tokens[i][1]) < 1:
                        bad = tokens[i] if i < n else tokens[i - 1]
                        raise ParseError("exponent must be a positive integer",
                                         bad[2], bad[3])
                    e = int(tokens[i][1])
                    i += 1
                mono[ring.names.index(val)] += e
                saw_factor = True
            elif kind == "op" and val == "*":
                if not saw_factor:
                    raise ParseError("'*' without a left factor", ln, col)
                i += 1
                expect_factor = True
                continue
            else:
                break
            expect_factor = False
        if expect_factor and saw_factor:
            last = tokens[i - 1] if i <= n else tokens[-1]
            raise ParseError("dangling '*'", last[2], last[3])
        if not saw_factor:
            kind, val, ln, col = tokens[i]
            raise ParseError(f"expected a term, found {val!r}", ln, col)
        term = ring.monomial(tuple(mono), ring.field.of(coeff.numerator,
                                                        coeff.denominator))
        result = result + term
        sign = 1
    return result


@dataclass
class ProblemFile:
    field: object
    ring: PolyRing
    generators: list
    experiments: dict
    text: str

    @property
    def sha256(self):
        return hashlib.sha256(self.text.encode()).hexdigest()

    def render(self):
        """Canonical text form; parsing it again gives an equal problem."""
        lines = []
        if isinstance(self.field, PrimeField):
            lines.append(f"field GF {self.field.p}")
        else:
            lines.append("field Q")
        lines.append("vars " + " ".join(self.ring.names))
        lines.append("ideal:")
        lines.extend(str(g) for g in self.generators)
        for name, block in self.experiments.items():
            lines.append(f"experiment {name}:")
            for key, val in block.items():
                lines.append(f"{key} {val}")
        return "\n".join(lines) + "\n"


_RANGE = re.compile(r"^(\d+)\.\.(\d+)$")


def parse_problem(text):
    """Parse a problem file; informative positional errors."""
    field = None
    names = None
    ring = None
    generators = []
    gen_strings = set()
    experiments = {}
    mode = None  # None | "ideal" | ("experiment", name)

    # physical lines, with '/' as an in-line separator
    pieces = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        col = 1
        for chunk in body.split("/"):
            # keep '/' inside polynomials: only split when the chunk
            # boundary is not inside a fraction (digits on both sides)
            pieces.append((ln, col, chunk))
            col += len(chunk) + 1
    # re-join false splits like "3/2*x": a '/' between digits
    merged = []
    for ln, col, chunk in pieces:
        if merged and merged[-1][0] == ln:
            prev = merged[-1]
            if prev[2].rstrip()[-1:].isdigit() and chunk.lstrip()[:1].isdigit():
                merged[-1] = (prev[0], prev[1], prev[2] + "/" + chunk)
                continue
        merged.append((ln, col, chunk))

    for ln, col, line in merged:
        stripped = line.strip()
        if not stripped:
            continue
        indent = col + len(line) - len(line.lstrip())
        low = stripped.lower()
        if low.startswith("field"):
            rest = stripped[5:].strip()
            if rest.lower() in ("q", "qq"):
                field = QQ
            elif rest.lower().startswith("gf"):
                try:
                    p = int(rest[2:].strip())
                    field = PrimeField(p)
                except ValueError as exc:
                    raise ParseError(str(exc), ln, indent)
            else:
                raise ParseError(f"unknown field {rest!r}", ln, indent)
            mode = None
        elif low.startswith("vars"):
            names = stripped[4:].split()
            if not names:
                raise ParseError("no variables given", ln, indent)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", ln, indent)
            mode = None
        elif low.startswith("ideal"):
            rest = stripped[5:].strip()
            if rest.startswith(":"):
                rest = rest[1:].strip()
            if ring is None:
                if names is None:
                    raise ParseError("'ideal:' before 'vars'", ln, indent)
                ring = PolyRing(tuple(names), field or QQ)
            mode = "ideal"
            if rest:
                _add_generators(rest, ring, generators, gen_strings, ln, indent)
        elif low.startswith("experiment"):
            name = stripped[len("experiment"):].strip().rstrip(":").strip() or "default"
            experiments[name] = {}
            mode = ("experiment", name)
        elif mode == "ideal":
            _add_generators(stripped, ring, generators, gen_strings, ln, indent)
        elif isinstance(mode, tuple):
            parts = stripped.split(None, 1)
            if len(parts) != 2:
                raise ParseError("experiment entries are 'key value'", ln, indent)
            experiments[mode[1]][parts[0].lower()] = parts[1].strip()
        else:
            raise ParseError(f"unrecognized directive {stripped.split()[0]!r}",
                             ln, indent)
    if ring is None:
        if names is None:
            raise ParseError("missing 'vars' line", 1, 1)
        ring = PolyRing(tuple(names), field or QQ)
    if not generators:
        raise ParseError("no generators given", 1, 1)
    return ProblemFile(field or QQ, ring, generators, experiments, text)


def _add_generators(text, ring, generators, seen, ln, col):
    offset = col - 1
    for chunk in text.split(","):
        stripped = chunk.strip()
        if not stripped:
            offset += len(chunk) + 1
            continue
        at = offset + (len(chunk) - len(chunk.lstrip()))
        p = parse_polynomial(stripped, ring, ln, at)
        if p.is_zero():
            raise ParseError("zero generator rejected", ln, at + 1)
        key = str(p)
        if key in seen:
            raise ParseError("duplicate generator rejected", ln, at + 1)
        seen.add(key)
        generators.append(p)
        offset += len(chunk) + 1


def experiment_int(block, key, default=None):
    if key not in block:
        return default
    return int(block[key])


def experiment_range(block, key, default=None):
    if key not in block:
        return default
    m = _RANGE.match(block[key].strip())
    if m:
        return range(int(m.group(1)), int(m.group(2)) + 1)
    return range(int(block[key]), int(block[key]) + 1)


def experiment_list(block, key, default=None):
    if key not in block:
        return default
    return [s.strip() for s in block[key].split(",") if s.strip()]
