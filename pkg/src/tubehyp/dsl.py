"""Line-oriented text format for domain specifications.

Grammar (one declaration per line, "#" starts a comment):

    file      := header? base obstacle*
    header    := "domain" STRING
    base      := "strip" NUM NUM | "halfplane" NUM | "polybase" point+
    obstacle  := "slit" NUM NUM NUM
               | "polygon" point point point+
               | "bump" ("top"|"bottom") "x0=" NUM "w=" NUM "h=" NUM
    point     := "(" NUM "," NUM ")"
    NUM       := decimal or "p/q" rational

Numbers parse to exact rationals (decimals included), and canonical
serialization round-trips them bit-exactly as "p/q".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .geom import (
    BoxPoly,
    Bump,
    Domain,
    GeometryError,
    HalfPlane,
    Point2,
    PolyObstacle,
    SlitV,
    Strip,
    fmt_frac,
)


@dataclass(frozen=True)
class DomainSpecSource:
    text: str
    origin: str = "<inline>"


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str, snippet: str = ""):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message
        self.snippet = snippet


class UnknownBuiltin(ValueError):
    pass


class BadParams(ValueError):
    pass


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int


def _tokenize_line(line: str, lineno: int) -> List[_Token]:
    tokens: List[_Token] = []
    i = 0
    n = len(line)
    while i < n:
        ch = line[i]
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        if ch in "(),":
            tokens.append(_Token(ch, lineno, i + 1))
            i += 1
            continue
        if ch == '"':
            j = line.find('"', i + 1)
            if j < 0:
                raise ParseError(lineno, i + 1, "unterminated string", line)
            tokens.append(_Token(line[i : j + 1], lineno, i + 1))
            i = j + 1
            continue
        j = i
        while j < n and not line[j].isspace() and line[j] not in "(),#":
            j += 1
        tokens.append(_Token(line[i:j], lineno, i + 1))
        i = j
    return tokens


class _LineParser:
    def __init__(self, tokens: List[_Token], lineno: int, raw: str):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno
        self.raw = raw

    def error(self, message: str, tok: Optional[_Token] = None):
        if tok is None:
            tok = self.tokens[self.pos] if self.pos < len(self.tokens) else None
        col = tok.column if tok else (len(self.raw.rstrip()) + 1 or 1)
        raise ParseError(self.lineno, col, message, self.raw)

    def next(self, what: str) -> _Token:
        if self.pos >= len(self.tokens):
            self.error(f"expected {what}")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, literal: str):
        tok = self.next(f"'{literal}'")
        if tok.text != literal:
            self.error(f"expected '{literal}'", tok)
        return tok

    def num(self) -> Fraction:
        tok = self.next("a number")
        try:
            return Fraction(tok.text)
        except (ValueError, ZeroDivisionError):
            self.error(f"invalid number {tok.text!r}", tok)

    def point(self) -> Point2:
        self.expect("(")
        x = self.num()
        self.expect(",")
        y = self.num()
        self.expect(")")
        return Point2(x, y)

    def keyed_num(self, key: str) -> Fraction:
        tok = self.next(f"'{key}=NUM'")
        if not tok.text.startswith(key + "="):
            self.error(f"expected '{key}=NUM'", tok)
        try:
            return Fraction(tok.text[len(key) + 1 :])
        except (ValueError, ZeroDivisionError):
            self.error(f"invalid number in '{tok.text}'", tok)

    def done(self):
        if self.pos < len(self.tokens):
            self.error("unexpected trailing token")

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)


def parse_domain(src: DomainSpecSource | str) -> Domain:
    """Parse a domain description; raises ParseError with 1-based position."""
    if isinstance(src, str):
        src = DomainSpecSource(src)
    name = ""
    base = None
    obstacles = []
    base_line = 0

    lines = src.text.split("\n")
    for lineno, raw in enumerate(lines, start=1):
        tokens = _tokenize_line(raw, lineno)
        if not tokens:
            continue
        lp = _LineParser(tokens, lineno, raw)
        head = lp.next("a declaration")
        kind = head.text

        if kind == "domain":
            if base is not None or obstacles or name:
                lp.error("'domain' header must come first", head)
            tok = lp.next("a quoted name")
            if not (tok.text.startswith('"') and tok.text.endswith('"')):
                lp.error("domain name must be quoted", tok)
            name = tok.text[1:-1]
            lp.done()
            continue

        if kind in ("strip", "halfplane", "polybase"):
            if base is not None:
                lp.error("duplicate base declaration", head)
            try:
                if kind == "strip":
                    lo = lp.num()
                    hi = lp.num()
                    lp.done()
                    base = Strip(lo, hi)
                elif kind == "halfplane":
                    lo = lp.num()
                    lp.done()
                    base = HalfPlane(lo)
                else:
                    pts = [lp.point()]
                    while not lp.at_end():
                        pts.append(lp.point())
                    base = BoxPoly(tuple(pts))
            except GeometryError as exc:
                lp.error(str(exc), head)
            base_line = lineno
            continue

        if kind in ("slit", "polygon", "bump"):
            if base is None:
                lp.error("obstacle declared before the base", head)
            try:
                if kind == "slit":
                    x1 = lp.num()
                    lo = lp.num()
                    hi = lp.num()
                    lp.done()
                    ob = SlitV(x1, lo, hi)
                elif kind == "polygon":
                    pts = [lp.point(), lp.point(), lp.point()]
                    while not lp.at_end():
                        pts.append(lp.point())
                    ob = PolyObstacle(tuple(pts))
                else:
                    side_tok = lp.next("'top' or 'bottom'")
                    if side_tok.text not in ("top", "bottom"):
                        lp.error("bump side must be 'top' or 'bottom'", side_tok)
                    x0 = lp.keyed_num("x0")
                    w = lp.keyed_num("w")
                    h = lp.keyed_num("h")
                    lp.done()
                    ob = Bump(side_tok.text, x0, w, h)
                # validate against the base eagerly for a precise position
                Domain(base=base, obstacles=(ob,))
                obstacles.append(ob)
            except GeometryError as exc:
                lp.error(str(exc), head)
            continue

        lp.error(f"unknown declaration {kind!r}", head)

    if base is None:
        raise ParseError(1, 1, "missing base declaration", lines[0] if lines else "")
    try:
        return Domain(base=base, obstacles=tuple(obstacles), name=name)
    except GeometryError as exc:
        raise ParseError(base_line or 1, 1, str(exc), "") from exc


def _point_text(p: Point2) -> str:
    return f"({fmt_frac(p.x1)}, {fmt_frac(p.x2)})"


def _obstacle_sort_key(ob):
    if isinstance(ob, SlitV):
        return ("slit", (ob.x1, ob.lo, ob.hi))
    if isinstance(ob, PolyObstacle):
        return ("polygon", tuple((v.x1, v.x2) for v in ob.vertices))
    return ("bump", (ob.side, ob.x0, ob.w, ob.h))


def serialize_domain(domain: Domain) -> str:
    """Canonical text: header, base, then obstacles in sorted order."""
    out = []
    if domain.name:
        out.append(f'domain "{domain.name}"')
    base = domain.base
    if isinstance(base, Strip):
        out.append(f"strip {fmt_frac(base.lo)} {fmt_frac(base.hi)}")
    elif isinstance(base, HalfPlane):
        out.append(f"halfplane {fmt_frac(base.lo)}")
    else:
        pts = " ".join(_point_text(v) for v in base.vertices)
        out.append(f"polybase {pts}")
    for ob in sorted(domain.obstacles, key=_obstacle_sort_key):
        if isinstance(ob, SlitV):
            out.append(f"slit {fmt_frac(ob.x1)} {fmt_frac(ob.lo)} {fmt_frac(ob.hi)}")
        elif isinstance(ob, PolyObstacle):
            pts = " ".join(_point_text(v) for v in ob.vertices)
            out.append(f"polygon {pts}")
        else:
            out.append(
                f"bump {ob.side} x0={fmt_frac(ob.x0)} w={fmt_frac(ob.w)} h={fmt_frac(ob.h)}"
            )
    return "\n".join(out) + "\n"


_BUILTIN_NAMES = ("fig1", "fig2-smooth", "strip", "square")


def builtin(name: str, params: Optional[dict] = None) -> Domain:
    """Construct one of the stock example domains.

    fig1         strip 0..2 minus the two unit slits at x1 = -1 and 1
    fig2-smooth  strip 0..2 minus one top and one bottom bump (peaks
                 touch {x2 = 1} at the default height 1)
    strip        bare strip 0..2
    square       open unit square
    """
    params = dict(params or {})
    if name == "fig1":
        return Domain(
            base=Strip(0, 2),
            obstacles=(SlitV(-1, 1, 2), SlitV(1, 0, 1)),
            name="fig1",
        )
    if name == "fig2-smooth":
        touch = params.pop("touch", True)
        x0_top = params.pop("x0_top", Fraction(-1))
        w_top = params.pop("w_top", Fraction(1, 2))
        h_top = params.pop("h_top", Fraction(1))
        x0_bot = params.pop("x0_bot", Fraction(1))
        w_bot = params.pop("w_bot", Fraction(1, 2))
        h_bot = params.pop("h_bot", Fraction(1))
        if params:
            raise BadParams(f"unknown fig2-smooth parameters: {sorted(params)}")
        if touch and (Fraction(h_top) > 1 or Fraction(h_bot) > 1):
            raise BadParams("bump height crosses the line {x2=1} beyond touching")
        return Domain(
            base=Strip(0, 2),
            obstacles=(
                Bump("top", x0_top, w_top, h_top),
                Bump("bottom", x0_bot, w_bot, h_bot),
            ),
            name="fig2-smooth",
        )
    if name == "strip":
        if params:
            raise BadParams("'strip' takes no parameters")
        return Domain(base=Strip(0, 2), name="strip")
    if name == "square":
        if params:
            raise BadParams("'square' takes no parameters")
        return Domain(
            base=BoxPoly(
                (Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1))
            ),
            name="square",
        )
    raise UnknownBuiltin(f"unknown builtin {name!r}; have {_BUILTIN_NAMES}")
