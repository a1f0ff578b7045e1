"""Textual loop identities and their one-nested intermediate form.

Concrete syntax::

    law  := side "=" side
    side := term | term "*" term
    term := var | "(" term "*" term ")"

Every product is parenthesised except, optionally, the outermost one on
each side.  A law is accepted by :func:`to_ir` when its left side is the
canonical right-nested product ``a1*(a2*(...*(a_{n-1}*a_n)))`` and its
right side is one-nested: built from a single adjacent pair by repeatedly
multiplying the running product by the next element on its left or right.
"""

from __future__ import annotations

import enum
import json
import re
import string
import warnings
from dataclasses import dataclass, field
from itertools import groupby
from typing import Union

__all__ = [
    "Move",
    "Product",
    "ProductTerm",
    "LawAST",
    "NestTrace",
    "LawIR",
    "LawError",
    "ParseError",
    "NotOneNestedError",
    "TrivialLawError",
    "DegenerateLawError",
    "WideLawWarning",
    "parse",
    "to_ir",
    "parse_law",
    "render",
    "leaves",
    "position_tree",
    "cancel_left_pairings",
    "substitute_neutral",
    "ir_to_json",
    "ir_from_json",
    "enumerate_traces",
]


class LawError(ValueError):
    """Base class for malformed or unusable laws."""


class ParseError(LawError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)


class NotOneNestedError(LawError):
    pass


class TrivialLawError(LawError):
    """The right side is the canonical nest itself: no defining identity."""


class DegenerateLawError(LawError):
    """A substitution collapsed the law to a trivial or empty one."""


class WideLawWarning(UserWarning):
    """Emitted for laws in more than three variables."""


class Move(str, enum.Enum):
    LEFT = "LEFT"
    RIGHT = "RIGHT"


@dataclass(frozen=True)
class Product:
    left: "ProductTerm"
    right: "ProductTerm"


# a leaf is a variable name (str) or, in position trees, a position (int)
ProductTerm = Union[str, int, Product]


def leaves(term: ProductTerm) -> list:
    if isinstance(term, Product):
        return leaves(term.left) + leaves(term.right)
    return [term]


def term_to_str(term: ProductTerm, outer: bool = True) -> str:
    if isinstance(term, Product):
        return f"({term_to_str(term.left, False)}*{term_to_str(term.right, False)})"
    return str(term)


@dataclass(frozen=True)
class LawAST:
    lhs: ProductTerm
    rhs: ProductTerm
    variables: tuple[str, ...]

    def word(self) -> list:
        return leaves(self.lhs)

    def __str__(self):
        return f"{term_to_str(self.lhs)} = {term_to_str(self.rhs)}"


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:  # only trailing whitespace left
            break
        if match.group(1) is not None:
            tokens.append(("var", match.group(1), match.start(1)))
        else:
            ch = match.group(2)
            if ch not in "()*=":
                raise ParseError(f"unexpected character {ch!r}", match.start(2))
            tokens.append((ch, ch, match.start(2)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("eof", "", len(self.text))

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            wanted = "a variable" if kind == "var" else repr(kind)
            if kind == ")" and tok[0] in ("eof", "="):
                raise ParseError("unbalanced parenthesis: expected ')'", tok[2])
            raise ParseError(f"expected {wanted}, found {what}", tok[2])
        self.i += 1
        return tok

    def term(self) -> ProductTerm:
        tok = self.peek()
        if tok[0] == "var":
            self.i += 1
            return tok[1]
        if tok[0] == "(":
            self.i += 1
            left = self.term()
            self.expect("*")
            right = self.term()
            self.expect(")")
            return Product(left, right)
        if tok[0] == ")":
            raise ParseError("unbalanced parenthesis: unexpected ')'", tok[2])
        what = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ParseError(f"expected a variable or '(', found {what}", tok[2])

    def side(self) -> ProductTerm:
        tok = self.peek()
        if tok[0] in ("=", "eof"):
            raise ParseError("empty side", tok[2])
        left = self.term()
        if self.peek()[0] == "*":
            self.i += 1
            return Product(left, self.term())
        return left


def parse(text: str) -> LawAST:
    """Parse ``"lhs = rhs"`` into a :class:`LawAST`.

    Raises :class:`ParseError` on malformed input and when the two sides
    do not multiply the same word of variables.
    """
    if not text or not text.strip():
        raise ParseError("empty input", 0)
    p = _Parser(text)
    lhs = p.side()
    if p.peek()[0] == ")":
        raise ParseError("unbalanced parenthesis: unexpected ')'", p.peek()[2])
    p.expect("=")
    rhs = p.side()
    tok = p.peek()
    if tok[0] != "eof":
        if tok[0] == ")":
            raise ParseError("unbalanced parenthesis: unexpected ')'", tok[2])
        raise ParseError(f"unexpected {tok[1]!r} after the law", tok[2])

    lw, rw = leaves(lhs), leaves(rhs)
    if lw != rw:
        msg = "the two sides multiply different words: " f"{' '.join(lw)} vs {' '.join(rw)}"
        if sorted(lw) == sorted(rw):
            msg += (
                "; laws that permute variables are not association laws "
                "(use the built-in 'commutativity' law instead)"
            )
        raise ParseError(msg)
    variables = tuple(dict.fromkeys(lw))
    return LawAST(lhs, rhs, variables)


# --------------------------------------------------------------------------
# nest traces


@dataclass(frozen=True)
class NestTrace:
    """Replay instructions for a one-nested product of ``n`` positions.

    ``start`` is the 1-based position of the first pairing
    (``start``, ``start + 1``); each move then absorbs the position just
    left or just right of the consumed span.
    """

    n: int
    start: int
    moves: tuple[Move, ...]

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(Move(mv) for mv in self.moves))
        if self.n < 2:
            raise NotOneNestedError(f"a nest needs at least 2 positions, got n={self.n}")
        if not 1 <= self.start <= self.n - 1:
            raise NotOneNestedError(f"start={self.start} outside 1..{self.n - 1}")
        if len(self.moves) != self.n - 2:
            raise NotOneNestedError(f"expected {self.n - 2} moves, got {len(self.moves)}")
        for _ in self.spans():
            pass

    @classmethod
    def canonical(cls, n: int) -> "NestTrace":
        return cls(n, n - 1, (Move.LEFT,) * (n - 2))

    def spans(self):
        """Yield ``(consumed, lo, hi)`` after each pairing, in order.

        The first item is ``((start, start+1), start, start+1)``; later
        items carry the single position absorbed by that move.
        """
        lo, hi = self.start, self.start + 1
        yield (lo, hi), lo, hi
        for k, mv in enumerate(self.moves):
            if mv is Move.LEFT:
                if lo == 1:
                    raise NotOneNestedError(f"move {k}: LEFT with nothing left of the span")
                lo -= 1
                yield (lo,), lo, hi
            else:
                if hi == self.n:
                    raise NotOneNestedError(f"move {k}: RIGHT with nothing right of the span")
                hi += 1
                yield (hi,), lo, hi

    def is_canonical(self) -> bool:
        return self.start == self.n - 1 and all(mv is Move.LEFT for mv in self.moves)

    def run_profile(self) -> tuple[tuple[Move, int], ...]:
        return tuple((mv, len(list(grp))) for mv, grp in groupby(self.moves))


def position_tree(trace: NestTrace) -> ProductTerm:
    """Product tree over positions ``1..n`` built by replaying ``trace``."""
    tree: ProductTerm | None = None
    for consumed, lo, hi in trace.spans():
        if tree is None:
            tree = Product(consumed[0], consumed[1])
        elif consumed[0] == lo:
            tree = Product(lo, tree)
        else:
            tree = Product(tree, hi)
    return tree


def _trace_of(tree: ProductTerm, n: int) -> NestTrace:
    # tree leaves are positions 1..n in order
    def walk(t):
        if not isinstance(t, Product):
            raise NotOneNestedError("a single leaf is not a product")
        lleaf = not isinstance(t.left, Product)
        rleaf = not isinstance(t.right, Product)
        if lleaf and rleaf:
            return t.left, []
        if lleaf:
            start, moves = walk(t.right)
            return start, moves + [Move.LEFT]
        if rleaf:
            start, moves = walk(t.left)
            return start, moves + [Move.RIGHT]
        raise NotOneNestedError(
            f"{term_to_str(t)} multiplies two compound products; the side is not one-nested"
        )

    start, moves = walk(tree)
    return NestTrace(n, start, tuple(moves))


def _number_leaves(term: ProductTerm, counter: list[int]) -> ProductTerm:
    if isinstance(term, Product):
        left = _number_leaves(term.left, counter)
        return Product(left, _number_leaves(term.right, counter))
    counter[0] += 1
    return counter[0]


def _canonical_rho(word) -> tuple[int, ...]:
    index: dict = {}
    return tuple(index.setdefault(w, len(index) + 1) for w in word)


@dataclass(frozen=True)
class LawIR:
    """A canonical one-nested association law with repetitions.

    ``rho[i]`` is the (1-based) variable placed at position ``i + 1``;
    variables are numbered by first occurrence.  The left side is always
    the canonical nest, so only ``rhs`` is stored.
    """

    n: int
    rho: tuple[int, ...]
    rhs: NestTrace
    cancelled: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(int(r) for r in self.rho))
        if len(self.rho) != self.n or self.rhs.n != self.n:
            raise LawError("rho and the trace must both have length n")
        if self.rho != _canonical_rho(self.rho):
            raise LawError(f"rho {self.rho} is not numbered by first occurrence")
        # a valid trace without RIGHT moves is the canonical nest
        if Move.RIGHT not in self.rhs.moves:
            raise TrivialLawError("law has no defining identity (right side is the canonical nest)")

    @property
    def num_variables(self) -> int:
        return max(self.rho)

    @property
    def run_profile(self) -> tuple[tuple[Move, int], ...]:
        return self.rhs.run_profile()

    @property
    def lhs(self) -> NestTrace:
        return NestTrace.canonical(self.n)

    def is_bijective(self) -> bool:
        return self.num_variables == self.n


def to_ir(ast: LawAST, cancel: bool = False) -> LawIR:
    """Convert a parsed law into its :class:`LawIR`.

    With ``cancel=True`` leading left pairings shared by both sides are
    cancelled (``a*X = a*Y`` reduces to ``X = Y``); the number removed is
    kept in ``LawIR.cancelled``.
    """
    word = ast.word()
    n = len(word)
    if n < 2:
        raise TrivialLawError("law has no defining identity (single variable)")
    lhs = _trace_of(_number_leaves(ast.lhs, [0]), n)
    if not lhs.is_canonical():
        raise LawError(
            f"left side {term_to_str(ast.lhs)} is not the canonical right-nested product"
        )
    try:
        rhs = _trace_of(_number_leaves(ast.rhs, [0]), n)
    except NotOneNestedError as exc:
        raise NotOneNestedError(f"right side is not one-nested: {exc}") from None
    ir = LawIR(n, _canonical_rho(word), rhs)
    if ir.num_variables > 3:
        warnings.warn(
            f"law in {ir.num_variables} variables; extension classification is only "
            "established for three-variable laws",
            WideLawWarning,
            stacklevel=2,
        )
    if cancel:
        ir = cancel_left_pairings(ir)
    return ir


def parse_law(text: str, cancel: bool = False) -> LawIR:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", WideLawWarning)
        ir = to_ir(parse(text), cancel=cancel)
    return ir


def cancel_left_pairings(ir: LawIR) -> LawIR:
    """Drop trailing LEFT moves of the right side together with position 1."""
    n, rho, trace, k = ir.n, ir.rho, ir.rhs, 0
    moves = list(trace.moves)
    while moves and moves[-1] is Move.LEFT:
        moves.pop()
        n -= 1
        rho = _canonical_rho(rho[1:])
        k += 1
    if k == 0:
        return ir
    return LawIR(n, rho, NestTrace(n, trace.start - k, tuple(moves)), cancelled=ir.cancelled + k)


# --------------------------------------------------------------------------
# rendering


def position_names(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_lowercase[26 - n :])
    return [f"x{i}" for i in range(1, n + 1)]


def variable_names(ir: LawIR) -> list[str]:
    """Canonical variable names: each variable takes the letter of the
    position where it occurs last (``w x y z`` for four positions)."""
    pos_names = position_names(ir.n)
    names = {}
    for i, var in enumerate(ir.rho):
        names[var] = pos_names[i]
    return [names[v] for v in range(1, ir.num_variables + 1)]


def _rename(term: ProductTerm, label) -> ProductTerm:
    if isinstance(term, Product):
        return Product(_rename(term.left, label), _rename(term.right, label))
    return label(term)


def render(ir: LawIR) -> str:
    names = variable_names(ir)
    label = lambda p: names[ir.rho[p - 1] - 1]  # noqa: E731
    lhs = _rename(position_tree(ir.lhs), label)
    rhs = _rename(position_tree(ir.rhs), label)
    return f"{term_to_str(lhs)} = {term_to_str(rhs)}"


# --------------------------------------------------------------------------
# substitutions


def _drop_positions(term: ProductTerm, dropped: set[int]) -> ProductTerm | None:
    if isinstance(term, Product):
        left = _drop_positions(term.left, dropped)
        right = _drop_positions(term.right, dropped)
        if left is None:
            return right
        if right is None:
            return left
        return Product(left, right)
    return None if term in dropped else term


def substitute_neutral(ir: LawIR, variable: int) -> LawIR:
    """Put the neutral element in for ``variable`` (1-based) and simplify.

    Raises :class:`DegenerateLawError` when the remaining law is empty or
    trivially true.
    """
    if not 1 <= variable <= ir.num_variables:
        raise LawError(f"variable {variable} out of range 1..{ir.num_variables}")
    dropped = {i + 1 for i, v in enumerate(ir.rho) if v == variable}
    kept = [i + 1 for i in range(ir.n) if i + 1 not in dropped]
    if len(kept) < 2:
        raise DegenerateLawError(f"only {len(kept)} position(s) left after substitution")
    renumber = {p: i + 1 for i, p in enumerate(kept)}
    rhs = _drop_positions(position_tree(ir.rhs), dropped)
    rhs = _rename(rhs, renumber.__getitem__)
    n = len(kept)
    trace = _trace_of(rhs, n)
    rho = _canonical_rho([ir.rho[p - 1] for p in kept])
    try:
        return LawIR(n, rho, trace)
    except TrivialLawError as exc:
        raise DegenerateLawError(str(exc)) from None


# --------------------------------------------------------------------------
# serialisation and enumeration


def ir_to_dict(ir: LawIR) -> dict:
    return {
        "n": ir.n,
        "rho": list(ir.rho),
        "start": ir.rhs.start,
        "moves": [mv.value for mv in ir.rhs.moves],
    }


def ir_to_json(ir: LawIR, indent: int | None = None) -> str:
    return json.dumps(ir_to_dict(ir), indent=indent)


def ir_from_json(text: str | dict) -> LawIR:
    d = json.loads(text) if isinstance(text, str) else text
    n = int(d["n"])
    return LawIR(n, d["rho"], NestTrace(n, int(d["start"]), tuple(d["moves"])))


def enumerate_traces(n: int):
    """All valid one-nested traces on ``n`` positions (including canonical)."""
    from itertools import product

    for start in range(1, n):
        for moves in product((Move.LEFT, Move.RIGHT), repeat=n - 2):
            lefts = moves.count(Move.LEFT)
            # exactly start-1 positions lie left of the first pair
            if lefts == start - 1:
                yield NestTrace(n, start, moves)
