"""Free-group words over the package's indexed generator alphabets.

Three alphabets appear throughout:

* ``r(j, i)`` — orbit generators, level ``j >= 1`` with offset
  ``0 <= i <= 2j - 2``; level ``j`` contributes ``2j - 1`` of them.
* ``A(i, j)`` — band generators of the pure braid group, ``1 <= i < j``;
  the level of ``A(i, j)`` is ``j`` (the higher strand).
* ``p(j)`` — the extra surface generators that only occur as images of the
  word-level map into the projective-plane braid group.

A Word is an immutable, freely reduced sequence of signed letters; the empty
word is the identity.  All operations are pure and return fresh words, which
makes words safe to share, hash and memoize.

The canonical text syntax (used by the CLI and the presentation exporters)
writes letters as ``r(j,i)``, ``A(i,j)`` or ``p(j)``, optionally followed by
``^-1`` or ``^k`` for a nonzero integer ``k`` (expanded into ``|k|``
letters).  Whitespace separates letters; the empty string and the single
token ``1`` both denote the identity.  The printer only ever emits ``^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

from .errors import InvalidArgumentError, MissingImageError

__all__ = [
    "GenFamily",
    "GeneratorSymbol",
    "Letter",
    "Word",
    "IDENTITY",
    "orbit_gen",
    "band_gen",
    "surface_gen",
    "reduce",
    "concat",
    "invert",
    "exponent_sum",
    "apply_homomorphism",
    "parse_word",
    "format_word",
    "format_letter",
]


class GenFamily(Enum):
    """The three generator alphabets; the value is the text-syntax letter."""

    ORBIT = "r"
    BAND = "A"
    SURFACE = "p"


@dataclass(frozen=True)
class GeneratorSymbol:
    """A single indexed generator, e.g. r(3,1) or A(1,2) or p(2)."""

    family: GenFamily
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        idx = self.indices
        if self.family is GenFamily.ORBIT:
            if len(idx) != 2:
                raise InvalidArgumentError(f"orbit generator needs 2 indices, got {idx}")
            j, i = idx
            if j < 1 or i < 0 or i > 2 * j - 2:
                raise InvalidArgumentError(
                    f"orbit generator r({j},{i}) out of range: need j >= 1, 0 <= i <= 2j-2"
                )
        elif self.family is GenFamily.BAND:
            if len(idx) != 2:
                raise InvalidArgumentError(f"band generator needs 2 indices, got {idx}")
            i, j = idx
            if not 1 <= i < j:
                raise InvalidArgumentError(
                    f"band generator A({i},{j}) out of range: need 1 <= i < j"
                )
        else:
            if len(idx) != 1:
                raise InvalidArgumentError(f"surface generator needs 1 index, got {idx}")
            (j,) = idx
            if j < 1:
                raise InvalidArgumentError(f"surface generator p({j}) out of range: need j >= 1")

    @property
    def level(self) -> int:
        """Tower level: j for r(j,i), j for A(i,j), j for p(j)."""
        if self.family is GenFamily.BAND:
            return self.indices[1]
        return self.indices[0]

    def __str__(self) -> str:
        return f"{self.family.value}({','.join(str(i) for i in self.indices)})"


def orbit_gen(j: int, i: int) -> GeneratorSymbol:
    """The orbit generator r(j,i)."""
    return GeneratorSymbol(GenFamily.ORBIT, (j, i))


def band_gen(i: int, j: int) -> GeneratorSymbol:
    """The band generator A(i,j) of the pure braid alphabet."""
    return GeneratorSymbol(GenFamily.BAND, (i, j))


def surface_gen(j: int) -> GeneratorSymbol:
    """The surface generator p(j)."""
    return GeneratorSymbol(GenFamily.SURFACE, (j,))


@dataclass(frozen=True)
class Letter:
    """A generator with an exponent of +1 or -1."""

    symbol: GeneratorSymbol
    exponent: int = 1

    def __post_init__(self) -> None:
        if self.exponent not in (1, -1):
            raise InvalidArgumentError(f"letter exponent must be +1 or -1, got {self.exponent}")

    def inverse(self) -> "Letter":
        return Letter(self.symbol, -self.exponent)

    def __str__(self) -> str:
        return format_letter(self)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the empty word is the group identity.

    Construction checks reducedness, so every Word in existence satisfies
    the invariant; use :func:`reduce` to build one from raw letters.
    """

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for cur in self.letters:
            if prev is not None and prev.symbol == cur.symbol and prev.exponent == -cur.exponent:
                raise InvalidArgumentError(
                    f"word is not freely reduced at ...{format_letter(prev)} {format_letter(cur)}..."
                )
            prev = cur

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def inverse(self) -> "Word":
        return invert(self)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def symbols(self) -> set[GeneratorSymbol]:
        """The set of generators that occur (with either sign)."""
        return {letter.symbol for letter in self.letters}

    def __str__(self) -> str:
        return format_word(self)


IDENTITY = Word()


def reduce(raw: Iterable[Letter]) -> Word:
    """Freely reduce a letter sequence (cancel adjacent x x^-1 pairs)."""
    stack: list[Letter] = []
    for letter in raw:
        if stack and stack[-1].symbol == letter.symbol and stack[-1].exponent == -letter.exponent:
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack))


def concat(u: Word, v: Word) -> Word:
    """The freely reduced product u * v."""
    if u.is_identity:
        return v
    if v.is_identity:
        return u
    # Only the boundary can cancel; peel matching ends then splice.
    a, b = u.letters, v.letters
    i, j = len(a) - 1, 0
    while i >= 0 and j < len(b) and a[i].symbol == b[j].symbol and a[i].exponent == -b[j].exponent:
        i -= 1
        j += 1
    return Word(a[: i + 1] + b[j:])


def invert(w: Word) -> Word:
    """The inverse word (reversed letters with flipped exponents)."""
    return Word(tuple(letter.inverse() for letter in reversed(w.letters)))


def exponent_sum(w: Word, s: GeneratorSymbol) -> int:
    """Net exponent of the generator s in w."""
    return sum(letter.exponent for letter in w.letters if letter.symbol == s)


def apply_homomorphism(w: Word, images: Mapping[GeneratorSymbol, Word]) -> Word:
    """Substitute each letter by its image word and reduce.

    Raises MissingImageError if some generator occurring in w has no image.
    """
    stack: list[Letter] = []
    for letter in w.letters:
        try:
            image = images[letter.symbol]
        except KeyError:
            raise MissingImageError(letter.symbol) from None
        seq = image.letters if letter.exponent == 1 else invert(image).letters
        for out in seq:
            if stack and stack[-1].symbol == out.symbol and stack[-1].exponent == -out.exponent:
                stack.pop()
            else:
                stack.append(out)
    return Word(tuple(stack))


# --- text syntax ------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"^([rAp])\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)(?:\^(-?\d+))?$"
)

_FAMILY_BY_CHAR = {f.value: f for f in GenFamily}


def format_letter(letter: Letter) -> str:
    base = str(letter.symbol)
    return base + "^-1" if letter.exponent == -1 else base


def format_word(w: Word) -> str:
    """Canonical text form; the identity prints as ``1``."""
    if w.is_identity:
        return "1"
    return " ".join(format_letter(letter) for letter in w.letters)


def parse_word(text: str) -> Word:
    """Parse the canonical text syntax back into a Word.

    The empty string and the lone token ``1`` give the identity.  Exponent
    suffixes ``^k`` are expanded; ``k = 0`` is rejected.
    """
    tokens = text.split()
    if not tokens:
        return IDENTITY
    if tokens == ["1"]:
        return IDENTITY
    raw: list[Letter] = []
    for token in tokens:
        match = _TOKEN_RE.match(token)
        if match is None:
            raise InvalidArgumentError(f"cannot parse word letter {token!r}")
        char, first, second, power = match.groups()
        family = _FAMILY_BY_CHAR[char]
        if family is GenFamily.SURFACE:
            if second is not None:
                raise InvalidArgumentError(f"p takes one index: {token!r}")
            indices: tuple[int, ...] = (int(first),)
        else:
            if second is None:
                raise InvalidArgumentError(f"{char} takes two indices: {token!r}")
            indices = (int(first), int(second))
        symbol = GeneratorSymbol(family, indices)
        k = 1 if power is None else int(power)
        if k == 0:
            raise InvalidArgumentError(f"zero exponent in {token!r}")
        sign = 1 if k > 0 else -1
        raw.extend(Letter(symbol, sign) for _ in range(abs(k)))
    return reduce(raw)
