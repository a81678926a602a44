"""Presentations of the orbit-configuration braid tower and of the pure
braid group, plus their distinguished elements and quotients.

The orbit group on ``n`` points has the ``n**2`` generators ``r(j,i)`` and
one relator per (actor, target) pair of generators at distinct levels: a
level-``j`` letter conjugates each level-``k`` letter (``j < k``) to an
explicit word ``u * r(k,l) * u**-1`` in the level-``k`` alphabet alone.
Because every right-hand side is basis-conjugating, each relation is stored
here as just the conjugator ``u`` (see :func:`action_conjugator`); the
relator emitted into the presentation is then

    a * t * a**-1 * (u * t * u**-1)**-1     (freely reduced).

The same storage scheme covers the classical pure braid presentation on the
band generators ``A(i,j)``, whose action rules have four cases instead of
the orbit family's sixteen.

Everything in this module is a pure function of its arguments, so the
builders can be called freely from tests and from the combing engine, which
replays the same conjugators when pushing letters down the tower.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidArgumentError, MissingImageError
from .words import (
    IDENTITY,
    GenFamily,
    GeneratorSymbol,
    Letter,
    Word,
    band_gen,
    format_word,
    orbit_gen,
    parse_word,
    reduce,
)

__all__ = [
    "TowerLevel",
    "TowerSpec",
    "Presentation",
    "orbit_presentation",
    "artin_presentation",
    "quotient_by",
    "element_D",
    "element_C",
    "element_E",
    "element_Theta",
    "element_full_twist",
    "action_conjugator",
    "export_presentation",
    "parse_presentation",
]


# --- tower bookkeeping -------------------------------------------------------


@dataclass(frozen=True)
class TowerLevel:
    """One stage of the semidirect tower: a level and the alphabet it owns."""

    level: int
    generators: tuple[GeneratorSymbol, ...]


@dataclass(frozen=True)
class TowerSpec:
    """The iterated-semidirect-product shape of a group's generating set.

    Levels are stored in ascending order 1..n; level j owns the generators
    whose ``level`` property equals j, and the kernel at stage j is free on
    exactly that alphabet (rank 2j-1 for the orbit tower, j-1 for the pure
    braid tower).
    """

    family: GenFamily
    levels: tuple[TowerLevel, ...]

    def __post_init__(self) -> None:
        if self.family is GenFamily.SURFACE:
            raise InvalidArgumentError("towers are built over the orbit or band alphabets")
        if not self.levels:
            raise InvalidArgumentError("a tower needs at least one level")
        for offset, stage in enumerate(self.levels, start=1):
            if stage.level != offset:
                raise InvalidArgumentError("tower levels must run 1..n without gaps")
            for sym in stage.generators:
                if sym.family is not self.family or sym.level != stage.level:
                    raise InvalidArgumentError(
                        f"generator {sym} does not belong at level {stage.level}"
                    )

    @property
    def n(self) -> int:
        return self.levels[-1].level

    def kernel_rank(self, j: int) -> int:
        """Rank of the free kernel adjoined at stage j."""
        return len(self.alphabet(j))

    def alphabet(self, j: int) -> tuple[GeneratorSymbol, ...]:
        if not 1 <= j <= self.n:
            raise InvalidArgumentError(f"no level {j} in a tower of height {self.n}")
        return self.levels[j - 1].generators

    def level_of(self, symbol: GeneratorSymbol) -> int:
        j = symbol.level
        if not (1 <= j <= self.n and symbol in self.levels[j - 1].generators):
            raise InvalidArgumentError(f"{symbol} is not a generator of this tower")
        return j

    def all_generators(self) -> tuple[GeneratorSymbol, ...]:
        return tuple(sym for stage in self.levels for sym in stage.generators)


def _make_tower(family: GenFamily, n: int) -> TowerSpec:
    stages = []
    for j in range(1, n + 1):
        if family is GenFamily.ORBIT:
            alphabet = tuple(orbit_gen(j, i) for i in range(2 * j - 1))
        else:
            alphabet = tuple(band_gen(i, j) for i in range(1, j))
        stages.append(TowerLevel(j, alphabet))
    return TowerSpec(family, tuple(stages))


# --- presentations -----------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Generators, relators (each relator r asserts r = identity), and an
    optional tower describing the semidirect decomposition."""

    generators: tuple[GeneratorSymbol, ...]
    relators: tuple[Word, ...]
    tower: TowerSpec | None = None

    def __post_init__(self) -> None:
        known = set(self.generators)
        if len(known) != len(self.generators):
            raise InvalidArgumentError("duplicate generator")
        for relator in self.relators:
            for sym in relator.symbols():
                if sym not in known:
                    raise MissingImageError(sym)
        if self.tower is not None and self.tower.all_generators() != self.generators:
            raise InvalidArgumentError("tower alphabets must exhaust the generators in order")


def orbit_presentation(n: int) -> Presentation:
    """The orbit braid group on n points: n**2 generators r(j,i) and one
    conjugation relator per ordered pair of levels j < k."""
    if n < 1:
        raise InvalidArgumentError(f"need n >= 1, got {n}")
    tower = _make_tower(GenFamily.ORBIT, n)
    relators: list[Word] = []
    # Enumeration is (family, j, i, k, l)-lexicographic: family (I) has
    # actors r(j,0), family (II) actors r(j,i) with 1 <= i < j, family (III)
    # actors r(j,i) with j <= i <= 2j-2.
    actor_families = (
        [(j, 0) for j in range(1, n + 1)],
        [(j, i) for j in range(1, n + 1) for i in range(1, j)],
        [(j, i) for j in range(1, n + 1) for i in range(j, 2 * j - 1)],
    )
    for actors in actor_families:
        for j, i in actors:
            actor = orbit_gen(j, i)
            for k in range(j + 1, n + 1):
                for l in range(2 * k - 1):
                    relators.append(_conjugation_relator(actor, orbit_gen(k, l)))
    return Presentation(tower.all_generators(), tuple(relators), tower)


def artin_presentation(n: int) -> Presentation:
    """The pure braid group on n strands, presented on the bands A(i,j)."""
    if n < 1:
        raise InvalidArgumentError(f"need n >= 1, got {n}")
    tower = _make_tower(GenFamily.BAND, n)
    relators: list[Word] = []
    for s in range(2, n + 1):
        for r in range(1, s):
            actor = band_gen(r, s)
            for k in range(s + 1, n + 1):
                for i in range(1, k):
                    relators.append(_conjugation_relator(actor, band_gen(i, k)))
    return Presentation(tower.all_generators(), tuple(relators), tower)


def quotient_by(p: Presentation, extra: Iterable[Word]) -> Presentation:
    """p with extra relators imposed; the tower is dropped (quotients are
    presentations only, not combable groups)."""
    extra_relators = tuple(extra)
    known = set(p.generators)
    for word in extra_relators:
        for sym in word.symbols():
            if sym not in known:
                raise MissingImageError(sym)
    return Presentation(p.generators, p.relators + extra_relators, tower=None)


def _conjugation_relator(actor: GeneratorSymbol, target: GeneratorSymbol) -> Word:
    u = action_conjugator(actor, target)
    a = Word((Letter(actor),))
    t = Word((Letter(target),))
    rhs = u * t * u.inverse()
    return a * t * a.inverse() * rhs.inverse()


# --- distinguished elements --------------------------------------------------


def _g(symbol: GeneratorSymbol) -> Word:
    return Word((Letter(symbol),))


def _gi(symbol: GeneratorSymbol) -> Word:
    return Word((Letter(symbol, -1),))


def element_D(j: int, k: int) -> Word:
    """D(j,k) = r(k,j) r(k,j+1) ... r(k,k-1); empty when j = k."""
    if not 1 <= j <= k:
        raise InvalidArgumentError(f"element_D needs 1 <= j <= k, got j={j}, k={k}")
    return Word(tuple(Letter(orbit_gen(k, m)) for m in range(j, k)))


def element_C(k: int, j: int) -> Word:
    """C(k,j) = r(k,0)^-1 D(j+1,k)^-1 r(k,j) D(j+1,k) r(k,0)."""
    if not 1 <= j < k:
        raise InvalidArgumentError(f"element_C needs 1 <= j < k, got k={k}, j={j}")
    d = element_D(j + 1, k)
    return _gi(orbit_gen(k, 0)) * d.inverse() * _g(orbit_gen(k, j)) * d * _g(orbit_gen(k, 0))


def element_E(k: int, m: int, q: int) -> Word:
    """E(k,m,q) = r(k,m) r(k,m+1) ... r(k,q) for k <= m <= q <= 2k-2."""
    if not k <= m <= q <= 2 * k - 2:
        raise InvalidArgumentError(
            f"element_E needs k <= m <= q <= 2k-2, got k={k}, m={m}, q={q}"
        )
    return _run_E(k, m, q)


def _run_E(k: int, m: int, q: int) -> Word:
    # Internal variant: q = m-1 yields the empty run, which the relation
    # tables need (e.g. family (I) with j=1, or family (II) with i=j-1).
    assert k <= m <= q + 1 and q <= 2 * k - 2, (k, m, q)
    return Word(tuple(Letter(orbit_gen(k, t)) for t in range(m, q + 1)))


def element_Theta(n: int) -> Word:
    """The central element r(1,0) r(2,0) ... r(n,0) of the orbit group."""
    if n < 1:
        raise InvalidArgumentError(f"need n >= 1, got {n}")
    return Word(tuple(Letter(orbit_gen(j, 0)) for j in range(1, n + 1)))


def element_full_twist(n: int) -> Word:
    """The full twist of the pure braid group: the product of all bands
    A(i,j) in lexicographic (j,i) order. Generates the centre of P_n."""
    if n < 1:
        raise InvalidArgumentError(f"need n >= 1, got {n}")
    return Word(
        tuple(Letter(band_gen(i, j)) for j in range(2, n + 1) for i in range(1, j))
    )


# --- the conjugation action --------------------------------------------------


def _commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()


def action_conjugator(actor: GeneratorSymbol, target: GeneratorSymbol) -> Word:
    """The word u with  actor * target * actor^-1 = u * target * u^-1.

    This is the whole content of the defining relations: conjugation by a
    lower-level generator fixes each higher-level generator up to
    conjugation within the higher level's own alphabet.  The conjugator u
    is supported entirely on the target's level.
    """
    if actor.family is not target.family or actor.family is GenFamily.SURFACE:
        raise InvalidArgumentError(
            f"no action of {actor} on {target}: alphabets must match and be towered"
        )
    if actor.level >= target.level:
        raise InvalidArgumentError(
            f"actor {actor} must sit strictly below target {target} in the tower"
        )
    if actor.family is GenFamily.ORBIT:
        j, i = actor.indices
        k, l = target.indices
        return _orbit_conjugator(j, i, k, l)
    r, s = actor.indices
    i, k = target.indices
    return _band_conjugator(r, s, i, k)


def _orbit_conjugator(j: int, i: int, k: int, l: int) -> Word:
    if i == 0:
        return _orbit_conjugator_I(j, k, l)
    if i < j:
        return _orbit_conjugator_II(j, i, k, l)
    return _orbit_conjugator_III(j, i, k, l)


def _orbit_conjugator_I(j: int, k: int, l: int) -> Word:
    # Actor r(j,0).  The target offset l walks through seven ranges.
    if l == 0 or j < l < k:
        return IDENTITY
    if 1 <= l < j or k <= l <= k + j - 2:
        return element_C(k, j)
    if l == j:
        # The image IS C(k,j); peel its conjugator off the central r(k,j).
        return _gi(orbit_gen(k, 0)) * element_D(j + 1, k).inverse()
    if l == k + j - 1:
        return (
            element_C(k, j)
            * _run_E(k, k, k + j - 2).inverse()
            * _gi(orbit_gen(k, 0))
            * element_D(1, k).inverse()
        )
    if k + j <= l <= 2 * k - 2:
        return element_C(k, j) * _g(orbit_gen(k, k + j - 1))
    raise AssertionError(f"family (I) fell through: j={j}, k={k}, l={l}")


def _orbit_conjugator_II(j: int, i: int, k: int, l: int) -> Word:
    # Actor r(j,i) with 1 <= i < j.
    inv_kj = _gi(orbit_gen(k, j))
    inv_ki = _gi(orbit_gen(k, i))
    if l == i:
        return inv_kj
    if i < l < j:
        return _commutator(inv_kj, inv_ki)
    if l == j:
        return inv_kj * inv_ki
    if l == k + i - 1:
        return _run_E(k, k + i - 1, k + j - 1) * _run_E(k, k + i, k + j - 2).inverse()
    if l == k + j - 1:
        return _run_E(k, k + i, k + j - 2).inverse() * _run_E(k, k + i - 1, k + j - 2)
    if 0 <= l < i or j < l < k + i - 1 or k + i <= l < k + j - 1 or k + j <= l <= 2 * k - 2:
        return IDENTITY
    raise AssertionError(f"family (II) fell through: j={j}, i={i}, k={k}, l={l}")


def _orbit_conjugator_III(j: int, i: int, k: int, l: int) -> Word:
    # Actor r(j,i) with j <= i <= 2j-2 (so j >= 2).
    inv_kj = _gi(orbit_gen(k, j))
    if l == 0 or j < l < k + i - j:
        return IDENTITY
    if l == i - j + 1:
        comm = _commutator(inv_kj, _gi(orbit_gen(k, k + i - j)))
        core = (
            element_D(i - j + 1, k)
            * _g(orbit_gen(k, 0))
            * _run_E(k, k, k + j - 1)
            * _run_E(k, k, k + j - 2).inverse()
            * _gi(orbit_gen(k, 0))
            * element_D(i - j + 2, k).inverse()
        )
        return comm * core
    if l == j:
        return inv_kj * _gi(orbit_gen(k, k + i - j))
    if l == k + i - j:
        return inv_kj
    if l == k + j - 1:
        comm = _commutator(inv_kj, _gi(orbit_gen(k, k + i - j)))
        return (
            comm
            * _run_E(k, k, k + j - 2).inverse()
            * element_C(k, i - j + 1)
            * _run_E(k, k, k + j - 2)
        )
    if (
        1 <= l <= i - j
        or i - j + 2 <= l < j
        or k + i - j < l < k + j - 1
        or k + j <= l <= 2 * k - 2
    ):
        return _commutator(inv_kj, _gi(orbit_gen(k, k + i - j)))
    raise AssertionError(f"family (III) fell through: j={j}, i={i}, k={k}, l={l}")


def _band_conjugator(r: int, s: int, i: int, k: int) -> Word:
    # Actor A(r,s), target A(i,k), s < k: the classical four-way split on
    # where the target's lower strand i sits relative to r and s.
    if i < r or s < i:
        return IDENTITY
    inv_sk = _gi(band_gen(s, k))
    inv_rk = _gi(band_gen(r, k))
    if i == r:
        return inv_sk
    if i == s:
        return inv_sk * inv_rk
    return _commutator(inv_sk, inv_rk)


# --- export / import ---------------------------------------------------------

_FORMATS = ("text", "json", "gap")


def export_presentation(p: Presentation, fmt: str) -> str:
    """Serialize a presentation as 'text', 'json', or 'gap' script source."""
    if fmt == "text":
        return _export_text(p)
    if fmt == "json":
        return _export_json(p)
    if fmt == "gap":
        return _export_gap(p)
    raise InvalidArgumentError(f"unknown format {fmt!r}; expected one of {_FORMATS}")


def parse_presentation(source: str, fmt: str) -> Presentation:
    """Inverse of export_presentation for the round-trippable formats."""
    if fmt == "text":
        return _parse_text(source)
    if fmt == "json":
        return _parse_json(source)
    raise InvalidArgumentError(f"cannot parse format {fmt!r}; only text and json round-trip")


def _export_text(p: Presentation) -> str:
    lines = ["generators: " + " ".join(str(g) for g in p.generators)]
    if p.relators:
        lines.extend(format_word(r) for r in p.relators)
    else:
        lines.append("(no relators)")
    return "\n".join(lines)


def _parse_text(source: str) -> Presentation:
    lines = [line.strip() for line in source.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("generators:"):
        raise InvalidArgumentError("text presentation must open with a 'generators:' line")
    gens = []
    for token in lines[0][len("generators:") :].split():
        word = parse_word(token)
        if len(word) != 1 or word.letters[0].exponent != 1:
            raise InvalidArgumentError(f"bad generator token {token!r}")
        gens.append(word.letters[0].symbol)
    body = lines[1:]
    if body == ["(no relators)"]:
        relators: tuple[Word, ...] = ()
    else:
        relators = tuple(parse_word(line) for line in body)
    return Presentation(tuple(gens), relators)


def _export_json(p: Presentation) -> str:
    payload = {
        "schema_version": 1,
        "generators": [str(g) for g in p.generators],
        "relators": [
            [[str(letter.symbol), letter.exponent] for letter in r.letters]
            for r in p.relators
        ],
        "tower": None
        if p.tower is None
        else {"family": p.tower.family.value, "n": p.tower.n},
    }
    return json.dumps(payload, indent=2)


def _symbol_from_text(token: str) -> GeneratorSymbol:
    word = parse_word(token)
    if len(word) != 1 or word.letters[0].exponent != 1:
        raise InvalidArgumentError(f"bad generator token {token!r}")
    return word.letters[0].symbol


def _parse_json(source: str) -> Presentation:
    try:
        payload = json.loads(source)
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"malformed json: {exc}") from None
    if not isinstance(payload, dict) or payload.get("schema_version") != 1:
        raise InvalidArgumentError("expected a schema_version 1 presentation object")
    gens = tuple(_symbol_from_text(tok) for tok in payload["generators"])
    relators = tuple(
        reduce(Letter(_symbol_from_text(sym), exp) for sym, exp in letters)
        for letters in payload["relators"]
    )
    tower_info = payload.get("tower")
    tower = None
    if tower_info is not None:
        family = GenFamily(tower_info["family"])
        tower = _make_tower(family, int(tower_info["n"]))
    return Presentation(gens, relators, tower)


def _gap_name(symbol: GeneratorSymbol) -> str:
    return "_".join([symbol.family.value, *map(str, symbol.indices)])


def _export_gap(p: Presentation) -> str:
    lines = []
    if p.generators:
        names = ", ".join(f'"{_gap_name(g)}"' for g in p.generators)
        lines.append(f"F := FreeGroup({names});;")
        lines.append("AssignGeneratorVariables(F);;")
    else:
        lines.append("F := FreeGroup(0);;")
    if p.relators:
        lines.append("rels := [")
        for relator in p.relators:
            terms = "*".join(
                _gap_name(letter.symbol) + ("^-1" if letter.exponent == -1 else "")
                for letter in relator.letters
            )
            lines.append(f"  {terms or 'One(F)'},")
        lines.append("];;")
    else:
        lines.append("rels := [];;")
    lines.append("G := F / rels;;")
    return "\n".join(lines)
