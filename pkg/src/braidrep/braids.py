"""Braid words and what they act on: permutations, free words, Markov moves.

A braid word is stored verbatim as a tuple of nonzero integers; ``i`` is the
generator sigma_i and ``-i`` its inverse.  No normal form is ever computed and
braid equality is never decided algebraically; only the induced actions
(permutation, free-group automorphism, Hurwitz action) are compared.
"""

from __future__ import annotations

import dataclasses
import itertools


class BraidParseError(ValueError):
    """A braid word string that cannot be parsed."""


@dataclasses.dataclass(frozen=True)
class BraidWord:
    """A word in the braid group on ``strands`` strands."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError(f"strand count must be >= 1, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        for g in self.letters:
            if g == 0:
                raise ValueError("0 is not a braid generator")
            if abs(g) > self.strands - 1:
                raise ValueError(
                    f"letter {g} out of range for {self.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.letters)

    def concat(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise ValueError(
                f"strand mismatch: {self.strands} vs {other.strands}"
            )
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-g for g in reversed(self.letters)))

    def mirror(self) -> BraidWord:
        """Flip the sign of every letter; the closure is the mirror knot."""
        return BraidWord(self.strands, tuple(-g for g in self.letters))


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse a whitespace-separated list of nonzero integers into a braid word.

    If ``strands`` is not given, the smallest braid group containing the word
    is used (max generator index plus one; 1 for the empty word).
    """
    letters = []
    for token in text.split():
        try:
            g = int(token)
        except ValueError:
            raise BraidParseError(f"not an integer letter: {token!r}") from None
        if g == 0:
            raise BraidParseError(f"letter {token!r} is zero; generators are nonzero")
        letters.append(g)
    if strands is None:
        strands = max((abs(g) for g in letters), default=0) + 1
    for g in letters:
        if abs(g) > strands - 1:
            raise BraidParseError(
                f"letter {g} needs at least {abs(g) + 1} strands, got {strands}"
            )
    return BraidWord(strands, tuple(letters))


def cancel_adjacent_inverses(b: BraidWord) -> BraidWord:
    """Delete adjacent letter pairs g, -g.  The braid element is unchanged."""
    stack: list[int] = []
    for g in b.letters:
        if stack and stack[-1] == -g:
            stack.pop()
        else:
            stack.append(g)
    return BraidWord(b.strands, tuple(stack))


def permutation(b: BraidWord) -> tuple[int, ...]:
    """The underlying permutation of the strands, as a 1-based image tuple.

    Each letter contributes the transposition (i, i+1); letters are applied
    to a moving point in word order, so entry k is where strand k ends up.
    """
    image = list(range(1, b.strands + 1))
    for g in b.letters:
        i = abs(g)
        image = [i + 1 if x == i else i if x == i + 1 else x for x in image]
    return tuple(image)


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    """Cycle lengths of a 1-based permutation image, longest first."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k] - 1
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def is_knot_closure(b: BraidWord) -> bool:
    """True iff the closure of the braid is a knot (one full cycle)."""
    return cycle_type(permutation(b)) == (b.strands,)


@dataclasses.dataclass(frozen=True)
class FreeWord:
    """A freely reduced word over abstract generators x_1, x_2, ...

    Stored as (generator index, nonzero exponent) syllables with adjacent
    equal-index syllables merged.
    """

    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        reduced = _reduce(self.syllables)
        object.__setattr__(self, "syllables", reduced)

    @staticmethod
    def generator(i: int, exponent: int = 1) -> FreeWord:
        return FreeWord(((i, exponent),))

    @staticmethod
    def generators_product(n: int) -> FreeWord:
        """The word x_1 x_2 ... x_n."""
        return FreeWord(tuple((i, 1) for i in range(1, n + 1)))

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord(self.syllables + other.syllables)

    def inverse(self) -> FreeWord:
        return FreeWord(tuple((i, -e) for i, e in reversed(self.syllables)))

    def max_generator(self) -> int:
        return max((i for i, _ in self.syllables), default=0)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(
            f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in self.syllables
        )


def _reduce(syllables) -> tuple[tuple[int, int], ...]:
    stack: list[list[int]] = []
    for i, e in syllables:
        if e == 0:
            continue
        if i < 1:
            raise ValueError(f"generator index must be >= 1, got {i}")
        if stack and stack[-1][0] == i:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([i, e])
    return tuple((i, e) for i, e in stack)


# Images of the generators under the automorphism of a single braid letter:
# sigma_i sends x_i to x_i x_{i+1} x_i^{-1} and x_{i+1} to x_i; the inverse
# letter sends x_i to x_{i+1} and x_{i+1} to x_{i+1}^{-1} x_i x_{i+1}.
def _letter_image(g: int, j: int) -> tuple[tuple[int, int], ...]:
    i = abs(g)
    if g > 0:
        if j == i:
            return ((i, 1), (i + 1, 1), (i, -1))
        if j == i + 1:
            return ((i, 1),)
    else:
        if j == i:
            return ((i + 1, 1),)
        if j == i + 1:
            return ((i + 1, -1), (i, 1), (i + 1, 1))
    return ((j, 1),)


def _substitute(g: int, w: FreeWord) -> FreeWord:
    out: list[tuple[int, int]] = []
    for j, e in w.syllables:
        image = _letter_image(g, j)
        if e < 0:
            image = tuple((k, -f) for k, f in reversed(image))
        out.extend(image * abs(e))
    return FreeWord(tuple(out))


def free_action(b: BraidWord, w: FreeWord) -> FreeWord:
    """Apply the free-group automorphism induced by the braid word.

    The substitution order is chosen so that evaluating the image of x_j at a
    configuration agrees with position j of the Hurwitz action of the same
    word (letters acting on tuples left to right).
    """
    if w.max_generator() > b.strands:
        raise ValueError(
            f"word uses generator x{w.max_generator()} but braid has only "
            f"{b.strands} strands"
        )
    for g in reversed(b.letters):
        w = _substitute(g, w)
    return w


def markov_conjugate(b: BraidWord, xi: BraidWord) -> BraidWord:
    """The conjugated word xi^-1 . b . xi, concatenated without reduction."""
    if b.strands != xi.strands:
        raise ValueError(f"strand mismatch: {b.strands} vs {xi.strands}")
    return xi.inverse().concat(b).concat(xi)


def markov_stabilize(b: BraidWord, sign: int, side: str = "left") -> BraidWord:
    """Stabilize into the next braid group: prepend sigma_n^{sign}.

    ``side="right"`` appends instead; the left form is the tested convention,
    the right form exists for experiments (both have the same closure).
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    n = b.strands
    letter = sign * n
    if side == "left":
        letters = (letter,) + b.letters
    elif side == "right":
        letters = b.letters + (letter,)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return BraidWord(n + 1, letters)


def enumerate_words(strands: int, length: int):
    """All words of the given length over the generators of B_strands."""
    alphabet = [g for i in range(1, strands) for g in (i, -i)]
    for letters in itertools.product(alphabet, repeat=length):
        yield BraidWord(strands, letters)
