"""
Freely reduced words in a free group.

A word is a tuple of nonzero integers: generator ``i`` is the letter
``i`` and its inverse is ``-i``. An :class:`Alphabet` translates between
the integers and printable letter names.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

from streetflow.errors import DomainError

INVERSE_SUFFIX = "^-1"


class Alphabet:
    """
    Names of the generators of a free group.

    Call as a function to go from a token to an integer; use getitem to go
    from an integer to a token.
    """

    def __init__(self, *names: str):
        self.names = tuple(names)

    @property
    def rank(self) -> int:
        return len(self.names)

    def __getitem__(self, letter: int) -> str:
        name = self.names[abs(letter) - 1]
        return name if letter > 0 else name + INVERSE_SUFFIX

    def __call__(self, token: str) -> int:
        sign = 1
        for suffix in (INVERSE_SUFFIX, "⁻¹"):
            if token.endswith(suffix):
                token, sign = token[: -len(suffix)], -1
                break
        try:
            return sign * (self.names.index(token) + 1)
        except ValueError:
            raise DomainError(f"unknown letter {token!r}; expected one of {', '.join(self.names)}")

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet{self.names}"


M_BASIS = Alphabet("A1", "B1", "A2", "B2")
CURVE = Alphabet("a", "b")


def free_reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    """Cancel adjacent letter–inverse pairs with a stack."""
    stack: List[int] = []
    for x in letters:
        if x == 0:
            raise DomainError("0 is not a letter")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True)
class GroupWord:
    """
    An element of a free group held in its freely reduced normal form.

    Args:
        letters: Integers, freely reduced on construction.
        alphabet: Display names of the generators.
    """

    letters: Tuple[int, ...] = ()
    alphabet: Alphabet = field(default=M_BASIS, compare=False)

    def __post_init__(self):
        reduced = free_reduce(self.letters)
        for x in reduced:
            if abs(x) > self.alphabet.rank:
                raise DomainError(f"letter {x} is outside an alphabet of rank {self.alphabet.rank}")
        object.__setattr__(self, "letters", reduced)

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet = M_BASIS) -> "GroupWord":
        """
        Read space separated tokens such as ``"A1 B1 A1^-1"``; single
        character alphabets also accept the packed form ``"bab"``.
        """
        text = text.strip()
        if not text or text == "1":
            return cls((), alphabet)
        tokens = text.split()
        if len(tokens) == 1 and all(len(n) == 1 for n in alphabet.names) and INVERSE_SUFFIX not in text:
            tokens = list(text)
        return cls(tuple(alphabet(t) for t in tokens), alphabet)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if not isinstance(other, GroupWord):
            return NotImplemented
        return GroupWord(self.letters + other.letters, self.alphabet)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple(-x for x in reversed(self.letters)), self.alphabet)

    def __pow__(self, n: int) -> "GroupWord":
        base = self if n >= 0 else self.inverse()
        return GroupWord(base.letters * abs(n), self.alphabet)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    @property
    def is_positive(self) -> bool:
        return all(x > 0 for x in self.letters)

    def abelianize(self) -> Tuple[int, ...]:
        """Exponent sum of each generator."""
        counts = Counter()
        for x in self.letters:
            counts[abs(x)] += 1 if x > 0 else -1
        return tuple(counts[i] for i in range(1, self.alphabet.rank + 1))

    def rotate(self, k: int) -> "GroupWord":
        """Cyclic rotation moving the first ``k`` letters to the end."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return GroupWord(self.letters[k:] + self.letters[:k], self.alphabet)

    def rotations(self) -> List["GroupWord"]:
        return [self.rotate(k) for k in range(len(self.letters))] or [self]

    def is_rotation_of(self, other: "GroupWord") -> bool:
        return len(self) == len(other) and any(r.letters == other.letters for r in self.rotations())

    def to_string(self, sep: str = " ") -> str:
        if not self.letters:
            return "1"
        return sep.join(self.alphabet[x] for x in self.letters)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"GroupWord({self.to_string()!r})"


def word(letters: Sequence[int], alphabet: Alphabet = M_BASIS) -> GroupWord:
    """Shorthand for :class:`GroupWord` construction."""
    return GroupWord(tuple(letters), alphabet)


def commutator(x: GroupWord, y: GroupWord) -> GroupWord:
    """``x y x^-1 y^-1``."""
    return x * y * x.inverse() * y.inverse()
