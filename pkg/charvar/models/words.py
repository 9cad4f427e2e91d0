"""
Free group words: free and cyclic reduction, inversion, weighted length and
the Z3 x Z3 grading weight used by the rank-2 coordinate ring.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple
import logging

from utils.errors import RankMismatch, RankUnsupported

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]


def _letter_key(letter: Letter) -> Tuple[int, int, int]:
    # generator ascending, then + before -, then |exponent|
    gen, exp = letter
    return (gen, 0 if exp > 0 else 1, abs(exp))


def letters_to_text(letters: Sequence[Letter]) -> str:
    """x1, X2 for exponents +-1 and x1^3, X2^2 for powers; the identity prints as 1"""
    if not letters:
        return "1"
    parts = []
    for gen, exp in letters:
        symbol = f"x{gen}" if exp > 0 else f"X{gen}"
        parts.append(symbol if abs(exp) == 1 else f"{symbol}^{abs(exp)}")
    return "".join(parts)


@dataclass(frozen=True)
class Word:
    """Word in the free group of the given rank; letters are (generator, exponent)"""

    letters: Tuple[Letter, ...] = ()
    rank: int = 2

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"Rank must be positive, got {self.rank}")
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        for gen, exp in letters:
            if exp == 0:
                raise ValueError("Letters must have nonzero exponent")
            if not 1 <= gen <= self.rank:
                raise ValueError(f"Generator x{gen} outside rank {self.rank}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def identity(cls, rank: int = 2) -> "Word":
        return cls((), rank)

    @classmethod
    def generator(cls, gen: int, exp: int = 1, rank: int = 2) -> "Word":
        return cls(((gen, exp),), rank)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if other.rank != self.rank:
            raise RankMismatch(f"Cannot concatenate rank {self.rank} and rank {other.rank} words")
        return Word(self.letters + other.letters, self.rank)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return invert(self) ** (-n)
        return Word(self.letters * n, self.rank)

    def text(self) -> str:
        return letters_to_text(self.letters)

    def __str__(self) -> str:
        return self.text()


def free_reduce(w: Word) -> Word:
    """Merge adjacent powers of the same generator and drop zero exponents"""
    stack: List[Letter] = []
    for gen, exp in w.letters:
        if stack and stack[-1][0] == gen:
            merged = stack[-1][1] + exp
            stack.pop()
            if merged:
                stack.append((gen, merged))
        else:
            stack.append((gen, exp))
    return Word(tuple(stack), w.rank)


def canonical_rotation(letters: Sequence[Letter]) -> Tuple[Letter, ...]:
    """Least rotation under the letter order; input must be cyclically reduced"""
    n = len(letters)
    if n <= 1:
        return tuple(letters)
    keys = [_letter_key(letter) for letter in letters]
    best = min(range(n), key=lambda i: keys[i:] + keys[:i])
    return tuple(letters[best:]) + tuple(letters[:best])


def cyclic_reduce(w: Word) -> Word:
    """Freely and cyclically reduce, then return the canonical rotation of the class"""
    letters = list(free_reduce(w).letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0]:
        gen = letters[0][0]
        merged = letters[0][1] + letters[-1][1]
        middle = letters[1:-1]
        letters = ([(gen, merged)] if merged else []) + middle
        letters = list(free_reduce(Word(tuple(letters), w.rank)).letters)
    return Word(canonical_rotation(letters), w.rank)


def is_cyclically_reduced(w: Word) -> bool:
    letters = w.letters
    if free_reduce(w).letters != letters:
        return False
    return len(letters) < 2 or letters[0][0] != letters[-1][0]


def invert(w: Word) -> Word:
    return Word(tuple((g, -e) for g, e in reversed(w.letters)), w.rank)


def weighted_length(w: Word) -> int:
    """|e| for each positive letter plus 2|e| for each negative letter"""
    return sum(e if e > 0 else -2 * e for _, e in free_reduce(w).letters)


def restrict(w: Word, gen: int) -> Word:
    """Delete every letter except those of one generator"""
    return Word(tuple((g, e) for g, e in w.letters if g == gen), w.rank)


def bidegree(w: Word) -> Tuple[int, int]:
    """Weighted lengths of the x1- and x2-restrictions, without reduction"""
    if w.rank != 2:
        raise RankUnsupported(f"Bidegree is defined for rank 2 only, got rank {w.rank}")
    counts = [0, 0]
    for gen, exp in w.letters:
        counts[gen - 1] += exp if exp > 0 else -2 * exp
    return counts[0], counts[1]


def z3_weight(w: Word) -> Tuple[int, int]:
    a, b = bidegree(free_reduce(w))
    return a % 3, b % 3


def rotations(w: Word) -> List[Word]:
    letters = w.letters
    return [Word(letters[i:] + letters[:i], w.rank) for i in range(max(len(letters), 1))]


def substitute_generators(w: Word, images: Dict[int, Word]) -> Word:
    """Apply the endomorphism x_i -> images[i]; generators without an image are fixed"""
    result: List[Letter] = []
    for gen, exp in w.letters:
        image = images.get(gen)
        if image is None:
            result.append((gen, exp))
            continue
        if image.rank != w.rank:
            raise RankMismatch("Generator image has a different rank")
        piece = image.letters if exp > 0 else invert(image).letters
        result.extend(piece * abs(exp))
    return free_reduce(Word(tuple(result), w.rank))


def _rank2(w: Word) -> None:
    if w.rank != 2:
        raise RankUnsupported(f"Rank-2 automorphism applied to a rank {w.rank} word")


def tau(w: Word) -> Word:
    """x1 <-> x2"""
    _rank2(w)
    return substitute_generators(w, {1: Word.generator(2), 2: Word.generator(1)})


def iota(w: Word) -> Word:
    """x1 -> x1^-1, x2 fixed"""
    _rank2(w)
    return substitute_generators(w, {1: Word.generator(1, -1)})


def mirror(w: Word) -> Word:
    """x1 -> x1^-1 and x2 -> x2^-1"""
    _rank2(w)
    return substitute_generators(w, {1: Word.generator(1, -1), 2: Word.generator(2, -1)})


def eta(w: Word) -> Word:
    """x1 -> x1 x2, x2 fixed; exposed as a word map only"""
    _rank2(w)
    return substitute_generators(w, {1: Word(((1, 1), (2, 1)))})


AUTOMORPHISMS = {"tau": tau, "iota": iota, "mirror": mirror, "eta": eta}


def words_of_weighted_length(max_weight: int, rank: int = 2, unit_exponents: bool = True) -> Iterable[Word]:
    """All freely reduced words with weighted length <= max_weight (exponents +-1 when unit_exponents)"""
    letters = [(g, s) for g in range(1, rank + 1) for s in (1, -1)]

    def extend(prefix: Tuple[Letter, ...], budget: int):
        yield prefix
        for gen, sign in letters:
            cost = 1 if sign > 0 else 2
            if cost > budget:
                continue
            if prefix and prefix[-1][0] == gen:
                if unit_exponents or prefix[-1][1] * sign < 0:
                    continue
                merged = prefix[:-1] + ((gen, prefix[-1][1] + sign),)
                yield from extend(merged, budget - cost)
                continue
            yield from extend(prefix + ((gen, sign),), budget - cost)

    seen = set()
    for letters_ in extend((), max_weight):
        if letters_ in seen:
            continue
        seen.add(letters_)
        yield Word(letters_, rank)


def cyclic_classes(max_weight: int, rank: int = 2) -> List[Word]:
    """Distinct canonical cyclic classes of cyclically reduced +-1 words up to a weighted length"""
    classes = {}
    for w in words_of_weighted_length(max_weight, rank):
        if w.is_identity() or not is_cyclically_reduced(w):
            continue
        c = cyclic_reduce(w)
        if all(abs(e) == 1 for _, e in c.letters):
            classes[c.letters] = c
    return sorted(classes.values(), key=lambda c: (weighted_length(c), [_letter_key(x) for x in c.letters]))
