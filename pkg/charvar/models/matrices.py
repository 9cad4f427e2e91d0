"""
3x3 matrices over exact rationals or complex floats, word evaluation on
generator tuples, the seeded SL(3,Q) sampler and the special families used
by the singular-locus checks.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from models.words import Word
from utils.errors import (
    BlockNotUnimodular,
    NotUnimodular,
    RankMismatch,
    SingularBlock,
    ZeroParameter,
)

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, complex]
SeedLike = Union[int, np.random.SeedSequence, np.random.Generator]

DEFAULT_TOLERANCE = 1e-9
DEFAULT_FACTORS = 6


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


@dataclass(frozen=True)
class Mat3:
    """Immutable 3x3 matrix, entries row-major"""

    entries: Tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.entries) != 9:
            raise ValueError(f"Mat3 needs 9 entries, got {len(self.entries)}")
        object.__setattr__(self, "entries", tuple(
            Fraction(x) if isinstance(x, int) else x for x in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "Mat3":
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs three rows of three entries")
        return cls(tuple(x for row in rows for x in row))

    @classmethod
    def identity(cls) -> "Mat3":
        return cls.diag(1, 1, 1)

    @classmethod
    def diag(cls, a: Scalar, b: Scalar, c: Scalar) -> "Mat3":
        return cls((a, 0, 0, 0, b, 0, 0, 0, c))

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        i, j = index
        return self.entries[3 * i + j]

    def rows(self) -> List[List[Scalar]]:
        return [list(self.entries[3 * i:3 * i + 3]) for i in range(3)]

    def is_exact(self) -> bool:
        return all(_is_exact(x) for x in self.entries)

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(x) for x in self.entries], dtype=complex).reshape(3, 3)

    # Algebra

    def __add__(self, other: "Mat3") -> "Mat3":
        return Mat3(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat3") -> "Mat3":
        return Mat3(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Mat3":
        return Mat3(tuple(-a for a in self.entries))

    def __mul__(self, scalar) -> "Mat3":
        if isinstance(scalar, Mat3):
            return NotImplemented
        return Mat3(tuple(a * scalar for a in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "Mat3") -> "Mat3":
        a, b = self.entries, other.entries
        return Mat3(tuple(
            a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j]
            for i in range(3) for j in range(3)
        ))

    def __pow__(self, n: int) -> "Mat3":
        if n < 0:
            return inverse_sl(self) ** (-n)
        result = Mat3.identity()
        base = self
        while n:
            if n & 1:
                result = result @ base
            n >>= 1
            if n:
                base = base @ base
        return result

    def trace(self) -> Scalar:
        e = self.entries
        return e[0] + e[4] + e[8]

    def det(self) -> Scalar:
        # cofactor expansion along the first column
        e = self.entries
        return (e[0] * (e[4] * e[8] - e[5] * e[7])
                - e[3] * (e[1] * e[8] - e[2] * e[7])
                + e[6] * (e[1] * e[5] - e[2] * e[4]))

    def adjugate(self) -> "Mat3":
        """Transpose of the cofactor matrix"""
        e = self.entries

        def minor(r0, r1, c0, c1):
            return e[3 * r0 + c0] * e[3 * r1 + c1] - e[3 * r0 + c1] * e[3 * r1 + c0]

        return Mat3((
            minor(1, 2, 1, 2), -minor(0, 2, 1, 2), minor(0, 1, 1, 2),
            -minor(1, 2, 0, 2), minor(0, 2, 0, 2), -minor(0, 1, 0, 2),
            minor(1, 2, 0, 1), -minor(0, 2, 0, 1), minor(0, 1, 0, 1),
        ))

    def is_zero(self, tolerance: float = 0.0) -> bool:
        if self.is_exact() and tolerance == 0.0:
            return all(x == 0 for x in self.entries)
        return bool(np.allclose(self.to_numpy(), 0, rtol=0, atol=max(tolerance, 0.0)))

    def allclose(self, other: "Mat3", tolerance: float = DEFAULT_TOLERANCE) -> bool:
        return bool(np.allclose(self.to_numpy(), other.to_numpy(), rtol=tolerance, atol=tolerance))


def trace(m: Mat3) -> Scalar:
    return m.trace()


def det(m: Mat3) -> Scalar:
    return m.det()


def mul(a: Mat3, b: Mat3) -> Mat3:
    return a @ b


def adjugate(m: Mat3) -> Mat3:
    return m.adjugate()


def is_unimodular(m: Mat3, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    d = m.det()
    if _is_exact(d):
        return d == 1
    return abs(complex(d) - 1) <= tolerance


def inverse_sl(m: Mat3, tolerance: float = DEFAULT_TOLERANCE) -> Mat3:
    """Inverse of a determinant-1 matrix, which is its adjugate"""
    if not is_unimodular(m, tolerance):
        raise NotUnimodular(f"Determinant {m.det()} is not 1")
    return m.adjugate()


@dataclass(frozen=True)
class RepPair:
    """A point of SL3 x SL3: images of x1 and x2"""

    m1: Mat3
    m2: Mat3

    def __iter__(self) -> Iterator[Mat3]:
        return iter((self.m1, self.m2))

    def is_exact(self) -> bool:
        return self.m1.is_exact() and self.m2.is_exact()

    def conjugate(self, g: Mat3) -> "RepPair":
        g_inv = inverse_sl(g)
        return RepPair(g_inv @ self.m1 @ g, g_inv @ self.m2 @ g)


def identity_pair() -> RepPair:
    return RepPair(Mat3.identity(), Mat3.identity())


def eval_word(w: Word, pair: Union[RepPair, Sequence[Mat3]], tolerance: float = DEFAULT_TOLERANCE) -> Mat3:
    """Matrix image of a word; negative exponents go through inverse_sl"""
    mats = tuple(pair)
    if w.rank > len(mats):
        raise RankMismatch(f"Word of rank {w.rank} evaluated on {len(mats)} matrices")
    inverses: Dict[int, Mat3] = {}
    result = Mat3.identity()
    for gen, exp in w.letters:
        if exp > 0:
            base = mats[gen - 1]
        else:
            if gen not in inverses:
                inverses[gen] = inverse_sl(mats[gen - 1], tolerance)
            base = inverses[gen]
        result = result @ (base if abs(exp) == 1 else base ** abs(exp))
    return result


def trace_word(w: Word, pair: Union[RepPair, Sequence[Mat3]]) -> Scalar:
    return eval_word(w, pair).trace()


# Sampling

def _random_rational(rng: np.random.Generator, bound: int = 9) -> Fraction:
    numerator = int(rng.integers(1, bound + 1)) * (1 if rng.random() < 0.5 else -1)
    denominator = int(rng.integers(1, bound + 1))
    return Fraction(numerator, denominator)


def _random_integer(rng: np.random.Generator, bound: int = 3) -> Fraction:
    return Fraction(int(rng.integers(1, bound + 1)) * (1 if rng.random() < 0.5 else -1))


def transvection(i: int, j: int, q: Scalar) -> Mat3:
    """Elementary shear I + q E_ij, i != j"""
    if i == j:
        raise ValueError("Transvection needs distinct row and column")
    entries: List[Scalar] = [Fraction(1), 0, 0, 0, Fraction(1), 0, 0, 0, Fraction(1)]
    entries[3 * i + j] = q
    return Mat3(tuple(entries))


def _random_transvection_product(rng: np.random.Generator, n_factors: int, draw) -> Mat3:
    result = Mat3.identity()
    for _ in range(n_factors):
        i, j = (int(k) for k in rng.choice(3, size=2, replace=False))
        result = result @ transvection(i, j, draw(rng))
    return result


def _generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_sl3q(seed: SeedLike, n_factors: int = DEFAULT_FACTORS) -> RepPair:
    """Exact rational pair, each matrix a product of n_factors transvections"""
    if n_factors < 1:
        raise ValueError("n_factors must be at least 1")
    rng = _generator(seed)
    return RepPair(_random_transvection_product(rng, n_factors, _random_rational),
                   _random_transvection_product(rng, n_factors, _random_rational))


def sample_sl3z(seed: SeedLike, n_factors: int = DEFAULT_FACTORS) -> RepPair:
    """Integer pair with small shears; keeps interpolation systems cheap"""
    if n_factors < 1:
        raise ValueError("n_factors must be at least 1")
    rng = _generator(seed)
    return RepPair(_random_transvection_product(rng, n_factors, _random_integer),
                   _random_transvection_product(rng, n_factors, _random_integer))


def sample_pairs(seed: Union[int, Sequence[int]], count: int, n_factors: int = DEFAULT_FACTORS, integral: bool = False) -> List[RepPair]:
    """count independent pairs from child seeds of one seed sequence"""
    sampler = sample_sl3z if integral else sample_sl3q
    children = np.random.SeedSequence(seed).spawn(count)
    return [sampler(child, n_factors) for child in children]


def random_sl3q(rng: np.random.Generator, n_factors: int = DEFAULT_FACTORS) -> Mat3:
    return _random_transvection_product(rng, n_factors, _random_rational)


# Families

Block2 = Sequence[Scalar]


def _block_det(block: Block2) -> Scalar:
    a, b, c, d = block
    return a * d - b * c


def embed_block(block: Block2, corner: Scalar) -> Mat3:
    a, b, c, d = block
    return Mat3((a, b, 0, c, d, 0, 0, 0, corner))


def family_sl2(block1: Block2, block2: Block2) -> RepPair:
    """2x2 unimodular blocks embedded upper-left with corner 1"""
    for block in (block1, block2):
        if _block_det(block) != 1:
            raise BlockNotUnimodular(f"Block {list(block)} has determinant {_block_det(block)}")
    return RepPair(embed_block(block1, 1), embed_block(block2, 1))


def family_gl2(block1: Block2, block2: Block2) -> RepPair:
    """Invertible 2x2 blocks with corner 1/det(block)"""
    mats = []
    for block in (block1, block2):
        d = _block_det(block)
        if d == 0:
            raise SingularBlock(f"Block {list(block)} is singular")
        mats.append(embed_block(block, 1 / Fraction(d) if _is_exact(d) else 1 / d))
    return RepPair(*mats)


def family_diag(a1: Scalar, b1: Scalar, a2: Scalar, b2: Scalar) -> RepPair:
    if any(x == 0 for x in (a1, b1, a2, b2)):
        raise ZeroParameter("Diagonal family parameters must be nonzero")

    def corner(a, b):
        return 1 / Fraction(a * b) if _is_exact(a) and _is_exact(b) else 1 / (a * b)

    return RepPair(Mat3.diag(a1, b1, corner(a1, b1)), Mat3.diag(a2, b2, corner(a2, b2)))


RHO1_PATTERN = ((1, 1, -1), (1, -1, 1), (-1, -1, -1))
RHO2_PATTERN = ((1, -1, 1), (-1, -1, -1), (1, 1, -1))


def rational_cube_root(q: Fraction) -> Optional[Fraction]:
    """Exact cube root of a rational when one exists"""
    q = Fraction(q)

    def icbrt(n: int) -> Optional[int]:
        sign = -1 if n < 0 else 1
        guess = int(round(float(np.cbrt(abs(n)))))
        for k in (guess - 1, guess, guess + 1):
            if k >= 0 and k ** 3 == abs(n):
                return sign * k
        return None

    num, den = icbrt(q.numerator), icbrt(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _real_cube_root(q: Scalar) -> Scalar:
    if _is_exact(q):
        exact = rational_cube_root(Fraction(q))
        if exact is not None:
            return exact
    return complex(float(np.cbrt(complex(q).real)))


def pair_rho1_rho2(a: Scalar, b: Scalar) -> Tuple[RepPair, RepPair]:
    """Two pairs that agree on the eight R-generators but not on t(5)"""
    if a == 0 or b == 0:
        raise ZeroParameter("a and b must be nonzero")
    a, b = complex(a), complex(b)
    scale = complex(np.cbrt(0.25))
    x1 = Mat3.diag(a, b, 1 / (a * b))

    def patterned(pattern):
        return Mat3(tuple(scale * v for row in pattern for v in row))

    return RepPair(x1, patterned(RHO1_PATTERN)), RepPair(x1, patterned(RHO2_PATTERN))


def family_ac(a: Scalar, c: Scalar) -> RepPair:
    """diag(a, a, 1/a^2) with the c-scaled sign matrix; exact when c/4 is a rational cube"""
    if a == 0 or c == 0:
        raise ZeroParameter("a and c must be nonzero")
    root = _real_cube_root(Fraction(c) / 4 if _is_exact(c) else c / 4)
    exact = _is_exact(root) and _is_exact(a)
    if exact:
        a, c = Fraction(a), Fraction(c)
    else:
        a, c, root = complex(a), complex(c), complex(root)
        logger.debug(f"family_ac({a}, {c}) uses the floating path")
    x1 = Mat3.diag(a, a, 1 / (a * a))
    x2 = Mat3.from_rows([
        [root, root, -root],
        [root, -root, root],
        [-root / c, -root / c, -root / c],
    ])
    return RepPair(x1, x2)
