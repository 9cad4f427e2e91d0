"""
Trace identities for 3x3 matrices and the reduction of trace words to the
nine generators t(+-1..+-4), t(5).

Every identity in the catalog is stored as a residual, left side minus right
side, evaluated on concrete matrices; a residual is identically zero, which
the verification suite checks on exact samples.  The reducer expresses
tr(w) as a polynomial in the generators: cyclic reduction, then power
reduction, then the rule table, with exact interpolation as the fallback.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union
import logging

from data.relation_store import RelationStore, default_store
from models.interpolation import Interpolator, evaluation_point
from models.matrices import Mat3, RepPair, Scalar, eval_word, inverse_sl, is_unimodular, trace_word
from models.polynomial import T, TraceSym, Polynomial, Variable
from models.words import Letter, Word, cyclic_reduce, free_reduce, weighted_length
from utils.errors import ArityMismatch, NotUnimodular, RankUnsupported, UnknownIdentity

logger = logging.getLogger(__name__)

Residual = Union[Mat3, Scalar]
HALF = Fraction(1, 2)


def _tr(m: Mat3) -> Scalar:
    return m.trace()


def _eye(scalar) -> Mat3:
    return scalar * Mat3.identity()


def pol_rhs(x: Mat3, y: Mat3) -> Mat3:
    """Trace-polynomial value of y x^2 + x^2 y + x y x"""
    tx, ty, txy = _tr(x), _tr(y), _tr(x @ y)
    x2 = x @ x
    tx2 = _tr(x2)
    return (ty * x2 + tx * (y @ x) + tx * (x @ y) - tx * ty * x + txy * x
            + _eye(_tr(y @ x2) - tx * txy)
            - HALF * ((tx * tx - tx2) * y + _eye(ty * tx2 - ty * tx * tx)))


# Residuals, left side minus right side

def _cayham(x):
    return x @ x @ x - _tr(x) * (x @ x) + _tr(x.adjugate()) * x - _eye(x.det())


def _trinv(x):
    return _tr(x.adjugate()) - HALF * (_tr(x) ** 2 - _tr(x @ x))


def _det_from_traces(x) -> Scalar:
    tx = _tr(x)
    return Fraction(1, 3) * _tr(x @ x @ x) + Fraction(1, 6) * tx ** 3 - HALF * tx * _tr(x @ x)


def _dettr(x):
    return x.det() - _det_from_traces(x)


def _cayham2(x, y):
    xi = inverse_sl(x)
    return x @ x @ y - _tr(x) * (x @ y) + _tr(xi) * y - xi @ y


def _detsum(x, y, lam=Fraction(3, 2)):
    tx, ty, txy = _tr(x), _tr(y), _tr(x @ y)
    tx2, ty2 = _tr(x @ x), _tr(y @ y)
    rhs = (lam ** 3 * _det_from_traces(y)
           + lam ** 2 * (_tr(x @ y @ y) + HALF * tx * ty ** 2 - HALF * tx * ty2 - ty * txy)
           + lam * (_tr(x @ x @ y) + HALF * ty * tx ** 2 - HALF * ty * tx2 - tx * txy)
           + _det_from_traces(x))
    return (x + lam * y).det() - rhs


def _adjtrace_sum(x, y, lam=Fraction(3, 2)):
    tx, ty, txy = _tr(x), _tr(y), _tr(x @ y)
    tx2, ty2 = _tr(x @ x), _tr(y @ y)
    z = x + lam * y
    rhs = (lam ** 3 * (HALF * (ty ** 2 - ty2) * y)
           + lam ** 2 * (HALF * (ty ** 2 - ty2) * x + (tx * ty - txy) * y)
           + lam * (HALF * (tx ** 2 - tx2) * y + (tx * ty - txy) * x)
           + HALF * (tx ** 2 - tx2) * x)
    return _tr(z.adjugate()) * z - rhs


def _polarization(x, y):
    return y @ x @ x + x @ x @ y + x @ y @ x - pol_rhs(x, y)


def _pol(x, y):
    return x @ y @ y + y @ y @ x + y @ x @ y - pol_rhs(y, x)


def _fundamental(x, y, z):
    lhs = x @ z @ y + z @ x @ y + y @ x @ z + y @ z @ x + x @ y @ z + z @ y @ x
    return lhs - (pol_rhs(x + z, y) - pol_rhs(x, y) - pol_rhs(z, y))


def _fund1(x, y, u, v):
    tx, ty, txy = _tr(x), _tr(y), _tr(x @ y)
    x2 = x @ x
    tx2 = _tr(x2)
    lhs = _tr(u @ y @ x2 @ v) + _tr(u @ x2 @ y @ v)
    rhs = (-_tr(u @ x @ y @ x @ v) + ty * _tr(u @ x2 @ v) + tx * _tr(u @ y @ x @ v)
           + tx * _tr(u @ x @ y @ v) - (tx * ty - txy) * _tr(u @ x @ v)
           + (_tr(y @ x2) - tx * txy) * _tr(u @ v)
           - HALF * (tx ** 2 - tx2) * _tr(u @ y @ v)
           + HALF * (ty * tx ** 2 - ty * tx2) * _tr(u @ v))
    return lhs - rhs


def _fund2(x, y):
    xi, yi = inverse_sl(x), inverse_sl(y)
    tx, ty, txi, tyi = _tr(x), _tr(y), _tr(xi), _tr(yi)
    rhs = (-_tr(y @ x @ yi @ xi) - 3 + ty * tyi + 2 * tx * txi
           - tx * ty * _tr(xi @ yi) + _tr(x @ y) * _tr(xi @ yi)
           - txi * _tr(yi @ xi @ y @ xi)
           + (_tr(y @ x @ x) - tx * _tr(x @ y) + txi * ty) * _tr(yi @ xi @ xi))
    return _tr(x @ y @ xi @ yi) - rhs


def _inv_square(x, y):
    xi, yi = inverse_sl(x), inverse_sl(y)
    rhs = _tr(xi) * _tr(xi @ yi) - _tr(x) * _tr(yi) + _tr(x @ yi)
    return _tr(yi @ xi @ xi) - rhs


def _inv_cross(x, y):
    xi, yi = inverse_sl(x), inverse_sl(y)
    rhs = (_tr(xi @ yi) * _tr(xi @ y) - _tr(x) * _tr(y) * _tr(yi) + _tr(y) * _tr(x @ yi)
           + _tr(x) + _tr(x @ y) * _tr(yi))
    return _tr(yi @ xi @ y @ xi) - rhs


def _polyp1(x, y):
    xi, yi = inverse_sl(x), inverse_sl(y)
    tx, ty, txi, tyi = _tr(x), _tr(y), _tr(xi), _tr(yi)
    txy, txiyi, txyi, txiy = _tr(x @ y), _tr(xi @ yi), _tr(x @ yi), _tr(xi @ y)
    rhs = (-_tr(y @ x @ yi @ xi) + tx * txi * ty * tyi + tx * txi + ty * tyi
           + txy * txiyi + txyi * txiy - txi * ty * txyi - tx * tyi * txiy
           - tx * ty * txiyi - txy * txi * tyi - 3)
    return _tr(x @ y @ xi @ yi) - rhs


def _polyp2(x, y):
    store = default_store()
    pair = RepPair(x, y)
    point = evaluation_point(pair)
    return point[T(-5)] - (store.P.evaluate(point) - point[T(5)])


def _powerreduce(x, u, v, n=3):
    if n < 2:
        raise ValueError(f"Power reduction needs n >= 2, got {n}")

    def side(k):
        return _tr(u @ (x ** k) @ v)

    return side(n) - (_tr(x) * side(n - 1) - _tr(inverse_sl(x)) * side(n - 2) + side(n - 3))


def _chain_step1(x, y, z):
    lhs = x @ x @ z @ y @ y
    rhs = -(x @ y @ y @ x) @ z - (x @ y @ x) @ z @ y + x @ pol_rhs(y, x @ z)
    return lhs - rhs


def _chain_step2(x, y, z):
    lhs = x @ x @ z @ y @ y
    y2, x2 = y @ y, x @ x
    rhs = ((y2 @ x2 + x2 @ y2 - pol_rhs(x, y2)) @ z
           + (y @ x2 + x2 @ y - pol_rhs(x, y)) @ z @ y
           + x @ pol_rhs(y, x @ z))
    return lhs - rhs


def _chain_step3(x, y, z):
    x2 = x @ x
    lhs = 3 * (x2 @ z @ y @ y)
    rhs = (pol_rhs(y, x2 @ z) + x @ pol_rhs(y, x @ z) - pol_rhs(x, y @ y) @ z
           - pol_rhs(x, y) @ z @ y + x2 @ pol_rhs(y, z))
    return lhs - rhs


def _chain_step4(x, y, z, u, v, w):
    a, b, c = x @ y, z @ u, v @ w
    lhs = a @ c @ b + c @ a @ b + b @ a @ c + b @ c @ a + a @ b @ c + c @ b @ a
    return lhs - (pol_rhs(a + c, b) - pol_rhs(a, b) - pol_rhs(c, b))


@dataclass(frozen=True)
class IdentityRecord:
    """A named identity with its matrix arity; residual(*mats) vanishes identically"""

    name: str
    arity: int
    residual: Callable[..., Residual]
    needs_sl: bool = False
    params: Tuple[str, ...] = ()
    summary: str = ""


CATALOG: Dict[str, IdentityRecord] = {r.name: r for r in (
    IdentityRecord("cayham", 1, _cayham, summary="x^3 - tr(x)x^2 + tr(x*)x - det(x)I = 0"),
    IdentityRecord("trinv", 1, _trinv, summary="tr(x*) = (tr(x)^2 - tr(x^2))/2"),
    IdentityRecord("dettr", 1, _dettr, summary="det(x) from tr(x), tr(x^2), tr(x^3)"),
    IdentityRecord("cayham2", 2, _cayham2, needs_sl=True, summary="x^2y - tr(x)xy + tr(x^-1)y - x^-1y = 0"),
    IdentityRecord("detsum", 2, _detsum, params=("lam",), summary="det(x + lam*y) expanded in lam"),
    IdentityRecord("adjtrace-sum", 2, _adjtrace_sum, params=("lam",), summary="(x + lam*y)tr((x + lam*y)*) expanded in lam"),
    IdentityRecord("polarization", 2, _polarization, summary="yx^2 + x^2y + xyx = pol(x, y)"),
    IdentityRecord("pol", 2, _pol, summary="xy^2 + y^2x + yxy = pol(y, x)"),
    IdentityRecord("fundamental", 3, _fundamental, summary="sum over orderings of x, y, z with y fixed in degree two"),
    IdentityRecord("fund1", 4, _fund1, summary="trace of u pol(x, y) v"),
    IdentityRecord("fund2", 2, _fund2, needs_sl=True, summary="tr(xyx^-1y^-1) through tr(y^-1x^-2)"),
    IdentityRecord("inv-square", 2, _inv_square, needs_sl=True, summary="tr(y^-1x^-2)"),
    IdentityRecord("inv-cross", 2, _inv_cross, needs_sl=True, summary="tr(y^-1x^-1yx^-1)"),
    IdentityRecord("polyp1", 2, _polyp1, needs_sl=True, summary="commutator plus inverse commutator"),
    IdentityRecord("powerreduce", 3, _powerreduce, needs_sl=True, params=("n",), summary="tr(ux^nv) recursion"),
    IdentityRecord("lemma-eq4", 3, _chain_step1, summary="x^2zy^2 through pol(y, xz)"),
    IdentityRecord("lemma-eq5", 3, _chain_step2, summary="x^2zy^2 through pol(x, y^2) and pol(x, y)"),
    IdentityRecord("lemma-eq6", 3, _chain_step3, summary="3x^2zy^2 as a sum of pol terms"),
    IdentityRecord("lemma-eq7", 6, _chain_step4, summary="fundamental expression in xy, zu, vw"),
    IdentityRecord("polyp2", 2, _polyp2, needs_sl=True, summary="t(-5) = P - t(5)"),
)}

IDENTITY_NAMES = tuple(CATALOG)


def get_identity(name: str) -> IdentityRecord:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownIdentity(f"Unknown identity: {name}") from None


def identity_residual(name: str, mats: Sequence[Mat3], **params) -> Residual:
    """Left side minus right side of the named identity at the given matrices"""
    record = get_identity(name)
    if len(mats) != record.arity:
        raise ArityMismatch(f"{name} takes {record.arity} matrices, got {len(mats)}")
    unknown = set(params) - set(record.params)
    if unknown:
        raise TypeError(f"{name} does not accept parameters {sorted(unknown)}")
    if record.needs_sl:
        for m in mats:
            if not is_unimodular(m):
                raise NotUnimodular(f"{name} needs determinant-1 matrices, got det {m.det()}")
    return record.residual(*mats, **params)


def residual_is_zero(value: Residual, tolerance: float = 0.0) -> bool:
    if isinstance(value, Mat3):
        return value.is_zero(tolerance)
    if isinstance(value, (int, Fraction)) and tolerance == 0.0:
        return value == 0
    return abs(complex(value)) <= tolerance


# Trace expressions

def trace_symbol(w: Word) -> Polynomial:
    """tr(w) as a formal symbol keyed by its cyclic class; the identity is 3"""
    c = cyclic_reduce(w)
    if c.is_identity():
        return Polynomial.constant(3)
    return Polynomial.var(TraceSym(c.letters))


def _symbol_word(v: Variable) -> Word:
    rank = max(2, max(g for g, _ in v.index))
    return Word(v.index, rank)


def trace_assignment(expr: Polynomial, pair: Union[RepPair, Sequence[Mat3]]) -> Dict[Variable, Scalar]:
    """Values of every trace symbol and generator variable of expr at a matrix tuple"""
    mats = tuple(pair)
    values: Dict[Variable, Scalar] = {}
    generators = None
    for v in expr.variables():
        if v.kind == "Trace":
            values[v] = trace_word(_symbol_word(v), mats)
        elif v.kind == "T":
            if generators is None:
                generators = evaluation_point(RepPair(*mats[:2]))
            values[v] = generators[v]
    return values


def evaluate_trace_expression(expr: Polynomial, pair: Union[RepPair, Sequence[Mat3]]) -> Scalar:
    return expr.evaluate(trace_assignment(expr, pair))


@lru_cache(maxsize=None)
def _power_reduced(letters: Tuple[Letter, ...]) -> Polynomial:
    position = next((k for k, (_, e) in enumerate(letters) if abs(e) >= 2), None)
    if position is None:
        return trace_symbol(Word(letters, max(2, max(g for g, _ in letters))))
    rotated = letters[position:] + letters[:position]
    (gen, n), rest = rotated[0], rotated[1:]
    rank = max(2, max(g for g, _ in letters))

    def reduced(k: int) -> Polynomial:
        head = ((gen, k),) if k else ()
        c = cyclic_reduce(Word(head + rest, rank))
        if c.is_identity():
            return Polynomial.constant(3)
        return _power_reduced(c.letters)

    x = trace_symbol(Word.generator(gen, 1, rank))
    x_inv = trace_symbol(Word.generator(gen, -1, rank))
    if n >= 2:
        # tr(x^n v) = tr(x) tr(x^(n-1) v) - tr(x^-1) tr(x^(n-2) v) + tr(x^(n-3) v)
        return x * reduced(n - 1) - x_inv * reduced(n - 2) + reduced(n - 3)
    return x_inv * reduced(n + 1) - x * reduced(n + 2) + reduced(n + 3)


def reduce_power(expr: Polynomial) -> Polynomial:
    """Rewrite every trace symbol with an exponent of size >= 2 into symbols with exponents +-1"""
    bindings = {
        v: _power_reduced(v.index)
        for v in expr.variables()
        if v.kind == "Trace" and any(abs(e) >= 2 for _, e in v.index)
    }
    return expr.substitute(bindings) if bindings else expr


def _symbol_weight(v: Variable) -> int:
    if v.kind == "Trace":
        return weighted_length(_symbol_word(v))
    if v.kind == "T":
        return weighted_length(default_store().generator_words[v.index])
    return 0


def _trace_degree(coefficient: Polynomial) -> int:
    if coefficient.is_zero():
        return -1
    return max(sum(_symbol_weight(v) * e for v, e in mono) for mono, _ in coefficient.items())


class WordCombination:
    """Formal sum of words with trace-expression coefficients, a matrix-valued expression"""

    def __init__(self, terms: Optional[Mapping[Word, Polynomial]] = None):
        self.terms: Dict[Word, Polynomial] = {}
        for w, c in (terms or {}).items():
            self._accumulate(free_reduce(w), c)

    def _accumulate(self, w: Word, c: Polynomial):
        total = self.terms.get(w, Polynomial.zero()) + c
        if total.is_zero():
            self.terms.pop(w, None)
        else:
            self.terms[w] = total

    @classmethod
    def of(cls, w: Word, coefficient=1) -> "WordCombination":
        return cls({w: Polynomial._coerce(coefficient)})

    @classmethod
    def scalar(cls, coefficient: Polynomial, rank: int = 2) -> "WordCombination":
        return cls({Word.identity(rank): coefficient})

    def __add__(self, other: "WordCombination") -> "WordCombination":
        result = WordCombination(self.terms)
        for w, c in other.terms.items():
            result._accumulate(w, c)
        return result

    def __neg__(self) -> "WordCombination":
        return WordCombination({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "WordCombination") -> "WordCombination":
        return self + (-other)

    def __mul__(self, other) -> "WordCombination":
        if isinstance(other, WordCombination):
            result = WordCombination()
            for (u, a), (v, b) in product(self.terms.items(), other.terms.items()):
                result._accumulate(free_reduce(u * v), a * b)
            return result
        coefficient = Polynomial._coerce(other)
        return WordCombination({w: c * coefficient for w, c in self.terms.items()})

    __rmul__ = __mul__

    def evaluate(self, pair: Union[RepPair, Sequence[Mat3]]) -> Mat3:
        result = Mat3((0,) * 9)
        for w, c in self.terms.items():
            result = result + evaluate_trace_expression(c, pair) * eval_word(w, pair)
        return result


def pol_expression(x: Word, y: Word) -> WordCombination:
    """pol(x, y) as a formal word combination with trace-symbol coefficients"""
    X, Y = WordCombination.of(x), WordCombination.of(y)
    one = WordCombination.of(Word.identity(x.rank))
    tx, ty, txy = trace_symbol(x), trace_symbol(y), trace_symbol(x * y)
    tx2, tyx2 = trace_symbol(x * x), trace_symbol(y * x * x)
    return (ty * (X * X) + tx * (Y * X) + tx * (X * Y) - tx * ty * X + txy * X
            + (tyx2 - tx * txy) * one
            - HALF * ((tx * tx - tx2) * Y + (ty * tx2 - ty * tx * tx) * one))


def degree_bounds(expr: Union[Polynomial, WordCombination]) -> Tuple[int, int]:
    """(degree, trace degree): largest weighted length of the word part, and of word plus trace factors"""
    if isinstance(expr, Polynomial):
        return (0 if not expr.is_zero() else -1), _trace_degree(expr)
    if not expr.terms:
        return -1, -1
    degree = max(weighted_length(w) for w in expr.terms)
    trace_degree = max(weighted_length(w) + _trace_degree(c) for w, c in expr.terms.items())
    return degree, trace_degree


# Reduction to the nine generators

class TraceReducer:
    """Memoised reduction of tr(w) to a polynomial in t(+-1..+-4), t(5)"""

    def __init__(self, store: Optional[RelationStore] = None, interpolator: Optional[Interpolator] = None):
        self.store = store or default_store()
        self.interpolator = interpolator or Interpolator()
        self._memo: Dict[Tuple[Letter, ...], Polynomial] = {}

    def reduce_trace_word(self, w: Word, use_table: bool = True) -> Polynomial:
        if w.rank > 2:
            raise RankUnsupported(f"Reduction is implemented for rank 2, got rank {w.rank}")
        c = cyclic_reduce(Word(w.letters, 2))
        if c.is_identity():
            return Polynomial.constant(3)
        if not use_table:
            return self._reduce_letters(c.letters, use_table=False)
        if c.letters not in self._memo:
            self._memo[c.letters] = self._reduce_letters(c.letters, use_table=True)
        return self._memo[c.letters]

    def _reduce_letters(self, letters: Tuple[Letter, ...], use_table: bool) -> Polynomial:
        word = Word(letters, 2)
        if any(abs(e) >= 2 for _, e in letters):
            expanded = _power_reduced(letters)
            bindings = {
                v: self.reduce_trace_word(_symbol_word(v), use_table)
                for v in expanded.variables() if v.kind == "Trace"
            }
            logger.debug(f"Power reduction of tr({word.text()}) into {len(bindings)} symbols")
            return self.store.normal_form(expanded.substitute(bindings))
        if use_table:
            rule = self.store.trace_rules.get(letters)
            if rule is not None:
                return rule
        return self.interpolator.reduce_with_schedule(word)

    def reduce_expression(self, expr: Polynomial) -> Polynomial:
        """Replace every trace symbol of expr by its reduction"""
        bindings = {v: self.reduce_trace_word(_symbol_word(v)) for v in expr.variables() if v.kind == "Trace"}
        return self.store.normal_form(expr.substitute(bindings))

    def known_reductions(self) -> Dict[str, Polynomial]:
        return {Word(k, 2).text(): p for k, p in sorted(self._memo.items())}


@lru_cache(maxsize=None)
def default_reducer() -> TraceReducer:
    return TraceReducer()


def reduce_trace_word(w: Word) -> Polynomial:
    return default_reducer().reduce_trace_word(w)


# Word shapes that generate the invariant ring

GENERATOR_SHAPES: Tuple[Tuple[str, Tuple[int, ...]], ...] = (
    ("x_i", (1,)),
    ("x_i^-1", (-1,)),
    ("x_i x_j", (1, 1)),
    ("x_i x_j x_k", (1, 1, 1)),
    ("x_i x_j^-1", (1, -1)),
    ("x_i^-1 x_j^-1", (-1, -1)),
    ("x_i x_j x_k^-1", (1, 1, -1)),
    ("x_i x_j x_k x_l", (1, 1, 1, 1)),
    ("x_i x_j x_k x_l x_m", (1, 1, 1, 1, 1)),
    ("x_i x_j x_k x_l^-1", (1, 1, 1, -1)),
    ("x_i x_j^-1 x_k^-1", (1, -1, -1)),
    ("x_i^-1 x_j^-1 x_k^-1", (-1, -1, -1)),
    ("x_i x_j x_k^-1 x_l^-1", (1, 1, -1, -1)),
    ("x_i x_j^-1 x_k x_l^-1", (1, -1, 1, -1)),
    ("x_i x_j x_k x_l x_m^-1", (1, 1, 1, 1, -1)),
    ("x_i x_j x_k x_l x_m x_n", (1, 1, 1, 1, 1, 1)),
)


def classify_generators(r: int) -> List[Word]:
    """Instances of the generating shapes over x1..xr, one per cyclic class, exponents +-1"""
    if r < 1:
        raise ValueError(f"Rank must be positive, got {r}")
    classes: Dict[Tuple[Letter, ...], Word] = {}
    for _, signs in GENERATOR_SHAPES:
        for indices in product(range(1, r + 1), repeat=len(signs)):
            c = cyclic_reduce(Word(tuple(zip(indices, signs)), r))
            if c.is_identity() or any(abs(e) != 1 for _, e in c.letters):
                continue
            classes.setdefault(c.letters, c)
    return sorted(classes.values(), key=lambda w: (weighted_length(w), len(w), w.text()))
