"""Linear combinations of plane posets, the coproducts and the Hopf pairing.

Coefficients are :class:`QPolynomial` values, so every identity is checked
for all values of the deformation parameter at once.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Generic, Hashable, Iterable, Iterator, Mapping, TypeVar

from .poset import (
    DEFAULT_MAX_N,
    EMPTY,
    CardinalityMismatch,
    PlanePoset,
    PlanePosetError,
    check_guard,
    compose,
    enumerate_posets,
    iota,
    level,
    restrict,
    under,
)
from .qpoly import ONE, ZERO, QPolynomial, Scalar, qpow

K = TypeVar("K", bound=Hashable)


class EmptyPoset(PlanePosetError):
    pass


class _Combination(Generic[K]):
    """Finite formal sum ``sum c_k * k`` with polynomial coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[K, Scalar] | None = None):
        clean: dict[K, QPolynomial] = {}
        for key, c in (coeffs or {}).items():
            c = QPolynomial.coerce(c)
            if c:
                clean[key] = c
        self._coeffs = clean

    @classmethod
    def _from_clean(cls, coeffs: dict):
        obj = cls.__new__(cls)
        obj._coeffs = {k: c for k, c in coeffs.items() if c}
        return obj

    def __iter__(self) -> Iterator[tuple[K, QPolynomial]]:
        return iter(sorted(self._coeffs.items(), key=lambda kv: self._key_order(kv[0])))

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __getitem__(self, key: K) -> QPolynomial:
        return self._coeffs.get(key, ZERO)

    def keys(self):
        return self._coeffs.keys()

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other):
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out[k] + c if k in out else c
        return self._from_clean(out)

    def __neg__(self):
        return self._from_clean({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar: Scalar):
        scalar = QPolynomial.coerce(scalar)
        return self._from_clean({k: c * scalar for k, c in self._coeffs.items()})

    __rmul__ = __mul__

    def map_coefficients(self, fn: Callable[[QPolynomial], Scalar]):
        return type(self)({k: fn(c) for k, c in self._coeffs.items()})

    def at(self, q: int):
        """Specialise ``q`` to an integer value."""
        return self.map_coefficients(lambda c: c.evaluate(q))

    @staticmethod
    def _key_order(key):
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


def _term(coeff: QPolynomial, body: str) -> str:
    if coeff == ONE:
        return body
    if len(coeff.terms) > 1:
        return f"({coeff})*{body}"
    return f"{coeff}*{body}"


class VectorElement(_Combination[PlanePoset]):
    @staticmethod
    def _key_order(key: PlanePoset):
        return key.sort_key()

    @classmethod
    def basis(cls, poset: PlanePoset) -> VectorElement:
        return cls({poset: ONE})

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(_term(c, f"[{p}]") for p, c in self)


class TensorElement(_Combination[tuple]):
    """Keys are tuples of plane posets; the tuple length is the tensor arity."""

    @staticmethod
    def _key_order(key: tuple):
        return tuple(p.sort_key() for p in key)

    @classmethod
    def basis(cls, *posets: PlanePoset) -> TensorElement:
        return cls({tuple(posets): ONE})

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(_term(c, "[" + "|".join(str(p) for p in key) + "]") for key, c in self)


def as_vector(x: VectorElement | PlanePoset) -> VectorElement:
    return x if isinstance(x, VectorElement) else VectorElement.basis(x)


# -- products ---------------------------------------------------------------

def _bilinear(op: Callable[[PlanePoset, PlanePoset], PlanePoset], a, b) -> VectorElement:
    a, b = as_vector(a), as_vector(b)
    out: dict[PlanePoset, QPolynomial] = {}
    for p, cp in a._coeffs.items():
        for r, cr in b._coeffs.items():
            key = op(p, r)
            c = cp * cr
            out[key] = out[key] + c if key in out else c
    return VectorElement._from_clean(out)


@lru_cache(maxsize=1 << 16)
def _compose_cached(p: PlanePoset, q: PlanePoset) -> PlanePoset:
    return compose(p, q)


@lru_cache(maxsize=1 << 16)
def _under_cached(p: PlanePoset, q: PlanePoset) -> PlanePoset:
    return under(p, q)


def product_m(a, b) -> VectorElement:
    """Bilinear extension of composition."""
    return _bilinear(_compose_cached, a, b)


def product_under(a, b) -> VectorElement:
    """Bilinear extension of the |> product."""
    return _bilinear(_under_cached, a, b)


def tensor_map(t: TensorElement, fn: Callable[[tuple], Iterable[tuple[tuple, QPolynomial]]]) -> TensorElement:
    """Apply a linear map given on basis tuples as ``key -> [(key', coeff), ...]``."""
    out: dict[tuple, QPolynomial] = {}
    for key, c in t._coeffs.items():
        for new_key, w in fn(key):
            v = c * w
            out[new_key] = out[new_key] + v if new_key in out else v
    return TensorElement._from_clean(out)


# -- coproducts -------------------------------------------------------------

def _cut(poset: PlanePoset, k: int) -> tuple[PlanePoset, PlanePoset]:
    n = poset.n
    return restrict(poset, range(1, k + 1)), restrict(poset, range(k + 1, n + 1))


def cross_h_count(poset: PlanePoset, k: int) -> int:
    """h-pairs from {1..k} into {k+1..n}."""
    n = poset.n
    return sum(1 for y in range(k + 1, n + 1) for x in range(1, k + 1) if poset.is_h(x, y))


@lru_cache(maxsize=None)
def _delta_terms(poset: PlanePoset) -> tuple[tuple[PlanePoset, PlanePoset, int], ...]:
    return tuple((*_cut(poset, k), cross_h_count(poset, k)) for k in range(poset.n, -1, -1))


@lru_cache(maxsize=None)
def _composition_splits(poset: PlanePoset) -> tuple[tuple[PlanePoset, PlanePoset, int], ...]:
    n = poset.n
    return tuple(
        (*_cut(poset, k), k * (n - k))
        for k in range(n, -1, -1)
        if cross_h_count(poset, k) == 0
    )


def delta_q(poset: PlanePoset) -> TensorElement:
    """Sum over biideals ``I`` of ``q^{h-pairs crossing into I} (P - I) (x) I``."""
    return TensorElement({(lo, hi): qpow(e) for lo, hi, e in _delta_terms(poset)})


def delta_tilde_q(poset: PlanePoset) -> TensorElement:
    if poset.n == 0:
        raise EmptyPoset("the reduced coproduct needs a non-empty poset")
    return delta_q(poset) - TensorElement.basis(poset, EMPTY) - TensorElement.basis(EMPTY, poset)


def delta_prime_q(poset: PlanePoset) -> TensorElement:
    """Sum over factorisations ``P = P1 P2`` of ``q^{|P1||P2|} P1 (x) P2``."""
    return TensorElement({(lo, hi): qpow(e) for lo, hi, e in _composition_splits(poset)})


def coproduct(x, which: str = "delta") -> TensorElement:
    """Linear extension of ``delta_q`` (``which="delta"``) or ``delta_prime_q``."""
    terms = _delta_terms if which == "delta" else _composition_splits
    return tensor_map(
        TensorElement({(p,): c for p, c in as_vector(x)}),
        lambda key: [((lo, hi), qpow(e)) for lo, hi, e in terms(key[0])],
    )


def apply_at(t: TensorElement, slot: int, which: str = "delta") -> TensorElement:
    """Apply a coproduct to tensor factor ``slot``, raising the arity by one."""
    terms = _delta_terms if which == "delta" else _composition_splits
    return tensor_map(
        t,
        lambda key: [
            (key[:slot] + (lo, hi) + key[slot + 1:], qpow(e)) for lo, hi, e in terms(key[slot])
        ],
    )


# -- pairing ----------------------------------------------------------------

def phi(p: PlanePoset, q: PlanePoset) -> int:
    """Pairs that are r in one poset and h in the other (matched by label)."""
    if p.n != q.n:
        raise CardinalityMismatch(f"cardinalities differ: {p.n} vs {q.n}")
    return (p.mask ^ q.mask).bit_count()


def pairing_exponent(p: PlanePoset, q: PlanePoset) -> int | None:
    """Exponent of ``<p, q>``, or None when the pairing vanishes."""
    if p.n != q.n or p.mask & q.mask:
        return None
    return (p.mask | q.mask).bit_count()


def pairing(p: PlanePoset, q: PlanePoset) -> QPolynomial:
    """``q^phi(P,Q)`` if iota(P) <= Q, else 0."""
    e = pairing_exponent(p, q)
    return ZERO if e is None else qpow(e)


def pair(a, b) -> QPolynomial:
    a, b = as_vector(a), as_vector(b)
    total = ZERO
    for p, cp in a._coeffs.items():
        for r, cr in b._coeffs.items():
            e = pairing_exponent(p, r)
            if e is not None:
                total = total + cp * cr * qpow(e)
    return total


def pair_tensors(s: TensorElement, t: TensorElement) -> QPolynomial:
    """``<a1 (x) a2, b1 (x) b2> = <a1,b1><a2,b2>``, extended bilinearly."""
    total = ZERO
    for k1, c1 in s._coeffs.items():
        for k2, c2 in t._coeffs.items():
            if len(k1) != len(k2):
                raise ValueError("tensor arities differ")
            e = 0
            for p, r in zip(k1, k2):
                ex = pairing_exponent(p, r)
                if ex is None:
                    break
                e += ex
            else:
                total = total + c1 * c2 * qpow(e)
    return total


def gram_matrix(n: int, max_n: int | None = DEFAULT_MAX_N, basis: list[PlanePoset] | None = None) -> list[list[QPolynomial]]:
    """Pairing matrix over ``basis`` (default: lex order of words)."""
    check_guard(n, max_n)
    basis = basis if basis is not None else enumerate_posets(n, max_n)
    return [[pairing(p, r) for r in basis] for p in basis]


def evaluated_gram(n: int, q_value: int, modulus: int | None = None, max_n: int | None = DEFAULT_MAX_N) -> list[list[int]]:
    """Gram matrix evaluated at an integer ``q`` (optionally reduced)."""
    check_guard(n, max_n)
    basis = enumerate_posets(n, max_n)
    powers: dict[int, int] = {}
    rows = []
    for p in basis:
        row = []
        for r in basis:
            e = pairing_exponent(p, r)
            if e is None:
                row.append(0)
                continue
            if e not in powers:
                powers[e] = pow(q_value, e, modulus) if modulus else q_value**e
            row.append(powers[e])
        rows.append(row)
    return rows


def rank_mod_p(matrix: list[list[int]], modulus: int) -> int:
    """Rank over GF(modulus) by Gaussian elimination."""
    rows = [[v % modulus for v in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, modulus)
        prow = [v * inv % modulus for v in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(v - f * w) % modulus for v, w in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


MERSENNE_61 = (1 << 61) - 1


def gram_rank_at(n: int, q_value: int, modulus: int = MERSENNE_61, max_n: int | None = DEFAULT_MAX_N) -> int:
    return rank_mod_p(evaluated_gram(n, q_value % modulus, modulus, max_n), modulus)


def witness_basis(n: int, max_n: int | None = DEFAULT_MAX_N) -> list[PlanePoset]:
    """Basis ordered so that iota(P_i) < iota(P_j) forces i < j."""
    return sorted(enumerate_posets(n, max_n), key=lambda p: (level(iota(p)), p.word))


def triangularity_witness(n: int, max_n: int | None = DEFAULT_MAX_N) -> list[list[QPolynomial]]:
    """Matrix ``[<P_i, iota(P_j)>]`` over :func:`witness_basis`.

    Entries vanish below the diagonal and the diagonal is ``q^{n(n-1)/2}``.
    """
    basis = witness_basis(n, max_n)
    return [[pairing(p, iota(r)) for r in basis] for p in basis]


def is_upper_triangular_with_diagonal(matrix: list[list[QPolynomial]], diagonal: QPolynomial) -> bool:
    for i, row in enumerate(matrix):
        if row[i] != diagonal:
            return False
        if any(row[j] for j in range(i)):
            return False
    return True


def expected_pairing_exponent(p: PlanePoset, q: PlanePoset) -> int:
    n = p.n
    return n * (n - 1) - level(p) - level(q)

