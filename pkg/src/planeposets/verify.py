"""Exhaustive machine checks of the algebraic identities, symbolic in q."""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from .bruhat import covers, leq
from .hopf import (
    TensorElement,
    apply_at,
    delta_prime_q,
    delta_q,
    expected_pairing_exponent,
    pair_tensors,
    pairing,
    pairing_exponent,
    tensor_map,
)
from .poset import (
    PlanePoset,
    antichain,
    compose,
    enumerate_posets,
    iota,
    is_biideal,
    level,
    restrict,
    under,
)
from .qpoly import ONE, qpow


class UnknownIdentity(KeyError):
    pass


@dataclass
class VerificationReport:
    identity: str
    n_max: int
    cases_checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@lru_cache(maxsize=None)
def _posets(n: int) -> tuple[PlanePoset, ...]:
    return tuple(enumerate_posets(n, max_n=None))


def _upto(n_max: int) -> Iterator[PlanePoset]:
    for n in range(n_max + 1):
        yield from _posets(n)


def _pairs_upto(n_max: int) -> Iterator[tuple[PlanePoset, PlanePoset]]:
    """All basis pairs ``(x, y)`` with ``|x| + |y| <= n_max``."""
    for total in range(n_max + 1):
        for a in range(total + 1):
            for x in _posets(a):
                for y in _posets(total - a):
                    yield x, y


@lru_cache(maxsize=1 << 16)
def _m(p: PlanePoset, q: PlanePoset) -> PlanePoset:
    return compose(p, q)


@lru_cache(maxsize=1 << 16)
def _u(p: PlanePoset, q: PlanePoset) -> PlanePoset:
    return under(p, q)


def _leq(p: PlanePoset, q: PlanePoset) -> bool:
    return p.n == q.n and leq(p, q)


# -- coalgebra --------------------------------------------------------------

def _check_coassoc(report: VerificationReport, which: str) -> None:
    delta = delta_q if which == "delta" else delta_prime_q
    for p in _upto(report.n_max):
        d = delta(p)
        if apply_at(d, 1, which) != apply_at(d, 0, which):
            report.failures.append(f"{p}")
        report.cases_checked += 1


def check_coassoc(report):
    _check_coassoc(report, "delta")


def check_coassoc_prime(report):
    _check_coassoc(report, "prime")


def check_infinitesimal_m(report):
    """Delta(xy) = Delta(x)(1 (x) y) + (x (x) 1)Delta(y) - x (x) y."""
    for x, y in _pairs_upto(report.n_max):
        lhs = delta_q(_m(x, y))
        rhs = (
            tensor_map(delta_q(x), lambda k: [((k[0], _m(k[1], y)), ONE)])
            + tensor_map(delta_q(y), lambda k: [((_m(x, k[0]), k[1]), ONE)])
            - TensorElement.basis(x, y)
        )
        if lhs != rhs:
            report.failures.append(f"x={x} y={y}")
        report.cases_checked += 1


def check_infinitesimal_under(report):
    """The |> compatibility with legs (x |> y1) (x) y2 in the second sum."""
    for x, y in _pairs_upto(report.n_max):
        lhs = delta_q(_u(x, y))
        rhs = (
            tensor_map(delta_q(x), lambda k: [((k[0], _u(k[1], y)), qpow(k[0].n * y.n))])
            + tensor_map(delta_q(y), lambda k: [((_u(x, k[0]), k[1]), qpow(x.n * k[1].n))])
            - TensorElement.basis(x, y) * qpow(x.n * y.n)
        )
        if lhs != rhs:
            report.failures.append(f"x={x} y={y}")
        report.cases_checked += 1


# -- pairing ----------------------------------------------------------------

def check_pairing_symmetric(report):
    for n in range(report.n_max + 1):
        ps = _posets(n)
        for a, p in enumerate(ps):
            for r in ps[a:]:
                if pairing(p, r) != pairing(r, p):
                    report.failures.append(f"P={p} Q={r}")
                report.cases_checked += 1


def _check_adjoint(report, product, delta):
    for n in range(report.n_max + 1):
        for r in _posets(n):
            dr = delta(r)
            for a in range(n + 1):
                for p in _posets(a):
                    for q in _posets(n - a):
                        lhs = pairing(product(p, q), r)
                        rhs = pair_tensors(TensorElement.basis(p, q), dr)
                        if lhs != rhs:
                            report.failures.append(f"P={p} Q={q} R={r}: {lhs} != {rhs}")
                        report.cases_checked += 1


def check_pairing_hopf_m(report):
    """<PQ, R> = <P (x) Q, Delta_q(R)>."""
    _check_adjoint(report, _m, delta_q)


def check_pairing_adjoint_under(report):
    """<P |> Q, R> = <P (x) Q, Delta'_q(R)>."""
    _check_adjoint(report, _u, delta_prime_q)


# -- q = 0 ------------------------------------------------------------------

def check_delta0_splits(report):
    """Delta_0 sums over factorisations, and <P,Q>_0 lives on antichains only."""
    splits: dict[PlanePoset, dict] = {}
    for p1, p2 in _pairs_upto(report.n_max):
        splits.setdefault(_m(p1, p2), {})[(p1, p2)] = ONE
    for p in _upto(report.n_max):
        if delta_q(p).at(0) != TensorElement(splits.get(p, {})):
            report.failures.append(f"Delta_0({p})")
        report.cases_checked += 1
    for n in range(report.n_max + 1):
        top = antichain(n)
        for p in _posets(n):
            for r in _posets(n):
                nonzero = pairing(p, r).evaluate(0) != 0
                if nonzero != (p == top and r == top):
                    report.failures.append(f"<{p},{r}>_0")
                report.cases_checked += 1


# -- rank -------------------------------------------------------------------

def check_rank_formula(report):
    """Hasse edges raise the level by one; pairing exponents follow the levels."""
    for n in range(report.n_max + 1):
        for p in _posets(n):
            for c in covers(p):
                if level(c) != level(p) + 1:
                    report.failures.append(f"edge {p}->{c}")
                report.cases_checked += 1
            for r in _posets(n):
                e = pairing_exponent(p, r)
                if e is not None and e != expected_pairing_exponent(p, r):
                    report.failures.append(f"<{p},{r}> exponent {e}")
                report.cases_checked += 1


# -- factorisation lemma ----------------------------------------------------

def _subsets(n: int) -> Iterator[frozenset[int]]:
    for k in range(n + 1):
        for s in itertools.combinations(range(1, n + 1), k):
            yield frozenset(s)


@lru_cache(maxsize=None)
def _biideal_cuts(r: PlanePoset) -> tuple[tuple[PlanePoset, PlanePoset], ...]:
    """(R - I, I) for every biideal I, found by brute force over all subsets."""
    full = set(range(1, r.n + 1))
    return tuple(
        (restrict(r, full - s), restrict(r, s)) for s in _subsets(r.n) if is_biideal(r, s)
    )


@lru_cache(maxsize=None)
def _composition_cuts(r: PlanePoset) -> tuple[tuple[PlanePoset, PlanePoset], ...]:
    """(R - I, I) for every subset I with R = (R - I) I."""
    out = []
    full = set(range(1, r.n + 1))
    for s in _subsets(r.n):
        rest = full - s
        if all(x < y and not r.is_h(x, y) for x in rest for y in s):
            out.append((restrict(r, rest), restrict(r, s)))
    return tuple(out)


def _check_lemma22(report, product, cuts, twisted: bool):
    for n in range(report.n_max + 1):
        for r in _posets(n):
            rc = cuts(r)
            for a in range(n + 1):
                for p in _posets(a):
                    for q in _posets(n - a):
                        if twisted:
                            lhs = _leq(iota(product(p, q)), r)
                            wit = [c for c in rc if _leq(iota(c[0]), p) and _leq(iota(c[1]), q)]
                        else:
                            lhs = _leq(product(p, q), r)
                            wit = [c for c in rc if _leq(p, c[0]) and _leq(q, c[1])]
                        if lhs != bool(wit) or len(wit) > 1:
                            report.failures.append(f"P={p} Q={q} R={r} twisted={twisted}")
                        report.cases_checked += 1


def check_lemma22_under(report):
    """P |> Q <= R via biideals, and iota(PQ) <= R via biideals."""
    _check_lemma22(report, _u, _biideal_cuts, twisted=False)
    _check_lemma22(report, _m, _biideal_cuts, twisted=True)


def check_lemma22_m(report):
    """PQ <= R via composition cuts, and iota(P |> Q) <= R via composition cuts."""
    _check_lemma22(report, _m, _composition_cuts, twisted=False)
    _check_lemma22(report, _u, _composition_cuts, twisted=True)


IDENTITIES: dict[str, Callable[[VerificationReport], None]] = {
    "coassoc": check_coassoc,
    "coassoc-prime": check_coassoc_prime,
    "infinitesimal-m": check_infinitesimal_m,
    "infinitesimal-under": check_infinitesimal_under,
    "pairing-symmetric": check_pairing_symmetric,
    "pairing-hopf-m": check_pairing_hopf_m,
    "pairing-adjoint-under": check_pairing_adjoint_under,
    "delta0-splits": check_delta0_splits,
    "rank-formula": check_rank_formula,
    "lemma22-under": check_lemma22_under,
    "lemma22-m": check_lemma22_m,
}


def verify_identity(name: str, n_max: int) -> VerificationReport:
    try:
        check = IDENTITIES[name]
    except KeyError:
        raise UnknownIdentity(name) from None
    report = VerificationReport(name, n_max)
    check(report)
    return report


def verify_all(n_max: int, names: list[str] | None = None, jobs: int = 1) -> list[VerificationReport]:
    names = list(names or IDENTITIES)
    for name in names:
        if name not in IDENTITIES:
            raise UnknownIdentity(name)
    if jobs <= 1:
        return [verify_identity(name, n_max) for name in names]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(verify_identity, names, [n_max] * len(names)))
