"""Mechanical replay of the product-formula proof.

Every step builds the actual graphs, counts their matchings exactly and
compares.  A failing step is recorded, never raised, so one broken
constructor still leaves a complete report behind.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .dyadic import DyadicWeight
from .formulas import NotBalanced, formula_C, formula_D, formula_trimmed_AR, ratio_identity
from .graph import AxisSpec, graph_congruent, graph_equal, reduce_forced_edges
from .matching import count_matchings
from .regions import (
    aztec_triangle,
    chess_to_grid,
    cruciform,
    cruciform_dot,
    Infeasible,
    doubly_intruded_aztec_rectangle,
    nearly_cruciform,
    trimmed_aztec_rectangle,
)
from .symmetry import (
    complement_params,
    composed_exponent,
    factorization_split,
    missing_mirrors,
    symmetrize_with_pendant,
)

CHAIN_IDS = ("eba", "ebb", "ebc", "ebd", "ebe", "ebf", "ebg", "ebh", "ebi", "ebj", "ebk")


def exact(value) -> Fraction:
    if isinstance(value, DyadicWeight):
        return value.to_fraction()
    return Fraction(value)


def _fmt(value):
    return None if value is None else str(exact(value))


@dataclass
class IdentityReport:
    identity_id: str
    n: object  # int for the chain, a tuple of parameters otherwise
    lhs: object = None
    rhs: object = None
    passed: bool = False
    note: str = ""
    skipped: str | None = None
    elapsed_ms: float = 0.0

    def sort_key(self):
        n = self.n if isinstance(self.n, tuple) else (self.n,)
        return (self.identity_id, n)

    def to_dict(self, timings=False) -> dict:
        d = {
            "identity_id": self.identity_id,
            "n": list(self.n) if isinstance(self.n, tuple) else self.n,
            "lhs": _fmt(self.lhs),
            "rhs": _fmt(self.rhs),
            "pass": self.passed,
        }
        if self.note:
            d["note"] = self.note
        if self.skipped:
            d["skipped"] = self.skipped
        if timings:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


def to_jsonl(reports, timings=False) -> str:
    lines = [json.dumps(r.to_dict(timings), sort_keys=True) for r in sorted(reports, key=IdentityReport.sort_key)]
    return "".join(line + "\n" for line in lines)


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)


def _check(identity_id, n, fn) -> IdentityReport:
    """Run ``fn() -> (lhs, rhs, extra_checks)``; extra checks are
    ``(label, bool)`` pairs that must all hold as well."""
    t0 = time.perf_counter()
    rep = IdentityReport(identity_id, n)
    try:
        lhs, rhs, extra = fn()
        rep.lhs, rep.rhs = exact(lhs), exact(rhs)
        failed = [label for label, ok in extra if not ok]
        rep.passed = rep.lhs == rep.rhs and not failed
        if failed:
            rep.note = "failed: " + "; ".join(failed)
        elif rep.lhs != rep.rhs:
            rep.note = "sides differ"
    except Exception as exc:  # noqa: BLE001 - any failure becomes a record
        rep.passed = False
        rep.note = f"{type(exc).__name__}: {exc}"
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    return rep


def _skip(identity_id, n, why) -> IdentityReport:
    return IdentityReport(identity_id, n, passed=True, skipped=why)


def M(g) -> Fraction:
    return count_matchings(g).to_fraction()


def reduced(g):
    r, factor, ok = reduce_forced_edges(g)
    if not ok or factor != 1:
        raise ValueError("forced-edge reduction changed the count")
    return r


def _only_missing(h, axis):
    mm = missing_mirrors(h, axis)
    if len(mm) != 1:
        raise ValueError(f"expected one vertex without a mirror, found {len(mm)}")
    return mm[0]


# -- the chain from T_n to T_{n+1} -------------------------------------------


class Chain:
    """All graphs of the ratio argument for one n, built lazily.

    Coordinates: the cruciform graphs with ``m = n = 2n+1`` sit with the
    horizontal cut on ``y = 0`` and the vertical one on ``x = 2n+1``; the
    diagonal cut of the last step is ``y - x = -(2n+1)``.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"n={n}")
        self.n = n
        self.N = 2 * n + 1
        self.h_axis = AxisSpec.horizontal(0)
        self.v_axis = AxisSpec.vertical(self.N)
        self.d_axis = AxisSpec("diag-up", -2 * self.N)

    # top of the chain: C-triple-dot and C-dot cut horizontally

    @cached_property
    def c_big(self):
        n, N = self.n, self.N
        return cruciform(N, N, n + 1, n, n, n)

    @cached_property
    def c_triple_dot(self):
        N, P = self.N, self.n + 1
        g = cruciform(N, N, P, P, P, P)
        # NE tip of the top notch, SE tip of the bottom notch, SW tip of the left notch
        corners = [chess_to_grid(0, 2 * N + 2 * P), chess_to_grid(2 * N + 2 * P, 0), chess_to_grid(0, -2 * P)]
        return g.remove_vertices(corners)

    @cached_property
    def G(self):
        h = self.c_triple_dot
        return symmetrize_with_pendant(h, _only_missing(h, self.h_axis), (-1, 0), self.h_axis)

    @cached_property
    def split_G(self):
        return factorization_split(self.G, self.h_axis, reverse=True)

    @cached_property
    def E(self):
        return self.split_G.g_plus

    @cached_property
    def F(self):
        return reduced(self.split_G.g_minus)

    @cached_property
    def c_dot(self):
        n, N = self.n, self.N
        return cruciform_dot(N, N, n, n, n, n)

    @cached_property
    def d_small(self):
        n, N = self.n, self.N
        return nearly_cruciform(N, N, n, n, n, n)

    @cached_property
    def G1(self):
        h = self.c_dot
        # even x just left of the SW pier
        x = -self.n - 1 if self.n % 2 else -self.n - 2
        return symmetrize_with_pendant(h, _only_missing(h, self.h_axis), (x, 0), self.h_axis)

    @cached_property
    def split_G1(self):
        return factorization_split(self.G1, self.h_axis, reverse=True)

    @cached_property
    def E_bar(self):
        return self.split_G1.g_plus

    @cached_property
    def F1(self):
        return reduced(self.split_G1.g_minus)

    # second step: vertical cut of E and E-bar

    @cached_property
    def G2(self):
        h = self.E
        return symmetrize_with_pendant(h, _only_missing(h, self.v_axis), (self.N, self.N + 1), self.v_axis)

    @cached_property
    def split_G2(self):
        return factorization_split(self.G2, self.v_axis, reverse=True)

    @cached_property
    def G3(self):
        h = self.E_bar
        return symmetrize_with_pendant(h, _only_missing(h, self.v_axis), (self.N, 0), self.v_axis)

    @cached_property
    def split_G3(self):
        return factorization_split(self.G3, self.v_axis, reverse=False)

    @cached_property
    def A(self):
        return self.split_G2.g_plus

    @cached_property
    def B(self):
        return self.split_G2.g_minus

    @cached_property
    def C(self):
        return self.split_G3.g_plus

    @cached_property
    def B1(self):
        return self.split_G3.g_minus

    # last step: diagonal cut of A and of C augmented

    @cached_property
    def split_A(self):
        return factorization_split(self.A, self.d_axis, reverse=False)

    @cached_property
    def G4(self):
        h = self.C
        return symmetrize_with_pendant(h, _only_missing(h, self.d_axis), (self.N, 0), self.d_axis)

    @cached_property
    def split_C(self):
        return factorization_split(self.G4, self.d_axis, reverse=True)

    @cached_property
    def S(self):
        return reduced(self.split_A.g_minus)

    @cached_property
    def S1(self):
        return reduced(self.split_C.g_minus)

    @cached_property
    def T_next(self):
        return aztec_triangle(self.n + 1)

    @cached_property
    def T_this(self):
        return aztec_triangle(self.n)


def _is_triangle(half, tri):
    return graph_congruent(reduced(half), reduced(tri)) and M(half) == M(tri)


def chain_reports(n: int) -> list[IdentityReport]:
    c = Chain(n)
    two = Fraction(2)

    def eba():
        lhs = 2 * M(c.c_big)
        rhs = two ** (2 * n + 2) * M(c.E) * M(c.F)
        return lhs, rhs, [
            ("2M(C-triple-dot) = 2M(C)", 2 * M(c.c_triple_dot) == lhs),
            ("M(G) = 2M(C)", M(c.G) == lhs),
            ("2n+2 vertices on the axis", c.split_G.k == 2 * n + 2),
        ]

    def ebb():
        lhs = 2 * M(c.d_small)
        rhs = two ** (2 * n + 2) * M(c.E_bar) * M(c.F)
        return lhs, rhs, [
            ("2M(C-dot) = 2M(D)", 2 * M(c.c_dot) == lhs),
            ("M(G1) = 2M(D)", M(c.G1) == lhs),
            ("G1 cut has 2n+2 axis vertices", c.split_G1.k == 2 * n + 2),
            ("shared F_n", graph_equal(c.F1, c.F)),
        ]

    def ebc():
        return M(c.c_big) / M(c.d_small), M(c.E) / M(c.E_bar), []

    def ebd():
        return M(c.T_next) / M(c.T_this), M(c.c_big) / (2 * M(c.d_small)), []

    def ebe():
        lhs = 2 * M(c.E)
        rhs = two ** (n + 1) * M(c.A) * M(c.B)
        return lhs, rhs, [("M(G2) = 2M(E)", M(c.G2) == lhs), ("n+1 axis pairs", c.split_G2.k == n + 1)]

    def ebf():
        lhs = 2 * M(c.E_bar)
        rhs = two ** (n + 1) * M(c.C) * M(c.B)
        return lhs, rhs, [
            ("augmented E-bar has twice the matchings", M(c.G3) == lhs),
            ("n+1 axis pairs", c.split_G3.k == n + 1),
            ("shared B_n", graph_equal(reduced(c.B1), reduced(c.B)) and M(c.B1) == M(c.B)),
        ]

    def ebg():
        return M(c.E) / M(c.E_bar), M(c.A) / M(c.C), []

    def ebh():
        lhs = M(c.A)
        rhs = two ** (n + 1) * M(c.T_next) * M(c.S)
        return lhs, rhs, [
            ("n+1 axis pairs", c.split_A.k == n + 1),
            ("G+ is the Aztec triangle of order n+1", _is_triangle(c.split_A.g_plus, c.T_next)),
        ]

    def ebi():
        lhs = 2 * M(c.C)
        rhs = two ** (n + 1) * M(c.T_this) * M(c.S)
        return lhs, rhs, [
            ("augmented C has twice the matchings", M(c.G4) == lhs),
            ("n+1 axis pairs", c.split_C.k == n + 1),
            ("G+ is the Aztec triangle of order n", _is_triangle(c.split_C.g_plus, c.T_this)),
            ("shared S_n", graph_equal(c.S1, c.S)),
        ]

    def ebj():
        return M(c.A) / M(c.C), 2 * M(c.T_next) / M(c.T_this), []

    def ebk():
        lhs, mid, rhs = ratio_identity(n)
        return lhs, rhs, [("closed double-factorial form", mid == lhs)]

    checks = dict(eba=eba, ebb=ebb, ebc=ebc, ebd=ebd, ebe=ebe, ebf=ebf, ebg=ebg, ebh=ebh, ebi=ebi, ebj=ebj, ebk=ebk)
    return [_check(name, n, checks[name]) for name in CHAIN_IDS]


def verify_chain(n_max: int) -> list[IdentityReport]:
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    reports = []
    for n in range(1, n_max + 1):
        reports += chain_reports(n)
    return sorted(reports, key=IdentityReport.sort_key)


# -- complementation and the doubly-intruded rectangle -----------------------


def _pier_ok(m, n, a, b, d):
    return m >= 1 and n >= 1 and min(a, b, d) >= 0


def index_sets(m, n, a, b, d):
    """The deletion sets S and T of the two trimmed rectangles."""
    S = [i for i in range(1, m + n + 1) if i not in range(n - d + 1, n - d + 2 * m - 2 * a - 2, 2)]
    T = [i for i in range(1, m + n + 2) if i not in range(n - d + 1, n - d + 2 * m - 2 * a, 2)]
    return S, T


def intruded_rectangle(m, n, a, b, d, remove_top_left=True):
    return doubly_intruded_aztec_rectangle(2 * n + 2 * a + 1, m + n, n - d, n - b, remove_top_left)


def intruded_symmetric(m, n, a, b, d):
    """The intruded rectangle with its corner restored and a pendant added,
    plus the axis it is symmetric about."""
    L = 2 * n + 2 * a + 1
    axis = AxisSpec("diag-up", -2 * (L + 1))  # middle column, chess u = L + 1
    h = intruded_rectangle(m, n, a, b, d)
    v = chess_to_grid(2 * L + 1, 1)  # mirror image of the removed corner
    w = chess_to_grid(L + 1, -(L + 1))
    return h, symmetrize_with_pendant(h, v, w, axis), axis


def complementation_reports(m, n, a, b, d) -> list[IdentityReport]:
    params = (m, n, a, b, d)
    if 2 * a + b + d != m + n - 2:
        raise NotBalanced(f"2a+b+d={2 * a + b + d} but m+n-2={m + n - 2}")
    if not _pier_ok(*params):
        return [_skip("ecc", params, "negative pier")]
    reports = []

    # single steps: ecc from the start, ecd for the later ones
    cur = params
    for i in range(n):
        nxt = complement_params(*cur)
        ident = "ecc" if i == 0 else "ecd"
        tag = params if i == 0 else params + (i,)
        if not _pier_ok(*nxt[:5]):
            reports.append(_skip(ident, tag, "negative pier"))
            break
        t = nxt[5]

        def step(cur=cur, nxt=nxt, t=t, i=i):
            cm, cn, ca, cb, cd = cur
            lhs = M(cruciform_dot(cm, cn, ca, cb, ca, cd))
            rhs = Fraction(2) ** t * M(cruciform_dot(nxt[0], nxt[1], nxt[2], nxt[3], nxt[2], nxt[4]))
            return lhs, rhs, [("exponent n-2a-3i-2", t == n - 2 * a - 3 * i - 2)]

        reports.append(_check(ident, tag, step))
        cur = nxt[:5]

    if n - d < 0 or n - b < 0 or (n - d) + (n - b) > m + n + 1:
        reports.append(_skip("ecf", params, "negative intrusion"))
    else:
        def ecf():
            lhs = M(cruciform_dot(m, n, a, b, a, d))
            rhs = Fraction(2) ** composed_exponent(n, a) * M(intruded_rectangle(m, n, a, b, d))
            return lhs, rhs, []

        reports.append(_check("ecf", params, ecf))

    if a > m - 2 or n - d < 0 or n - b < 0:
        reports.append(_skip("ecg", params, "trimmed rectangles out of range"))
        reports.append(_skip("tbb-sweep", params, "trimmed rectangles out of range"))
        return reports

    S, T = index_sets(m, n, a, b, d)

    def ecg():
        h, g, axis = intruded_symmetric(m, n, a, b, d)
        sp = factorization_split(g, axis)
        ar_s = trimmed_aztec_rectangle(n + a + 1, m + n - 1, S)
        ar_t = trimmed_aztec_rectangle(n + a + 1, m + n, T)
        lhs = 2 * M(h)
        rhs = Fraction(2) ** (m - a) * M(ar_s) * M(ar_t)
        return lhs, rhs, [
            ("n-d+2m-2a-3 = m+b-1", n - d + 2 * m - 2 * a - 3 == m + b - 1),
            ("n-d+2m-2a-1 = m+b+1", n - d + 2 * m - 2 * a - 1 == m + b + 1),
            ("M(G) = 2M(AR-dot)", M(g) == lhs),
            ("m-a axis pairs", sp.k == m - a),
            ("G- is AR-bar(S)", graph_congruent(reduced(sp.g_minus), reduced(ar_s))),
            ("G+ is AR-bar(T)", graph_congruent(reduced(sp.g_plus), reduced(ar_t))),
        ]

    def tbb():
        product = (
            Fraction(2) ** (composed_exponent(n, a) + m - a - 1)
            * formula_trimmed_AR(n + a + 1, m + n - 1, S)
            * formula_trimmed_AR(n + a + 1, m + n, T)
        )
        return formula_D(m, n, a, b, d), product, []

    reports.append(_check("ecg", params, ecg))
    reports.append(_check("tbb-sweep", params, tbb))
    return reports


def verify_complementation(m, n, a, b, d) -> list[IdentityReport]:
    return sorted(complementation_reports(m, n, a, b, d), key=IdentityReport.sort_key)


# -- formula sweeps ----------------------------------------------------------


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def sweep_cruciform(max_mn: int = 6) -> list[IdentityReport]:
    """formula_C against the determinant count for every balanced cruciform
    graph with ``m, n <= max_mn``."""
    reports = []
    for m in range(1, max_mn + 1):
        for n in range(1, max_mn + 1):
            for piers in _compositions(m + n - 1, 4):
                p = (m, n) + piers
                reports.append(_check("tba-sweep", p, lambda p=p: (formula_C(*p), M(cruciform(*p)), [])))
    return sorted(reports, key=IdentityReport.sort_key)


def _count_nearly(m, n, a, b, d):
    try:
        return M(nearly_cruciform(m, n, a, b, a, d))
    except Infeasible:
        return Fraction(0)


def sweep_nearly_cruciform(max_mn: int = 6) -> list[IdentityReport]:
    """formula_D against the count for every balanced nearly-cruciform graph
    with equal NW and SE piers and ``m, n <= max_mn``."""
    reports = []
    for m in range(1, max_mn + 1):
        for n in range(1, max_mn + 1):
            for a in range((m + n - 2) // 2 + 1):
                for b, d in _compositions(m + n - 2 - 2 * a, 2):
                    p = (m, n, a, b, d)
                    reports.append(_check("tbb-sweep", p, lambda p=p: (formula_D(*p), _count_nearly(*p), [])))
    return sorted(reports, key=IdentityReport.sort_key)


def sweep_trimmed(max_n: int = 5, random_ns=(6, 7), samples: int = 100, seed: int = 0) -> list[IdentityReport]:
    """The trimmed-rectangle product against the count: every ``m <= n <= max_n``
    and every T, then ``samples`` random (m, T) for each n in ``random_ns``."""
    cases = []
    for n in range(1, max_n + 1):
        for m in range(1, n + 1):
            cases += [(m, n, T) for T in itertools.combinations(range(1, n + 2), m)]
    rng = random.Random(seed)
    for n in random_ns:
        for _ in range(samples):
            m = rng.randint(1, n)
            cases.append((m, n, tuple(sorted(rng.sample(range(1, n + 2), m)))))
    reports = []
    for m, n, T in cases:
        reports.append(
            _check("tca-sweep", (m, n) + T, lambda m=m, n=n, T=T: (formula_trimmed_AR(m, n, T), M(trimmed_aztec_rectangle(m, n, T)), []))
        )
    return sorted(reports, key=IdentityReport.sort_key)


def sweep_complementation(max_mn: int = 6) -> list[IdentityReport]:
    """:func:`verify_complementation` on every balanced ``(m, n, a, b, d)``
    with ``m, n <= max_mn``."""
    reports = []
    for m in range(1, max_mn + 1):
        for n in range(1, max_mn + 1):
            for a in range((m + n - 2) // 2 + 1):
                for b, d in _compositions(m + n - 2 - 2 * a, 2):
                    reports += complementation_reports(m, n, a, b, d)
    return sorted(reports, key=IdentityReport.sort_key)
