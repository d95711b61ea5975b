"""Deduction over Rasmussen s-values from three axioms.

* cobordism:  ``|s(L) - s(L')| <= -chi(C)``
* positive diagram with n crossings, k Seifert circles:  ``s = n - k + 1``
* parity:  ``s(L) = m - 1 (mod 2)`` for an m-component link

Domains are integer intervals (possibly unbounded) with an optional
parity.  Propagation runs to a fixpoint and records which constraint
tightened what.  Writing ``s = 2u + p`` then turns the system into
difference constraints, whose Bellman-Ford closure settles consistency
and gives exact bounds.  When every domain is finite and small, each value
is finally checked to extend to a full solution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Union

EXACT_FILTER_LIMIT = 100_000


@dataclass(frozen=True)
class Parity:
    link: str

    def describe(self, sys) -> str:
        return f"Parity({self.link}, m={sys.links[self.link]})"


@dataclass(frozen=True)
class PositiveDiagram:
    link: str
    crossings: int
    circles: int

    @property
    def value(self) -> int:
        return self.crossings - self.circles + 1

    def describe(self, sys) -> str:
        return f"PositiveDiagram({self.link}, n={self.crossings}, k={self.circles})"


@dataclass(frozen=True)
class Cobordism:
    link: str
    other: str
    chi: int

    def describe(self, sys) -> str:
        return f"Cobordism({self.link}, {self.other}, chi={self.chi})"


@dataclass(frozen=True)
class Known:
    link: str
    value: int

    def describe(self, sys) -> str:
        return f"Known({self.link} = {self.value})"


Constraint = Union[Parity, PositiveDiagram, Cobordism, Known]


class SystemError_(ValueError):
    pass


@dataclass
class SConstraintSystem:
    links: dict[str, int] = field(default_factory=dict)
    constraints: list = field(default_factory=list)

    def add_link(self, name: str, components: int) -> "SConstraintSystem":
        if components < 1:
            raise SystemError_(f"link {name} needs at least one component")
        self.links[name] = components
        return self

    def add(self, *cons: Constraint) -> "SConstraintSystem":
        for c in cons:
            self._check(c)
            self.constraints.append(c)
        return self

    def _check(self, c):
        names = [c.link] + ([c.other] if isinstance(c, Cobordism) else [])
        for nm in names:
            if nm not in self.links:
                raise SystemError_(f"constraint {c} references undeclared link {nm!r}")
        if isinstance(c, Cobordism) and c.chi > 0:
            raise SystemError_(f"cobordism {c.link}-{c.other} has chi = {c.chi} > 0")
        if isinstance(c, PositiveDiagram) and (c.crossings < 0 or c.circles < 1):
            raise SystemError_("positive diagram needs crossings >= 0 and circles >= 1")

    def copy(self) -> "SConstraintSystem":
        return SConstraintSystem(dict(self.links), list(self.constraints))

    # -- JSON ---------------------------------------------------------------

    def to_json(self):
        out = []
        for c in self.constraints:
            d = {"type": type(c).__name__}
            d.update(c.__dict__)
            out.append(d)
        return {"links": [{"name": n, "components": m} for n, m in self.links.items()],
                "constraints": out}

    @classmethod
    def from_json(cls, data) -> "SConstraintSystem":
        sys = cls()
        for entry in data["links"]:
            sys.add_link(entry["name"], int(entry["components"]))
        kinds = {"Parity": Parity, "PositiveDiagram": PositiveDiagram,
                 "Cobordism": Cobordism, "Known": Known}
        for c in data["constraints"]:
            c = dict(c)
            kind = kinds.get(c.pop("type", None))
            if kind is None:
                raise SystemError_(f"unknown constraint type in {c}")
            try:
                sys.add(kind(**c))
            except TypeError as exc:
                raise SystemError_(f"bad constraint fields: {exc}") from None
        return sys


# -- domains ---------------------------------------------------------------


@dataclass(frozen=True)
class ValueSet:
    lo: int | None = None
    hi: int | None = None
    parity: int | None = None
    # exact support after filtering; None means "every member of the interval"
    support: frozenset[int] | None = None

    @property
    def finite(self) -> bool:
        return self.support is not None or (self.lo is not None and self.hi is not None)

    @property
    def empty(self) -> bool:
        if self.support is not None:
            return not self.support
        return self.lo is not None and self.hi is not None and self.lo > self.hi

    def values(self) -> list[int]:
        if self.support is not None:
            return sorted(self.support)
        if not self.finite:
            raise ValueError("unbounded value set")
        step = 2 if self.parity is not None else 1
        return list(range(self.lo, self.hi + 1, step))

    def __contains__(self, v: int) -> bool:
        if self.support is not None:
            return v in self.support
        if self.lo is not None and v < self.lo:
            return False
        if self.hi is not None and v > self.hi:
            return False
        return self.parity is None or v % 2 == self.parity

    def __str__(self):
        if self.finite:
            return "{" + ", ".join(str(v) for v in self.values()) + "}"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        par = {None: "", 0: " even", 1: " odd"}[self.parity]
        return f"[{lo}, {hi}]{par}"

    def to_json(self):
        if self.finite:
            return {"values": self.values()}
        return {"lo": self.lo, "hi": self.hi, "parity": self.parity}


def _normalize(v: ValueSet) -> ValueSet:
    lo, hi, p = v.lo, v.hi, v.parity
    if p is not None:
        if lo is not None and lo % 2 != p:
            lo += 1
        if hi is not None and hi % 2 != p:
            hi -= 1
    return ValueSet(lo, hi, p)


def _meet(v: ValueSet, lo=None, hi=None, parity=None) -> tuple[ValueSet, bool]:
    nlo = v.lo if lo is None else (lo if v.lo is None else max(v.lo, lo))
    nhi = v.hi if hi is None else (hi if v.hi is None else min(v.hi, hi))
    npar = v.parity
    clash = False
    if parity is not None:
        if npar is None:
            npar = parity
        elif npar != parity:
            clash = True
    out = _normalize(ValueSet(nlo, nhi, npar))
    if clash:
        out = ValueSet(1, 0, npar)
    return out, out != v


# -- results ---------------------------------------------------------------


@dataclass(frozen=True)
class Solution:
    domains: dict[str, ValueSet]
    trace: tuple[str, ...]
    exact: bool    # every reported value extends to a full solution

    consistent = True

    def __getitem__(self, name: str) -> ValueSet:
        return self.domains[name]

    def to_json(self):
        return {"status": "Consistent", "exact": self.exact,
                "domains": {k: v.to_json() for k, v in self.domains.items()},
                "trace": list(self.trace)}


@dataclass(frozen=True)
class Inconsistent:
    link: str
    witness: tuple[str, ...]   # constraints whose combination is violated
    trace: tuple[str, ...]

    consistent = False

    def to_json(self):
        return {"status": "Inconsistent", "link": self.link, "witness": list(self.witness),
                "trace": list(self.trace)}


def solve(sys: SConstraintSystem) -> Solution | Inconsistent:
    res = _solve_core(sys)
    if isinstance(res, Inconsistent):
        # shrink the witness to a minimal inconsistent subset of constraints
        keep = [c for c in sys.constraints if c.describe(sys) in set(res.witness)]
        for c in list(keep):
            trial = [d for d in keep if d is not c]
            if isinstance(_solve_core(SConstraintSystem(sys.links, trial)), Inconsistent):
                keep = trial
        return Inconsistent(res.link, tuple(c.describe(sys) for c in keep), res.trace)
    return res


def _solve_core(sys: SConstraintSystem) -> Solution | Inconsistent:
    dom = {n: ValueSet() for n in sys.links}
    why: dict[str, set[int]] = {n: set() for n in sys.links}
    trace: list[str] = []
    cons = sys.constraints

    def desc(k):
        return cons[k].describe(sys)

    def update(name, k, sources=(), **kw):
        new, changed = _meet(dom[name], **kw)
        if changed:
            dom[name] = new
            why[name] |= {k}
            for s in sources:
                why[name] |= why[s]
            trace.append(f"{desc(k)} tightens {name} to {new}")
        return changed

    def fail(name, chain=None):
        if chain is None:
            chain = tuple(desc(k) for k in sorted(why[name]))
        trace.append(f"domain of {name} is empty")
        return Inconsistent(name, chain, tuple(trace))

    # consistent systems never push finite bounds past this; inconsistent
    # unbounded ones can creep forever, and are caught below instead
    anchors = [abs(c.value) for c in cons if isinstance(c, (Known, PositiveDiagram))]
    horizon = max(anchors, default=0) + sum(1 - c.chi for c in cons
                                            if isinstance(c, Cobordism)) + 2

    changed = True
    while changed:
        changed = False
        for k, c in enumerate(cons):
            if isinstance(c, (Known, PositiveDiagram)):
                changed |= update(c.link, k, lo=c.value, hi=c.value)
            elif isinstance(c, Parity):
                changed |= update(c.link, k, parity=(sys.links[c.link] - 1) % 2)
            else:
                r = -c.chi
                for a, b in ((c.link, c.other), (c.other, c.link)):
                    db = dom[b]
                    lo = None if db.lo is None else db.lo - r
                    hi = None if db.hi is None else db.hi + r
                    changed |= update(a, k, sources=(b,), lo=lo, hi=hi)
            for name, d in dom.items():
                if d.empty:
                    return fail(name)
            if any(x is not None and abs(x) > horizon for d in dom.values()
                   for x in (d.lo, d.hi)):
                changed = False
                break

    closure = _difference_closure(sys, dom)
    if isinstance(closure, tuple):
        name, ks = closure
        trace.append("difference-constraint closure finds a negative cycle")
        return fail(name, tuple(desc(k) for k in sorted(ks)))
    for name, (lo, hi, par) in closure.items():
        new, _ = _meet(dom[name], lo=lo, hi=hi, parity=par)
        if str(new) != str(dom[name]):
            trace.append(f"difference-constraint closure tightens {name} to {new}")
        dom[name] = new

    exact = all(d.parity is not None for d in dom.values())
    if all(d.finite for d in dom.values()):
        size = 1
        for d in dom.values():
            size *= len(d.values())
        if size <= EXACT_FILTER_LIMIT:
            filtered = _exact_supports(sys, dom)
            if filtered is None:
                return fail(next(iter(dom)), tuple(desc(k) for k in range(len(cons))))
            for name, vals in filtered.items():
                if set(vals) != set(dom[name].values()):
                    trace.append(f"joint search narrows {name} to "
                                 + "{" + ", ".join(map(str, sorted(vals))) + "}")
                d = dom[name]
                dom[name] = ValueSet(d.lo, d.hi, d.parity, frozenset(vals))
            exact = True
    return Solution(dict(dom), tuple(trace), exact)


def _difference_closure(sys: SConstraintSystem, dom: dict[str, ValueSet]):
    """Exact bounds by writing ``s = 2u + p`` and solving difference constraints.

    Each link of unknown parity is branched on; within a branch every
    constraint is a bound on ``u_a - u_b`` (or on ``u_a`` alone), so
    Bellman-Ford decides feasibility and gives the exact range of each
    ``u``.  Returns ``{name: (lo, hi, parity)}`` hulls over the feasible
    branches, or ``(name, constraint indices)`` of a negative cycle when no
    branch is feasible.
    """
    names = list(sys.links)
    free = [n for n in names if dom[n].parity is None]
    if len(free) > 10:
        return {}
    hull: dict[str, list] = {}
    first_cycle = None
    for bits in itertools.product((0, 1), repeat=len(free)):
        par = {n: dom[n].parity for n in names}
        par.update(zip(free, bits))
        res = _branch(sys, dom, par)
        if isinstance(res, tuple):
            first_cycle = first_cycle or res
            continue
        for n, (lo, hi) in res.items():
            h = hull.setdefault(n, [lo, hi, {par[n]}])
            h[0] = None if (h[0] is None or lo is None) else min(h[0], lo)
            h[1] = None if (h[1] is None or hi is None) else max(h[1], hi)
            h[2].add(par[n])
    if not hull:
        return first_cycle
    return {n: (lo, hi, next(iter(ps)) if len(ps) == 1 else None)
            for n, (lo, hi, ps) in hull.items()}


def _branch(sys, dom, par):
    names = list(sys.links)
    z = len(names)
    idx = {n: i for i, n in enumerate(names)}
    edges = []   # (from, to, weight, constraint index): u_to - u_from <= weight

    def bound(i, lo, hi, k):
        if lo is not None:
            edges.append((i, z, -lo, k))
        if hi is not None:
            edges.append((z, i, hi, k))

    for k, c in enumerate(sys.constraints):
        if isinstance(c, (Known, PositiveDiagram)):
            p = par[c.link]
            if (c.value - p) % 2:
                return (c.link, {k} | _parity_sources(sys, c.link))
            u = (c.value - p) // 2
            bound(idx[c.link], u, u, k)
        elif isinstance(c, Cobordism):
            a, b = idx[c.link], idx[c.other]
            d = par[c.link] - par[c.other]
            r = -c.chi
            # -r <= 2(u_a - u_b) + d <= r
            edges.append((b, a, (r - d) // 2, k))
            edges.append((a, b, (r + d) // 2, k))
    n = z + 1
    # feasibility: all-zero start acts as a virtual source
    dist = [0] * n
    pred = [None] * n
    last = None
    for _ in range(n):
        last = None
        for e in edges:
            u, v, w, _k = e
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                pred[v] = e
                last = v
        if last is None:
            break
    if last is not None:
        v = last
        for _ in range(n):
            v = pred[v][0]
        ks, start = set(), v
        while True:
            e = pred[v]
            ks.add(e[3])
            v = e[0]
            if v == start:
                break
        for nm in names:
            ks |= _parity_sources(sys, nm)
        return (names[pred[start][1]] if pred[start][1] < z else names[0], ks)
    hi = _shortest(edges, n, z, forward=True)
    lo = _shortest(edges, n, z, forward=False)
    out = {}
    for nm in names:
        i = idx[nm]
        p = par[nm]
        out[nm] = (None if lo[i] is None else 2 * (-lo[i]) + p,
                   None if hi[i] is None else 2 * hi[i] + p)
    return out


def _shortest(edges, n, src, forward):
    dist = [None] * n
    dist[src] = 0
    for _ in range(n):
        moved = False
        for u, v, w, _k in edges:
            if not forward:
                u, v = v, u
            if dist[u] is not None and (dist[v] is None or dist[u] + w < dist[v]):
                dist[v] = dist[u] + w
                moved = True
        if not moved:
            break
    return dist


def _parity_sources(sys, name) -> set[int]:
    return {k for k, c in enumerate(sys.constraints) if isinstance(c, Parity) and c.link == name}


def _satisfied(c, val: dict[str, int], links: dict[str, int]) -> bool:
    if isinstance(c, (Known, PositiveDiagram)):
        return val[c.link] == c.value
    if isinstance(c, Parity):
        return val[c.link] % 2 == (links[c.link] - 1) % 2
    return abs(val[c.link] - val[c.other]) <= -c.chi


def assignments(sys: SConstraintSystem, dom: dict[str, ValueSet]) -> Iterable[dict[str, int]]:
    """Every full assignment from the given finite domains satisfying ``sys``."""
    names = list(dom)
    order = {n: i for i, n in enumerate(names)}
    # check each constraint as soon as its last link is assigned
    ready: dict[int, list] = {i: [] for i in range(len(names))}
    for c in sys.constraints:
        last = max(order[c.link], order[c.other] if isinstance(c, Cobordism) else -1)
        ready[last].append(c)

    def rec(i, val):
        if i == len(names):
            yield dict(val)
            return
        for v in dom[names[i]].values():
            val[names[i]] = v
            if all(_satisfied(c, val, sys.links) for c in ready[i]):
                yield from rec(i + 1, val)
        val.pop(names[i], None)

    yield from rec(0, {})


def _exact_supports(sys, dom) -> dict[str, set[int]] | None:
    support = {n: set() for n in dom}
    found = False
    for a in assignments(sys, dom):
        found = True
        for n, v in a.items():
            support[n].add(v)
    return support if found else None


# -- the Bing / Whitehead scenario ------------------------------------------


def bing_hopf_system() -> SConstraintSystem:
    """B(K) against the two Hopf links, joined by chi = -2 cobordisms."""
    sys = SConstraintSystem()
    sys.add_link("B", 2).add_link("Hopf+", 2).add_link("Hopf-", 2)
    sys.add(PositiveDiagram("Hopf+", 2, 2), Known("Hopf-", -1),
            Cobordism("B", "Hopf+", -2), Cobordism("B", "Hopf-", -2), Parity("B"))
    return sys


def whitehead_system(extra: Iterable[Constraint] = ()) -> SConstraintSystem:
    sys = bing_hopf_system()
    sys.add_link("Wh", 1)
    sys.add(Cobordism("B", "Wh", -1), Cobordism("Wh", "Hopf+", -1), Parity("Wh"))
    sys.add(*extra)
    return sys


@dataclass(frozen=True)
class ScenarioReport:
    pairs: tuple[tuple[int, int], ...]
    solution: Solution | Inconsistent

    @property
    def consistent(self) -> bool:
        return self.solution.consistent

    def to_json(self):
        return {"pairs": [list(p) for p in self.pairs], "solve": self.solution.to_json()}


def scenario_whitehead(s_wh: int | None = None, s_b: int | None = None) -> ScenarioReport:
    """Joint values of ``(s(B(K)), s(Wh(K)))`` allowed by the axioms."""
    extra = []
    if s_wh is not None:
        extra.append(Known("Wh", s_wh))
    if s_b is not None:
        extra.append(Known("B", s_b))
    sys = whitehead_system(extra)
    sol = solve(sys)
    if not sol.consistent:
        return ScenarioReport((), sol)
    pairs = sorted({(a["B"], a["Wh"]) for a in assignments(sys, sol.domains)})
    return ScenarioReport(tuple(pairs), sol)
