"""3-SAT to minimum geodetic set on interval graphs.

The builder lays gadgets out left to right on exact rationals.  Every track
is a chain of closed intervals whose consecutive members touch, and every
gadget first extends all current tracks by unit intervals and then inserts
its own intervals and tracks between existing ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from ..graph import Graph, GraphError
from ..intervals import intersection_graph


class ReductionError(GraphError):
    pass


# ---------------------------------------------------------------- formulas


@dataclass(frozen=True)
class CnfFormula:
    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ReductionError("variable count must be non-negative")
        for c in self.clauses:
            if len(c) != 3:
                raise ReductionError(f"clause {c} does not have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.n:
                    raise ReductionError(f"literal {lit} outside variables 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable i+1."""
        if len(assignment) != self.n:
            raise ReductionError(f"assignment has {len(assignment)} values, expected {self.n}")
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)

    def satisfying_assignment(self) -> tuple[bool, ...] | None:
        """Exhaustive search; first hit in lexicographic order with False < True."""
        for bits in product((False, True), repeat=self.n):
            if self.satisfied_by(bits):
                return bits
        return None


def parse_dimacs(text: str) -> CnfFormula:
    n = m = None
    lits: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ReductionError(f"bad problem line: {line!r}")
            n, m = int(parts[2]), int(parts[3])
            continue
        if n is None:
            raise ReductionError("clause before problem line")
        try:
            lits.extend(int(tok) for tok in line.split())
        except ValueError as exc:
            raise ReductionError(f"bad clause line: {line!r}") from exc
    if n is None:
        raise ReductionError("missing problem line")
    clauses, cur = [], []
    for lit in lits:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    if cur:
        raise ReductionError("last clause is not terminated by 0")
    if len(clauses) != m:
        raise ReductionError(f"header declares {m} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses))


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.n} {f.m}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def literal_name(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"~x{-lit}"


# ---------------------------------------------------------------- instances


@dataclass(frozen=True)
class RInterval:
    lo: Fraction
    hi: Fraction
    name: str

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class Track:
    tid: int
    members: tuple[int, ...]
    roots: tuple[str, ...]
    tail: int | None = None


@dataclass(frozen=True)
class IntervalInstance:
    intervals: tuple[RInterval, ...]
    tracks: tuple[Track, ...]
    n: int
    m: int
    epsilon: Fraction
    implications: tuple[tuple[str, str], ...] = ()
    ands: tuple[tuple[str, str], ...] = ()
    named: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.named:
            object.__setattr__(self, "named", {iv.name: i for i, iv in enumerate(self.intervals)})

    @property
    def rep(self) -> list[tuple[Fraction, Fraction]]:
        return [(iv.lo, iv.hi) for iv in self.intervals]

    @property
    def point_count(self) -> int:
        return sum(iv.is_point for iv in self.intervals)

    @property
    def expected_bound(self) -> int:
        return 4 + 7 * self.n + 58 * self.m

    def graph(self) -> Graph:
        return intersection_graph(self.rep)

    def track_of(self, root: str) -> Track:
        for t in self.tracks:
            if root in t.roots:
                return t
        raise ReductionError(f"{root!r} is not a root")

    def ordered_tracks(self) -> list[Track]:
        return sorted(self.tracks, key=lambda t: self.intervals[t.members[-1]].hi)

    def metadata(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "epsilon": [self.epsilon.numerator, self.epsilon.denominator],
            "expected_bound": self.expected_bound,
            "tracks": len(self.tracks),
            "point_intervals": self.point_count,
            "names": [iv.name for iv in self.intervals],
            "track_list": [
                {"id": t.tid, "members": list(t.members), "roots": list(t.roots), "tail": t.tail}
                for t in self.tracks
            ],
            "implications": [list(p) for p in self.implications],
            "ands": [list(p) for p in self.ands],
        }


class _Builder:
    def __init__(self, n: int, m: int):
        self.n, self.m = n, m
        self.eps = Fraction(1, max(1, n + m) ** 4)
        self.intervals: list[RInterval] = []
        self.index: dict[str, int] = {}
        self.members: list[list[int]] = []
        self.roots: list[list[str]] = []
        self.root_track: dict[str, int] = {}
        self.tails: dict[int, int] = {}
        self.implications: list[tuple[str, str]] = []
        self.ands: list[tuple[str, str]] = []

    # primitives

    def add(self, name: str, lo: Fraction, hi: Fraction) -> RInterval:
        if name in self.index:
            raise ReductionError(f"duplicate interval name {name!r}")
        if lo > hi:
            raise ReductionError(f"{name}: lo > hi")
        iv = RInterval(Fraction(lo), Fraction(hi), name)
        self.index[name] = len(self.intervals)
        self.intervals.append(iv)
        return iv

    def new_track(self, chain: Iterable[tuple[Fraction, Fraction]], roots: Sequence[str]) -> int:
        tid = len(self.members)
        self.members.append([])
        self.roots.append(list(roots))
        for r in roots:
            self.root_track[r] = tid
        for lo, hi in chain:
            self._append(tid, lo, hi)
        return tid

    def _append(self, tid: int, lo: Fraction, hi: Fraction) -> RInterval:
        iv = self.add(f"trk{tid}.{len(self.members[tid])}", lo, hi)
        self.members[tid].append(self.index[iv.name])
        return iv

    def tmax(self, tid: int) -> Fraction:
        return self.intervals[self.members[tid][-1]].hi

    def order(self) -> list[int]:
        out = sorted(range(len(self.members)), key=self.tmax)
        for a, b in zip(out, out[1:]):
            if self.tmax(a) == self.tmax(b):
                raise ReductionError(f"tracks {a} and {b} end at the same point")
        return out

    def neighbours(self, tid: int) -> tuple[int | None, int | None]:
        order = self.order()
        k = order.index(tid)
        return (order[k - 1] if k else None), (order[k + 1] if k + 1 < len(order) else None)

    def extend(self, units: int) -> list[list[RInterval]]:
        """Append ``units`` unit intervals to every track; returns them per track id."""
        added = []
        for tid in range(len(self.members)):
            row = []
            for _ in range(units):
                top = self.tmax(tid)
                row.append(self._append(tid, top, top + 1))
            added.append(row)
        return added

    def track_for(self, root: str) -> int:
        if root not in self.root_track:
            raise ReductionError(f"{root!r} is not a root of any track")
        return self.root_track[root]

    # gadgets

    def start(self) -> None:
        e = self.eps
        self.add("o", Fraction(1), Fraction(1))
        self.new_track([(Fraction(1), Fraction(2))], ["o"])
        self.add("top", 1 + e, 1 + e)
        self.new_track([(1 + e, 2 + e)], ["top"])

    def implication(self, p: str, q: str) -> str:
        if p == "o":
            raise ReductionError("the start interval cannot be the premise of an implication")
        tp = self.track_for(p)
        x, x2 = self.neighbours(tp)
        if x is None:
            raise ReductionError(f"track of {p!r} is minimal")
        ext = self.extend(3)
        mu = lambda t: ext[t][0].hi
        mv = lambda t: ext[t][1].hi
        e = self.eps
        theta = mu(x2) if x2 is not None else mu(tp) + e
        theta2 = mv(x2) if x2 is not None else mv(tp) + e
        iq = self.add(q, (mu(x) + mu(tp)) / 2, (mu(tp) + theta) / 2)
        ir = self.add(f"r({q})", iq.hi, (mv(tp) + theta2) / 2)
        isq = self.add(f"s({q})", ir.hi, ir.hi)
        t1_hi = (mv(tp) + isq.lo) / 2
        self.new_track([(iq.hi, t1_hi), (t1_hi, t1_hi + 1)], [q])
        self.new_track([(isq.hi, isq.hi + 1)], [ir.name, isq.name])
        self.implications.append((p, q))
        return q

    def covering(self, j: int) -> tuple[str, str, str]:
        top = self.order()[-1]
        ext = self.extend(3)
        e = self.eps
        theta = ext[top][0].lo + e
        a = self.add(f"a{j}", theta, theta + e)
        b = self.add(f"b{j}", theta, theta + 2 * e)
        c = self.add(f"c{j}", theta, theta + 3 * e)
        d = self.add(f"d{j}", theta, theta)
        v_hi = ext[top][1].hi
        cov = self.add(f"cov{j}", v_hi + 4 * e, v_hi + 7 * e)
        f = self.add(f"f{j}", cov.hi, cov.hi)
        for iv in (a, b, c, d):
            self.new_track([(iv.hi + k, iv.hi + k + 1) for k in range(3)], [iv.name])
        self.new_track([(f.hi, f.hi + 1)], [cov.name, f.name])
        return a.name, b.name, c.name

    def _ordered_pair(self, p: str, q: str) -> tuple[str, str]:
        order = self.order()
        tp, tq = self.track_for(p), self.track_for(q)
        if tp == tq:
            raise ReductionError(f"{p!r} and {q!r} share a track")
        return (p, q) if order.index(tp) < order.index(tq) else (q, p)

    def insert(self, p: str, q: str, label: str) -> str:
        lo_root, _ = self._ordered_pair(p, q)
        tp = self.track_for(lo_root)
        _, x = self.neighbours(tp)
        # two units, so the new track ends level with the others
        ext = self.extend(2)
        mid = (ext[tp][0].hi + ext[x][0].hi) / 2
        sigma = self.add(f"sigma({label})", mid, mid)
        self.new_track([(mid, mid + 1)], [sigma.name])
        return sigma.name

    def and_gadget(self, p: str, q: str) -> str:
        """AND over two roots; names follow call order, geometry follows track order."""
        label = f"{p},{q}"
        lo_root, hi_root = self._ordered_pair(p, q)
        sigma = self.insert(p, q, label)
        tp, tq, tm = self.track_for(lo_root), self.track_for(hi_root), self.track_for(sigma)
        ext = self.extend(2)
        mu = lambda t: ext[t][0].hi
        e = self.eps
        y1, _ = self.neighbours(tp)
        y2, _ = self.neighbours(tq)
        _, y2n = self.neighbours(tq)
        if y1 is None:
            raise ReductionError(f"track of {lo_root!r} is minimal")
        alpha = self.add(f"alpha({label})", (mu(y1) + mu(tp)) / 2, (mu(tp) + mu(tm)) / 2)
        bpt = (mu(tp) + alpha.hi) / 2
        beta = self.add(f"beta({label})", bpt, bpt)
        gamma = self.add(f"gamma({label})", alpha.hi, (mu(y2) + mu(tq)) / 2)
        h = mu(y2n) if y2n is not None else mu(tq) + e
        delta = self.add(f"delta({label})", gamma.hi, (mu(tq) + h) / 2)
        self.new_track([(beta.hi, beta.hi + 1)], [alpha.name, beta.name])
        self.new_track([(gamma.hi, gamma.hi + 1)], [gamma.name])
        self.new_track([(delta.hi, delta.hi + 1)], [delta.name])
        self.ands.append((p, q))
        return gamma.name

    def end(self) -> None:
        for tid in self.order():
            u = self._append(tid, self.tmax(tid), self.tmax(tid) + 1)
            tail = self.add(f"e({tid})", u.hi, u.hi)
            self.tails[tid] = self.index[tail.name]

    def finish(self) -> IntervalInstance:
        self.order()
        tracks = tuple(
            Track(tid, tuple(mem), tuple(self.roots[tid]), self.tails.get(tid))
            for tid, mem in enumerate(self.members)
        )
        return IntervalInstance(tuple(self.intervals), tracks, self.n, self.m, self.eps,
                                tuple(self.implications), tuple(self.ands), dict(self.index))


def sat_to_intervals(f: CnfFormula) -> IntervalInstance:
    b = _Builder(f.n, f.m)
    b.start()
    for i in range(1, f.n + 1):
        b.implication("top", f"x{i}")
        b.implication(f"x{i}", f"~x{i}")
    for j, clause in enumerate(f.clauses, start=1):
        roots = b.covering(j)
        for z, lit in zip(roots, clause):
            zp = b.implication(z, z + "'")
            b.and_gadget(z, literal_name(lit))
            b.and_gadget(zp, literal_name(-lit))
    b.end()
    return b.finish()


def sat_witness_geodetic(inst: IntervalInstance, f: CnfFormula,
                         assignment: Sequence[bool]) -> frozenset[int]:
    """Point intervals, the true literals, and two intervals per clause literal."""
    if (inst.n, inst.m) != (f.n, f.m):
        raise ReductionError("instance was not built from this formula")
    if not f.satisfied_by(assignment):
        raise ReductionError("assignment does not satisfy the formula")
    idx = inst.named
    S = {i for i, iv in enumerate(inst.intervals) if iv.is_point}
    for i, val in enumerate(assignment, start=1):
        S.add(idx[f"x{i}" if val else f"~x{i}"])
    for j, clause in enumerate(f.clauses, start=1):
        for z, lit in zip((f"a{j}", f"b{j}", f"c{j}"), clause):
            true = assignment[abs(lit) - 1] == (lit > 0)
            if true:
                S.add(idx[z])
                S.add(idx[f"gamma({z}',{literal_name(-lit)})"])
            else:
                S.add(idx[z + "'"])
                S.add(idx[f"gamma({z},{literal_name(lit)})"])
    return frozenset(S)
