"""Separation oracle for the weight polyhedron of a union-closed family.

Given a union-closed base family A (with the empty set, universe [n]) and a
weight vector c, find a union-closed family B inside the variable domain D
with A |+| B = B maximizing  |B| - 2 * sum_i c_i |B_i|,  or prove that no
such B has positive value.  Feasible B are exactly the 0/1 points of

    x_S + x_T <= 1 + x_{S u T}   for S, T in D
    x_S <= x_{A u S}             for A in base, S in D

and the objective weight of S is w_S = 1 - 2 * sum_{i in S} c_i.

`solve_separation` is exact branch and bound: weights are scaled to
integers, an upper bound at each node comes from the maximum-weight closure
of the single-set forcing relation (an integral relaxation of the LP,
computed by min cut), and the relaxed solution either closes into a feasible
incumbent or yields the branching set.  `brute_separation` is the
independent oracle: exhaustive enumeration over all subfamilies of D.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .setfam import Family, UCFamily, is_union_closed, universe
from .ratlp import frac

SOLVE_GROUND_CAP = 8
BRUTE_DOMAIN_CAP = 16


@dataclass(frozen=True)
class SeparationResult:
    optimum: Fraction
    witness: Family


class SeparationProblem:
    """A separation instance with precomputed forcing tables.

    `with_weights` reuses the tables, which is what the cutting-plane loop
    does on every round.
    """

    def __init__(self, base: UCFamily, weights: tuple[Fraction, ...], domain: Family,
                 _tables: Optional["_Tables"] = None):
        self.base = base
        self.weights = weights
        self.domain = domain
        self.tables = _tables if _tables is not None else _Tables(base, domain)
        # scale weights to integers: W[S] = L - 2 * sum_{i in S} L*c_i
        n = base.n
        lcm = 1
        for w in weights:
            lcm = lcm * w.denominator // math.gcd(lcm, w.denominator)
        scaled = [int(w * lcm) for w in weights]
        wmask = [0] * (1 << n)
        for s in self.domain.members:
            total = 0
            rest = s
            while rest:
                low = rest & -rest
                total += scaled[low.bit_length() - 1]
                rest ^= low
            wmask[s] = lcm - 2 * total
        self.scale = lcm
        self.wmask = wmask
        self.positives = [s for s in self.domain.members if wmask[s] > 0]

    @property
    def num_variables(self) -> int:
        return len(self.domain.members)

    def with_weights(self, weights: Sequence[Fraction]) -> "SeparationProblem":
        w = _check_weights(weights, self.base.n)
        return SeparationProblem(self.base, w, self.domain, _tables=self.tables)

    def violation(self, family: Family) -> Fraction:
        """|B| - 2 * sum_i c_i |B_i| at the stored weights."""
        total = Fraction(len(family.members))
        for i, c in enumerate(self.weights):
            total -= 2 * c * sum(1 for m in family.members if m >> i & 1)
        return total


class _Tables:
    """Weight-independent part of a separation instance."""

    def __init__(self, base: UCFamily, domain: Family):
        _validate_base_domain(base, domain)
        self.base_members = base.members
        self.dom_set = frozenset(domain.members)
        # force0[S]: closure of {S} under unions with base members; since the
        # base is union-closed one round suffices.
        self.force0: dict[int, tuple[int, ...]] = {
            s: tuple(sorted({s | a for a in base.members})) for s in domain.members
        }


def _check_weights(weights: Sequence, n: int) -> tuple[Fraction, ...]:
    w = tuple(frac(x) for x in weights)
    if len(w) != n:
        raise ValueError(f"expected {n} weights, got {len(w)}")
    if any(x < 0 for x in w):
        raise ValueError("weights must be nonnegative")
    if sum(w) != 1:
        raise ValueError("weights must sum to 1")
    return w


def _validate_base_domain(base: Family, domain: Family) -> None:
    n = base.n
    full = (1 << n) - 1
    if 0 not in base.members:
        raise ValueError("base family must contain the empty set")
    if universe(base) != full:
        raise ValueError("base family universe must be all of [n]")
    if not is_union_closed(base):
        raise ValueError("base family must be union-closed")
    if domain.n != n:
        raise ValueError("domain ground size mismatch")
    if 0 not in domain.members:
        raise ValueError("domain must contain the empty set")
    dset = set(domain.members)
    mem = domain.members
    for i, s in enumerate(mem):
        for t in mem[i + 1 :]:
            if s | t not in dset:
                raise ValueError("domain is not union-closed")
    for s in mem:
        for a in base.members:
            if s | a not in dset:
                raise ValueError("domain is not closed under union with base members")


def build_separation(base: UCFamily, weights: Sequence, domain: Family) -> SeparationProblem:
    """Validate and assemble a separation instance."""
    w = _check_weights(weights, base.n)
    if base.n > SOLVE_GROUND_CAP:
        raise ValueError(f"ground size {base.n} exceeds cap {SOLVE_GROUND_CAP}")
    return SeparationProblem(base, w, domain)


class _Found(Exception):
    pass


class SeparationTimeout(TimeoutError):
    """Cooperative deadline exceeded during a separation solve."""


def solve_separation(
    problem: SeparationProblem,
    mode: str = "optimal",
    branch_order: str = "default",
    deadline: Optional[float] = None,
) -> SeparationResult:
    """Exact maximum (mode="optimal") or any positive point (mode="violation")."""
    if mode not in ("optimal", "violation"):
        raise ValueError(f"unknown mode {mode!r}")
    if branch_order not in ("default", "opposite"):
        raise ValueError(f"unknown branch order {branch_order!r}")
    tab = problem.tables
    W = problem.wmask
    force0 = tab.force0
    base_members = tab.base_members
    if branch_order == "default":
        pos_order = sorted(problem.positives, key=lambda s: (-W[s], s))
    else:
        pos_order = sorted(problem.positives, key=lambda s: (W[s], -s))

    best_val = 0
    best_masks: tuple[int, ...] = ()
    ticks = 0

    def tick() -> None:
        nonlocal ticks
        ticks += 1
        if deadline is not None and ticks % 64 == 0 and time.monotonic() > deadline:
            raise SeparationTimeout()

    def close(ones: frozenset[int], seeds) -> set[int]:
        out = set(ones)
        stack = list(seeds)
        while stack:
            s = stack.pop()
            if s in out:
                continue
            for a in base_members:
                t = s | a
                if t != s and t not in out:
                    stack.append(t)
            for o in out:
                t = s | o
                if t != s and t not in out:
                    stack.append(t)
            out.add(s)
        return out

    def node(ones: frozenset[int], val: int, zeros: frozenset[int]) -> None:
        nonlocal best_val, best_masks
        tick()
        if val > best_val:
            best_val = val
            best_masks = tuple(sorted(ones))
            if mode == "violation" and best_val > 0:
                raise _Found()
        cutoff = best_val if mode == "optimal" else 0

        # candidate positives, excluding any whose single-set forcing hits a
        # zero-fixed set (iterated: a positive forcing an excluded positive
        # is excluded too)
        excluded = set(zeros)
        cands: list[int] = []
        targets: dict[int, tuple[int, ...]] = {}
        pool = [s for s in pos_order if s not in ones and s not in zeros]
        changed = True
        while changed:
            changed = False
            cands = []
            for s in pool:
                if s in excluded:
                    continue
                tg = targets.get(s)
                if tg is None:
                    extra = {s | o for o in ones}
                    extra.update(force0[s])
                    targets[s] = tg = tuple(sorted(extra))
                if any(t in excluded for t in tg):
                    excluded.add(s)
                    changed = True
                else:
                    cands.append(s)

        trivial = val + sum(W[s] for s in cands)
        if trivial <= cutoff:
            return
        bound_extra, picked = _closure_relaxation(cands, targets, ones, W)
        if val + bound_extra <= cutoff:
            return

        # try to close the relaxed pick into a feasible incumbent
        wit = close(ones, picked)
        if not (wit & zeros):
            wval = sum(W[s] for s in wit)
            if wval > best_val:
                best_val = wval
                best_masks = tuple(sorted(wit))
                if mode == "violation" and best_val > 0:
                    raise _Found()
                cutoff = best_val if mode == "optimal" else 0
            if wval == val + bound_extra:
                return  # relaxation is exact here
        # branch on a picked set whose pairwise unions escape the relaxed
        # pick into uncounted negative-weight territory; fixing it either
        # way tightens exactly that gap
        chosen = set(picked)
        chosen.update(ones)
        branch = None
        for s in cands:
            if s not in picked:
                continue
            if branch is None:
                branch = s
            hit = False
            for o in chosen:
                u = s | o
                if u not in chosen and W[u] < 0:
                    hit = True
                    break
            if hit:
                branch = s
                break
        ones1 = frozenset(close(ones, [branch]))
        if not (ones1 & zeros):
            node(ones1, sum(W[s] for s in ones1), zeros)
        node(ones, val, zeros | {branch})

    try:
        node(frozenset(), 0, frozenset())
    except _Found:
        pass
    witness = Family.from_masks(problem.base.n, best_masks)
    return SeparationResult(Fraction(best_val, problem.scale), witness)


def _closure_relaxation(
    cands: list[int], targets: dict[int, tuple[int, ...]], ones: frozenset[int],
    W: list[int],
) -> tuple[int, set[int]]:
    """Maximum-weight closure of the forcing relation over the free sets.

    Returns (bound, chosen set of masks).  Upper-bounds every feasible
    completion because a feasible family containing S must contain every
    set S forces on its own; pairwise unions among distinct free sets are
    not modeled here, which only relaxes.
    """
    if not cands:
        return 0, set()
    nodes: dict[int, int] = {}
    order: list[int] = []

    def nid(mask: int) -> int:
        if mask not in nodes:
            nodes[mask] = len(order)
            order.append(mask)
        return nodes[mask]

    edges: list[tuple[int, int]] = []
    candset = set(cands)
    for s in cands:
        si = nid(s)
        for t in targets[s]:
            if t == s or t in ones or W[t] == 0:
                continue
            if W[t] > 0 and t not in candset:
                continue  # excluded positive; conflict filtering handled it
            edges.append((si, nid(t)))

    total_pos = sum(W[s] for s in cands)
    nv = len(order)
    src, snk = nv, nv + 1
    cap_edges: list[tuple[int, int, int]] = []
    for mask, i in nodes.items():
        w = W[mask]
        if w > 0:
            cap_edges.append((src, i, w))
        elif w < 0:
            cap_edges.append((i, snk, -w))
    inf = total_pos + 1
    for a, b in edges:
        cap_edges.append((a, b, inf))
    flow, reach = _max_flow(nv + 2, src, snk, cap_edges)
    picked = {order[i] for i in range(nv) if i in reach}
    return total_pos - flow, picked


def _max_flow(nv: int, src: int, snk: int, arcs: list[tuple[int, int, int]]):
    """Dinic max flow on integer capacities; returns (flow, source side).

    The blocking-flow search walks an explicit path stack instead of
    recursing; paths here are short (the forcing graphs are almost
    tripartite) so the augment loop is the whole cost.
    """
    head: list[list[int]] = [[] for _ in range(nv)]
    to: list[int] = []
    cap: list[int] = []
    for a, b, c in arcs:
        head[a].append(len(to)); to.append(b); cap.append(c)
        head[b].append(len(to)); to.append(a); cap.append(0)
    flow = 0
    while True:
        level = [-1] * nv
        level[src] = 0
        queue = [src]
        for u in queue:
            lvl = level[u] + 1
            for e in head[u]:
                v = to[e]
                if cap[e] > 0 and level[v] < 0:
                    level[v] = lvl
                    queue.append(v)
        if level[snk] < 0:
            break
        it = [0] * nv
        path: list[int] = []  # edge indices from src to the current vertex
        u = src
        while True:
            if u == snk:
                push = min(cap[e] for e in path)
                flow += push
                retreat = None
                for e in path:
                    cap[e] -= push
                    cap[e ^ 1] += push
                    if cap[e] == 0 and retreat is None:
                        retreat = e
                while path and path[-1] != retreat:
                    path.pop()
                path.pop()
                u = src if not path else to[path[-1]]
                continue
            edges = head[u]
            advanced = False
            while it[u] < len(edges):
                e = edges[it[u]]
                v = to[e]
                if cap[e] > 0 and level[v] == level[u] + 1:
                    path.append(e)
                    u = v
                    advanced = True
                    break
                it[u] += 1
            if advanced:
                continue
            if u == src:
                break
            level[u] = -1  # dead end for this phase; parents skip it
            path.pop()
            u = src if not path else to[path[-1]]
    # residual reachability = source side of a minimum cut
    reach = {src}
    queue = [src]
    for u in queue:
        for e in head[u]:
            if cap[e] > 0 and to[e] not in reach:
                reach.add(to[e])
                queue.append(to[e])
    return flow, reach


def brute_separation(base: UCFamily, weights: Sequence, domain: Family) -> SeparationResult:
    """Exhaustive oracle over all subfamilies of the domain (|D| <= 16)."""
    w = _check_weights(weights, base.n)
    _validate_base_domain(base, domain)
    mem = domain.members
    nd = len(mem)
    if nd > BRUTE_DOMAIN_CAP:
        raise ValueError(f"domain of {nd} sets too large for brute enumeration")
    idx = {m: i for i, m in enumerate(mem)}

    lcm = 1
    for x in w:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    scaled = [int(x * lcm) for x in w]
    wvals = []
    for s in mem:
        total = 0
        rest = s
        while rest:
            low = rest & -rest
            total += scaled[low.bit_length() - 1]
            rest ^= low
        wvals.append(lcm - 2 * total)

    pair = [[idx[a | b] for b in mem] for a in mem]
    absorb_req = []
    for i, s in enumerate(mem):
        req = 0
        for a in base.members:
            req |= 1 << idx[s | a]
        absorb_req.append(req)

    size = 1 << nd
    uc = bytearray(size)
    uc[0] = 1
    req = [0] * size
    val = [0] * size
    best, best_f = 0, 0
    for f in range(1, size):
        low = f & -f
        i = low.bit_length() - 1
        rest = f ^ low
        val[f] = val[rest] + wvals[i]
        req[f] = req[rest] | absorb_req[i]
        if not uc[rest]:
            continue
        ok = True
        r = rest
        pi = pair[i]
        while r:
            lb = r & -r
            if not f >> pi[lb.bit_length() - 1] & 1:
                ok = False
                break
            r ^= lb
        if not ok:
            continue
        uc[f] = 1
        if req[f] & ~f == 0 and val[f] > best:
            best, best_f = val[f], f
    masks = [mem[i] for i in range(nd) if best_f >> i & 1]
    return SeparationResult(Fraction(best, lcm), Family.from_masks(base.n, masks))
