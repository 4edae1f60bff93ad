"""Brute-force reference oracles, independent of the library's solve paths.

Every derived expected value in the tests comes from one of these: they
enumerate, never search, and share nothing with the production algorithms
beyond the Family container and exact arithmetic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from fcfam.setfam import Family, compact_universe, union_closure, universe
from fcfam.ratlp import LinearProgram, Infeasible, Feasible, lp_solve


def apply_perm_mask(perm: tuple[int, ...], mask: int) -> int:
    out = 0
    for i in range(len(perm)):
        if mask >> i & 1:
            out |= 1 << (perm[i] - 1)
    return out


def relabel(perm: tuple[int, ...], fam: Family) -> Family:
    return Family.from_masks(fam.n, (apply_perm_mask(perm, m) for m in fam.members))


def brute_min_canonical(fam: Family) -> tuple[int, tuple[int, ...]]:
    """Minimum normal form over all relabelings of the compacted universe."""
    comp, _ = compact_universe(fam)
    best = None
    for perm in itertools.permutations(range(1, comp.n + 1)):
        img = tuple(sorted(apply_perm_mask(perm, m) for m in comp.members))
        if best is None or img < best:
            best = img
    return (comp.n, best)


def brute_automorphisms(fam: Family) -> list[tuple[int, ...]]:
    """All permutations of the full ground set fixing the family setwise and
    fixing non-universe elements pointwise."""
    uni = universe(fam)
    out = []
    for perm in itertools.permutations(range(1, fam.n + 1)):
        if any(perm[i] != i + 1 for i in range(fam.n) if not uni >> i & 1):
            continue
        if any(not uni >> (perm[i] - 1) & 1 for i in range(fam.n) if uni >> i & 1):
            continue
        if relabel(perm, fam) == Family(fam.n, fam.members):
            out.append(perm)
    return out


def brute_union_closure(fam: Family) -> Family:
    """Fixpoint of pairwise unions, plus the empty set."""
    current = set(fam.members) | {0}
    while True:
        extra = {a | b for a in current for b in current} - current
        if not extra:
            return Family.from_masks(fam.n, current)
        current |= extra


@lru_cache(maxsize=None)
def all_uc_subfamilies(n: int) -> tuple[tuple[int, ...], ...]:
    """Every union-closed subfamily of P([n]) as a tuple of member masks."""
    size = 1 << n
    out = []
    for f in range(1 << size):
        members = [s for s in range(size) if f >> s & 1]
        ok = True
        for a, b in itertools.combinations(members, 2):
            if not f >> (a | b) & 1:
                ok = False
                break
        if ok:
            out.append(tuple(members))
    return tuple(out)


@lru_cache(maxsize=None)
def _uc_subfamilies_fast(n: int) -> tuple[tuple[int, ...], ...]:
    """Same as all_uc_subfamilies but via the incremental peeling property:
    a nonempty family is union-closed iff it stays union-closed without its
    smallest member and every union with that member is present."""
    size = 1 << n
    uc = bytearray(1 << size)
    uc[0] = 1
    out = [()]
    for f in range(1, 1 << size):
        low = f & -f
        i = low.bit_length() - 1
        rest = f ^ low
        if not uc[rest]:
            continue
        ok = True
        r = rest
        while r:
            lb = r & -r
            j = lb.bit_length() - 1
            if not f >> (i | j) & 1:
                ok = False
                break
            r ^= lb
        if ok:
            uc[f] = 1
            out.append(tuple(s for s in range(size) if f >> s & 1))
    return tuple(out)


def uc_subfamilies(n: int) -> tuple[tuple[int, ...], ...]:
    return _uc_subfamilies_fast(n) if n >= 3 else all_uc_subfamilies(n)


def poonen_inequalities(fam: Family) -> list[tuple[tuple[int, ...], int]]:
    """All distinct inequalities (frequency vector, family size) arising from
    union-closed B <= P([n]) with <A> |+| B = B."""
    n = fam.n
    closure = union_closure(fam)
    cset = closure.members
    rows = set()
    for members in uc_subfamilies(n):
        if not members:
            continue
        mset = set(members)
        if any((a | b) not in mset for a in cset for b in members):
            continue
        freq = tuple(sum(m >> i & 1 for m in members) for i in range(n))
        rows.add((freq, len(members)))
    return sorted(rows)


def brute_poonen_fc(fam: Family) -> bool:
    """Definitional FC check: feasibility of the complete inequality system
    c >= 0, sum c = 1, sum_i c_i |B_i| >= |B|/2 over all valid B.

    Solved by lazily activating violated rows; the terminating object is
    either a point satisfying every enumerated inequality or an infeasible
    subsystem of them.
    """
    n = fam.n
    rows = poonen_inequalities(fam)
    active: list[tuple[tuple[int, ...], int]] = []
    while True:
        lp = LinearProgram(n)
        lp.add_eq([1] * n, 1)
        for freq, size in active:
            lp.add_ge(list(freq), Fraction(size, 2))
        res = lp_solve(lp)
        if isinstance(res, Infeasible):
            return False
        assert isinstance(res, Feasible)
        point = res.point
        worst = None
        worst_gap = Fraction(0)
        for freq, size in rows:
            gap = Fraction(size, 2) - sum(c * f for c, f in zip(point, freq))
            if gap > worst_gap:
                worst_gap = gap
                worst = (freq, size)
        if worst is None:
            return True
        active.append(worst)


def uc_reps_with_full_universe(n: int) -> list[Family]:
    """One representative per isomorphism class of union-closed families with
    universe exactly [n]."""
    from fcfam.canon import canonical_key

    full = (1 << n) - 1
    reps: dict = {}
    for members in uc_subfamilies(n):
        if not members:
            continue
        uni = 0
        for m in members:
            uni |= m
        if uni != full:
            continue
        fam = Family(n, members)
        reps.setdefault(canonical_key(fam), fam)
    return [reps[k] for k in sorted(reps)]


def random_family(rng, max_n: int = 6, max_members: int = 8) -> Family:
    n = rng.randint(1, max_n)
    count = rng.randint(1, min(max_members, (1 << n)))
    masks = rng.sample(range(1 << n), count)
    return Family.from_masks(n, masks)
