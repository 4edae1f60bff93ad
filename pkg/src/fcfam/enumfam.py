"""Isomorph-free enumeration of k-set families and the FC value drivers.

`gen_noniso_families` produces one representative per isomorphism class by
incremental augmentation: each (m-1)-set representative over a compacted
universe [u] is extended by every k-set that takes j fresh elements
(canonically u+1..u+j) and k-j old ones, then deduplicated by canonical
form.  `get_nfc` is the recursive Non-FC enumeration: memoized bottom-up
over universe sizes J = {max(k, n-k), ..., n}, with isomorph rejection
against both accumulators and the skip of any extension containing a
proper FC subfamily (checked one member down against the previous level's
FC registry; an FC verdict there also covers deeper containment because
such families were pruned earlier).

Everything downstream of the candidate collection is embarrassingly
parallel, so classification can fan out over worker processes.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence, Union

from .setfam import (
    Family,
    compact_universe,
    lex_ksets,
    no_singletons_family,
    universe,
)
from .canon import canonical_form
from .fcsolve import (
    Certificate,
    FcCertificate,
    NonFcCertificate,
    is_fc,
)

ProgressFn = Callable[[str], None]

CanonKey = tuple[int, tuple[int, ...]]


@dataclass
class NfcRegistry:
    """Canonical-form keyed accumulators for one (n, k, m) cell."""

    nfc: dict[CanonKey, Family] = field(default_factory=dict)
    fc: dict[CanonKey, Family] = field(default_factory=dict)

    def seen(self, key: CanonKey) -> bool:
        return key in self.nfc or key in self.fc

    def nfc_sorted(self) -> list[Family]:
        return sorted(self.nfc.values(), key=lambda f: (f.n, f.members))


@dataclass
class FcValueReport:
    k: int
    n: int
    value: Optional[int]
    status: str  # "found" | "undefined" | "exhausted"
    witness: Optional[Family]
    counts: dict[tuple[int, int], int]  # (universe size, m) -> Non-FC class count
    wall_time: float
    witness_certificate: Optional[NonFcCertificate] = None


@dataclass
class LexScanResult:
    m: int
    prefix_fc: FcCertificate
    # None when the predecessor prefix is itself FC over its smaller
    # universe, which happens in the trivial k = 3 scans; the bundle then
    # carries only the upper-bound half of the evidence.
    prev_nonfc: Optional[NonFcCertificate]


def noniso_levels(n: int, k: int, m_max: int) -> Iterator[list[Family]]:
    """Yield representatives of families of m distinct k-sets over ground
    sets of at most n elements (universes compacted to [u]), m = 1..m_max."""
    if k > n or m_max < 1:
        return
    level = [Family.from_masks(k, [(1 << k) - 1])]
    yield level
    for _ in range(2, m_max + 1):
        registry: dict[CanonKey, Family] = {}
        for fam in level:
            u = fam.n
            old = list(range(u))
            memberset = set(fam.members)
            for j in range(0, min(k, n - u) + 1):
                new_bits = ((1 << j) - 1) << u
                for combo in itertools.combinations(old, k - j):
                    s = new_bits
                    for e in combo:
                        s |= 1 << e
                    if s in memberset:
                        continue
                    ext = Family.from_masks(u + j, fam.members + (s,))
                    cf = canonical_form(ext)
                    registry.setdefault(cf.key, cf.relabeled)
        level = sorted(registry.values(), key=lambda f: (f.n, f.members))
        yield level


def gen_noniso_families(n: int, k: int, m: int) -> list[Family]:
    """One representative per isomorphism class of families of m distinct
    k-sets with universe exactly [n]; empty when the parameters are
    impossible."""
    if m < 1:
        raise ValueError("m must be positive")
    if k > n or k * m < n or m > math.comb(n, k):
        return []
    last: list[Family] = []
    for level in itertools.islice(noniso_levels(n, k, m), m - 1, m):
        last = level
    return [f for f in last if f.n == n]


def _classify(args: tuple[tuple[int, ...], int, bool, bool, Optional[float]]) -> bool:
    members, n, symmetry, warm_start, time_limit = args
    deadline = time.monotonic() + time_limit if time_limit else None
    cert = is_fc(
        Family(n, members), symmetry=symmetry, warm_start=warm_start, deadline=deadline
    )
    return isinstance(cert, FcCertificate)


class EnumSession:
    """Shared memo of getNFC cells plus the isFC configuration."""

    def __init__(
        self,
        jobs: int = 1,
        symmetry: bool = False,
        warm_start: bool = True,
        deadline: Optional[float] = None,
        progress: Optional[ProgressFn] = None,
        time_limit: Optional[float] = None,
    ):
        if jobs < 1:
            raise ValueError("jobs must be >= 1")
        self.jobs = jobs
        self.symmetry = symmetry
        self.warm_start = warm_start
        self.deadline = deadline
        self.time_limit = time_limit  # per isFC call
        self.progress = progress
        self.memo: dict[tuple[int, int, int], NfcRegistry] = {}
        self.isfc_calls = 0

    def _say(self, msg: str) -> None:
        if self.progress:
            self.progress(msg)

    def _classify_batch(self, fams: Sequence[Family]) -> list[bool]:
        self.isfc_calls += len(fams)
        args = [
            (f.members, f.n, self.symmetry, self.warm_start, self.time_limit)
            for f in fams
        ]
        if self.jobs > 1 and len(fams) > 1:
            from multiprocessing import Pool

            with Pool(self.jobs) as pool:
                return pool.map(_classify, args)
        return [_classify(a) for a in args]

    def get_nfc(self, n: int, k: int, m: int) -> NfcRegistry:
        if not (n >= k >= 3):
            raise ValueError("need n >= k >= 3")
        key = (n, k, m)
        if key in self.memo:
            return self.memo[key]
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise TimeoutError("enumeration deadline exceeded")
        reg = NfcRegistry()
        if k * m < n or m > math.comb(n, k):
            self.memo[key] = reg
            return reg
        if k * (m - 1) < n:
            fams = gen_noniso_families(n, k, m)
            verdicts = self._classify_batch(fams)
            for fam, fc in zip(fams, verdicts):
                cf = canonical_form(fam)
                (reg.fc if fc else reg.nfc)[cf.key] = cf.relabeled
            self._say(f"getNFC({n},{k},{m}): base level, {len(reg.nfc)} Non-FC")
            self.memo[key] = reg
            return reg

        j_range = range(max(k, n - k), n + 1)
        parents: list[Family] = []
        for i in j_range:
            parents.extend(self.get_nfc(i, k, m - 1).nfc_sorted())
        full = (1 << n) - 1
        ksets = lex_ksets(n, k)
        prev_fc: dict[int, dict[CanonKey, Family]] = {
            i: self.get_nfc(i, k, m - 1).fc for i in j_range
        }

        pending: set[CanonKey] = set()
        candidates: list[Family] = []
        for parent in parents:
            base_members = parent.members
            uni = universe(parent)
            memberset = set(base_members)
            for s in ksets:
                if s in memberset or (uni | s) != full:
                    continue
                ext = Family.from_masks(n, base_members + (s,))
                cf = canonical_form(ext)
                if cf.key in pending:
                    continue
                if self._contains_proper_fc(ext, k, m, prev_fc):
                    continue
                pending.add(cf.key)
                candidates.append(cf.relabeled)
        candidates.sort(key=lambda f: f.members)
        self._say(f"getNFC({n},{k},{m}): {len(candidates)} candidates to classify")
        verdicts = self._classify_batch(candidates)
        for fam, fc in zip(candidates, verdicts):
            (reg.fc if fc else reg.nfc)[(fam.n, fam.members)] = fam
        self._say(f"getNFC({n},{k},{m}): {len(reg.nfc)} Non-FC, {len(reg.fc)} FC")
        self.memo[key] = reg
        return reg

    def _contains_proper_fc(
        self, fam: Family, k: int, m: int,
        prev_fc: dict[int, dict[CanonKey, Family]],
    ) -> bool:
        for drop in range(len(fam.members)):
            rest = fam.members[:drop] + fam.members[drop + 1 :]
            sub, _ = compact_universe(Family.from_masks(fam.n, rest))
            table = prev_fc.get(sub.n)
            if table is None:
                continue
            if canonical_form(sub).key in table:
                return True
        return False


def get_nfc(
    n: int,
    k: int,
    m: int,
    *,
    jobs: int = 1,
    symmetry: bool = False,
    warm_start: bool = True,
    deadline: Optional[float] = None,
    progress: Optional[ProgressFn] = None,
    time_limit: Optional[float] = None,
) -> list[Family]:
    """All pairwise nonisomorphic Non-FC families of m distinct k-sets with
    universe [n] (families containing a proper FC subfamily are not
    explored)."""
    session = EnumSession(jobs, symmetry, warm_start, deadline, progress, time_limit)
    return session.get_nfc(n, k, m).nfc_sorted()


def fc_value(
    k: int,
    n: int,
    m_max: Optional[int] = None,
    *,
    jobs: int = 1,
    symmetry: bool = False,
    warm_start: bool = True,
    deadline: Optional[float] = None,
    progress: Optional[ProgressFn] = None,
    time_limit: Optional[float] = None,
) -> FcValueReport:
    """Least m such that every family of m distinct k-sets over any universe
    of at most n elements is FC; "undefined" when even the complete family
    of all k-subsets of [n] is Non-FC."""
    if not (n > k >= 3):
        raise ValueError("need n > k >= 3")
    t0 = time.monotonic()
    session = EnumSession(jobs, symmetry, warm_start, deadline, progress, time_limit)
    cap = math.comb(n, k)
    counts: dict[tuple[int, int], int] = {}
    witness: Optional[Family] = None
    value: Optional[int] = None
    status = "exhausted"
    m = 1
    while m <= (m_max if m_max is not None else cap):
        level_witness = None
        all_empty = True
        for i in range(k, n + 1):
            lst = session.get_nfc(i, k, m).nfc_sorted()
            counts[(i, m)] = len(lst)
            if lst and level_witness is None:
                level_witness = lst[0]
            if lst:
                all_empty = False
        if progress:
            progress(f"fc_value({k},{n}): m={m} Non-FC classes="
                     f"{sum(counts[(i, m)] for i in range(k, n + 1))}")
        if all_empty:
            value, status = m, "found"
            break
        witness = level_witness
        m += 1
    else:
        if m_max is None or m_max >= cap:
            status = "undefined"
    cert = None
    if witness is not None and status == "found":
        cert = is_fc(witness, symmetry=symmetry, warm_start=warm_start)
        assert isinstance(cert, NonFcCertificate), "witness re-verification failed"
    return FcValueReport(
        k, n, value, status, witness, counts, time.monotonic() - t0, cert
    )


def lex_scan(
    k: int,
    n: int,
    *,
    symmetry: bool = False,
    warm_start: bool = True,
    deadline: Optional[float] = None,
    progress: Optional[ProgressFn] = None,
) -> LexScanResult:
    """First m such that the length-m lexicographic prefix of k-subsets of
    [n] is FC, with certificates for that prefix and the one before it."""
    if not (n > k >= 3):
        raise ValueError("need n > k >= 3")
    order = lex_ksets(n, k)
    full = (1 << n) - 1
    uni = 0
    m0 = None
    for idx, s in enumerate(order):
        uni |= s
        if uni == full:
            m0 = idx + 1
            break
    if m0 is None:
        raise ValueError("prefixes never reach universe [n]")
    for m in range(m0, len(order) + 1):
        fam = Family.from_masks(n, order[:m])
        cert = is_fc(fam, symmetry=symmetry, warm_start=warm_start, deadline=deadline)
        if progress:
            progress(f"lex_scan({k},{n}): prefix {m} is {cert.kind}")
        if isinstance(cert, FcCertificate):
            prev, _ = compact_universe(Family.from_masks(n, order[: m - 1]))
            prev_cert = is_fc(prev, symmetry=symmetry, warm_start=warm_start)
            if isinstance(prev_cert, FcCertificate):
                prev_cert = None
            return LexScanResult(m, cert, prev_cert)
    raise ValueError(f"no FC prefix up to C({n},{k})")


def fcv_value(
    k: int,
    n: int,
    v_spec: Union[str, Family] = "no-singletons",
    *,
    jobs: int = 1,
    warm_start: bool = True,
    deadline: Optional[float] = None,
    progress: Optional[ProgressFn] = None,
    time_limit: Optional[float] = None,
) -> FcValueReport:
    """Least m such that every family of at least m distinct k-sets with
    universe exactly [n] is V-FC, by brute force over isomorphism classes.

    Scanning each exact level m suffices: a V-FC subfamily makes its
    supersets V-FC, and any family of more than n sets keeps universe [n]
    after dropping some member, so once a level at or beyond n is clean all
    larger levels are clean too.
    """
    if not (n > k >= 3):
        raise ValueError("need n > k >= 3")
    if isinstance(v_spec, str):
        if v_spec != "no-singletons":
            raise ValueError(f"unknown domain spec {v_spec!r}")
        dom = no_singletons_family(n)
    else:
        dom = v_spec
        if dom.n != n:
            raise ValueError("domain ground size mismatch")
        if not _is_symmetric_family(dom):
            raise ValueError("isomorphism pruning needs a symmetric domain")
    t0 = time.monotonic()
    cap = math.comb(n, k)
    counts: dict[tuple[int, int], int] = {}
    bad_levels: list[int] = []
    witness: Optional[Family] = None
    prev_vfc: set[CanonKey] = set()
    levels = noniso_levels(n, k, cap)
    value: Optional[int] = None
    status = "found"
    for m in range(1, cap + 1):
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutError("enumeration deadline exceeded")
        level = next(levels)
        reps = [f for f in level if f.n == n]
        vfc_here: set[CanonKey] = set()
        to_solve: list[Family] = []
        for fam in reps:
            if _has_vfc_subfamily(fam, prev_vfc):
                vfc_here.add((fam.n, fam.members))
            else:
                to_solve.append(fam)
        bad_here = 0
        verdicts = _classify_vfc_batch(to_solve, dom, jobs, warm_start, time_limit)
        for fam, ok in zip(to_solve, verdicts):
            if ok:
                vfc_here.add((fam.n, fam.members))
            else:
                bad_here += 1
                witness = fam
        counts[(n, m)] = bad_here
        if progress:
            progress(
                f"fcv_value({k},{n}): m={m} classes={len(reps)} "
                f"solved={len(to_solve)} non-V-FC={bad_here}"
            )
        if bad_here:
            bad_levels.append(m)
        prev_vfc = vfc_here
        if not bad_here and m >= n:
            break
    else:
        if bad_levels and bad_levels[-1] == cap:
            status = "undefined"
    if status != "undefined":
        value = (bad_levels[-1] + 1) if bad_levels else 1
    cert = None
    if witness is not None and status == "found" and bad_levels:
        last_bad_witness = witness
        cert = is_fc(last_bad_witness, domain=dom, warm_start=warm_start)
        assert isinstance(cert, NonFcCertificate), "witness re-verification failed"
        witness = last_bad_witness
    return FcValueReport(
        k, n, value, status, witness, counts, time.monotonic() - t0, cert
    )


def _classify_vfc_batch(
    fams: Sequence[Family], dom: Family, jobs: int, warm_start: bool,
    time_limit: Optional[float] = None,
) -> list[bool]:
    args = [(f.members, f.n, dom.members, warm_start, time_limit) for f in fams]
    if jobs > 1 and len(fams) > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            return pool.map(_classify_vfc, args)
    return [_classify_vfc(a) for a in args]


def _classify_vfc(
    args: tuple[tuple[int, ...], int, tuple[int, ...], bool, Optional[float]]
) -> bool:
    members, n, dom_members, warm_start, time_limit = args
    deadline = time.monotonic() + time_limit if time_limit else None
    cert = is_fc(
        Family(n, members), domain=Family(n, dom_members), warm_start=warm_start,
        deadline=deadline,
    )
    return isinstance(cert, FcCertificate)


def _has_vfc_subfamily(fam: Family, prev_keys: set[CanonKey]) -> bool:
    if not prev_keys:
        return False
    full = (1 << fam.n) - 1
    for drop in range(len(fam.members)):
        rest = fam.members[:drop] + fam.members[drop + 1 :]
        sub = Family.from_masks(fam.n, rest)
        if universe(sub) != full:
            continue
        if canonical_form(sub).key in prev_keys:
            return True
    return False


def _is_symmetric_family(dom: Family) -> bool:
    """Invariant under all transpositions (i, i+1), hence under S_n."""
    memberset = set(dom.members)
    for i in range(dom.n - 1):
        a, b = 1 << i, 1 << (i + 1)
        for m in dom.members:
            if bool(m & a) != bool(m & b) and (m ^ a ^ b) not in memberset:
                return False
    return True
