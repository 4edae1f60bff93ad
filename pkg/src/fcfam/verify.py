"""Independent re-verification of FC / Non-FC certificates.

Everything recomputable is recomputed from the certificate's own family and
domain; the checks share nothing with the solving path beyond the set
algebra and exact arithmetic primitives.  FC certificates get their final
separation re-solved -- by exhaustive enumeration for n <= 4 and with the
opposite branching order above that (the documented divergence point from
the producing solve).  Non-FC certificates are replayed as a pure Farkas
computation: with multipliers y_B >= 0 and lambda on sum(c) = 1,

    sum_B y_B |B_i| + lambda <= 0   for every element i, while
    sum_B y_B |B|/2 + lambda  = 1   (> 0 proves infeasibility; == 1 pins
                                     the scale so single-field tampers
                                     cannot slip through)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .setfam import (
    Family,
    is_union_closed,
    powerset_family,
    union_closure,
    universe,
    uplus,
)
from .fcsolve import (
    Certificate,
    FcCertificate,
    NonFcCertificate,
    FC_GROUND_CAP,
)
from .sepip import brute_separation, build_separation, solve_separation


@dataclass
class VerificationReport:
    passed: bool
    checked: list[tuple[str, bool]]
    failure: Optional[str] = None

    def summary(self) -> str:
        lines = [f"{'ok' if ok else 'FAIL'}  {name}" for name, ok in self.checked]
        lines.append("PASS" if self.passed else f"FAIL: {self.failure}")
        return "\n".join(lines)


class _Checker:
    def __init__(self):
        self.checked: list[tuple[str, bool]] = []
        self.failure: Optional[str] = None

    def run(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checked.append((name, ok))
        if not ok and self.failure is None:
            self.failure = f"{name}: {detail}" if detail else name
        return ok

    def report(self) -> VerificationReport:
        return VerificationReport(self.failure is None, self.checked, self.failure)


def _structural(cert: Certificate, ck: _Checker) -> Optional[Family]:
    """Shared structural checks; returns the domain family when they pass."""
    n = cert.n
    if not ck.run("ground-size", 1 <= n <= FC_GROUND_CAP, f"n={n}"):
        return None
    full = (1 << n) - 1
    if not ck.run(
        "family-universe", cert.family.n == n and universe(cert.family) == full,
        "family universe is not all of [n]",
    ):
        return None
    closure = union_closure(cert.family)
    if not ck.run(
        "closure-size", cert.closure_size == len(closure.members),
        f"stored {cert.closure_size}, recomputed {len(closure.members)}",
    ):
        return None
    dom = cert.domain if cert.domain is not None else powerset_family(n)
    ok = (
        dom.n == n
        and 0 in dom.members
        and is_union_closed(dom)
        and set(closure.members) <= set(dom.members)
    )
    if not ck.run("domain-valid", ok, "domain must be union-closed, contain {} and <A>"):
        return None
    return dom


def _cuts_wellformed(cert: Certificate, dom: Family, ck: _Checker) -> bool:
    closure = union_closure(cert.family)
    dom_set = set(dom.members)
    for idx, cut in enumerate(cert.cuts):
        if not cut.cache_consistent():
            return ck.run("cuts-wellformed", False, f"cut {idx}: cached counts mismatch")
        if cut.family.n != cert.n:
            return ck.run("cuts-wellformed", False, f"cut {idx}: ground size mismatch")
        if not set(cut.family.members) <= dom_set:
            return ck.run("cuts-wellformed", False, f"cut {idx}: leaves the domain")
        if not is_union_closed(cut.family):
            return ck.run("cuts-wellformed", False, f"cut {idx}: not union-closed")
        absorbed = uplus(closure, cut.family) if cut.family.members else cut.family
        if absorbed != Family(cert.n, cut.family.members):
            return ck.run("cuts-wellformed", False, f"cut {idx}: not absorbed by <A>")
    return ck.run("cuts-wellformed", True)


def verify_fc(cert: FcCertificate) -> VerificationReport:
    """Check an FC certificate: weights on the simplex, stored cuts valid and
    satisfied, and an independent separation re-solve finding no violation."""
    ck = _Checker()
    dom = _structural(cert, ck)
    if dom is None:
        return ck.report()
    ok = (
        len(cert.weights) == cert.n
        and all(w >= 0 for w in cert.weights)
        and sum(cert.weights, Fraction(0)) == 1
    )
    if not ck.run("weights-simplex", ok, "weights must be nonnegative and sum to 1"):
        return ck.report()
    if not _cuts_wellformed(cert, dom, ck):
        return ck.report()
    sat = True
    for idx, cut in enumerate(cert.cuts):
        lhs = sum(w * f for w, f in zip(cert.weights, cut.freq))
        if 2 * lhs < cut.size:
            sat = False
            ck.run("cuts-satisfied", False, f"cut {idx} violated at the stored weights")
            break
    if sat and not ck.run("cuts-satisfied", True):
        return ck.report()
    if not sat:
        return ck.report()
    closure = union_closure(cert.family)
    try:
        if cert.n <= 4:
            sep = brute_separation(closure, cert.weights, dom)
        else:
            prob = build_separation(closure, cert.weights, dom)
            sep = solve_separation(prob, mode="optimal", branch_order="opposite")
    except ValueError as exc:
        ck.run("separation-nonpositive", False, str(exc))
        return ck.report()
    ck.run(
        "separation-nonpositive", sep.optimum <= 0,
        f"violating family of value {sep.optimum} exists: {sep.witness}",
    )
    return ck.report()


def verify_nonfc(cert: NonFcCertificate) -> VerificationReport:
    """Replay a Non-FC certificate's Farkas combination exactly."""
    ck = _Checker()
    dom = _structural(cert, ck)
    if dom is None:
        return ck.report()
    if not ck.run(
        "multiplier-count", len(cert.multipliers) == len(cert.cuts),
        "one multiplier per cut required",
    ):
        return ck.report()
    if not _cuts_wellformed(cert, dom, ck):
        return ck.report()
    if not ck.run(
        "multipliers-nonnegative", all(y >= 0 for y in cert.multipliers)
    ):
        return ck.report()
    agg_ok = True
    for i in range(cert.n):
        total = sum(
            (y * cut.freq[i] for y, cut in zip(cert.multipliers, cert.cuts)),
            Fraction(0),
        )
        if total + cert.lam > 0:
            agg_ok = False
            ck.run(
                "farkas-aggregation", False,
                f"element {i + 1}: aggregated coefficient {total + cert.lam} > 0",
            )
            break
    if agg_ok and not ck.run("farkas-aggregation", True):
        return ck.report()
    if not agg_ok:
        return ck.report()
    rhs = sum(
        (y * Fraction(cut.size, 2) for y, cut in zip(cert.multipliers, cert.cuts)),
        Fraction(0),
    ) + cert.lam
    ck.run(
        "farkas-normalized", rhs == 1,
        f"aggregated right side is {rhs}, expected exactly 1",
    )
    return ck.report()


def verify_certificate(cert: Certificate) -> VerificationReport:
    if isinstance(cert, FcCertificate):
        return verify_fc(cert)
    if isinstance(cert, NonFcCertificate):
        return verify_nonfc(cert)
    raise TypeError(f"not a certificate: {type(cert).__name__}")
