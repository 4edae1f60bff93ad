import copy
import random
from fractions import Fraction

import pytest

from fcfam.setfam import Family, no_singletons_family
from fcfam.fcsolve import (
    Cut,
    FcCertificate,
    NonFcCertificate,
    certificate_from_dict,
    certificate_to_dict,
    is_fc,
)
from fcfam.verify import verify_certificate, verify_fc, verify_nonfc

from oracles import random_family


def make_pool(seed=100):
    """A mixed pool of valid certificates for tamper experiments."""
    rng = random.Random(seed)
    pool = [
        is_fc(Family.from_sets(2, [[1, 2]])),
        is_fc(Family.from_sets(3, [[1, 2, 3]])),
        is_fc(Family.from_sets(3, [[1, 2, 3]]), domain=no_singletons_family(3)),
        is_fc(Family.from_sets(4, [[1, 2, 3, 4]]), domain=no_singletons_family(4)),
        is_fc(Family.from_sets(4, [[1, 2, 3], [1, 2, 4]]), symmetry=True),
        is_fc(Family.from_sets(4, [[1, 2], [3, 4]]), warm_start=True),
    ]
    while len(pool) < 12:
        fam = random_family(rng, max_n=4, max_members=4)
        fam = Family.from_masks(fam.n, fam.members + ((1 << fam.n) - 1,))
        pool.append(is_fc(fam, symmetry=rng.random() < 0.5, warm_start=rng.random() < 0.5))
    return pool


def tamper(cert, rng):
    """One random single-field mutation over the integrity-checked fields:
    a ground element of a cut family, a cached cut count, or one rational
    (weight, Farkas multiplier, or lambda)."""
    cert = copy.deepcopy(cert)
    choices = []
    if cert.cuts:
        choices += ["cut-element", "cut-freq", "cut-size"]
    if isinstance(cert, FcCertificate):
        choices.append("weight")
    else:
        choices += ["multiplier", "lambda"]
    kind = rng.choice(choices)
    delta = Fraction(rng.choice([1, -1]), rng.choice([1, 2, 3]))
    if kind == "cut-element":
        idx = rng.randrange(len(cert.cuts))
        cut = cert.cuts[idx]
        members = list(cut.family.members)
        j = rng.randrange(len(members))
        members[j] ^= 1 << rng.randrange(cert.n)
        tampered_family = Family.from_masks(cert.n, members)
        cert.cuts[idx] = Cut(tampered_family, cut.size, cut.freq)
    elif kind == "cut-freq":
        idx = rng.randrange(len(cert.cuts))
        cut = cert.cuts[idx]
        freq = list(cut.freq)
        freq[rng.randrange(len(freq))] += rng.choice([1, -1])
        cert.cuts[idx] = Cut(cut.family, cut.size, tuple(freq))
    elif kind == "cut-size":
        idx = rng.randrange(len(cert.cuts))
        cut = cert.cuts[idx]
        cert.cuts[idx] = Cut(cut.family, cut.size + rng.choice([1, -1]), cut.freq)
    elif kind == "weight":
        w = list(cert.weights)
        j = rng.randrange(len(w))
        w[j] = max(Fraction(0), w[j] + delta)
        if w[j] == cert.weights[j]:
            w[j] += 1
        cert.weights = tuple(w)
    elif kind == "multiplier":
        y = list(cert.multipliers)
        j = rng.randrange(len(y))
        y[j] = y[j] + delta if y[j] + delta != y[j] else y[j] + 1
        cert.multipliers = tuple(y)
    else:
        cert.lam = cert.lam + delta
    return cert


class TestValidCertificates:
    def test_roundtrip_small_k_set_families(self):
        # every certificate produced over small generator families verifies,
        # before and after serialization
        from fcfam.enumfam import gen_noniso_families

        checked = 0
        for k in (3, 4):
            for n in range(k, 7):
                for m in (1, 2, 3):
                    for fam in gen_noniso_families(n, k, m):
                        cert = is_fc(fam)
                        assert verify_certificate(cert).passed, (fam, cert.kind)
                        again = certificate_from_dict(certificate_to_dict(cert))
                        assert verify_certificate(again).passed
                        checked += 1
        assert checked == 19

    def test_report_lists_checks(self):
        rep = verify_certificate(is_fc(Family.from_sets(2, [[1, 2]])))
        names = [name for name, _ in rep.checked]
        assert "weights-simplex" in names
        assert "separation-nonpositive" in names
        assert rep.passed and rep.failure is None


class TestTargetedTampers:
    def test_weights_replaced_by_unit_vector(self):
        cert = is_fc(Family.from_sets(2, [[1, 2]]))
        cert.weights = (Fraction(1), Fraction(0))
        rep = verify_fc(cert)
        assert not rep.passed

    def test_weights_not_summing_to_one(self):
        cert = is_fc(Family.from_sets(2, [[1, 2]]))
        cert.weights = (Fraction(1, 2), Fraction(1, 3))
        rep = verify_fc(cert)
        assert not rep.passed and "weights-simplex" in rep.failure

    def test_cut_replaced_by_non_union_closed_family(self):
        cert = is_fc(Family.from_sets(3, [[1, 2, 3]]))
        bad = Family.from_sets(3, [[1], [2]])
        cert.cuts[0] = Cut.from_family(bad)
        # restore plausible multiplier count
        rep = verify_nonfc(cert)
        assert not rep.passed

    def test_negative_multiplier(self):
        cert = is_fc(Family.from_sets(3, [[1, 2, 3]]))
        y = list(cert.multipliers)
        y[0] = -abs(y[0]) - 1
        cert.multipliers = tuple(y)
        rep = verify_nonfc(cert)
        assert not rep.passed

    def test_file_level_kind_swap(self):
        from fcfam.fcsolve import CertificateError

        data = certificate_to_dict(is_fc(Family.from_sets(2, [[1, 2]])))
        data["kind"] = "non-fc"
        with pytest.raises(CertificateError):
            certificate_from_dict(data)


class TestRandomTampers:
    def test_every_tamper_detected(self):
        rng = random.Random(7001)
        pool = make_pool()
        for _ in range(120):
            cert = rng.choice(pool)
            bad = tamper(cert, rng)
            rep = verify_certificate(bad)
            assert not rep.passed, (cert.kind, bad)
