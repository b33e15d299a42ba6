import pytest

from ccilab.bitset import mask_of
from ccilab.envelope import Envelope, all_envelopes
from ccilab.errors import InvariantBroken
from ccilab.matroid import Matroid
from ccilab.partitions import all_partitions
from ccilab.reduction import (
    Certificate,
    brute_force_certificate,
    check_type34_coincidence,
    reduce_envelope,
    rule_r0_size2,
    rule_r1_lemma_a,
    rule_r2_lemma_c,
    rule_r3_thm_case2,
    rule_r4_all34,
    validate_certificate,
    verify_conjecture,
)


def test_r0_on_k4(k4):
    env = all_envelopes(k4, 4)[0]
    cert = rule_r0_size2(env)
    assert cert is not None and cert.rule == "R0-size2"
    assert cert.cci.bit_count() == 2
    validate_certificate(env, cert)


def test_r0_absent_without_size2_classes(u612_envelope, r1_envelope):
    assert rule_r0_size2(u612_envelope) is None
    assert rule_r0_size2(r1_envelope) is None


def test_r1_on_frozen_exemplar(r1_envelope):
    cert = rule_r1_lemma_a(r1_envelope)
    assert cert is not None and cert.rule == "R1-lemmaA"
    assert cert.cci.bit_count() == 5
    validate_certificate(r1_envelope, cert)
    assert reduce_envelope(r1_envelope).rule == "R1-lemmaA"


def test_r2_on_u612(u612_envelope):
    cert = rule_r2_lemma_c(u612_envelope)
    assert cert is not None and cert.rule == "R2-lemmaC"
    assert cert.cci.bit_count() == 5
    validate_certificate(u612_envelope, cert)
    assert reduce_envelope(u612_envelope).rule == "R2-lemmaC"


def test_r3_on_frozen_exemplar(r3_envelope):
    hp, cp = all_partitions(r3_envelope)
    # the exemplar realizes the shared-singleton configuration on both sides
    assert all(p.type_vec == (1, 3, 3) for p in hp + cp)
    singles = {p.singletons()[0] for p in hp + cp}
    assert len(singles) == 1
    cert = rule_r3_thm_case2(r3_envelope)
    assert cert is not None and cert.rule == "R3-thm-case2"
    assert cert.cci.bit_count() == 5
    validate_certificate(r3_envelope, cert)
    assert reduce_envelope(r3_envelope).rule == "R3-thm-case2"


def test_r3_requires_k7(k4):
    assert rule_r3_thm_case2(all_envelopes(k4, 4)[0]) is None


def test_r3_absent_on_u612(u612_envelope):
    assert rule_r3_thm_case2(u612_envelope) is None


def test_r4_on_frozen_exemplar(r4_envelope):
    hp, _cp = all_partitions(r4_envelope)
    assert all(p.type_vec == (3, 4) for p in hp)
    cert = rule_r4_all34(r4_envelope)
    assert cert is not None and cert.rule == "R4-all34-a"
    assert cert.cci.bit_count() == 5
    validate_certificate(r4_envelope, cert)
    # in the full rule order the size-2 cohyperplane classes win first
    assert reduce_envelope(r4_envelope).rule == "R0-size2"


def test_r4_needs_uniform_34_side(k4, u612_envelope):
    assert rule_r4_all34(all_envelopes(k4, 4)[0]) is None
    assert rule_r4_all34(u612_envelope) is None


def test_r4_split_pair_flat_exists(r4_envelope):
    # two 3-classes meeting in two elements give the split-pair flat used
    # by sub-case (b); here sub-case (a) fires first, so check the flat
    # directly through the same-side lemma machinery
    from ccilab.partitions import lemma_a_certificate

    hp, _ = all_partitions(r4_envelope)
    hit = None
    for i, p1 in enumerate(hp):
        for p2 in hp[i + 1 :]:
            if (p1.classes[0] & p2.classes[0]).bit_count() == 2:
                hit = lemma_a_certificate(r4_envelope, p1, p2)
                if hit:
                    break
        if hit:
            break
    assert hit is not None
    flat, removed = hit
    assert removed.bit_count() == 2
    assert flat in r4_envelope.matroid.hyperplanes()


def test_reduce_rejects_out_of_range_k():
    m = Matroid.uniform(7, 14)
    env = Envelope(m, mask_of(range(8)), tuple(range(14)))
    with pytest.raises(ValueError):
        reduce_envelope(env)


def test_brute_force(k4, u612_envelope):
    cert = brute_force_certificate(k4, 2)
    assert cert is not None and cert.cci.bit_count() == 2
    assert brute_force_certificate(Matroid.uniform(2, 4), 1) is None
    assert brute_force_certificate(u612_envelope, 5) is not None
    assert brute_force_certificate(Matroid.uniform(3, 3), 1) is None


def test_certificate_validation_catches_tampering(k4):
    env = all_envelopes(k4, 4)[0]
    cert = reduce_envelope(env)
    bad = Certificate(cert.h ^ 1, cert.h_star, cert.cci, cert.rule, cert.k_from, cert.k_to)
    with pytest.raises(InvariantBroken):
        validate_certificate(env, bad)


def test_reduce_is_deterministic(k4, r1_envelope, r3_envelope):
    for env in (all_envelopes(k4, 4)[0], r1_envelope, r3_envelope):
        a = reduce_envelope(env)
        b = reduce_envelope(env)
        assert a == b


def test_reduce_agrees_with_referee(k4, k5, u612_envelope, r1_envelope,
                                    r3_envelope, r4_envelope):
    envs = [all_envelopes(k4, 4)[0], all_envelopes(k5, 4)[0], u612_envelope,
            r1_envelope, r3_envelope, r4_envelope]
    for env in envs:
        cert = reduce_envelope(env)
        referee = brute_force_certificate(env, env.k - 2)
        assert cert is not None and referee is not None
        validate_certificate(env, cert)
        validate_certificate(env, referee)


def test_type34_coincidence_checker(r4_envelope, u612_envelope):
    # no opposite-kind type-(3,4) pairs with distinct J occur on these
    # envelopes, so the check passes vacuously; a nonzero count would mean
    # the stronger agreement assertion ran
    assert check_type34_coincidence(r4_envelope) >= 0
    assert check_type34_coincidence(u612_envelope) == 0


def test_verify_conjecture_k4(k4):
    rep = verify_conjecture(k4)
    assert rep.ok and rep.spectrum == (2, 4)
    (entry,) = rep.entries
    assert entry.k == 4 and entry.satisfied and entry.rule == "R0-size2"
    assert entry.oracle_agrees
    assert entry.certificate.cci.bit_count() == 2


def test_verify_conjecture_u36():
    rep = verify_conjecture(Matroid.uniform(3, 6))
    assert rep.ok and rep.spectrum == (2, 3, 4)
    assert rep.entries[0].satisfied


def test_verify_conjecture_no_large_cci():
    rep = verify_conjecture(Matroid.uniform(2, 4))
    assert rep.ok and rep.entries == []


def test_verify_conjecture_fano(fano):
    rep = verify_conjecture(fano)
    assert rep.ok
    assert rep.anomalies == []
