import random

import pytest

from srdc import codes
from srdc.circulant import CoefficientVector, GFMatrix, pack_row, pure_generator, bordered_generator
from srdc.cyclotomy import build_table, prime_params
from conftest import naive_gram_zero, naive_min_weight, unpack

T19 = build_table(prime_params(19))
T43 = build_table(prime_params(43))
T7 = build_table(prime_params(7))


def cvec(q, m, alpha=None):
    return CoefficientVector(q=q, m=tuple(m), alpha=alpha)


def trivial_code(p=19, q=2):
    table = build_table(prime_params(p))
    return codes.LinearCode(pure_generator(table, cvec(q, [1, 0, 0, 0, 0, 0, 0])))


def random_code(rng, q, k, n):
    """(I_k | random) generator: full rank by construction."""
    rows = []
    for i in range(k):
        entries = [0] * n
        entries[i] = 1
        for j in range(k, n):
            entries[j] = rng.randrange(q)
        rows.append(pack_row(q, entries))
    return codes.LinearCode(GFMatrix(q, k, n, tuple(rows)))


# ---------------------------------------------------------------------------
# gram / self-duality


def test_gram_identity_block_only():
    g = pure_generator(T19, cvec(2, [0] * 7))
    gram = codes.gram_matrix(g)
    assert unpack(gram) == unpack(codes.gram_matrix(g))
    assert gram.rows == tuple((0, 1 << i) for i in range(19))


def test_gram_zero_for_trivial_construction():
    code = trivial_code()
    assert codes.gram_matrix(code.generator).is_zero
    assert codes.is_self_dual(code)
    assert codes.min_weight_exhaustive(code).d == 2


def test_gram_matches_naive_on_random_matrices():
    rng = random.Random(3)
    for q in (2, 4):
        for _ in range(5):
            code = random_code(rng, q, 5, 11)
            packed = codes.gram_matrix(code.generator)
            assert naive_gram_zero(unpack(code.generator), q) == packed.is_zero


def test_is_self_dual_examples():
    # (I | R) with the zero vector is not self-dual (gram = I)
    assert not codes.is_self_dual(
        codes.LinearCode(pure_generator(T19, cvec(2, [0] * 7))))
    # the parity-case-(a) vector works at p=43 but not at p=19
    v = cvec(2, [0, 0, 0, 0, 1, 1, 1])
    assert codes.is_self_dual(codes.LinearCode(pure_generator(T43, v)))
    assert not codes.is_self_dual(codes.LinearCode(pure_generator(T19, v)))


def test_check_pure_conditions_p43():
    report = codes.check_pure_conditions(T43, cvec(2, [0, 0, 0, 0, 1, 1, 1]))
    assert report.is_self_dual and report.algebraic_ok and report.verdicts_agree
    assert report.d_values[0] == 1 and not any(report.d_values[1:])


def test_check_pure_zero_vector():
    report = codes.check_pure_conditions(T19, cvec(2, [0] * 7))
    assert not report.is_self_dual
    assert report.d_residuals[0] == 1   # D0 = 0 instead of 1


def test_check_bordered_alpha_one_fails():
    report = codes.check_bordered_conditions(T43, cvec(2, [0, 0, 0, 1, 1, 1, 1], alpha=1))
    assert report.border_residuals[0] == 1
    assert not report.is_self_dual and report.verdicts_agree


def test_check_bordered_true_row_p43():
    # one of the three published bordered rows that really is self-dual
    report = codes.check_bordered_conditions(T43, cvec(2, [1, 0, 0, 0, 1, 1, 1], alpha=0))
    assert report.is_self_dual and report.algebraic_ok and report.verdicts_agree
    assert report.border_residuals == (0, 0)


def test_verdicts_agree_on_gf4_sample():
    rng = random.Random(5)
    for _ in range(50):
        v = cvec(4, [rng.randrange(4) for _ in range(7)])
        rep = codes.check_pure_conditions(T19, v)
        assert rep.verdicts_agree
        vb = cvec(4, [rng.randrange(4) for _ in range(7)], alpha=rng.randrange(4))
        repb = codes.check_bordered_conditions(T19, vb)
        assert repb.verdicts_agree


def test_variant_argument_validation():
    with pytest.raises(ValueError):
        codes.check_pure_conditions(T19, cvec(2, [0] * 7, alpha=0))
    with pytest.raises(ValueError):
        codes.check_bordered_conditions(T19, cvec(2, [0] * 7))


# ---------------------------------------------------------------------------
# bounds


def test_distance_bound_spot_values():
    assert codes.distance_bound(82, 2) == 16
    assert codes.distance_bound(22, 2) == 6
    assert codes.distance_bound(38, 4) == 15
    assert codes.distance_bound(40, 4) == 15
    assert codes.distance_bound(86, 2) == 16
    assert codes.distance_bound(88, 2) == 16


def test_distance_bound_errors():
    with pytest.raises(ValueError):
        codes.distance_bound(21, 2)
    with pytest.raises(ValueError):
        codes.distance_bound(20, 3)


# ---------------------------------------------------------------------------
# exhaustive engine


def test_exhaustive_visits_every_information_word():
    code = trivial_code(p=7, q=2)
    res = codes.min_weight_exhaustive(code)
    assert res.enumerated == 2 ** 7 - 1
    code4 = trivial_code(p=7, q=4)
    res4 = codes.min_weight_exhaustive(code4)
    assert res4.enumerated == 4 ** 7 - 1
    assert res4.d == 2


def test_exhaustive_zero_right_block():
    code = codes.LinearCode(pure_generator(T7, cvec(2, [0] * 7)))
    res = codes.min_weight_exhaustive(code)
    assert res.d == 1 and res.certified


def test_exhaustive_threshold_refusal():
    code = trivial_code(p=43, q=2)
    with pytest.raises(ValueError):
        codes.min_weight_exhaustive(code, threshold=2 ** 20)


def test_exhaustive_matches_naive_small():
    rng = random.Random(9)
    for q in (2, 4):
        for _ in range(6):
            k = rng.randrange(2, 5)
            n = rng.randrange(k + 1, 10)
            code = random_code(rng, q, k, n)
            res = codes.min_weight_exhaustive(code)
            assert res.d == naive_min_weight(unpack(code.generator), q)
            # witness is a codeword of the claimed weight
            assert codes.codeword_in_span(code.generator, res.witness)
            assert (res.witness[0] | res.witness[1]).bit_count() == res.d


# ---------------------------------------------------------------------------
# information-set engine


def test_isd_equals_exhaustive_randomized():
    rng = random.Random(42)
    for q, kmax in ((2, 14), (4, 7)):
        for _ in range(8):
            k = rng.randrange(3, kmax)
            n = rng.randrange(k + 2, min(2 * k + 6, 40))
            code = random_code(rng, q, k, n)
            exact = codes.min_weight_exhaustive(code)
            isd = codes.min_weight_isd(code)
            assert isd.certified
            assert isd.d == exact.d, (q, k, n)
            assert codes.codeword_in_span(code.generator, isd.witness)
            assert (isd.witness[0] | isd.witness[1]).bit_count() == isd.d


def test_isd_on_true_self_dual_codes():
    # frozen distances, independently cross-checked with the exhaustive
    # engine where feasible
    v = cvec(2, [0, 0, 0, 0, 1, 1, 1])
    code = codes.LinearCode(pure_generator(T43, v))
    res = codes.min_weight_isd(code)
    assert res.certified and res.d == 16
    assert codes.codeword_in_span(code.generator, res.witness)


def test_isd_bordered_gf4_distance_12():
    # a certified [40,20,12] code from the bordered family
    v = cvec(4, [2, 3, 3, 3, 0, 0, 1], alpha=0)   # w W W W 0 0 1
    rep = codes.check_bordered_conditions(T19, v)
    assert rep.is_self_dual
    code = codes.LinearCode(bordered_generator(T19, v))
    res = codes.min_weight_isd(code)
    assert res.certified and res.d == 12


def test_isd_rejects_rank_deficient_input():
    row = pack_row(2, [1, 0, 1, 0])
    g = GFMatrix(2, 2, 4, (row, row))
    with pytest.raises(ValueError):
        codes.min_weight_isd(codes.LinearCode(g))


def test_isd_workers_deterministic():
    rng = random.Random(17)
    for q in (2, 4):
        code = random_code(rng, q, 9 if q == 2 else 6, 20)
        one = codes.min_weight_isd(code, workers=1)
        two = codes.min_weight_isd(code, workers=2)
        assert (one.d, one.witness) == (two.d, two.witness)


def test_isd_abort_below():
    code = trivial_code(p=19, q=2)  # d = 2
    res = codes.min_weight_isd(code, abort_below=10)
    assert not res.certified and res.d < 10


def test_distance_vs_claim_relations():
    code = trivial_code(p=19, q=2)  # d = 2
    assert codes.distance_vs_claim(code, 2).relation == "equal"
    assert codes.distance_vs_claim(code, 3).relation == "less"
    assert codes.distance_vs_claim(code, 1).relation == "greater"
    chk = codes.distance_vs_claim(code, 1)
    assert chk.lower_bound >= 2


def test_distance_vs_claim_far_off_claim_is_cheap():
    v = cvec(2, [0, 0, 0, 0, 1, 1, 1])
    code = codes.LinearCode(pure_generator(T43, v))  # true d = 16
    chk = codes.distance_vs_claim(code, 8)
    assert chk.relation == "greater"
    assert chk.lower_bound > 8


# ---------------------------------------------------------------------------
# reports


def test_code_report_trivial_p19():
    rep = codes.code_report(trivial_code())
    assert (rep.n, rep.k, rep.q, rep.d) == (38, 19, 2, 2)
    assert rep.self_dual and rep.bound == 8 and not rep.meets_bound
    assert rep.d_certified


def test_code_report_method_selection():
    rep = codes.code_report(trivial_code(p=7, q=2))
    assert rep.d_method == "exhaustive"
    rep = codes.code_report(trivial_code(p=7, q=2), method="isd")
    assert rep.d_method == "information-set"
    with pytest.raises(ValueError):
        codes.code_report(trivial_code(), method="quantum")


def test_default_workers_env(monkeypatch):
    monkeypatch.setenv("SRDC_WORKERS", "3")
    assert codes.default_workers() == 3
    monkeypatch.setenv("SRDC_WORKERS", "junk")
    assert codes.default_workers() == 1
    monkeypatch.delenv("SRDC_WORKERS")
    assert codes.default_workers() == 1
