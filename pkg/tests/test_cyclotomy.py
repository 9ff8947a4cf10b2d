from collections import Counter

import pytest

from srdc import cyclotomy as cy
from srdc.field import primitive_root


def test_prime_params_validation():
    pp = cy.prime_params(19)
    assert (pp.p, pp.gamma, pp.f, pp.l) == (19, 2, 3, 1)
    with pytest.raises(ValueError):
        cy.prime_params(41)      # 41 = 5 (mod 12)
    with pytest.raises(ValueError):
        cy.prime_params(21)      # composite
    with pytest.raises(ValueError):
        cy.prime_params(19, gamma=4)


def test_classes_p19():
    t = cy.build_table(cy.prime_params(19))
    assert t.classes[0] == (1, 7, 11)
    assert t.classes[3] == (8, 12, 18)
    assert t.minus_one_class == 3
    flat = sorted(a for c in t.classes for a in c)
    assert flat == list(range(1, 19))
    assert all(len(c) == 3 for c in t.classes)


def test_counted_numbers_p19():
    t = cy.build_table(cy.prime_params(19))
    assert t.number(0, 3) == 2
    assert t.number(0, 0) == 0
    assert cy.constants(t).as_tuple() == (0, 1, 0, 2, 0, 0, 0, 1, 1, 0)


def test_p7_all_classes_singletons():
    t = cy.build_table(cy.prime_params(7))
    assert all(len(c) == 1 for c in t.classes)
    assert all(v in (0, 1) for row in t.numbers for v in row)
    assert sum(t.numbers[0]) == 1  # f = 1 row sum


def test_table_caching():
    a = cy.build_table(cy.prime_params(19))
    b = cy.build_table(cy.prime_params(19))
    assert a is b


@pytest.mark.parametrize("p", [7, 19, 31, 43])
def test_symmetries_pass(p):
    t = cy.build_table(cy.prime_params(p))
    for check in cy.verify_symmetries(t):
        assert check.passed, (p, check)


def test_f_odd_pairing_instance():
    t = cy.build_table(cy.prime_params(19))
    assert t.number(1, 2) == t.number(5, 4)


def test_diophantine_p19():
    rep = cy.diophantine_rep(cy.prime_params(19))
    assert (rep.x, rep.y, rep.t) == (4, -1, 1)


def test_diophantine_p43():
    rep = cy.diophantine_rep(cy.prime_params(43))
    assert rep.x == 4 and abs(rep.y) == 3
    assert rep.t == 27 and rep.t % 3 == 0
    assert 43 == rep.x ** 2 + 3 * rep.y ** 2


def test_diophantine_p7_sign_of_x():
    rep = cy.diophantine_rep(cy.prime_params(7))
    assert rep.x == -2 and abs(rep.y) == 1
    assert rep.x % 3 == 1


def test_closed_forms_p19_branch_b():
    pp = cy.prime_params(19)
    rep = cy.diophantine_rep(pp)
    report = cy.closed_form_constants(rep, pp)
    assert report.branch == "b"
    con = report.constants.as_dict()
    assert (con["A"], con["B"], con["D"]) == (0, 1, 2)
    # the printed J form evaluates to -24/36 here; the derived fix flags it
    assert report.corrected == ("J",)
    assert report.printed_flags[0].numerator == -24
    assert report.printed_flags[0].counted == 0


def test_closed_forms_p43_branch_a():
    pp = cy.prime_params(43)
    rep = cy.diophantine_rep(pp)
    report = cy.closed_form_constants(rep, pp)
    assert report.branch == "a"
    assert report.constants.D == (43 + 1 + 16 * 4) // 36 == 3
    assert report.corrected == ()   # branch (a) printed forms are sound


def test_closed_forms_match_counting_small_range(primes_7_mod_12):
    branches = set()
    for p in [q for q in primes_7_mod_12 if q < 300]:
        pp = cy.prime_params(p)
        rep = cy.diophantine_rep(pp)
        report = cy.closed_form_constants(rep, pp)
        branches.add(report.branch)
        assert report.constants == cy.constants(cy.build_table(pp))
    assert branches == {"a", "b", "c"}


@pytest.mark.parametrize("p,case", [(19, "b"), (43, "a")])
def test_parity_class_examples(p, case):
    assert cy.parity_class(cy.prime_params(p)) == case


def test_parity_class_p67_unique():
    con = cy.constants(cy.build_table(cy.prime_params(67))).as_dict()
    case = cy.parity_class(cy.prime_params(67))
    matches = 0
    for name, pattern in cy._PARITY_CASES.items():
        ok = all(con[k] % 2 == v for k, v in pattern.items() if k != "gh")
        ok = ok and (con["G"] + con["H"]) % 2 == pattern["gh"]
        matches += ok
    assert matches == 1 and case in "abc"


def test_parity_class_wrong_congruence():
    with pytest.raises(ValueError):
        cy.parity_class(cy.prime_params(31))  # 31 = 7 (mod 24)


def test_classes_are_gamma_multiples_of_class_zero():
    for p in (19, 43):
        t = cy.build_table(cy.prime_params(p))
        g = t.params.gamma
        c0 = set(t.classes[0])
        for i in range(6):
            assert set(t.classes[i]) == {pow(g, i, p) * x % p for x in c0}


def test_symmetry_failures_are_reported_with_coordinates():
    good = cy.build_table(cy.prime_params(19))
    corrupted = [list(r) for r in good.numbers]
    corrupted[0][1] += 1
    bad = cy.CyclotomicTable(params=good.params, classes=good.classes,
                             numbers=tuple(tuple(r) for r in corrupted),
                             minus_one_class=good.minus_one_class)
    checks = cy.verify_symmetries(bad)
    failed = [c for c in checks if not c.passed]
    assert failed
    assert all(c.counterexample for c in failed)


def test_closed_form_mismatch_raises_with_constant():
    pp = cy.prime_params(19)
    rep = cy.diophantine_rep(pp)
    wrong = cy.DiophantineRep(x=rep.x, y=-rep.y, t=rep.t)   # flipped y sign
    with pytest.raises(cy.ClosedFormMismatch) as exc:
        cy.closed_form_constants(wrong, pp)
    assert exc.value.constant in cy.CONSTANT_NAMES


def test_prime_params_size_cap():
    with pytest.raises(ValueError, match="2\\*\\*31"):
        cy.prime_params((1 << 31) + 11)


def test_relabeling_invariance():
    # a different primitive root permutes the grid but not its multiset
    for p in (19, 31):
        base = cy.build_table(cy.prime_params(p))
        base_counts = Counter(v for row in base.numbers for v in row)
        g0 = primitive_root(p)
        other = next(g for g in range(g0 + 1, p)
                     if cy.is_primitive_root(p, g))
        alt = cy.build_table(cy.prime_params(p, gamma=other))
        alt_counts = Counter(v for row in alt.numbers for v in row)
        assert base_counts == alt_counts
