"""Acceptance criteria. A PASS/FAIL line per criterion is printed at the end of the run (see conftest)."""

import io
import json
import time
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from exceptional_primes import cli
from exceptional_primes.audit import Outcome, reducibility_audit
from exceptional_primes.bounds import (
    FamilyMember,
    brute_force_reducible_candidates,
    density_upper_bound,
    field_exponent_lower_bound,
    is_reducible_candidate,
    realization_plan,
    reducible_candidates,
)
from exceptional_primes.lmfdb import fetch_newforms
from exceptional_primes.modsym.dimensions import genus_X0
from exceptional_primes.modsym.eigen import eigensystems
from exceptional_primes.modsym.space import ModularSymbolSpace, build_space
from exceptional_primes.numth import is_prime, primes_up_to


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main([*argv, "--json"], stdout=out, stderr=err)
    return code, json.loads(out.getvalue())


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def test_criterion_1_bound_n4():
    t0 = time.perf_counter()
    code, doc = run_cli("bound", "--n", "4")
    elapsed = time.perf_counter() - t0
    assert code == 0
    assert doc["result"]["reducible_candidates"] == [7]
    assert doc["result"]["dihedral_candidates"] == []
    assert elapsed < 1.0


def test_criterion_2_bound_n6_against_brute_force():
    t0 = time.perf_counter()
    member = FamilyMember(6)
    formula = reducible_candidates(member)
    assert 2**18 - 1 == 262143
    brute = brute_force_reducible_candidates(member)
    elapsed = time.perf_counter() - t0
    assert formula.complete
    assert set(formula.primes) == set(brute) == {19, 73}
    assert elapsed < 10.0


@settings(max_examples=200, deadline=None)
@given(u=st.sampled_from([2, 3]), ell=st.integers(min_value=5, max_value=262143))
def test_criterion_3_oracle_equivalence(u, ell):
    member = FamilyMember(2 * u)
    formula = set(reducible_candidates(member).primes)
    assert formula == set(brute_force_reducible_candidates(member))
    if is_prime(ell):
        m, e = 3 ** (u - 1), 2 * 3 ** (u - 1)
        assert (ell in formula) == ((ell - 1) % m == 0 and pow(2, e, ell) == 1)
        assert is_reducible_candidate(ell, member) == (ell in formula)


def test_criterion_4_cuspidal_dimension_is_twice_genus():
    t0 = time.perf_counter()
    bad = []
    for N in range(1, 201):
        d = ModularSymbolSpace(N).cuspidal.dimension
        if d != 2 * genus_X0(N):
            bad.append((N, d, genus_X0(N)))
    elapsed = time.perf_counter() - t0
    assert bad == []
    assert genus_X0(162) == 16 and build_space(162).cuspidal.dimension == 32
    assert elapsed < 300.0


def test_criterion_5_hecke_operators_commute():
    for N in (11, 54, 162):
        M = build_space(N)
        mats = {p: M.hecke_matrix(p) for p in (2, 3, 5, 7, 11, 13)}
        for p in mats:
            for q in mats:
                if p < q:
                    assert matmul(mats[p], mats[q]) == matmul(mats[q], mats[p]), (N, p, q)


def test_criterion_6_level_11_matches_fixture():
    (rec,) = fetch_newforms(11)
    assert (rec.a(2), rec.a(3), rec.a(5)) == ((-2,), (-1,), (1,))
    for ell in primes_up_to(30):
        if ell < 5 or ell == 11:
            continue
        (E,) = eigensystems(11, ell, bound=30)
        assert E.degree == 1
        for p in primes_up_to(30):
            if p == ell:
                continue
            assert E.ap[p].to_int() == rec.a(p)[0] % ell, (ell, p)


def test_criterion_7_audit_witness_at_level_162():
    t0 = time.perf_counter()
    code, doc = run_cli("audit", "--n", "4", "--ell", "7")
    elapsed = time.perf_counter() - t0
    r = doc["result"]
    assert code == 0 and r["level"] == 162
    assert r["outcome"] == "witness-found"
    assert r["witness"]["u2"] in (7 - 1, 7 - 2)
    assert r["matched_primes"] == [p for p in primes_up_to(54) if 42 % p]
    assert elapsed < 120.0


def test_criterion_8_no_other_reducible_prime_at_n4():
    t0 = time.perf_counter()
    for ell in primes_up_to(100):
        if ell <= 3 or ell == 7:
            continue
        plain = reducibility_audit(4, ell)
        assert plain.outcome in (Outcome.NOT_A_CANDIDATE, Outcome.REFUTED), ell
        forced = reducibility_audit(4, ell, force=True)
        assert forced.outcome is Outcome.REFUTED, ell
        assert forced.witness is None
    assert time.perf_counter() - t0 < 1800.0


def test_criterion_9_semistable_at_2():
    for ell in primes_up_to(50):
        if ell <= 3:
            continue
        systems = eigensystems(162, ell)
        assert systems
        for E in systems:
            assert E.ap[2] * E.ap[2] == 1, (ell, E.index)


def test_criterion_10_realization_planner():
    for ell in (5, 7, 11, 13):
        for r0 in (1, 2, 3):
            plan = realization_plan(ell, r0)
            n = plan.n
            assert n >= 4 and n % 2 == 0
            assert not is_reducible_candidate(ell, FamilyMember(n))
            assert field_exponent_lower_bound(ell, n) >= r0
            for smaller in range(4, n, 2):
                assert is_reducible_candidate(ell, FamilyMember(smaller)) or field_exponent_lower_bound(ell, smaller) < r0
        seq = [field_exponent_lower_bound(ell, n) for n in range(4, 31)]
        assert all(a <= b for a, b in zip(seq, seq[1:]))


def test_criterion_11_density_bound():
    d4, d6 = density_upper_bound(FamilyMember(4)), density_upper_bound(FamilyMember(6))
    assert isinstance(d4, Fraction) and isinstance(d6, Fraction)
    assert d4 == Fraction(1, 2) and d6 == Fraction(1, 6)
