import random
from fractions import Fraction

import pytest

from mdsched.core import InstanceP2, total_cost_p2, validate_p2
from mdsched.io_cli import GenParams, gen_instance, parse_instance
from mdsched.p2_solvers import (
    P2SolveStats,
    Rational,
    solve_p2_brute,
    solve_p2_dp_deque,
    solve_p2_dp_naive,
)

TRIO = InstanceP2((1, 1, 1), (1, 2, 4), (0, 0, 0), 2)


def _random_instance(rng, max_n=8, max_te=60, max_w=9, max_de=30):
    n = rng.randint(1, max_n)
    te = tuple(sorted(rng.sample(range(0, max_te), n)))
    w = tuple(rng.randint(1, max_w) for _ in range(n))
    de = tuple(rng.randint(0, max_de) for _ in range(n))
    return InstanceP2(w, te, de, rng.randint(1, n))


# -- Rational ---------------------------------------------------------------


def test_rational_against_fractions():
    rng = random.Random(55)
    for _ in range(500):
        a = rng.randint(-10**12, 10**12)
        b = rng.randint(1, 10**9)
        c = rng.randint(-10**12, 10**12)
        d = rng.randint(1, 10**9)
        x, y = Rational(a, b), Rational(c, d)
        fx, fy = Fraction(a, b), Fraction(c, d)
        assert (x < y) == (fx < fy)
        assert (x <= y) == (fx <= fy)
        assert (x == y) == (fx == fy)
        m = rng.randint(-10**6, 10**6)
        assert (x < m) == (fx < m)
        assert (x >= m) == (fx >= m)


def test_rational_normalization_and_errors():
    r = Rational(3, -2)
    assert r.num == -3 and r.den == 2
    with pytest.raises(ZeroDivisionError):
        Rational(1, 0)
    assert Rational(1, 2) == Rational(2, 4)


def test_rational_neg_inf_sentinel():
    ninf = Rational.NEG_INF
    assert ninf < Rational(-10**30, 7)
    assert ninf <= ninf
    assert not ninf < ninf
    assert not Rational(0, 1) <= ninf
    assert Rational(-5, 3) > ninf
    assert ninf < -10**50


# -- brute force --------------------------------------------------------------


def test_brute_examples():
    assert solve_p2_brute(TRIO, "restricted")[0] == 1
    # single activity: both modes coincide by construction
    one = InstanceP2((2, 3, 1), (1, 5, 9), (4, 0, 2), 1)
    assert solve_p2_brute(one, "restricted")[0] == solve_p2_brute(
        one, "unrestricted"
    )[0]


def test_brute_mode_and_size_errors():
    with pytest.raises(ValueError, match="unknown mode"):
        solve_p2_brute(TRIO, "both")
    big = InstanceP2((1,) * 9, tuple(range(9)), (0,) * 9, 2)
    with pytest.raises(ValueError, match="brute force"):
        solve_p2_brute(big)


def test_restricted_equals_unrestricted():
    """The contiguous-group shape searched by the DP loses nothing."""
    rng = random.Random(77)
    for _ in range(200):
        inst = _random_instance(rng)
        c_r, s_r = solve_p2_brute(inst, "restricted")
        c_u, _ = solve_p2_brute(inst, "unrestricted")
        assert c_r == c_u
        assert validate_p2(inst, s_r) is None
        assert total_cost_p2(inst, s_r) == c_r


# -- dynamic programs ----------------------------------------------------------


def test_naive_examples():
    cost, sched = solve_p2_dp_naive(TRIO)
    assert cost == 1
    assert validate_p2(TRIO, sched) is None
    assert total_cost_p2(TRIO, sched) == 1

    forced = InstanceP2((5, 7), (3, 7), (5, 6), 2)
    cost, sched = solve_p2_dp_naive(forced)
    assert cost == 11 and sched.time_idx == (1, 2)

    single = InstanceP2((1, 1, 1), (0, 10, 11), (0, 0, 0), 1)
    cost, sched = solve_p2_dp_naive(single)
    assert cost == 11 and sched.time_idx == (2,)


def test_deque_examples():
    for inst in (
        TRIO,
        InstanceP2((5, 7), (3, 7), (5, 6), 2),
        InstanceP2((1, 1, 1), (0, 10, 11), (0, 0, 0), 1),
    ):
        assert solve_p2_dp_deque(inst)[0] == solve_p2_dp_naive(inst)[0]


def test_deque_seeded_medium():
    inst = parse_instance(
        gen_instance(
            GenParams("fixedk", n=200, seed=7, k=13, max_te=10**5, max_w=50)
        )
    )
    assert solve_p2_dp_deque(inst)[0] == solve_p2_dp_naive(inst)[0]


def test_k_equals_n_forced():
    rng = random.Random(78)
    for _ in range(20):
        n = rng.randint(1, 30)
        te = tuple(sorted(rng.sample(range(0, 500), n)))
        w = tuple(rng.randint(1, 9) for _ in range(n))
        de = tuple(rng.randint(0, 50) for _ in range(n))
        inst = InstanceP2(w, te, de, n)
        want = sum(de)
        assert solve_p2_dp_naive(inst)[0] == want
        assert solve_p2_dp_deque(inst)[0] == want


def test_dp_matches_brute():
    rng = random.Random(79)
    for _ in range(150):
        inst = _random_instance(rng)
        cb, _ = solve_p2_brute(inst, "restricted")
        cn, sn = solve_p2_dp_naive(inst)
        cd, sd = solve_p2_dp_deque(inst)
        assert cb == cn == cd, (inst.w, inst.te, inst.de, inst.k)
        for c, s in ((cn, sn), (cd, sd)):
            assert validate_p2(inst, s) is None
            assert total_cost_p2(inst, s) == c


def test_deque_matches_naive_medium():
    rng = random.Random(80)
    for _ in range(60):
        inst = _random_instance(rng, max_n=60, max_te=2000, max_w=30)
        assert solve_p2_dp_naive(inst)[0] == solve_p2_dp_deque(inst)[0]


def test_naive_impls_identical():
    rng = random.Random(81)
    for _ in range(60):
        inst = _random_instance(rng, max_n=25)
        st_np = P2SolveStats(collect_tables=True)
        st_py = P2SolveStats(collect_tables=True)
        c_np, s_np = solve_p2_dp_naive(inst, stats=st_np, impl="numpy")
        c_py, s_py = solve_p2_dp_naive(inst, stats=st_py, impl="python")
        assert c_np == c_py and s_np == s_py
        n, k = inst.n, inst.k
        for i in range(k + 1):
            for j in range(n + 1):
                v = st_py.dmin1[i][j]
                if v is None:
                    assert int(st_np.dmin1[i, j]) >= 1 << 61
                else:
                    assert int(st_np.dmin1[i, j]) == v
                assert int(st_np.parent1[i, j]) == st_py.parent1[i][j]


def test_deque_impls_identical():
    rng = random.Random(82)
    for _ in range(60):
        inst = _random_instance(rng, max_n=40, max_te=500)
        st_nb = P2SolveStats(collect_tables=True)
        st_py = P2SolveStats(collect_tables=True)
        c_nb, s_nb = solve_p2_dp_deque(inst, stats=st_nb, impl="numba")
        c_py, s_py = solve_p2_dp_deque(inst, stats=st_py, impl="python")
        assert c_nb == c_py and s_nb == s_py
        assert st_nb.row_ops == st_py.row_ops
        n, k = inst.n, inst.k
        for i in range(k + 1):
            for j in range(n + 1):
                v = st_py.dmin0[i][j]
                if v is None:
                    assert int(st_nb.dmin0[i, j]) == 1 << 62
                else:
                    assert int(st_nb.dmin0[i, j]) == v


def test_table_invariants_and_op_bound():
    """dmin1 never exceeds dmin0 where both are finite (an empty right
    extension is always allowed), and per-row deque work stays within 4N."""
    rng = random.Random(83)
    for _ in range(40):
        inst = _random_instance(rng, max_n=30)
        st = P2SolveStats(collect_tables=True)
        solve_p2_dp_deque(inst, stats=st, impl="python")
        n, k = inst.n, inst.k
        assert all(ops <= 4 * n for ops in st.row_ops[1:])
        for i in range(k + 1):
            for j in range(n + 1):
                v0, v1 = st.dmin0[i][j], st.dmin1[i][j]
                if v0 is not None:
                    assert v1 is not None and v1 <= v0


def test_deque_tie_dense_instances():
    """Consecutive times and tiny weight/cost ranges maximize threshold
    collisions; eviction must stay exact through every tie."""
    rng = random.Random(4242)
    for _ in range(200):
        n = rng.randint(1, 8)
        start = rng.randint(0, 3)
        inst = InstanceP2(
            tuple(rng.randint(1, 2) for _ in range(n)),
            tuple(range(start, start + n)),
            tuple(rng.randint(0, 1) for _ in range(n)),
            rng.randint(1, n),
        )
        cb = solve_p2_brute(inst, "restricted")[0]
        cd_py = solve_p2_dp_deque(inst, impl="python")[0]
        cd_nb = solve_p2_dp_deque(inst, impl="numba")[0]
        assert cb == cd_py == cd_nb, (inst.w, inst.te, inst.de, inst.k)


def test_deque_trace_emitted():
    st = P2SolveStats(collect_trace=True)
    solve_p2_dp_deque(TRIO, stats=st, impl="python")
    assert any("push dq0" in line for line in st.trace)
    assert any("push dq1" in line for line in st.trace)


def test_forced_impl_validation():
    with pytest.raises(ValueError, match="unknown impl"):
        solve_p2_dp_naive(TRIO, impl="cuda")


def test_oversized_magnitudes_fall_back_to_exact_path():
    # total weight times time span exceeds the int64 guard
    n = 600
    huge = InstanceP2(
        (10**6,) * n,
        tuple(1_666_000 * i for i in range(n)),
        (10**12,) * n,
        1,
    )
    with pytest.raises(ValueError, match="unsafe"):
        solve_p2_dp_deque(huge, impl="numba")
    with pytest.raises(ValueError, match="unsafe"):
        solve_p2_dp_naive(huge, impl="numpy")
    st_d = P2SolveStats()
    st_n = P2SolveStats()
    cost_d, sched_d = solve_p2_dp_deque(huge, stats=st_d)
    cost_n, _ = solve_p2_dp_naive(huge, stats=st_n)
    assert st_d.impl == "python" and st_n.impl == "python"
    # k = 1: check against a direct scan over the single activity time
    want = min(
        huge.de[j]
        + sum(w * abs(te - huge.te[j]) for w, te in zip(huge.w, huge.te))
        for j in range(n)
    )
    assert cost_d == cost_n == want
    assert validate_p2(huge, sched_d) is None
    assert total_cost_p2(huge, sched_d) == want
