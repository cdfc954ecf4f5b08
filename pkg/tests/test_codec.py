import random

import numpy as np
import pytest

from conftest import ALL_CONTEXTS, FIELD_CONTEXTS, ctx_id, make_ring
from skewcodes import gfmatrix
from skewcodes.codec import (
    CodeError,
    LinearCode,
    classify,
    code_from_generator,
    gray_apply,
    gray_image,
    gray_matrix_check,
    min_distance,
    parity_check,
    rl_code_build,
    tau_shift,
)
from skewcodes.distance import column_search, enumeration_distance
from skewcodes.galois import field_from_order
from skewcodes.notation import parse_poly
from skewcodes.skew import enumerate_right_divisors

EX4_G = "x^9 + t^2x^8 + t^2x^7 + x^6 + x^3 + t^2x^2 + t^2x + 1"
EX1_G = ["x^4 + t^13x^3 + t^7x^2 + t", "x^3 + t^10x^2 + t^11x + t^14"]
EX2_G = ["x^3 + t^7x^2 + t^22x + t^9", "x + t^11", "x + 4"]


def x_times_mod(S, c):
    """Coefficients of x * c(x) with x^n replaced by 1."""
    n = len(c)
    prod = (S.x() * S.poly(tuple(c))).padded(n + 1)
    out = list(prod[:n])
    out[0] = S.base.add(out[0], prod[n])
    return tuple(out)


def _rand_elem(S, rng):
    q = S.field.q
    if S.over_rl():
        return tuple(rng.randrange(q) for _ in range(S.base.l))
    return rng.randrange(q)


@pytest.mark.parametrize("ctx", ALL_CONTEXTS, ids=ctx_id)
def test_tau_is_multiplication_by_x(ctx):
    S = make_ring(*ctx)
    rng = random.Random(17)
    for _ in range(500):
        n = rng.randint(1, 9)
        c = tuple(_rand_elem(S, rng) for _ in range(n))
        assert tau_shift(c, S) == x_times_mod(S, c)


def test_tau_examples():
    S = make_ring(4, "t")
    F = S.field
    t, t2 = F.t_pow(1), F.t_pow(2)
    assert tau_shift((t, 0, 0), S) == (t, t2, 0)
    assert tau_shift((0, 0, 0), S) == (0, 0, 0)
    S0 = make_ring(4, "0")
    c = (1, t, t2, 0)
    assert tau_shift(c, S0) == tuple(S0.sigma(v) for v in (0, 1, t, t2))


def test_parity_check_examples():
    F = field_from_order(4)
    assert parity_check(np.eye(3, dtype=np.int32), F).shape[0] == 0
    G = np.ones((1, 5), dtype=np.int32)
    H = parity_check(G, F)
    assert gfmatrix.rank(F, H) == 4
    assert not gfmatrix.matmul(F, G, gfmatrix.transpose(H)).any()


def test_example4_code():
    S = make_ring(4, "0")
    code = code_from_generator(parse_poly(S, EX4_G), 12)
    C = code.code
    assert (C.n, C.k) == (12, 3)
    assert C.H.shape == (9, 12)
    assert not gfmatrix.matmul(S.field, C.G, gfmatrix.transpose(C.H)).any()
    res = min_distance(C)
    assert (res.d, res.exact) == (6, True)
    assert res.method == "columns+enumeration"
    assert classify(12, 3, 6) == "neither"


def test_f49_code():
    S = make_ring(49, "t^2")
    code = code_from_generator(parse_poly(S, "x^2 + t^19x + t^20"), 21)
    res = min_distance(code.code)
    assert (code.k, res.d, res.exact) == (19, 3, True)
    assert classify(21, 19, 3) == "MDS"


def test_code_errors():
    S = make_ring(4, "0")
    with pytest.raises(CodeError):
        code_from_generator(S.x_n_minus_1(5), 5)
    with pytest.raises(CodeError):
        code_from_generator(S.poly((1, S.field.t_pow(1))), 5)  # not monic
    with pytest.raises(CodeError):
        code_from_generator(parse_poly(S, "x^2 + x + t"), 5)  # not a divisor
    with pytest.raises(CodeError):
        min_distance(LinearCode.zero(S.field, 4))
    with pytest.raises(CodeError):
        classify(10, 5, 4, exact=False)


def test_classify():
    assert classify(16, 12, 4) == "almost-MDS"
    assert classify(21, 19, 3) == "MDS"
    assert classify(12, 3, 6) == "neither"


def test_identity_code_distance_one():
    F = field_from_order(9)
    res = min_distance(LinearCode(F, np.eye(4, dtype=np.int32)))
    assert (res.d, res.exact) == (1, True)


def test_budget_gives_lower_bound():
    S = make_ring(4, "0")
    C = code_from_generator(parse_poly(S, EX4_G), 12).code
    res = column_search(S.field, C.H, budget=10)
    assert not res.exact and res.d <= 6 and res.status == "at_least"


@pytest.mark.parametrize("ctx", FIELD_CONTEXTS, ids=ctx_id)
def test_skew_codes_closed_under_tau(ctx):
    S = make_ring(*ctx)
    n = 6 if S.field.q <= 16 else 4
    for g in enumerate_right_divisors(S, n, 2).divisors[:10]:
        C = code_from_generator(g, n).code
        assert all(C.contains(tau_shift(tuple(row), S)) for row in C.G)


def _divisor_codes():
    for ctx, n in [((4, "0"), 12), ((4, "t"), 12), ((4, "1"), 8), ((9, "t^2"), 8),
                   ((16, "t"), 6), ((25, "t"), 6), ((49, "t^2"), 6)]:
        S = make_ring(*ctx)
        for d in range(1, n):
            # keep both the codeword count and the candidate scan small
            if S.field.q ** (n - d) > 1 << 16 or S.field.q**d > 1 << 18:
                continue
            for g in enumerate_right_divisors(S, n, d).divisors:
                yield S, g, n


def test_column_search_matches_enumeration_on_divisor_codes():
    count = 0
    for S, g, n in _divisor_codes():
        C = code_from_generator(g, n).code
        col = column_search(S.field, C.H)
        enum = enumeration_distance(S.field, C.G)
        assert col.exact and col.d == enum.d
        count += 1
    assert count > 50


@pytest.mark.parametrize("q", [4, 9, 16])
def test_column_search_matches_enumeration_on_random_codes(q):
    F = field_from_order(q)
    rng = np.random.default_rng(q)
    done = 0
    while done < 40:
        n = int(rng.integers(3, 11))
        k = int(rng.integers(1, n))
        if q**k > 1 << 16:
            continue
        G = rng.integers(0, q, size=(k, n)).astype(np.int32)
        if gfmatrix.rank(F, G) < k:
            continue
        col = column_search(F, parity_check(G, F))
        assert col.d == enumeration_distance(F, G).d
        done += 1


def test_rl_example1():
    S = make_ring(16, "t")
    gs = [parse_poly(S, g) for g in EX1_G]
    code = rl_code_build(gs, 12, S)
    assert code.l == 2 and [c.k for c in code.components] == [8, 9]
    assert code.cofactor * code.f == code.ring.x_n_minus_1(12)


def test_rl_example2():
    S = make_ring(25, "t")
    code = rl_code_build([parse_poly(S, g) for g in EX2_G], 15, S)
    assert [c.k for c in code.components] == [12, 14, 14]


@pytest.mark.parametrize("q,l", [(4, 2), (9, 3), (16, 2), (25, 3), (49, 2)])
def test_rl_all_x_minus_1(q, l):
    S = make_ring(q, "0")
    g = S.poly((S.base.neg(1), 1))
    code = rl_code_build([g] * l, 6, S)
    R = code.ring.base
    assert code.f == code.ring.poly((R.scalar(S.base.neg(1)), R.one))


def test_rl_errors():
    S = make_ring(16, "t")
    good = parse_poly(S, EX1_G[0])
    with pytest.raises(CodeError, match="component 2"):
        rl_code_build([good, parse_poly(S, "x^2 + x + t")], 12, S)
    with pytest.raises(CodeError):
        rl_code_build([good], 12, S)
    # a -> a^2 moves the idempotents of R_4 over F_16
    S4 = make_ring(16, "0")
    g = S4.poly((1, 1))
    with pytest.raises(CodeError, match="idempotents"):
        rl_code_build([g] * 4, 6, S4)


def test_gray_matrix_examples():
    F16 = field_from_order(16)
    t = F16.t_pow(1)
    gm = gray_matrix_check(F16, [[1, t], [t, 1]])
    assert gm.beta == F16.add(1, F16.mul(t, t))
    assert gray_matrix_check(F16, np.eye(3, dtype=np.int32)).beta == 1
    F25 = field_from_order(25)
    N = [[F25.parse(a) for a in row] for row in
         [["t^11", "4", "t^14"], ["t^17", "t^17", "1"], ["t^10", "t^17", "t^23"]]]
    assert gray_matrix_check(F25, N).beta == F25.t_pow(20)
    with pytest.raises(CodeError):
        gray_matrix_check(F16, [[1, 1], [1, 1]])
    with pytest.raises(CodeError):
        gray_matrix_check(F16, [[1, t], [0, 1]])


@pytest.mark.parametrize("coords", ["v", "crt"])
def test_gray_image_example1(coords):
    S = make_ring(16, "t")
    code = rl_code_build([parse_poly(S, g) for g in EX1_G], 12, S)
    F = S.field
    gm = gray_matrix_check(F, [[1, F.t_pow(1)], [F.t_pow(1), 1]], coords=coords)
    image = gray_image(code, gm)
    assert (image.n, image.k) == (24, 17)
    R = code.ring.base
    assert gray_apply(R.zero, gm, code.idempotents) == (0, 0)


def test_gray_injective():
    S = make_ring(25, "t")
    code = rl_code_build([parse_poly(S, g) for g in EX2_G], 15, S)
    F = S.field
    N = [[F.parse(a) for a in row] for row in
         [["t^11", "4", "t^14"], ["t^17", "t^17", "1"], ["t^10", "t^17", "t^23"]]]
    gm = gray_matrix_check(F, N, coords="crt")
    R = code.ring.base
    seen = {gray_apply(r, gm, code.idempotents) for r in R.elements()}
    assert len(seen) == F.q**3
    assert gray_image(code, gm).k == 40
