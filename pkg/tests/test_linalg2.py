import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from biarc.linalg2 import (
    EPS_RANK,
    TOL_RESIDUAL,
    Mat2,
    SolveKind,
    Vec2,
    matvec,
    pseudoinverse2x2,
    solve2x2,
)
from biarc.oracle import grid_least_squares

EPS = np.finfo(float).eps
finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
# below ~1e-308 the inverse itself overflows
entry = finite.filter(lambda v: v == 0 or abs(v) >= 1e-150)
mats = st.builds(Mat2, entry, entry, entry, entry)


def test_defaults():
    assert EPS_RANK == 1e-12
    assert TOL_RESIDUAL == 1e-8


def test_mat2_array_roundtrip():
    a = Mat2(1.0, 2.0, 3.0, 4.0)
    assert Mat2.from_array(a.to_array()) == a
    assert a.max_abs() == 4.0
    with pytest.raises(ValueError):
        Mat2.from_array(np.zeros(3))
    assert matvec(a, Vec2(1.0, -1.0)) == Vec2(-1.0, -1.0)


def test_identity():
    out = solve2x2(Mat2(1, 0, 0, 1), Vec2(1, 0))
    assert out.kind is SolveKind.UNIQUE and out.ok
    assert out.solution == Vec2(1.0, 0.0)
    assert out.residual_norm == 0.0


def test_singular_consistent_gives_minimum_norm_split():
    g = 2 / math.pi
    out = solve2x2(Mat2(g, g, 0.0, 0.0), Vec2(1.0, 0.0))
    assert out.kind is SolveKind.LEAST_SQUARES
    s, t = out.solution
    assert s == pytest.approx(math.pi / 4, abs=1e-15)
    assert t == pytest.approx(math.pi / 4, abs=1e-15)
    assert (s + t) == pytest.approx(math.pi / 2, abs=1e-15)
    grid = grid_least_squares(Mat2(g, g, 0.0, 0.0), Vec2(1.0, 0.0))
    step = 4 / 4000
    assert abs(grid.x1 - s) <= step and abs(grid.x2 - t) <= step


def test_inconsistent_rank_one():
    out = solve2x2(Mat2(1, 1, 1, 1), Vec2(1, 0))
    assert out.kind is SolveKind.INCONSISTENT and not out.ok
    assert out.solution == pytest.approx((0.25, 0.25), abs=1e-16)
    assert out.residual_norm == pytest.approx(math.sqrt(2) / 2, abs=1e-15)
    grid = grid_least_squares(Mat2(1, 1, 1, 1), Vec2(1, 0))
    r = matvec(Mat2(1, 1, 1, 1), grid)
    assert math.hypot(r.x1 - 1, r.x2) == pytest.approx(math.sqrt(2) / 2, abs=1e-9)


def test_null_matrix():
    out = solve2x2(Mat2(0, 0, 0, 0), Vec2(3, 4))
    assert out.kind is SolveKind.NULL_MATRIX and out.solution is None
    assert out.residual_norm == 5.0


def test_tolerance_controls_inconsistency():
    a, b = Mat2(1, 1, 1, 1), Vec2(1, 0)
    assert solve2x2(a, b, tol_residual=1.0).kind is SolveKind.LEAST_SQUARES


def test_rank_threshold_is_relative():
    # scaling the system must not change the rank decision; the residual
    # tolerance is absolute, so only the branch is compared
    for scale in (1e-150, 1e-8, 1.0, 1e8, 1e150):
        a = Mat2(scale, 2 * scale, 2 * scale, 4 * scale * (1 + 1e-14))
        assert solve2x2(a, Vec2(scale, 2 * scale)).kind is not SolveKind.UNIQUE
        a = Mat2(scale, 2 * scale, 2 * scale, 4 * scale * (1 + 1e-9))
        assert solve2x2(a, Vec2(scale, 2 * scale)).kind is SolveKind.UNIQUE


@pytest.mark.parametrize(
    "a",
    [Mat2(1, 1, 1, 1), Mat2(-1, 1, 1, -1), Mat2(2, -2, 0, 0), Mat2(0, 0, 3, 3)],
)
def test_pivot_ties_are_deterministic(a):
    # every entry of equal magnitude: same answer on every call
    b = Vec2(0.5, 0.25)
    first = solve2x2(a, b)
    for _ in range(3):
        assert solve2x2(a, b) == first
    assert pseudoinverse2x2(a) == pseudoinverse2x2(Mat2(*a))


@given(mats, finite, finite)
def test_unique_solution_matches_numpy(a, b1, b2):
    arr = a.to_array()
    assume(np.linalg.cond(arr) < 1e8)
    out = solve2x2(a, Vec2(b1, b2))
    assert out.kind is SolveKind.UNIQUE
    ref = np.linalg.solve(arr, [b1, b2])
    scale = np.linalg.norm(ref) + math.hypot(b1, b2) / np.linalg.norm(arr, 2)
    assert np.allclose(out.solution, ref, rtol=0, atol=1e-13 * np.linalg.cond(arr) * scale)


@given(
    st.floats(-10, 10, allow_nan=False),
    st.floats(-10, 10, allow_nan=False),
    st.floats(-10, 10, allow_nan=False),
    st.floats(-10, 10, allow_nan=False),
    finite,
    finite,
)
def test_rank_one_matches_lstsq_minimum_norm(u1, u2, v1, v2, b1, b2):
    a = Mat2(u1 * v1, u1 * v2, u2 * v1, u2 * v2)
    assume(a.max_abs() > 1e-6)
    out = solve2x2(a, Vec2(b1, b2))
    assert out.kind in (SolveKind.LEAST_SQUARES, SolveKind.INCONSISTENT)
    ref = np.linalg.pinv(a.to_array()) @ np.array([b1, b2])
    tol = 1e-12 * (np.linalg.norm(ref) + 1e-300)
    assert np.allclose(out.solution, ref, rtol=0, atol=tol + 1e-15 * math.hypot(b1, b2) / a.max_abs())


# pseudoinverse


def test_pinv_examples():
    assert pseudoinverse2x2(Mat2(1, 0, 0, 1)) == Mat2(1.0, 0.0, 0.0, 1.0)
    assert pseudoinverse2x2(Mat2(2, 0, 0, 0)) == Mat2(0.5, 0.0, 0.0, 0.0)
    assert pseudoinverse2x2(Mat2(0, 0, 0, 0)) == Mat2(0.0, 0.0, 0.0, 0.0)
    assert pseudoinverse2x2(Mat2(0, 0, 0, 5)) == Mat2(0.0, 0.0, 0.0, 0.2)


@given(
    st.tuples(*[st.floats(-5, 5, allow_nan=False)] * 4).filter(
        lambda t: math.hypot(t[0], t[1]) > 1e-3 and math.hypot(t[2], t[3]) > 1e-3
    )
)
def test_pinv_of_outer_product(uv):
    u = np.array(uv[:2])
    v = np.array(uv[2:])
    a = Mat2.from_array(np.outer(u, v))
    expected = np.outer(v, u) / (u @ u * (v @ v))
    got = pseudoinverse2x2(a).to_array()
    assert np.allclose(got, expected, rtol=0, atol=1e-13 * np.abs(expected).max())


def penrose_residuals(a: np.ndarray, x: np.ndarray) -> tuple[float, float, float, float]:
    ax = a @ x
    xa = x @ a
    return (
        float(np.linalg.norm(a @ x @ a - a)),
        float(np.linalg.norm(x @ a @ x - x)),
        float(np.linalg.norm(ax.T - ax)),
        float(np.linalg.norm(xa.T - xa)),
    )


@given(mats)
def test_penrose_identities_scaled_by_condition(a):
    # float rounding bounds each identity by a small multiple of eps * cond
    arr = a.to_array()
    x = pseudoinverse2x2(a).to_array()
    sv = np.linalg.svd(arr, compute_uv=False)
    if sv[0] == 0:
        assert not x.any()
        return
    ratio = sv[1] / sv[0]
    # pivoted LU and SVD may disagree about the rank right at the threshold
    assume(not 1e-2 * EPS_RANK < ratio < 1e2 * EPS_RANK)
    rank1 = ratio < EPS_RANK
    cond = 1.0 if rank1 else 1 / ratio
    na, nx = np.linalg.norm(arr), np.linalg.norm(x)
    r1, r2, r3, r4 = penrose_residuals(arr, x)
    k = 50 * EPS * cond
    # truncating to rank 1 leaves the dropped singular value in A X A - A
    assert r1 <= k * na + (sv[1] if rank1 else 0.0)
    assert r2 <= k * nx
    assert r3 <= k and r4 <= k


def test_pinv_solution_consistency():
    rng = np.random.default_rng(5)
    for _ in range(2000):
        a = Mat2.from_array(rng.normal(size=(2, 2)))
        b = Vec2(*rng.normal(size=2))
        out = solve2x2(a, b)
        ref = matvec(pseudoinverse2x2(a), b)
        assert np.allclose(out.solution, ref, rtol=1e-9, atol=1e-12)


def test_grid_search_validation():
    with pytest.raises(ValueError):
        grid_least_squares(Mat2(1, 0, 0, 1), Vec2(1, 0), grid_n=10)
    g = grid_least_squares(Mat2(1, 0, 0, 1), Vec2(1, 0))
    assert g == pytest.approx((1.0, 0.0), abs=1e-3)


@given(
    st.tuples(*[st.floats(-3, 3, allow_nan=False)] * 4),
    st.floats(-12, -2),
    st.tuples(*[st.floats(-1, 1, allow_nan=False)] * 4),
    st.floats(-3, 3),
    st.floats(-3, 3),
)
def test_kind_matches_residual(uv, log_noise, noise, b1, b2):
    # near rank-1 matrices with large right-hand sides stress the unique branch
    a = Mat2.from_array(np.outer(uv[:2], uv[2:]) + 10**log_noise * np.reshape(noise, (2, 2)))
    b = Vec2(b1 * 1e3, b2 * 1e3)
    out = solve2x2(a, b)
    if out.kind is SolveKind.NULL_MATRIX:
        assert a.max_abs() == 0
    elif out.kind is SolveKind.INCONSISTENT:
        assert out.residual_norm > TOL_RESIDUAL
    else:
        assert out.residual_norm <= TOL_RESIDUAL
        assert out.residual_norm == pytest.approx(
            math.hypot(*(np.array(matvec(a, out.solution)) - b)), abs=1e-300
        )
