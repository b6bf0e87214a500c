import math

import numpy as np
import pytest

from biframe.constructions import reconstruct
from biframe.frames import biframe_check
from biframe.sequences import (
    EXAMPLES,
    bound_trajectory,
    build_truncated,
    custom_spec,
    get_example,
    load_custom_spec,
    non_bessel_witness,
)


def _coeffs(fam):
    return [complex(x.mat[0][np.flatnonzero(x.mat[0])[0]]).real for x in fam]


def _bases(fam):
    return [int(np.flatnonzero(x.mat[0])[0]) + 1 for x in fam]


class TestBuild:
    def test_ex32_listing(self):
        pair = build_truncated(EXAMPLES["ex32"], 4)
        assert _coeffs(pair.xi) == pytest.approx([1, 2, 1 / 3, 4])
        assert _coeffs(pair.upsilon) == pytest.approx([2, 1, 4, 1 / 3])
        pair = build_truncated(EXAMPLES["ex32"], 2)
        assert _coeffs(pair.xi) == [1, 2] and _coeffs(pair.upsilon) == [2, 1]

    def test_ex44_listing(self):
        pair = build_truncated(EXAMPLES["ex44"], 6)
        assert _bases(pair.xi) == [1, 1, 1, 2, 2, 2]
        assert _coeffs(pair.upsilon) == pytest.approx([2, 1, -1, 1.5, 1, -1])
        assert pair.space.m == 2

    def test_ex45_listing(self):
        pair = build_truncated(EXAMPLES["ex45"], 6)
        assert _coeffs(pair.xi) == pytest.approx([1, 1 / math.sqrt(2), 1, 0.5, 1, 1 / math.sqrt(6)])
        assert _coeffs(pair.upsilon) == pytest.approx([1, math.sqrt(2), 1, 2, 1, math.sqrt(6)])

    @pytest.mark.parametrize("spec_id,N", [("ex32", 3), ("ex44", 4), ("ex45", 1), ("ex32", 0)])
    def test_invalid_N(self, spec_id, N):
        with pytest.raises(ValueError):
            build_truncated(EXAMPLES[spec_id], N)

    def test_unknown(self):
        with pytest.raises(ValueError):
            get_example("ex99")


class TestTrajectory:
    def test_ex32_single(self):
        rep = bound_trajectory(EXAMPLES["ex32"], [2])
        (N, lo, up, _), = rep.entries
        assert (lo, up) == pytest.approx((2, 2))

    def test_ex32_100(self):
        (_, lo, up, _), = bound_trajectory(EXAMPLES["ex32"], [100]).entries
        assert lo == pytest.approx(100 / 99, abs=1e-9) and up == pytest.approx(2, abs=1e-9)

    def test_ex32_closed_form_and_monotone(self):
        Ns = list(range(2, 81, 2))
        rep = bound_trajectory(EXAMPLES["ex32"], Ns)
        lows = [e[1] for e in rep.entries]
        for (N, lo, up, _) in rep.entries:
            assert lo == pytest.approx(N / (N - 1), abs=1e-12)
            assert up == pytest.approx(2, abs=1e-12)
        assert all(a >= b for a, b in zip(lows, lows[1:]))
        assert (rep.limit_lower, rep.limit_upper) == (1.0, 2.0)

    def test_ex44_closed_form(self):
        for n in (1, 2, 5, 20):
            (_, lo, up, _), = bound_trajectory(EXAMPLES["ex44"], [3 * n]).entries
            assert lo == pytest.approx((n + 1) / n, abs=1e-12) and up == pytest.approx(2, abs=1e-12)

    def test_ex45_parseval(self):
        rep = bound_trajectory(EXAMPLES["ex45"], [20])
        assert rep.entries[0][3] <= 1e-9
        for N in range(2, 41, 2):
            assert biframe_check(build_truncated(EXAMPLES["ex45"], N)).is_parseval

    def test_entries_ordered(self):
        rep = bound_trajectory(EXAMPLES["ex32"], [10, 2, 6])
        assert [e[0] for e in rep.entries] == [2, 6, 10]
        assert all(e[1] <= e[2] for e in rep.entries)

    def test_truncations_reconstruct(self, rng):
        for spec_id, N in [("ex32", 10), ("ex44", 9), ("ex45", 8)]:
            pair = build_truncated(EXAMPLES[spec_id], N)
            r = biframe_check(pair)
            assert r.is_biframe and r.is_pair_frame
            from biframe.generate import random_element

            x = random_element(rng, pair.space)
            for side in ("left", "right"):
                assert reconstruct(x, pair, side).allclose(x, 1e-8)


class TestNonBessel:
    def test_ex32(self):
        up_xi, up_ups = non_bessel_witness(EXAMPLES["ex32"], 4)
        assert up_xi == pytest.approx(16) and up_ups == pytest.approx(16)

    def test_ex32_grows(self):
        ups = [non_bessel_witness(EXAMPLES["ex32"], N)[0] for N in (4, 8, 16)]
        assert ups == pytest.approx([16, 64, 256])

    def test_ex45(self):
        up_xi, up_ups = non_bessel_witness(EXAMPLES["ex45"], 2)
        assert up_xi == pytest.approx(1) and up_ups == pytest.approx(2)
        up_xi, up_ups = non_bessel_witness(EXAMPLES["ex45"], 4)
        assert up_xi == pytest.approx(1) and up_ups == pytest.approx(4)

    @pytest.mark.parametrize("N", [2, 6, 10, 30])
    def test_ex45_general(self, N):
        # squared coefficients of Upsilon are 1 on odd indices and 2j on e_{2j}
        expected = max([1.0] + [float(2 * j) for j in range(1, N // 2 + 1)])
        assert non_bessel_witness(EXAMPLES["ex45"], N) == pytest.approx((1.0, expected))

    def test_unsupported(self):
        with pytest.raises(ValueError):
            non_bessel_witness(EXAMPLES["ex44"], 3)


class TestCustom:
    def test_custom_rules(self):
        spec = custom_spec([[1, 1], [2, 2]], [[3, 1], [0.5, 2]])
        (_, lo, up, _), = bound_trajectory(spec, [2]).entries
        assert (lo, up) == pytest.approx((1, 3))

    def test_load(self, tmp_path):
        p = tmp_path / "c.json"
        p.write_text('{"xi": [[1, 1], [1, 3]], "upsilon": [[2, 1], [2, 3]]}')
        pair = build_truncated(load_custom_spec(p), 2)
        assert pair.space.m == 3
        assert not biframe_check(pair).is_biframe  # e_2 is never reached

    def test_invalid(self):
        with pytest.raises(ValueError):
            custom_spec([[1, 0]], [[1, 1]])
        with pytest.raises(ValueError):
            custom_spec([[float("nan"), 1]], [[1, 1]])
