"""Compiled kernel versus numpy fallback: identical semantics, different speed."""

import numpy as np
import pytest

from lastsuccess import _fallback, _kernel

try:
    from lastsuccess import _core
except ImportError:
    _core = None

needs_core = pytest.mark.skipif(_core is None, reason="compiled kernel not built")


class TestFallback:
    def test_single_vs_grid_consistency(self):
        grid = np.array([0.1, 0.33, 0.5, 0.77])
        batch = _fallback.dp_win_prob_grid(17, grid)
        for p, w in zip(grid, batch):
            assert _fallback.dp_win_prob(17, float(p)) == pytest.approx(w, abs=1e-14)

    def test_stop_times_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            _fallback.plugin_stop_times(np.zeros(4, dtype=np.uint8))


@needs_core
class TestBackendAgreement:
    def test_dp_single(self):
        for n in (2, 9, 64, 500):
            for p in (0.01, 0.3, 0.5, 0.99):
                assert _core.dp_win_prob(n, p) == pytest.approx(
                    _fallback.dp_win_prob(n, p), abs=1e-13
                )

    def test_dp_grid(self):
        grid = np.linspace(0.01, 0.99, 197)
        a = np.asarray(_core.dp_win_prob_grid(150, grid))
        b = np.asarray(_fallback.dp_win_prob_grid(150, grid))
        np.testing.assert_allclose(a, b, atol=1e-12)

    def test_stop_times_identical(self):
        rng = np.random.default_rng(0)
        paths = (rng.random((5000, 23)) < 0.4).astype(np.uint8)
        np.testing.assert_array_equal(
            np.asarray(_core.plugin_stop_times(paths)),
            np.asarray(_fallback.plugin_stop_times(paths)),
        )


class TestDispatch:
    def test_threads_preserve_output(self):
        grid = np.linspace(0.02, 0.98, 321)
        a = _kernel.dp_win_prob_grid(60, grid)
        b = _kernel.dp_win_prob_grid(60, grid, threads=4)
        np.testing.assert_array_equal(a, b)

    def test_backend_reported(self):
        assert _kernel.backend_name() in ("compiled", "numpy")
        assert _kernel.COMPILED == (_core is not None)
