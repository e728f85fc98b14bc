"""Backend equivalence: the compiled kernels and the numpy fallbacks must agree."""

import math
import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest

from qpwalk import _kernels
from qpwalk.walk import Field, WalkState, evolve, hadamard_params


def _random_case(rng, steps=9, width=5):
    pad = steps + 2
    buf = np.zeros((width + 2 * pad, 2), dtype=complex)
    block = rng.normal(size=(width, 2)) + 1j * rng.normal(size=(width, 2))
    block /= np.linalg.norm(block)
    buf[pad:pad + width] = block
    mats = np.empty((steps, 2, 2), dtype=complex)
    for i in range(steps):
        q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        mats[i] = q
    return buf, pad, pad + width - 1, mats


@pytest.mark.skipif(not _kernels.USING_NUMBA,
                    reason="compiled backend not active in this process")
@pytest.mark.parametrize("name", ["steps_matrix_then_shift",
                                  "steps_shift_then_matrix"])
def test_compiled_matches_fallback(rng, name):
    compiled = getattr(_kernels, name)
    fallback = getattr(_kernels, f"_{name}_np")
    for _ in range(10):
        buf, lo, hi, mats = _random_case(rng)
        buf2 = buf.copy()
        lo1, hi1 = compiled(buf, lo, hi, mats)
        lo2, hi2 = fallback(buf2, lo, hi, mats)
        assert (lo1, hi1) == (lo2, hi2)
        assert np.allclose(buf, buf2, atol=1e-13)


@pytest.mark.skipif(not _kernels.USING_NUMBA,
                    reason="compiled backend not active in this process")
def test_compiled_electric_matches_fallback(rng):
    for _ in range(10):
        buf, lo, hi, _ = _random_case(rng)
        steps = 9
        q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        xs = np.arange(buf.shape[0]) - lo
        site_phase = np.exp(1j * 0.7123 * xs)
        buf2 = buf.copy()
        lo1, hi1 = _kernels.steps_electric(buf, lo, hi, np.ascontiguousarray(q),
                                           site_phase, steps)
        lo2, hi2 = _kernels._steps_electric_np(buf2, lo, hi,
                                               np.ascontiguousarray(q),
                                               site_phase, steps)
        assert (lo1, hi1) == (lo2, hi2)
        assert np.allclose(buf, buf2, atol=1e-13)


@pytest.mark.skipif(not _kernels.USING_NUMBA,
                    reason="compiled backend not active in this process")
def test_compiled_origin_tracker_matches_fallback(rng):
    for _ in range(5):
        buf, lo, hi, mats = _random_case(rng)
        buf2 = buf.copy()
        p1 = np.empty(mats.shape[0])
        p2 = np.empty(mats.shape[0])
        origin = lo + 2
        out1 = _kernels.steps_matrix_then_shift_origin(buf, lo, hi, mats,
                                                       origin, p1)
        out2 = _kernels._steps_matrix_then_shift_origin_np(buf2, lo, hi, mats,
                                                           origin, p2)
        assert out1 == out2
        assert np.allclose(buf, buf2, atol=1e-13)
        assert np.allclose(p1, p2, atol=1e-13)


def test_window_bounds_track_support(rng):
    buf, lo, hi, mats = _random_case(rng, steps=4, width=3)
    lo2, hi2 = _kernels.steps_matrix_then_shift(buf, lo, hi, mats)
    assert (lo2, hi2) == (lo - 4, hi + 4)
    assert np.all(buf[:lo2] == 0) and np.all(buf[hi2 + 1:] == 0)


def _run_flagged(flag: str) -> str:
    code = textwrap.dedent("""
        import numpy as np
        from qpwalk import backend_name
        from qpwalk.walk import Field, WalkState, evolve, hadamard_params
        params = hadamard_params(Field.rational(1, 7))
        state = evolve(WalkState.single_site(), 1, 40, params)
        print(backend_name())
        print(repr(float(np.abs(state.amplitudes).sum())))
    """)
    env = dict(os.environ)
    env["QPWALK_NUMBA"] = flag
    result = subprocess.run([sys.executable, "-c", code], env=env,
                            capture_output=True, text=True, check=True)
    return result.stdout.split()


def test_env_flag_selects_backend():
    name_off, total_off = _run_flagged("0")
    assert name_off == "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        pytest.skip("numba not installed")
    name_on, total_on = _run_flagged("1")
    assert name_on == "numba"
    assert abs(float(total_on) - float(total_off)) < 1e-10


@pytest.mark.parametrize("flag", ["off", "false", "OFF"])
def test_env_flag_spellings(flag):
    assert _run_flagged(flag)[0] == "numpy"


def test_evolution_identical_across_backends():
    params = hadamard_params(Field.golden())
    state = evolve(WalkState.single_site(), 1, 60, params)
    code = textwrap.dedent("""
        import numpy as np
        from qpwalk.walk import Field, WalkState, evolve, hadamard_params
        params = hadamard_params(Field.golden())
        state = evolve(WalkState.single_site(), 1, 60, params)
        np.save({out!r}, state.amplitudes)
    """)
    import tempfile
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "amps.npy")
        env = dict(os.environ)
        env["QPWALK_NUMBA"] = "0"
        subprocess.run([sys.executable, "-c", code.format(out=out)], env=env,
                       check=True)
        other = np.load(out)
    assert other.shape == state.amplitudes.shape
    assert np.abs(other - state.amplitudes).max() < 1e-12
