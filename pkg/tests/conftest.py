import numpy as np
import pytest

from twomode import ExtremalParams, build_state, glems_threshold, gmems_threshold


@pytest.fixture
def rng():
    return np.random.default_rng(20250811)


def draw_params(rng, n, lam="any", s_max=12.0, family_window=None, margin=1e-6):
    """n random valid ExtremalParams with g inside an entangled window.

    ``family_window`` picks whose entanglement threshold caps g: "gmems",
    "glems", or None for the gmems window with arbitrary lambda.
    """
    out = []
    while len(out) < n:
        s = rng.uniform(1.0 + 1e-3, s_max)
        d = rng.uniform(-(s - 1.0), s - 1.0)
        if lam == "any":
            lam_val = rng.uniform(-1.0, 1.0)
        else:
            lam_val = float(lam)
        lo = 2.0 * abs(d) + 1.0
        hi = glems_threshold(s, d) if family_window == "glems" else gmems_threshold(s)
        if hi - lo < 1e-6:
            continue
        u = rng.uniform(margin, 1.0 - margin)
        out.append(ExtremalParams(s, d, lo + u * (hi - lo), lam_val))
    return out


def draw_entangled_states(rng, n, lam="any", s_max=12.0, nu_cap=1.0 - 1e-6):
    """n random entangled standard forms (with their parameters)."""
    out = []
    while len(out) < n:
        window = "glems" if lam == -1.0 else None
        for p in draw_params(rng, 1, lam=lam, s_max=s_max, family_window=window):
            try:
                sf = build_state(p)
            except Exception:
                continue
            if sf.spectrum().nu_tilde_minus < nu_cap:
                out.append((p, sf))
    return out
