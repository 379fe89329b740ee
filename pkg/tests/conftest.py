"""
Shared fixtures: results of the proof stages at default settings.
"""

import numpy as np
import pytest

from pwproof.certificate import run_prove
from pwproof.config import DEFAULT_SEED, ProofConfig
from pwproof.flow import FLOAT, DF_map
from pwproof.floquet import analyze_monodromy
from pwproof.newton import approximate_inverse, newton_refine
from pwproof.orbit import verify_positivity
from pwproof.radii import prove_existence


@pytest.fixture(scope="session")
def newton_result():
    return newton_refine(DEFAULT_SEED, max_iter=50, tol=1e-13)


@pytest.fixture(scope="session")
def a_bar(newton_result):
    return newton_result.a


@pytest.fixture(scope="session")
def W(a_bar):
    return approximate_inverse(DF_map(a_bar, FLOAT))


@pytest.fixture(scope="session")
def bounds(a_bar):
    return prove_existence(a_bar, 0.01)


@pytest.fixture(scope="session")
def box(bounds, a_bar):
    return bounds.box(a_bar)


@pytest.fixture(scope="session")
def segment(box):
    return verify_positivity(box, box[0], 300)


@pytest.fixture(scope="session")
def report(box):
    return analyze_monodromy(box[0], box[1])


@pytest.fixture(scope="session")
def certificate(tmp_path_factory):
    out = tmp_path_factory.mktemp("cert") / "certificate.json"
    return run_prove(ProofConfig(output=str(out)))


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
