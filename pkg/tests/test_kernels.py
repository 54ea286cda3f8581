import os
import random
import subprocess
import sys

import numpy as np
import pytest

from parahoric import kernels
from parahoric.group import make_group

SPECS = [{"family": "GL", "n": 2, "ring": "unram(p=3,m=1,h=2)"},
         {"family": "Sp4", "ring": "equichar(p=3,m=1,h=2)"},
         {"family": "HeteroBlock", "n": 1, "ring": "ram(p=3,e=2,c=1,h=3)",
          "ring2": "ram(p=3,e=2,c=2,h=3)"}]


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s["family"])
def test_kernels_match_python_products(spec):
    G = make_group(spec)
    rng = random.Random(0)
    xs = [G.random_element(rng) for _ in range(40)]
    ys = [G.random_element(rng) for _ in range(40)]
    A, B = kernels.as_array(xs), kernels.as_array(ys)
    want = kernels.as_array([x * y for x, y in zip(xs, ys)])
    for impl in (kernels._impl, kernels.pure):
        assert (kernels.matmul_pairs(G, A, B, impl) == want).all()
        assert (kernels.left_mul_many(G, xs[0], B, impl)
                == kernels.as_array([xs[0] * y for y in ys])).all()
        assert kernels.closure_count(G, A, B, impl) == 0
        assert kernels.member_mask(G, want, impl).all()


def test_member_mask_rejects_non_units():
    G = make_group(SPECS[0])
    bad = np.zeros((1, 4), dtype=np.int32)   # the zero matrix
    for impl in (kernels._impl, kernels.pure):
        assert not kernels.member_mask(G, bad, impl).any()


def test_pure_fallback_selected_by_environment():
    env = dict(os.environ, PARAHORIC_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from parahoric import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_compiled_backend_present():
    assert kernels.BACKEND in ("cython", "numpy")
    if kernels.BACKEND == "numpy":
        pytest.skip("extension not built")
