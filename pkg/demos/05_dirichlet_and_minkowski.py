"""
Dirichlet kernel limits and Minkowski's inequality
==================================================

``(1/pi) integral f(t) sin(lambda (x - t)) / (x - t) dt`` tends to the
average of the one-sided limits of ``f`` at ``x``. Minkowski's integral
inequality is checked on random discrete measures.
"""

import numpy as np

from quadhy.sampling import GridSpec, make_corpus
from quadhy.verify import check_dirichlet_limit, check_minkowski

grid = GridSpec(-8, 8, 65537)
step = make_corpus([{"id": "step", "kind": "step", "params": {"a": -1, "b": 1}}], grid)[0]
for x in (0.0, 1.0, 0.5):
    r = check_dirichlet_limit(step, x, [25, 50, 100, 200])
    vals = ", ".join(f"{v:.5f}" for v in r.approximants)
    print(f"x = {x}: target {r.target}, approximants [{vals}]")

# %%
# For a Gaussian the approximant is ``erf(lambda / sqrt 2)`` at the origin,
# already 1 to double precision at moderate lambda.
gauss = make_corpus([{"id": "g", "kind": "gaussian", "params": {"sigma": 1}}], grid)[0]
r = check_dirichlet_limit(gauss, 0.0, [2, 4, 8, 50, 200])
print("gaussian errors:", ["%.2e" % e for e in r.errors])

# %%
rng = np.random.default_rng(0)
worst = np.inf
for _ in range(200):
    f = rng.standard_normal((20, 30)) + 1j * rng.standard_normal((20, 30))
    rep = check_minkowski(f, rng.uniform(0, 1, 20), rng.uniform(0, 1, 30), rng.choice([1, 1.5, 2, 3]))
    worst = min(worst, (rep.rhs - rep.lhs) / rep.rhs)
print("smallest relative Minkowski slack over 200 tables:", worst)
