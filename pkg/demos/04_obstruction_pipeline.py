# %% [markdown]
# # Obstruction pipeline
#
# A candidate isometry from l_q^2 into S_p^n is doubled into a Hermitian
# pair (A, B). If the candidate were isometric, (1 + |t|^q)^(p/q) would
# equal ||A + tB||_p^p for every t.

# %%
import numpy as np

from schatten_embed import (
    EmbeddingMap,
    check_candidate,
    diag_embedding,
    double_map,
    eigenvalue_curves,
)

for q, p in [(2, 2), (3, 3), (1, 2), (1.5, 2), (3, 4)]:
    report = check_candidate(diag_embedding(2, p, domain_exponent=q))
    print(f"q={q} p={p}: {report.verdict.value:<22} max residual {report.max_residual:.3f}"
          f"  d2 target {report.d2_target}  d2 actual {report.d2_actual}")

# %% [markdown]
# The residual profile is plain data, ready for plotting.

# %%
report = check_candidate(diag_embedding(2, 2, domain_exponent=1))
for row in report.residual_profile[::4]:
    print(f"t={row.t:+.4f} target={row.target:.4f} actual={row.actual:.4f} residual={row.residual:.4f}")

# %% [markdown]
# A random candidate with 1 < q < 2 and p >= 2 always fails at the
# derivative stage: the left side has no finite second derivative at 0.

# %%
rng = np.random.default_rng(0)
template = diag_embedding(2, 3.0, domain_exponent=1.5)
images = rng.standard_normal((2, 3, 3)) + 1j * rng.standard_normal((2, 3, 3))
candidate = EmbeddingMap(template.domain, diag_embedding(3, 3.0).codomain, images)
print(check_candidate(candidate).verdict)

# %% [markdown]
# Eigenvalue trajectories of A + tB, matched continuously across the grid.

# %%
pair = double_map(candidate)
t = np.linspace(-1, 1, 11)
curves = eigenvalue_curves(pair, t)
print(np.round(curves, 3))
