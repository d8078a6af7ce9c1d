# %% [markdown]
# # Schatten norms
#
# The Schatten p-norm of a matrix is the l_p norm of its singular values.
# For p < 1 it is only a quasi-norm, but the call is the same.

# %%
import math

import numpy as np

from schatten_embed import random_unitary, schatten_norm, singular_values, vector_pnorm

T = np.diag([3.0, -4.0])
print("singular values:", singular_values(T))
for p in (0.5, 1, 2, math.inf):
    print(f"p = {p:>4}: ||T||_p = {schatten_norm(T, p):.6f}")

# %% [markdown]
# Unitary invariance: multiplying by unitaries on either side leaves every
# Schatten norm unchanged.

# %%
rng = np.random.default_rng(0)
T = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
U, V = random_unitary(4, seed=1), random_unitary(4, seed=2)
for p in (0.5, 1, 3, math.inf):
    print(p, schatten_norm(T, p), schatten_norm(U @ T @ V, p))

# %% [markdown]
# A diagonal matrix has the same norm as its diagonal viewed as a sequence.

# %%
v = np.array([1.0, -2.0, 0.5])
print(schatten_norm(np.diag(v), 0.7), vector_pnorm(v, 0.7))

# %% [markdown]
# For p < 1 the triangle inequality fails but its p-th power version holds.

# %%
A, B = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
p = 0.5
print("||A+B||      =", schatten_norm(A + B, p), " vs ||A||+||B|| =", 2.0)
print("||A+B||^p    =", schatten_norm(A + B, p) ** p, " vs ||A||^p+||B||^p =", 2.0)
