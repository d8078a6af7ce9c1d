# %% [markdown]
# # Explicit isometric embeddings
#
# Each constructor returns an `EmbeddingMap` stored by basis images;
# `verify_isometry` compares norms on seeded random elements.

# %%
import math

import numpy as np

from schatten_embed import (
    apply,
    cubature_embedding_2_4_3,
    diag_embedding,
    first_row_embedding,
    lambda_bound,
    s2_to_sp_embedding,
    sum_diff_embedding,
    verify_isometry,
)
from schatten_embed.schatten import schatten_norm

print(apply(sum_diff_embedding(3), [1.0, 2.0]))   # (-1, 3, 0): sup norm 3 = |1| + |2|

# %% [markdown]
# The first-row map sends every vector to a rank-one matrix whose only
# singular value is the Euclidean length, so it is isometric for all p,
# quasi-norms included. Composing with row-major flattening embeds S_2^m
# into S_p^{m^2}.

# %%
a = np.array([3.0, 4.0, 0.0, 0.0])
for p in (0.5, 1, 3, math.inf):
    print(p, schatten_norm(apply(first_row_embedding(2, p), a), p))

for p in (0.5, 1, 2, 3, math.inf):
    v = verify_isometry(s2_to_sp_embedding(3, p), sample_count=200, seed=0, tol=1e-9)
    print(f"s2 -> s_{p}: residual {v.max_relative_residual:.1e}  pass={v.passed}")

# %% [markdown]
# Three directions at 60 degrees give l_2^2 -> l_4^3.

# %%
print(verify_isometry(cubature_embedding_2_4_3(), 100, seed=0, tol=1e-10))

# %% [markdown]
# A map that is *not* isometric: the diagonal map measured with l_1 on the
# domain and S_2 on the codomain.

# %%
print(verify_isometry(diag_embedding(2, 2, domain_exponent=1), 100, seed=0, tol=1e-9))

# %% [markdown]
# Dimension bounds from cubature formulas.

# %%
for field in ("R", "C", "H"):
    print(field, [lambda_bound(m, 4, field) for m in (2, 3, 4)])
