# %% [markdown]
# # Divided differences and operator integrals
#
# Divided differences with repeated nodes use derivatives of the symbol.

# %%
import numpy as np

from schatten_embed import (
    MoiProblem,
    abs_pow_symbol,
    divided_difference,
    fd_second_derivative,
    function_calculus,
    moi_apply,
    polynomial_symbol,
    second_derivative_schatten,
)
from schatten_embed.matcore import random_hermitian

cube = polynomial_symbol([0, 0, 0, 1])
print(divided_difference(cube, [0, 1, 2]))        # 3
print(divided_difference(cube, [1, 1]))           # f'(1) = 3
print(divided_difference(abs_pow_symbol(3), [-1, 0, 1]))  # 1

# %% [markdown]
# First-order operator integral: with anchors (A, B) and perturbation A - B
# it reproduces f(A) - f(B) exactly, even when A and B do not commute.

# %%
rng = np.random.default_rng(1)
A, B = random_hermitian(4, rng), random_hermitian(4, rng)
f = abs_pow_symbol(2.5)
lhs = function_calculus(A, f) - function_calculus(B, f)
rhs = moi_apply(MoiProblem((A, B), (A - B,), f))
print("max |f(A) - f(B) - T(A - B)| =", np.abs(lhs - rhs).max())

# %% [markdown]
# Second derivative of t -> ||A + tB||_p^p at 0 from the trace of the
# second-order integral, against a central finite difference.

# %%
for p in (2, 2.5, 3, 4):
    exact = second_derivative_schatten(A, B, p)
    fd = fd_second_derivative(A, B, p, h=1e-3)
    print(f"p = {p}: trace formula {exact:.8f}   finite difference {fd:.8f}")
