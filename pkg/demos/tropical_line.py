# %% [markdown]
# # The tropical line
# Tropicalize T1 + T2 + 1 over the trivially valued rationals and look at its T-points.

# %%
from fractions import Fraction

from tropscheme import Valuation, base_change_to_T, monomial_blueprint, parse_polynomial, trop_point_member
from tropscheme.poly import Signature
from tropscheme.trop import sample_grid, write_plot_data

sig = Signature(2)
p = parse_polynomial("T1 + T2 + 1", sig)
B = monomial_blueprint([p], valuation=Valuation.trivial())
print(B)  # relations over Q: 0 <= p and one term moved to the left each time

# %%
BT = base_change_to_T(B)
print(BT)  # coefficients replaced by their absolute values

# %%
for x in [(2, 2), (2, 1), (Fraction(1, 2), 1), (1, 1)]:
    print(x, trop_point_member(BT, x))  # max of T1, T2, 1 must be attained twice

# %%
pts = sample_grid(BT, [(0, 4, Fraction(1, 4))] * 2)
print(len(pts), "grid points on the three rays")
print(write_plot_data(pts, precision=2)[:120])
