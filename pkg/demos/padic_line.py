# %% [markdown]
# # A line with a 3-adic coefficient
# T1 + T2 + 3 under the 3-adic absolute value: the constant term has size 1/3,
# so the vertex of the tropical line moves to (1/3, 1/3).

# %%
from fractions import Fraction

from tropscheme import Valuation, base_change_to_T, bend_vs_trop_points, monomial_blueprint, parse_polynomial
from tropscheme.poly import Signature, tropicalize_poly
from tropscheme.trop import sample_grid

v = Valuation.padic(3)
p = parse_polynomial("T1 + T2 + 3", Signature(2))
print(tropicalize_poly(p, v))

# %%
BT = base_change_to_T(monomial_blueprint([p], valuation=v))
box = [(0, 1, Fraction(1, 12))] * 2
pts = sample_grid(BT, box)
print(len(pts), "points;", "vertex present:", (Fraction(1, 3), Fraction(1, 3)) in pts)

# %%
# three readings of the same set: T-points, bend locus, bend relations as max equalities
rep = bend_vs_trop_points([p], v, box)
print(rep.to_json())
