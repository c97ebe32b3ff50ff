# %% [markdown]
# # Seminorms on Q[T] seen from the line
# Restrict each seminorm to the monomials T1^e1 T2^e2 of T1 + T2 + 1 = 0
# (with T1 = T, T2 = -T - 1).  Only T-adic, (T+1)-adic and infinity-adic
# seminorms leave a mark; everything else collapses to the trivial point.

# %%
from fractions import Fraction

from tropscheme import berkovich as bk

r = Fraction(1, 2)
for w in bk.catalog(r):
    img = bk.line_trop_image(w, max_exp=3)
    print(f"{str(w):24s} trivial={img.trivial!s:5s} {img.formula}")

# %%
w = bk.FAdic(bk.line_poly("T"), r)
print(w(bk.line_poly("T^2") * bk.line_poly("T + 1")))  # T divides twice: r^2
print(bk.InfinityAdic(r)(bk.line_poly("T^3")))  # r^-3
