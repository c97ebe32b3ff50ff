# %% [markdown]
# # Bend relations as derived inequalities
# In the idempotent, totally positive quotient every bend relation of
# T1 + T2 + 1 follows from the generating relations.  Each derivation is
# replayed by the checker and printed as a proof script.

# %%
from tropscheme import Valuation, apply_idem, apply_pos, base_change_to_T, monomial_blueprint, parse_polynomial
from tropscheme.entail import check_derivation, derive_bend_pair, search_leq
from tropscheme.blueprint import Relation
from tropscheme.poly import Signature
from tropscheme.trop import bend_relations

p = parse_polynomial("T1 + T2 + 1", Signature(2))
B = apply_pos(apply_idem(base_change_to_T(monomial_blueprint([p], valuation=Valuation.trivial()))))

# %%
for r in bend_relations([p], Valuation.trivial()):
    le, ge = derive_bend_pair(B, r)
    print(r, "|", len(le), "and", len(ge), "steps, checked:", check_derivation(B, le) and check_derivation(B, ge))

# %%
print(le.to_script())

# %%
# the same inequality found by bounded search instead of construction
r0 = bend_relations([p], Valuation.trivial())[-1]
d = search_leq(B, Relation(r0.full, r0.reduced), depth=4)
print(d.to_script() if d else "UNKNOWN")
