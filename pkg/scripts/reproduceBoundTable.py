# Module imports
from mixed_abelian_cayley.bounds import DegreeSpec, mac_bound, mac_bound_improved, moore_count_oracle
from mixed_abelian_cayley.constants import MultinomialConvention

# one involution and two directed generators of order 4 at diameter 7
spec = DegreeSpec(k=7, r_alpha=1, z_ord={3: 2})
coarse = spec.coarsened()

rows = {
    "M_AC": mac_bound(coarse.r_alpha, coarse.r_omega, coarse.z_omega, coarse.k),
    "improved (exact)": mac_bound_improved(spec, MultinomialConvention.EXACT),
    "improved (published)": mac_bound_improved(spec, MultinomialConvention.PUBLISHED),
    "counting oracle": moore_count_oracle(spec),
}

print(spec)
for name, value in rows.items():
    print(f"    {name:20s}: {value}")
