# Module imports
from mixed_abelian_cayley.search import OptimalSearch, SearchSpec

profiles = (
    SearchSpec(r_alpha=1, r_omega=2, z_omega=0, k=2),
    SearchSpec(r_alpha=1, r_omega=1, z_omega=1, k=2),
    SearchSpec(r_alpha=0, r_omega=2, z_omega=0, k=2),
)
jobs = 1

for spec in profiles:
    search = OptimalSearch(spec, all_witnesses=True, jobs=jobs)
    search.run()
    print("\n".join(search.write_search_report()))
