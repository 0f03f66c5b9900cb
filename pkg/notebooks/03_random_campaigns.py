# # Seeded random campaigns
#
# Each trial draws from its own PCG64 stream keyed by (seed, trial), so
# results do not depend on the number of workers.

from interlace_majorize.harness import (
    GenSpec,
    campaign_ncm,
    campaign_nscm,
    generate_diffmaj_pair,
    generate_pair,
    search_diffmaj,
    trial_rng,
)

# ## Random pairs

spec = GenSpec(degree=3, max_degree=6, seed=1, equalize_sums=True)
pair = generate_pair(spec, trial_rng(1, 0))
print([str(x) for x in pair.lam])
print([str(x) for x in pair.mu])

# ## NCM: majorizing pairs pass the necessary condition

rep = campaign_ncm(GenSpec(degree=2, max_degree=10, seed=7, equalize_sums=True), 200)
print(rep.applicable, "majorizing pairs,", len(rep.counterexamples), "counterexamples")
rep.statistics

# ## Certificate against the tracker

rep = campaign_nscm(GenSpec(degree=2, max_degree=5, seed=3, equalize_sums=True), 10, grid_size=128)
rep.statistics

# ## Interior prefix equality

pair, k = generate_diffmaj_pair(GenSpec(degree=6, seed=4))
print("k =", k)
rep = search_diffmaj(GenSpec(degree=4, max_degree=8, seed=5), 50)
rep.statistics
