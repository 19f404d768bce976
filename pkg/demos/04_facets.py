# %% [markdown]
# Facet test: collect the deterministic correlation vectors that saturate
# the bound and measure the dimension of their affine hull.

# %%
from graphbell import ardehali_pattern, chsh_pattern, facet_test, mermin_pattern, single_term_pattern

cases = [
    ("CHSH", chsh_pattern(), 2),
    ("two-party odd-B", mermin_pattern(2), 2),
    ("Mermin 3", mermin_pattern(3), 2),
    ("Mermin 4", mermin_pattern(4), 4),
    ("Mermin 5", mermin_pattern(5), 4),
    ("Ardehali 3", ardehali_pattern(3), 4),
    ("Ardehali 4", ardehali_pattern(4), 4),
    ("single correlator", single_term_pattern(2), 1),
]
for name, e, bound in cases:
    r = facet_test(e, bound)
    full = 2 ** e.parties - 1
    print(f"{name:18s} saturating {r.saturating_count:3d}  rank {r.affine_rank:2d}/{full:2d}  facet {r.is_facet}")

# %% a single correlator at its bound is one of the trivial facets of the polytope
