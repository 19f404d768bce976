# %% [markdown]
# Products of separated blocks multiply both the local bound and the quantum
# value, so the violation grows exponentially with the number of blocks.

# %%
from graphbell import classical_max, composite, family, family_composite, theorem1_operator

g = family("LC", 8)
left = theorem1_operator(g, 2, {1, 3})
right = theorem1_operator(g, 6, {5, 7})
both = composite([left, right], g)
print(len(both.pauli_form), "terms; bound", both.classical_bound, "; quantum", both.quantum_value)
print("enumerated local max", classical_max(both.pauli_form).classical_max)

# %% blocks that touch each other are refused
lc5 = family("LC", 5)
try:
    composite([theorem1_operator(lc5, 2, {1, 3}), theorem1_operator(lc5, 4, {3, 5})], lc5)
except ValueError as e:
    print("refused:", e)

# %% violation per family and size, each local maximum enumerated exhaustively
for name in ("LC", "RC", "ST"):
    row = []
    for n in range(3, 13):
        b = family_composite(name, n)
        c = classical_max(b.pauli_form, workers=4).classical_max
        row.append(int(b.quantum_value // c))
    print(name, row)

# %% a greedy block packing works for any graph, e.g. a 4x4 lattice
from graphbell import greedy_composite, select_blocks

grid = family("GRID", 4, 4)
print(select_blocks(grid), greedy_composite(grid).violation)
