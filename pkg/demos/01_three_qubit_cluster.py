# %% [markdown]
# Three-qubit linear cluster: build the vertex-neighborhood operator around
# the middle vertex, then compare its local maximum with its quantum value.

# %%
from graphbell import classical_max, family, graph_state_vector, expectation, theorem1_operator

g = family("LC", 3)
b = theorem1_operator(g, 2, {1, 3})
print(b.label, b.pauli_form)

# %% local maximum: every Pauli letter on every qubit becomes a +-1 variable
report = classical_max(b.pauli_form)
print("local max", report.classical_max)
print("first maximising assignment", report.to_dict()["argmax"])

# %% pinning Z letters to +1 shrinks the search and gives the same answer
pinned = classical_max(b.pauli_form, use_lemma1=True, graph=g)
print("with Z pinned", pinned.classical_max)

# %% the graph state reaches 4, twice the local bound
psi = graph_state_vector(g)
print("quantum value", round(expectation(psi, b.pauli_form), 12))
print("violation", b.violation)

# %% the same expression read as a three-party, two-setting correlation sum
print(b.layout.parties)
print(b.expression)
