# %% [markdown]
# Conditioning on Z outcomes: a path 1-2-3 with two extra leaves on each
# vertex. After measuring Z on the leaves and substituting the outcomes,
# what remains is the three-qubit operator on 1, 2, 3.

# %%
from graphbell import Graph, condition_on_z, theorem1_operator
from graphbell.dense import expectation, graph_state_vector, project_z

g = Graph.from_edges(9, [(1, 2), (2, 3), (1, 4), (1, 7), (2, 5), (2, 8), (3, 6), (3, 9)])
b = theorem1_operator(g, 2, {1, 3})
print(b.layout.parties)
print(b.pauli_form)

# %% outcomes are +-1; negative outcomes flip the signs of the terms they touch
outcomes = {4: 1, 5: -1, 6: 1, 7: -1, 8: 1, 9: -1}
c = condition_on_z(b, outcomes)
print(c.pauli_form)

# %% the conditioned operator still reaches 4 on the post-measurement state
post = project_z(graph_state_vector(g), outcomes)
print(round(expectation(post, c.pauli_form), 12), "against local bound", c.classical_bound)
