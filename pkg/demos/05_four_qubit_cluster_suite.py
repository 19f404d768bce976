# %% [markdown]
# Eight two-setting inequalities for the four-qubit linear cluster state.
# Each has a doubly degenerate maximum; any two together single out the
# cluster state, and the four listed ones give a fidelity witness.

# %%
import itertools

import numpy as np

from graphbell import StateVector, classical_max, expectation, family, fidelity_bound, graph_state_vector, lc4_set, spectrum
from graphbell.dense import psd_check, top_state

members = lc4_set()
psi = graph_state_vector(family("LC", 4))
for b in members:
    sp = spectrum(b.pauli_form)
    print(b.label, b.pauli_form, "| local", classical_max(b.pauli_form).classical_max,
          "| top", round(sp.max_eigenvalue, 9), "x", sp.multiplicity)

# %% pairwise sums: unique top eigenvector, equal to the cluster state
fids = [top_state(spectrum(a.pauli_form + b.pauli_form)).fidelity(psi) for a, b in itertools.combinations(members, 2)]
print(len(fids), "pairs, min fidelity", min(fids))

# %% 16|C><C| - (B1 + B2 + B3 + B4) is positive semidefinite ...
four = sum((b.pauli_form for b in members[1:4]), members[0].pauli_form)
print(psd_check(four, 16, psi))

# %% ... so the summed expectation / 16 lower-bounds the fidelity of any state
rng = np.random.default_rng(1)
for _ in range(5):
    s = StateVector.normalized(4, rng.normal(size=16) + 1j * rng.normal(size=16))
    print(f"bound {fidelity_bound(expectation(s, four)):+.4f} <= fidelity {s.fidelity(psi):.4f}")
