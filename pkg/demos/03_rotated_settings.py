# %% [markdown]
# Rotating the two settings of the central party to Q = (A - B)/sqrt2 and
# W = (A + B)/sqrt2 gives an Ardehali-type inequality. Its local maximum
# is computed over party settings, not over Pauli letters.

# %%
import math

from graphbell import ardehali_expression, classical_max_settings, family, spectrum, theorem1_operator

for m in (3, 4, 5):
    g = family("ST", m)
    a = ardehali_expression(g, 1, range(2, m + 1))
    t = theorem1_operator(g, 1, range(2, m + 1))
    local = classical_max_settings(a.expression).classical_max
    top = spectrum(a.pauli_form).max_eigenvalue
    print(f"m={m}: local {local}, quantum {top:.6f} = {top / math.sqrt(2):.0f}*sqrt2, "
          f"ratio {top / local:.4f} vs unrotated {t.violation}")

# %% with an even party count the rotated form wins; with an odd one the plain form does
