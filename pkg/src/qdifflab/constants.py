"""Physical constants (CODATA 2018) and particle masses used across the package.

Values are pinned here rather than pulled from scipy.constants so that every
number entering a computation is visible in one place and cannot drift with a
library upgrade.
"""

# ---------------------------------------------------------------------------
# fundamental constants, SI
# ---------------------------------------------------------------------------

HBAR = 1.054571817e-34  # reduced Planck constant, J s (exact-derived)
K_B = 1.380649e-23      # Boltzmann constant, J/K (exact)
N_A = 6.02214076e23     # Avogadro constant, 1/mol (exact)

# ---------------------------------------------------------------------------
# particle masses, kg
# ---------------------------------------------------------------------------

ELECTRON_MASS = 9.1093837015e-31
MUON_MASS = 1.883531627e-28
HYDROGEN_MASS = 1.67262192369e-27   # proton
DEUTERIUM_MASS = 3.3435837724e-27   # deuteron
TRITIUM_MASS = 5.0073567446e-27     # triton

#: Isotope/particle lookup used by the command-line layer.
PARTICLE_MASSES = {
    "e": ELECTRON_MASS,
    "mu": MUON_MASS,
    "H": HYDROGEN_MASS,
    "D": DEUTERIUM_MASS,
    "T": TRITIUM_MASS,
}

# ---------------------------------------------------------------------------
# unit conversions
# ---------------------------------------------------------------------------

ANGSTROM = 1e-10          # m
KJ_PER_MOL = 1e3 / N_A    # J per particle
