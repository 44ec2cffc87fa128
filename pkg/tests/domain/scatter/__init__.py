# Tests for scattering matrices and constant terms
