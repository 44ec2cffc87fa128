# Scattering matrices and constant terms of Eisenstein series at cusps
