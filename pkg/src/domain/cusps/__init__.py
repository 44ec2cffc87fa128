# Cusp geometry of Gamma0(N)
