# Riemann, Hurwitz and Dirichlet L-functions
