# Hyperbolic geometry: fundamental domains, test functions and quadrature
