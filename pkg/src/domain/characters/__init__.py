# Dirichlet characters: unit groups, characters, Gauss sums
