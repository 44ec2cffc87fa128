# Weight-zero Eisenstein series: Bessel functions, lattice sums, cusp series, Hecke and trace
