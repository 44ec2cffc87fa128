# Tests for fundamental domains and quadrature
