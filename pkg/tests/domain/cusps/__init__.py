# Cusp domain tests
