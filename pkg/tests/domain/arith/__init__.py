# Arithmetic domain tests
