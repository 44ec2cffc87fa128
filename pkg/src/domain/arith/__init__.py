# Exact integer and multiplicative-function arithmetic
