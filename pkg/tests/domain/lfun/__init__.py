# Tests for L-function evaluation
