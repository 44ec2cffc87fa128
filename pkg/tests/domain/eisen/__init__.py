# Tests for Eisenstein series evaluation
