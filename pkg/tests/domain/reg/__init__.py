# Tests for Laurent data, renormalization, the regularizing kernel and its main terms
