# Regularization: Laurent data at s = 1, renormalized integrals, the regularizing kernel and its main terms
