# Thread pool for quadrature cells
from .executor import ParallelExecutor

__all__ = ['ParallelExecutor']
