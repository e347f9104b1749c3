"""N-factor complexity of the infinite Fibonacci word and of digital sequences."""

__version__ = "0.1.0"

from .closedform import digital_P, digital_P2, fib_P, fib_P1, fib_P2, fib_limit_coeff
from .complexity import (
    ComplexityCell,
    FactorSet,
    ScanPolicy,
    complexity_row,
    digital_scan_stabilize,
    enumerate_factors,
    enumerate_new_factors,
    shift_extrapolate,
)
from .sequences import FIBONACCI, BlockClass, DigitalSpec, FibonacciSpec, fib, phi

__all__ = [
    "BlockClass", "ComplexityCell", "DigitalSpec", "FIBONACCI", "FactorSet", "FibonacciSpec",
    "ScanPolicy", "complexity_row", "digital_P", "digital_P2", "digital_scan_stabilize",
    "enumerate_factors", "enumerate_new_factors", "fib", "fib_P", "fib_P1", "fib_P2",
    "fib_limit_coeff", "phi", "shift_extrapolate",
]
