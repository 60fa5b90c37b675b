"""Super quantum discord of two-qubit states under weak measurements."""
from .corr import (OptimizationSettings, classical_correlation, correlation_report, entropy,
                   minimize_over_bases, mutual_information, quantum_discord,
                   super_quantum_discord)
from .kernels import BACKEND
from .measure import STRONG, qubit_basis, weak_operators
from .states import (BlochNormalForm, DensityMatrix, bloch_normal_form, pure_schmidt,
                     random_density, werner)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "STRONG", "BlochNormalForm", "DensityMatrix", "OptimizationSettings",
    "bloch_normal_form", "classical_correlation", "correlation_report", "entropy",
    "minimize_over_bases", "mutual_information", "pure_schmidt", "quantum_discord",
    "qubit_basis", "random_density", "super_quantum_discord", "weak_operators", "werner",
]
