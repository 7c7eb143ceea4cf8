"""
Built-in problem instances and noise presets.
"""

import numpy as np

from linalg.core import kron, mat_fn_hermitian
from models.circuit import NoiseModel
from models.system import SystemSpec

BENCHMARK_PRESET = "paper-2qubit"

_I = np.eye(2, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

NOISE_PRESETS: dict[str, NoiseModel] = {
    "ibm-like": NoiseModel(depol_1q=3e-4, depol_ctrl=1e-2, readout_p01=3e-2, readout_p10=1.5e-2),
    "none": NoiseModel(),
}


def benchmark_preset(
    omega: float = 2.0,
    big_omega: float = 3.0,
    coupling: float = 1.0,
    tau: float = np.pi / 4,
    beta: float = 0.5,
) -> SystemSpec:
    """
    Two-qubit benchmark instance.

    H0 = omega (ZI + IZ), H_tau = J XX, U = exp(-i (big_omega tau / 2)(YI + IY)).

    Args:
        omega: Initial field strength
        big_omega: Drive strength
        coupling: Final XX coupling J
        tau: Protocol duration
        beta: Inverse temperature

    Returns:
        SystemSpec in the eigenbasis of H0
    """
    h0 = omega * (kron(_Z, _I) + kron(_I, _Z))
    h_tau = coupling * kron(_X, _X)
    drive = kron(_Y, _I) + kron(_I, _Y)
    u_evol = mat_fn_hermitian(drive, -1j * big_omega * tau / 2.0)
    return SystemSpec(h0=h0, h_tau=h_tau, u_evol=u_evol, beta=beta)
