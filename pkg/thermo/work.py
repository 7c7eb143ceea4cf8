"""
Conditional work distributions (OTM) and two-measurement baselines (TTM).
"""

from typing import Literal

import numpy as np
from scipy.special import softmax

from linalg.core import herm_eig
from models.distribution import TtmDistribution, WorkAtom, WorkDistribution
from models.system import Direction, Endpoint, SystemSpec
from thermo.states import check_beta, conditional_spectrum
from utils.errors import BasisNotSupportedError


def conditional_works(spec: SystemSpec) -> np.ndarray:
    """W_i = <psi_i|U^dagger H_tau U|psi_i> - <psi_i|H0|psi_i>."""
    final = conditional_spectrum(spec, Endpoint.FINAL)
    initial = conditional_spectrum(spec, Endpoint.INITIAL)
    return final.values - initial.values


def work_distribution(spec: SystemSpec, direction: Direction) -> WorkDistribution:
    """
    Forward or backward conditional work distribution.

    Both directions share the work values atom-by-atom; only the weights
    differ (Boltzmann weights of G0 forward, of G_tau backward).

    Args:
        spec: Problem instance
        direction: FORWARD or BACKWARD

    Returns:
        Atomic distribution indexed by trajectory i
    """
    check_beta(spec.beta)
    works = conditional_works(spec)
    endpoint = Endpoint.INITIAL if direction == Direction.FORWARD else Endpoint.FINAL
    energies = conditional_spectrum(spec, endpoint).values
    probabilities = softmax(-spec.beta * energies)
    atoms = [
        WorkAtom(index=i, work=float(w), probability=float(p))
        for i, (w, p) in enumerate(zip(works, probabilities, strict=True))
    ]
    return WorkDistribution(direction=direction, atoms=atoms)


def ttm_distribution(
    spec: SystemSpec, final_observable: Literal["h_tau", "g_tau"] = "h_tau"
) -> TtmDistribution:
    """
    Joint distribution of a two-time measurement protocol.

    With final_observable="h_tau" the second measurement is H_tau (standard
    TTM baseline, eigenbasis of H0 only). With "g_tau" it is the conditional
    Hamiltonian, whose pointer states U|psi_i> make the joint distribution
    diagonal: the QND form of the one-time measurement scheme.
    """
    check_beta(spec.beta)
    initial = conditional_spectrum(spec, Endpoint.INITIAL)
    first_probs = softmax(-spec.beta * initial.values)

    if final_observable == "h_tau":
        if spec.has_custom_basis:
            raise BasisNotSupportedError("TTM baseline requires the eigenbasis of H0")
        final = herm_eig(spec.h_tau)
        final_values, final_states = final.eigenvalues, final.eigenvectors
    elif final_observable == "g_tau":
        cs = conditional_spectrum(spec, Endpoint.FINAL)
        final_values, final_states = cs.values, cs.states
    else:
        raise ValueError(f"Unknown final observable {final_observable!r}")

    # |<E'_j| U |E_i>|^2, rows i, columns j
    amplitudes = final_states.conj().T @ spec.u_evol @ initial.states
    transition = np.abs(amplitudes.T) ** 2
    joint = first_probs[:, np.newaxis] * transition
    return TtmDistribution(
        initial_energies=initial.values, final_energies=final_values, joint=joint
    )
