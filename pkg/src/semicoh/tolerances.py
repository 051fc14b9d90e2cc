"""Single source of truth for every numerical tolerance used by the library."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ToleranceConfig:
    # structural checks (scaled by matrix dimension where noted)
    hermitian: float = 1e-12      # ||M - M^dag||_F <= hermitian * dim
    unitary: float = 1e-12        # ||M^dag M - 1||_F <= unitary * dim
    involution: float = 1e-12     # ||a^2 - 1||_F for dichotomic observables
    state_norm: float = 1e-12     # | ||psi|| - 1 | for normalized states
    trace: float = 1e-12          # | Tr(rho) - 1 |

    # spectral operations
    eig_residual: float = 1e-10   # reconstruction residual, relative to ||H||_F
    logm_roundtrip: float = 1e-9  # expm(logm(M)) residual, relative to ||M||_F
    branch_cut: float = 1e-10     # eigenvalue distance to the closed negative axis
    cond_limit: float = 1e8       # eigenvector condition number cutoff for logm

    # classification / sampling
    exact_zero: float = 1e-13     # below this an error sequence counts as exactly zero
    zero_branch: float = 1e-14    # sampled branch norm below this is a pathology
    zero_state: float = 1e-14     # state norms below this are rejected
    zero_success: float = 1e-14   # post-selection probabilities below this are rejected
    absorption: float = 1e-10     # default walk absorption fidelity margin
    degenerate_gap: float = 1e-10 # distinctness threshold for spectral gaps


TOL = ToleranceConfig()
