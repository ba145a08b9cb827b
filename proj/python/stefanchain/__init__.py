"""Similarity solutions of one-phase Stefan problems and their Cole-Hopf /
reciprocal / exponential-map images, with residual verification suites."""

from ._stefanchain import (
    BoundaryCurves,
    ChainError,
    ChainSample,
    ClosedFormSolution,
    KinkParams,
    PointState,
    SimilarityParams,
    __version__,
    boundary_curves,
    build_solution,
    chain_sample,
    fd_compare,
    fd_solve,
    kink_residual,
    reconstruct_w,
    reconstruct_z,
    solve_gamma,
    verify,
    verify_casimir,
    verify_convergence,
)

__all__ = [
    "BoundaryCurves",
    "ChainError",
    "ChainSample",
    "ClosedFormSolution",
    "KinkParams",
    "PointState",
    "SimilarityParams",
    "__version__",
    "boundary_curves",
    "build_solution",
    "chain_sample",
    "fd_compare",
    "fd_solve",
    "kink_residual",
    "reconstruct_w",
    "reconstruct_z",
    "solve_gamma",
    "verify",
    "verify_casimir",
    "verify_convergence",
]
