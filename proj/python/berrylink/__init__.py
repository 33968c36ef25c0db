"""Berry connections, topological invariants, SO(4) spherical harmonics and
magnetic spectra on S^2/S^3 (C++ core with pybind11 bindings)."""

from ._core import (  # noqa: F401
    __version__,
    bridge_deviation,
    chern_number,
    chern_simons,
    connection_analytic,
    curvature_hopf,
    eigenvalue_lambda,
    eval_map_s2,
    eval_map_s3,
    harmonic,
    harmonic_eval,
    linking_number,
    pontrjagin_index,
    radial_eigenvalues,
    residual,
    s3_embed,
    spectrum,
    stereographic_project,
    trace_loop,
)
