"""Random-phase Toeplitz systems, Strang-preconditioned CG, spectral diagnostics."""
