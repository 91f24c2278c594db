"""Projective eigenvariety structure at the spectral radius of symmetric nonnegative tensors."""
