"""MDS codes from Fourier matrices and cyclic idempotents over exact fields."""
