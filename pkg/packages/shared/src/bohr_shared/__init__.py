# Shared package for the Bohr radius toolkit
