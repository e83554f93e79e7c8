# Bohr radius toolkit
