"""Number formatting and the coefficient debug dump."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from bohr_shared.constants import SIGNIFICANT_DIGITS


def format_number(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Format a number at a fixed count of significant digits.

    Example:
        >>> format_number(0.1715728752538099)
        '0.171572875254'
    """
    text = f"{value:.{digits}g}"
    # "-0" and "0" print identically
    return "0" if text in ("-0", "0") else text


def debug_lines(coeffs: Sequence[complex]) -> list[str]:
    """Render coefficients one per line as ``n re im``."""
    return [
        f"{n} {format_number(c.real)} {format_number(c.imag)}"
        for n, c in enumerate(coeffs)
    ]


def parse_debug_lines(lines: Iterable[str]) -> list[complex]:
    """Parse ``n re im`` lines back into a coefficient list.

    Blank lines and lines starting with ``#`` are skipped. Indices must run
    0, 1, 2, ... without gaps.
    """
    coeffs: list[complex] = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"Invalid debug line '{line}'. Use: n re im")
        index = int(parts[0])
        if index != len(coeffs):
            raise ValueError(f"Expected coefficient index {len(coeffs)}, got {index}")
        coeffs.append(complex(float(parts[1]), float(parts[2])))
    return coeffs
