"""Test-only entry points.

``valid_by_simulation`` is the direct validity check: assign the color, look
for a two-colored cycle through the edge, undo.  The public
``is_valid_color`` uses the critical-path criterion instead; the two must
always agree, and this module exists so tests can say so.
"""

from .coloring import _valid_by_simulation as valid_by_simulation

__all__ = ["valid_by_simulation"]
