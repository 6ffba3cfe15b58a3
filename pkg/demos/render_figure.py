#!/usr/bin/env python3
"""Write takagi.svg: the curve with the humps above 1/4 and 3/16 boxed."""

import pathlib
from fractions import Fraction

from takagi.cli import PlotSpec, render_svg

spec = PlotSpec(
    resolution=1024,
    highlights=(Fraction(1, 4), Fraction(3, 16)),
)
target = pathlib.Path(__file__).with_name("takagi.svg")
target.write_text(render_svg(spec), encoding="utf-8")
print(f"wrote {target} ({target.stat().st_size} bytes)")
print("each box is the bounding rectangle of a self-similar copy of the")
print("whole graph; open the file and zoom in to see the copies repeat.")
