"""
Drawing with the turtle interpreter
===================================

Programs are plain text; running them moves a turtle whose pen leaves
line segments behind.  This script defines a square procedure, calls it,
and saves the drawing as an SVG file next to this script.
"""

from pathlib import Path

from scanboard import Environment, run, segments_to_svg

env = Environment()

# A procedure definition draws nothing by itself; the body is stored and
# parsed when the procedure is first called.
program = """
to square
make "n 4
repeat (:n) [fd 30 rt 90]
end
"""
report = run(program, env)
print(f"after definition: {len(report.segments)} segments, "
      f"procedures known: {sorted(env.procedures)}")

# Calling it walks the turtle around the square: four strokes of 30,
# each followed by a quarter turn clockwise.
report = run("square", env)
print(f"after calling square: {len(report.segments)} segments")
for x0, y0, x1, y1 in report.segments:
    print(f"  ({x0:7.2f}, {y0:7.2f}) -> ({x1:7.2f}, {y1:7.2f})")
print(f"turtle back home at ({env.turtle.x:.2f}, {env.turtle.y:.2f}), "
      f"heading {env.turtle.heading:.2f}")

# Variables and printing share the same environment.
report = run("print :n * 3 + 2", env)
print(f"print :n * 3 + 2  ->  {report.printed[0]}")

# The segments render to a standalone SVG; the origin sits at the image
# center and y grows upward, as on the keyboard's drawing canvas.
out = Path(__file__).with_name("square.svg")
out.write_text(segments_to_svg(env.turtle.segments, 200, 200),
               encoding="utf-8")
print(f"wrote {out.name}")
