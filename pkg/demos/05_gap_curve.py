# The gap between the upper and lower bases on [2, p0/(p0-1)]
#
# Writes gap_curve.csv and gap_curve.svg to the current directory.
from mixnorm.cli import render_svg
from mixnorm.lab import gap_curve

g = gap_curve(10001)
print(f"max diff {g.max_diff:.6e} at x = {g.argmax:.6f}")
print(f"endpoint diffs {g.diff[0]:.1e}, {g.diff[-1]:.1e}")

with open("gap_curve.csv", "w") as fh:
    fh.write("x,upper,lower,diff\n")
    for row in g.rows():
        fh.write(",".join(format(v, ".17g") for v in row) + "\n")
with open("gap_curve.svg", "w") as fh:
    fh.write(render_svg(gap_curve(401)))
print("wrote gap_curve.csv, gap_curve.svg")
