"""Largest cliques in random matchings grow like n^(1/r).

For r=2 the exact maxima are compared to sqrt(2n) (stacks, waves) and
2 sqrt(n/pi) (lines).  For r=3 the template method spans a blown-up
canonical clique.  Per-trial sizes go to CSV for plotting elsewhere.
"""

import math
import sys
import tempfile
from pathlib import Path

from ordmatch.random_matchings import expected_cliques, run_experiment

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 50
grid = [50, 100, 200, 400]
for p, target in (("AABB", lambda n: 2 * math.sqrt(n / math.pi)), ("ABBA", lambda n: math.sqrt(2 * n)), ("ABAB", lambda n: math.sqrt(2 * n))):
    rep = run_experiment(2, p, grid, trials, seed=1)
    row = "  ".join(f"n={n}: {rep.means[n]:.1f}/{target(n):.1f}" for n in grid)
    print(f"{p}: {row}  slope {rep.slope:.3f} CI [{rep.slope_ci[0]:.3f}, {rep.slope_ci[1]:.3f}]")

rep = run_experiment(3, "ABABAB", [1000, 10_000, 100_000], trials, seed=1, method="template")
print(f"r=3 template: means {rep.means}, slope {rep.slope:.3f}")

out = Path(tempfile.gettempdir()) / "ordmatch_r3_template.csv"
out.write_text(rep.to_csv())
print(f"per-trial sizes written to {out}")

print("\nExpected number of size-k cliques of a fixed collectable pattern at r=2, n=400:")
for k in (20, 28, 36):
    print(f"  k={k}: {float(expected_cliques(2, 400, k)):.3g}")
