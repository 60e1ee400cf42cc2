"""The universal curve f(alpha, tau) and its slope.

Bose quantization replaces the divergent classical sum by a T^4 law times
f(alpha, tau), tau = T/T_s.  The curve starts at tau = alpha and saturates at
1.  Writes one CSV per alpha into ./fcurve_out for external plotting.
"""
import math
import os

import numpy as np

from auxtherm import cli
from auxtherm.quantum import f_curve

out = "fcurve_out"
for alpha in (1.0, 0.5, 0.1, 0.005):
    grid = np.geomspace(alpha * (1 + 1e-3), 20.0, 80)
    rows = cli.fcurve_rows(alpha, list(grid))
    cli.write_outputs(out, {f"fcurve_alpha_{alpha}.csv": cli.csv_text(["tau", "f", "f2"], rows)})
    f = np.array([r[1] for r in rows])
    print(f"alpha={alpha:<6} f(edge)={f[0]: .4f}  f(20)={f[-1]:.6f}  "
          f"min f={f.min(): .4f}  negative points={int((f <= 0).sum())}")

# %% At the edge the gap closes and f -> 1 - 5/(4 pi^2 alpha^2), which is
# negative for alpha < sqrt(5)/(2 pi) = 0.356
for alpha in (1.0, 0.5, 0.3, 0.1):
    edge = 1 - 5 / (4 * math.pi**2 * alpha**2)
    print(f"alpha={alpha}: f(alpha(1+1e-9)) = {f_curve(alpha, alpha * (1 + 1e-9)): .5f}  "
          f"edge limit = {edge: .5f}")
print(f"CSV files in {os.path.abspath(out)}")
