"""The heat capacity is singular at the critical temperature.

At fixed T_s, C_V is proportional to tau^3 (4 f + tau f2).  The slope f2 grows
like (tau - alpha)^(-1/2), so C_V diverges as tau -> alpha from above, though
only very close to the edge does it overtake the T^3 growth.
"""
import math

from auxtherm import FieldChannel, Medium, heat_capacity_contrib
from auxtherm.quantum import f_curve, f_curve_slope

medium = Medium(n_atoms=1000, volume=1000)
alpha = 0.5
channel = FieldChannel(1.0, 1.0, math.sqrt(2 * alpha))
T_s = channel.T_char(medium)

print("  tau - alpha        f          f2            Cv")
for delta in (1.0, 0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6):
    tau = alpha + delta
    cv = heat_capacity_contrib(channel, medium, tau * T_s)
    print(f"{delta:12.1e}  {f_curve(alpha, tau):9.5f}  {f_curve_slope(alpha, tau):10.4f}  {cv:12.6e}")
