"""From a pair potential to field channels.

A short-range repulsive core plus a long-range attractive well, both Yukawa
terms.  Each pole becomes one Klein-Gordon channel with its own temperature
scale T_s and coupling alpha_s.
"""
import numpy as np

from auxtherm import Medium, PotentialModel, critical_temperature, extract_channels, v_real
from auxtherm.potentials import static_potential

model = PotentialModel.from_terms([(3.0, 2.0), (0.5, -0.05)])
channels = extract_channels(model)
medium = Medium(n_atoms=100, volume=1000)

# %% The channels reproduce the potential exactly in the static limit
r = np.linspace(0.2, 10, 6)
print("r        v(r)          from channels")
for ri, a, b in zip(r, v_real(model, r), static_potential(channels, r)):
    print(f"{ri:5.2f}  {a: .6e}  {b: .6e}")

# %% Channel table
print("\nchannel    mu     gamma     T_s     alpha    T_crit")
for ch in channels:
    print(f"{ch.label:>7} {ch.mu:6.2f} {ch.gamma:8.4f} {ch.T_char(medium):7.3f} "
          f"{ch.alpha(medium):8.4f} {ch.critical_temperature(medium):8.4f}")

crit = critical_temperature(channels, medium)
print(f"\nmodel valid above T = {crit.threshold:.4f} (max over channels); "
      f"lowest channel threshold {crit.lowest:.4f}")
