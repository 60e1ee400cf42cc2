"""Equipartition over field modes: the classical energy has no limit.

Every field mode carries 2T of energy classically, so E grows linearly with
the number of modes kept.  The atom-field coupling only lowers the slope by
a finite amount.
"""
from auxtherm import FieldChannel, Medium, classical_energy, default_k_grid

medium = Medium(n_atoms=100, volume=1000)
T = 2.0
free = [FieldChannel(1.0, 1.0, 0.0)]
coupled = [FieldChannel(1.0, 1.0, 2.0)]

print("    M     E(gamma=0)    E(gamma=2)   (E - 3NT/2)/(2MT)")
for M in (0, 10, 100, 1000, 10000):
    grid = default_k_grid(medium, M)
    e0 = classical_energy(free, medium, 1 / T, grid)
    e1 = classical_energy(coupled, medium, 1 / T, grid)
    share = (e1 - 1.5 * medium.n_atoms * T) / (2 * M * T) if M else float("nan")
    print(f"{M:6d}  {e0:12.2f}  {e1:12.4f}   {share:.6f}")
