"""Finite Abelian groups, their permutation representation, and circulants.

Every additive noise channel is the circulant of its noise pmf over some
Abelian group; this walk-through builds the two groups of order 4 and shows
how the choice of group changes the channel -- except for symmetric noise.
"""

import numpy as np

from channel_order import (
    additive_channel,
    circulant,
    cyclic_group,
    direct_product,
    group_convolve,
    permutation_matrix,
    symmetric_noise_pmf,
)

z4 = cyclic_group(4)
klein = direct_product(cyclic_group(2), cyclic_group(2))

print("Cayley table of Z/4Z:")
print(z4.cayley)
print("\nCayley table of the Klein four-group (every element self-inverse):")
print(klein.cayley)

print("\nPermutation matrix of adding 1 in Z/4Z (row vector v maps to v P):")
p1 = permutation_matrix(z4, 1)
print(p1)
v = np.array([10.0, 20.0, 30.0, 40.0])
print("v P_1 =", v @ p1, " (entry y picks up v[1 + y])")

print("\nA generic noise pmf gives different channels over the two groups:")
noise = np.array([0.55, 0.25, 0.15, 0.05])
print("over Z/4Z:\n", additive_channel(z4, noise).matrix)
print("over Klein:\n", additive_channel(klein, noise).matrix)

print("\nSymmetric noise is the exception: same matrix over every group.")
w = symmetric_noise_pmf(4, 0.3)
same = np.allclose(
    additive_channel(z4, w).matrix, additive_channel(klein, w).matrix
)
print("matrices equal:", same)

print("\nCirculants multiply by convolving their defining vectors:")
x, y = np.array([0.8, 0.1, 0.05, 0.05]), np.array([0.6, 0.2, 0.1, 0.1])
lhs = circulant(z4, x) @ circulant(z4, y)
rhs = circulant(z4, group_convolve(z4, x, y))
print("max deviation:", np.abs(lhs - rhs).max())
