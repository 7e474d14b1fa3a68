"""
Nested triangles and their ramification forest
==============================================

A big triangle ABC encloses three small triangles DEF, GIH and JKL.  The
edges appear at scales 1 and 2, the big triangle is filled at 3 and the
small ones at 4, 5 and 6.
"""

from cophenet import datasets
from cophenet.forest import auto_seed, build_forest, export_newick
from cophenet.homology import compute_persistence

K = datasets.triangle_complex()
print(K, "critical values:", K.critical_values)

# The H_1 barcode: four loops.  ABC dies first since filling the big
# triangle makes it a sum of the three small loops.
for p in compute_persistence(K, 1).in_dim(1):
    print(p.id, p.birth, p.death)

# Rank of all four classes together, scale by scale.
fm = datasets.triangle_matroid()
X = ("ABC", "DEF", "GIH", "JKL")
for eps in (2, 3, 4, 5, 6):
    print(f"eps={eps}: rank {fm.rank(eps, X)}")

# At eps=3 the four classes are dependent while any three are independent,
# so X is irreducible there and seeds a tree.
seeds = auto_seed(fm)
print("seeds:", seeds)
print(export_newick(build_forest(fm, seeds)), end="")
