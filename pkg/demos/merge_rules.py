"""
Cophenetic distances under two merge rules
==========================================

With ``merge="rank"`` a pair merges as soon as its rank drops below two.
A class that dies alone then merges with every other class at once, and
the triangle example shows this breaks the ultrametric inequality.  The
default ``"projective"`` rule asks for proportional images instead.
"""

from cophenet import datasets
from cophenet.distance import UltrametricViolation, distance_matrix, single_linkage

fm = datasets.triangle_matroid()

D = distance_matrix(fm, 3)
print(D.to_csv(), end="")
for left, right, h in single_linkage(D):
    print(sorted(left), "+", sorted(right), "at", h)

try:
    distance_matrix(fm, 3, merge="rank")
except UltrametricViolation as e:
    print(e)
