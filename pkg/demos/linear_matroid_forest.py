"""
Coordinate zeroing in Q^4
=========================

Four vectors lose one leading coordinate per unit of scale.  The set of all
four is irreducible at 0 and splits twice before everything vanishes.
"""

from cophenet import datasets
from cophenet.forest import build_forest, export_dot, export_newick
from cophenet.matroid import format_cover, irreducible_cover

fm = datasets.s_epsilon_matroid()
A = datasets.S_EPSILON_SETS["A"]
for eps in fm.critical_values:
    print(f"eps={eps:g} rank(A)={fm.rank(eps, A)}")

# Once the rank drops, A is covered by smaller irreducible sets.
print("cover at 1:", format_cover(irreducible_cover(A, fm.oracle(1))))
print("cover at 2:", format_cover(irreducible_cover(datasets.S_EPSILON_SETS["A1"], fm.oracle(2))))

forest = build_forest(fm, [(A, 0)])
print(export_newick(forest), end="")

# In DOT the pair {x2, x3} is a single node with two parents.
print(export_dot(forest), end="")
