"""The F-type quadratic algebra as a scalar mutation of split Cayley, and its C^[9] isomorphism."""
from fractions import Fraction

from nonassoc import minimal_instances, scalar_mutation, split_cayley
from nonassoc.families import f_type_iso, f_type_quadratic

C = split_cayley()
T = minimal_instances()["f_type8"]
S = f_type_quadratic(T)
for alpha in (Fraction(1, 3), Fraction(-1, 3)):
    print(f"equals C^({alpha}):", S == scalar_mutation(C.algebra, alpha))
nu, check = f_type_iso(C, T, nus=(-3, 3))
print("isomorphism from C^[9]:", check, "with nu =", nu)
