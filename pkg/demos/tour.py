"""Walk through the eight minimal instances: axioms, quadratic algebras, simplicity."""
from nonassoc import (
    bfkts_to_quadratic,
    certify_simplicity,
    check_balanced,
    check_gjts,
    is_in_variety_V,
    minimal_instances,
    quadratic_to_bfkts,
)

for key, T in minimal_instances().items():
    balanced, form = check_balanced(T)
    A = bfkts_to_quadratic(T, T.base).algebra
    back = quadratic_to_bfkts(A)
    print(f"{key:12s} dim {T.dim}  gjts={bool(check_gjts(T))}  balanced={bool(balanced)}"
          f"  V={bool(is_in_variety_V(A))}  roundtrip={back == T}"
          f"  simplicity={certify_simplicity(T).verdict}")
