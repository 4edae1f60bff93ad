#!/usr/bin/env python3
"""Tour of the set-family algebra: parsing, closures, fibers, lex order.

Families live over a ground set [n] with members stored as bit masks, so
all of the algebra below is a handful of integer operations.
"""

from fcfam import (
    Family,
    format_family,
    frequencies,
    lex_prefix,
    parse_family,
    restrict_fiber,
    union_closure,
    universe,
    uplus,
)
from fcfam.setfam import mask_elements, mask_from_elements

print("== parsing the family text format ==")
text = """
# two generators over [4]
n=4
1,2,3
1,2,4
"""
fam = parse_family(text)
print(fam)

print("\n== union closure ==")
gens = Family.from_sets(3, [[1, 2], [3]])
closed = union_closure(gens)
print(f"<{gens}> =", closed)
print("closure is idempotent:", union_closure(closed) == closed)

print("\n== the |+| product (all pairwise unions) ==")
a = Family.from_sets(3, [[1]])
b = Family.from_sets(3, [[2], [1, 3]])
print(f"{a} |+| {b} =", uplus(a, b))

print("\n== frequencies and the majority element ==")
table = frequencies(closed)
print("counts:", table.counts, "| some element in at least half the members:",
      table.frankl_element)

print("\n== fibers: slice a family by its part above [n] ==")
big = Family.from_sets(4, [[1, 2, 4], [2, 4], [1, 3]])
t = mask_from_elements([4], 4)
print("members whose tail is {4}, cut to [3]:", restrict_fiber(big, t, 3))

print("\n== lexicographic k-subset order ==")
print("first four 3-subsets of [4]:", lex_prefix(4, 3, 4).member_sets())
print("universe of that prefix:", mask_elements(universe(lex_prefix(4, 3, 4))))

print("\n== round trip through the text format ==")
print(format_family(closed), end="")
