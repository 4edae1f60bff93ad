#!/usr/bin/env python3
"""The lexicographic-prefix pattern in maximal Non-FC families.

Order the k-subsets of [n] by A < B iff min(A xor B) in A and take prefixes
[S_m].  Empirically, the first FC prefix with full universe marks the FC
threshold: [S_m] FC and [S_{m-1}] Non-FC pins FC(k,n) = m whenever the
pattern holds.  The scan returns both certificates as an evidence bundle.
"""

from fcfam import fc_value, lex_prefix, lex_scan, verify_certificate

print("== the scan at k = 4, n = 5 ==")
res = lex_scan(4, 5)
print("first FC prefix: m =", res.m)
print("prefix:", lex_prefix(5, 4, res.m).member_sets())
print("FC certificate verifies:", verify_certificate(res.prefix_fc).passed)
print("previous prefix Non-FC certificate verifies:",
      verify_certificate(res.prev_nonfc).passed)
print("agrees with fc_value:", fc_value(4, 5).value == res.m)

print("\n== the 3-set scans are forced by the closed form ==")
for n in (4, 5, 6):
    res = lex_scan(3, n)
    note = "" if res.prev_nonfc else "  (previous prefix is FC on its smaller universe)"
    print(f"lex_scan(3,{n}) = {res.m}{note}")
