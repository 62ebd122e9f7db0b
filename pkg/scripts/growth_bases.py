"""Print the per-vertex growth bases of the bounded-degree solvers for max degree 3..8."""

from domatic.combinatorics import branch_count_d, growth_bases, rand_base_r

print(f"{'maxdeg':>6} {'d':>6} {'r':>8} {'det base':>9} {'rand base':>9}")
for k in range(3, 9):
    det, rnd = growth_bases(k)
    print(f"{k:>6} {branch_count_d(k):>6} {str(rand_base_r(k)):>8} {det:>9} {rnd:>9}")
