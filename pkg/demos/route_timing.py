"""
Why the determinant route exists
================================

Both expansion routes sum 2^(n-1) sign choices, but each permutation
term costs (n-1)! while each determinant term is polynomial -- and the
determinant terms batch into one stacked elimination.  The crossover
is early and the gap widens quickly.
"""
import time

from sixvertex_reflect import f_det, f_perm, random_generic

REPEATS = 7


def median_ms(fn, *args):
    times = []
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    times.sort()
    return 1e3 * times[len(times) // 2]


print(f"{'n':>3} {'perm ms':>10} {'det ms':>10} {'ratio':>7}")
for n in range(2, 8):
    params = random_generic(n, seed=n)
    tp = median_ms(f_perm, params, 1)
    td = median_ms(f_det, params, 1)
    print(f"{n:>3} {tp:>10.3f} {td:>10.3f} {tp / td:>7.1f}")

# the determinant route alone carries on comfortably
for n in (8, 9, 10):
    params = random_generic(n, seed=n)
    td = median_ms(f_det, params, 1)
    print(f"{n:>3} {'-':>10} {td:>10.3f}")
