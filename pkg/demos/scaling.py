# %% [markdown]
# # How the pipeline scales with genus
#
# Time one class per genus for p = 3 with g0 = 0, where every fixed point
# carries rotation 1 (so t must be a multiple of 3).  Each reduction step
# is a sparse rank-2 update and the number of steps equals g here, so the
# growth is gentle.

# %%
import time

from primeform import normal_form

rows = []
for g in (10, 25, 49, 100, 151):
    t = g + 2                      # 2g = 2(t - 2) when p = 3 and g0 = 0
    n = (1,) * t
    start = time.perf_counter()
    res = normal_form(3, n, 0)
    rows.append((g, time.perf_counter() - start, res.M_CAN.max_abs(), len(res.steps)))

print(f"{'g':>5} {'seconds':>8} {'max|entry|':>10} {'steps':>6}")
for g, dt, big, steps in rows:
    print(f"{g:>5} {dt:>8.2f} {big:>10} {steps:>6}")
