"""
Column updates without an n x n matrix
======================================

When only a few nodes matter, the column engine updates a single column
from sparse products.  Here we measure the peak allocation of one column
update as the graph grows, and time pruned dense updates against a full
recomputation.
"""
import time
import tracemalloc

import numpy as np

from dynrank import ColumnStore, DenseStore, batch_simrank, update_column
from dynrank.synth import preferential_attachment, random_updates

# %%
# Peak memory per column update
# -----------------------------
# Old columns are rebuilt on demand, so the only state is O(n K).

for n in (500, 1000, 2000, 4000):
    rng = np.random.default_rng(n)
    g = preferential_attachment(n, 5, rng=rng)
    i, j, op = random_updates(g, 1, delete_fraction=0.0, rng=rng)[0]
    store = ColumnStore(g, 0.6, 10, history="recompute")
    store.apply_edge(i, j, op)
    update_column(store.last_context, j)
    tracemalloc.start()
    update_column(store.last_context, j)
    peak = tracemalloc.get_traced_memory()[1]
    tracemalloc.stop()
    print(f"n={n:5d} peak={peak / 1024:7.0f} KiB  dense would be {8 * n * n / 2**20:6.0f} MiB")

# %%
# Pruned updates against recomputation
# ------------------------------------

rng = np.random.default_rng(0)
n = 1500
g = preferential_attachment(n, 5, rng=rng)
t0 = time.perf_counter()
s = batch_simrank(g.transition(), 0.6, 15)
t_batch = time.perf_counter() - t0
store = DenseStore(g, 0.6, 15, pruned=True, s=s)
times = []
for i, j, op in random_updates(g, 20, rng=rng):
    t0 = time.perf_counter()
    store.apply_edge(i, j, op)
    times.append(time.perf_counter() - t0)
print(f"batch {t_batch:.2f} s, update median {np.median(times) * 1e3:.1f} ms")
