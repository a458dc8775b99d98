"""
Single-edge updates on a small citation graph
=============================================

We load a 15-node citation graph, compute all-pairs scores once, and then
apply one edge change of each kind.  After every change the incremental
result is compared with a full recomputation on the new graph.
"""
from pathlib import Path

import numpy as np

from dynrank import DenseStore, batch_simrank, read_edge_list
from dynrank.plan import plan_edge

DATA = Path(__file__).parent / "data"
NAMES = "abcdefghijklmnoprq"
C, K = 0.8, 10

g = read_edge_list(DATA / "citation.txt")
store = DenseStore(g, C, K, pruned=True)
print(f"n={g.n} m={g.m}")

# %%
# Insert between existing nodes
# -----------------------------
# ``i -> j`` gives ``j`` a second in-neighbour.  The score change is a
# rank-one Sylvester correction, and pruning touches only the pairs that can
# reach the changed row and column.

plan = store.apply_edge(8, 9, "+")
r = plan.rank_one
print(f"case={plan.case.value} lambda={r.lam:.4f}")
print("gamma:", {NAMES[x]: round(float(r.gamma[x]), 3) for x in np.flatnonzero(r.gamma)})
area = store.last_area
print("F1 =", sorted(NAMES[x] for x in area.F1), "F2 =", sorted(NAMES[x] for x in area.F2))
print(f"touched {area.aff:.0f} of {store.n ** 2} entries")

# %%
# New sink and new source
# -----------------------
# Node ``p`` (id 15) does not exist yet.  ``i -> p`` borders the matrix with
# one new row and column.  Fresh node ``r`` (id 16) then cites ``f``.

plan = plan_edge(store.graph, 8, 15, "+", store.columns, C, K)
print(f"case={plan.case.value} corner={plan.corner:.4f}")
store.apply_plan(plan)
plan = store.apply_edge(16, 5, "+")
print(f"case={plan.case.value}")

# %%
# Compare with recomputation
# --------------------------

ref = batch_simrank(store.graph.transition(), C, K)
print(f"max |incremental - batch| = {np.abs(store.s - ref).max():.2e}")
