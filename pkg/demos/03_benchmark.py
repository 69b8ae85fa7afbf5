# %%
import numpy as np

from kemies import bench
from kemies.primitives import CANONICAL_SUITE_IDS

# %%
rows = bench.run_matrix(CANONICAL_SUITE_IDS, bench.ENCRYPT_PHASES, iterations=200)
print(bench.format_table(rows))

# %%
# Mean ms as a suites x phases array
means = np.array([[r.mean_ms for r in rows if r.suite_id == s] for s in CANONICAL_SUITE_IDS])
means.round(4)

# %%
# Share of the per-message sender cost spent on the KEK, per suite
sender = means[:, 1:]
(sender[:, 0] / sender.sum(axis=1)).round(3)

# %%
for f in bench.additivity_findings(rows) + bench.ordering_findings(rows):
    print(f"[{f.status}] {f.claim}: {f.detail}")

# %%
print(bench.report_csv(rows)[:300])
