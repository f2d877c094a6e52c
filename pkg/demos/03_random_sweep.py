# Round-trip many random circuits through the analysis.
import sys
import time

from fracident.config import RunConfig
from fracident.experiments import summarize, sweep

n = int(sys.argv[1]) if len(sys.argv) > 1 else 50
config = RunConfig(samples=n, seed=2024)

start = time.perf_counter()
rows = sweep(config)
elapsed = time.perf_counter() - start

print(summarize(rows))
worst = max(r["max_rel_error"] for r in rows if r["max_rel_error"] is not None)
print(f"worst relative parameter error over {n} draws: {float(worst):.2e}")
print(f"{elapsed / n:.3f} s per draw")

slowest = max(rows, key=lambda r: r["seconds"])
print("slowest draw:", {k: round(float(v), 4) for k, v in slowest["params"].as_dict().items()})
