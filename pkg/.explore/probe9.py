import json, time
import scldpc as s
from scldpc.pde import PdeConfig
from scldpc.thresholds import wd_threshold

out = {}
cfg = PdeConfig(max_iters=200000)
for m in (4, 5, 6, 7):
    spec = s.parse_ensemble(f"C1(3,6,{m},3,L=50)")
    row = {}
    hint = None
    t0 = time.time()
    for W in (3, 4, 5, 6, 8, 10, 14, 20, 30, 40, 52):
        r = wd_threshold(spec, W, tol=1e-5, config=cfg, hint=hint)
        hint = (r.bracket_lo, r.bracket_hi)
        row[W] = round(r.epsilon, 6)
        print(f"m={m} W={W}: {r.epsilon:.6f} ({time.time()-t0:.0f}s)", flush=True)
    out[m] = row
with open("/root/pkg/.explore/probe9.json", "w") as f:
    json.dump(out, f, indent=1)
