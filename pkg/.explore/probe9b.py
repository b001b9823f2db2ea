import time
import scldpc as s
from scldpc.pde import PdeConfig
from scldpc.thresholds import wd_threshold

cfg = PdeConfig(max_iters=200000)
for p in (1, 3):
    for m in (4, 5, 6, 7):
        spec = s.parse_ensemble(f"C1(3,6,{m},{p},L=50)")
        hint = None
        t0 = time.time()
        for W in (3, 4, 5, 6, 8, 12, 20, 35):
            r = wd_threshold(spec, W, tol=1e-5, config=cfg, hint=hint)
            hint = (r.bracket_lo, r.bracket_hi)
            print(f"p={p} m={m} W={W}: {r.epsilon:.6f} ({time.time()-t0:.0f}s)", flush=True)
