import time
import scldpc as s
from scldpc.thresholds import bisect_threshold
from scldpc.windowed import WdRunner, WindowConfig

t0 = time.time()
for m in (1, 2, 3, 4, 5, 6, 7):
    spec = s.parse_ensemble(f"C1(3,6,{m},3,L=50)")
    hint = None
    for W in (2, 3, 4, 5, 6, 8, 10):
        r = WdRunner(spec.base_matrix(), m,
                     WindowConfig(W=W, max_iters=60000, decoded_exact=True))
        res = bisect_threshold(lambda e: r.run(e).success, tol=1e-5, hint=hint)
        hint = (res.bracket_lo, res.bracket_hi)
        print(f"m={m} W={W}: {res.epsilon:.6f} ({time.time()-t0:.0f}s)", flush=True)
