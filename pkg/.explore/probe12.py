import time
import scldpc as s
from scldpc.pde import PdeConfig
from scldpc.thresholds import fsd_threshold, wd_threshold

t0 = time.time()

# c11: threshold vs W for C1(2,4,1), large cap, fine tol
spec = s.parse_ensemble("C1(2,4,1)")
hint = None
prev = None
for W in list(range(24, 42)):
    r = wd_threshold(spec, W, tol=1e-7, config=PdeConfig(max_iters=400000),
                     hint=hint)
    hint = (r.bracket_lo, r.bracket_hi)
    d = "" if prev is None else f" d={r.epsilon - prev:+.7f}"
    prev = r.epsilon
    print(f"c11 W={W}: {r.epsilon:.7f}{d} ({time.time()-t0:.0f}s)", flush=True)

# c4 m=3: fine-tol threshold vs L around the plateau
hint = None
prev = None
for L in range(8, 16):
    r = fsd_threshold(s.parse_ensemble(f"C1(3,6,3,2,L={L})"), tol=1e-7,
                      config=PdeConfig(max_iters=5_000_000), hint=hint)
    hint = (r.bracket_lo, r.bracket_hi)
    d = "" if prev is None else f" d={r.epsilon - prev:+.7f}"
    prev = r.epsilon
    print(f"c4 L={L}: {r.epsilon:.7f}{d} ({time.time()-t0:.0f}s)", flush=True)
