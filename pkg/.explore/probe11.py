import time
import scldpc as s
from scldpc.pde import PdeConfig
from scldpc.thresholds import find_l_star, find_w_star, fsd_threshold, wd_threshold

t0 = time.time()

# c6 sanity under decoded-exact default
for name in ("C1(3,6,1,2,L=6)", "C1(3,6,2,1,L=6)", "C2(3,6,2,L=6)",
             "C1(2,4,3,L=6)", "C1(3,6,4,3,L=5)"):
    spec = s.parse_ensemble(name)
    cfg = PdeConfig(max_iters=30000)
    a = fsd_threshold(spec, config=cfg).epsilon
    b = wd_threshold(spec, spec.L + spec.w, config=cfg).epsilon
    print(f"c6 {name}: fsd {a:.7f} wd {b:.7f} diff {abs(a-b):.2e} "
          f"({time.time()-t0:.0f}s)", flush=True)

# c11: W*(C1(2,4,1)) with a serious cap
try:
    r = find_w_star(s.parse_ensemble("C1(2,4,1)"),
                    config=PdeConfig(max_iters=100000))
    print(f"c11 W* = {r.value} th = {r.threshold:.7f} hist tail "
          f"{r.history[-6:]} ({time.time()-t0:.0f}s)", flush=True)
except Exception as e:
    print(f"c11 failed: {e!r} ({time.time()-t0:.0f}s)", flush=True)

# c4: L* for m=3 with 2e6 cap
try:
    r = find_l_star(s.parse_ensemble("C1(3,6,3,2)"),
                    config=PdeConfig(max_iters=2_000_000))
    print(f"c4 m=3 L* = {r.value} th = {r.threshold:.7f} hist "
          f"{[(p, round(t, 7)) for p, t in r.history]} "
          f"({time.time()-t0:.0f}s)", flush=True)
except Exception as e:
    print(f"c4 m=3 failed: {e!r} ({time.time()-t0:.0f}s)", flush=True)
