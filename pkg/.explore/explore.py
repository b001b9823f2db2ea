import json, time, sys
import scldpc as s
from scldpc.pde import PdeConfig
from scldpc import thresholds as T

out = {}
def save():
    with open("/root/pkg/.explore/results.json", "w") as f:
        json.dump(out, f, indent=1)

def log(msg):
    print(msg, flush=True)

# A. W*(m) for C1(3,6,m,2), m=1..10, L=100
out["wstar_type2"] = {}
for m in range(1, 11):
    t0 = time.time()
    try:
        r = T.find_w_star(s.parse_ensemble(f"C1(3,6,{m},2)"))
        out["wstar_type2"][m] = {"W": r.value, "th": r.threshold,
                                 "hist": list(r.history)}
        log(f"A m={m}: W*={r.value} th={r.threshold:.7f} {time.time()-t0:.0f}s")
    except Exception as e:
        out["wstar_type2"][m] = {"error": str(e)}
        log(f"A m={m}: ERROR {e} {time.time()-t0:.0f}s")
    save()

# B. W* of C1(2,4,1)
t0 = time.time()
try:
    r = T.find_w_star(s.parse_ensemble("C1(2,4,1)"))
    out["wstar_24"] = {"W": r.value, "th": r.threshold, "hist": list(r.history)}
    log(f"B: W*={r.value} th={r.threshold:.7f} {time.time()-t0:.0f}s")
except Exception as e:
    out["wstar_24"] = {"error": str(e)}
    log(f"B: ERROR {e} {time.time()-t0:.0f}s")
save()

# C. L*(m) for m=1,3,6 with a large iteration budget
out["lstar"] = {}
for m, cap in [(1, 5_000_000), (3, 500_000), (6, 200_000)]:
    t0 = time.time()
    try:
        r = T.find_l_star(s.parse_ensemble(f"C1(3,6,{m},2)"),
                          config=PdeConfig(max_iters=cap))
        out["lstar"][m] = {"L": r.value, "th": r.threshold, "hist": list(r.history)}
        log(f"C m={m}: L*={r.value} th={r.threshold:.7f} {time.time()-t0:.0f}s")
    except Exception as e:
        out["lstar"][m] = {"error": str(e)}
        log(f"C m={m}: ERROR {e} {time.time()-t0:.0f}s")
    save()

# D. FSD curve points for the non-monotone check (L=50, modest cap)
out["fsd_curve"] = {}
hint = None
for m in (1, 5, 10):
    t0 = time.time()
    r = T.fsd_threshold(s.parse_ensemble(f"C1(3,6,{m},2,L=50)"), tol=1e-5,
                        config=PdeConfig(max_iters=60000))
    out["fsd_curve"][m] = r.epsilon
    log(f"D m={m}: {r.epsilon:.6f} {time.time()-t0:.0f}s")
    save()

# E. type-3 saturated WD value and FSD threshold, m=4..7
out["type3"] = {}
for m in (4, 5, 6, 7):
    t0 = time.time()
    row = {}
    try:
        r = T.find_w_star(s.parse_ensemble(f"C1(3,6,{m},3)"))
        row["wd_hat"] = r.threshold
        row["W"] = r.value
    except Exception as e:
        row["wd_err"] = str(e)
    r2 = T.fsd_threshold(s.parse_ensemble(f"C1(3,6,{m},3,L=50)"), tol=1e-5,
                         config=PdeConfig(max_iters=60000))
    row["fsd"] = r2.epsilon
    out["type3"][m] = row
    log(f"E m={m}: {row} {time.time()-t0:.0f}s")
    save()

log("done")
