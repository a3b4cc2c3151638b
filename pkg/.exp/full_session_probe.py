import sys, time, math, json
sys.path.insert(0, '/root/pkg/src')
import numpy as np
from gapscope.session import Session, DEFAULT_CONFIG
from gapscope import analysis, model as M
from gapscope.imaging import FilterConfig

root = "/root/pkg/.exp/fullsession"
t0 = time.time()
s = Session(root, config=json.loads(json.dumps(DEFAULT_CONFIG)))
ds = s.dataset()
print(f"dataset: {len(ds.items)} pairs in {time.time()-t0:.0f}s hash={s.dataset_hash[:10]}", flush=True)

t0 = time.time()
m = s.train_variant("vanilla", verbose=False)
print(f"train vanilla: {time.time()-t0:.0f}s params={m.n_params()} final_loss={m.loss_curve[-1]:.3f}", flush=True)

# training sanity: holdout median sim error < 10% of diagonal
_, holdout = s.split_items()
errs = []
for it in holdout:
    r = M.forward(m, it.sim)
    errs.append(math.hypot(r.pose_pred.x - it.pose_gt.x, r.pose_pred.y - it.pose_gt.y))
med = float(np.median(errs))
diag = math.hypot(*ds.scene_sim.extent)
print(f"holdout median sim err: {med:.3f} m = {100*med/diag:.2f}% of diagonal (need <10%)", flush=True)

# filter probe: dataset has brightness -0.15 gap; filter +0.15 must strictly reduce mean real err
recs = s.records("vanilla")
mean_real = float(np.mean([r.err_real for r in recs]))
_, frecs = analysis.evaluate_with_filter(m, ds, FilterConfig(brightness=0.15, id="probe15"))
mean_filtered = float(np.mean([r.err_real for r in frecs]))
print(f"filter probe: unfiltered mean real err {mean_real:.3f} -> filtered {mean_filtered:.3f} (need strict decrease)", flush=True)

# occlusion endpoint latency
from fastapi.testclient import TestClient
from gapscope.api import create_app
client = TestClient(create_app(s))
lat = []
ids = [it.id for it in ds.items[:20]]
for iid in ids:
    t1 = time.time()
    r = client.get(f"/api/instance/{iid}/heatmap", params={"method": "occlusion", "channel": "rgb"})
    assert r.status_code == 200
    lat.append(time.time() - t1)
print(f"occlusion endpoint latency: median {np.median(lat)*1000:.0f} ms max {np.max(lat)*1000:.0f} ms (need median <1000 ms)", flush=True)

# regression-to-mean probe
train_items, _ = s.split_items()
cx = float(np.mean([it.pose_gt.x for it in train_items]))
cy = float(np.mean([it.pose_gt.y for it in train_items]))
blank = ds.items[0].sim.copy()
blank.rgb = np.zeros_like(blank.rgb); blank.depth = np.zeros_like(blank.depth)
p1 = M.forward(m, blank).pose_pred
p2 = M.forward(m, blank).pose_pred
print(f"blank-input pred ({p1.x:.2f},{p1.y:.2f}) centroid ({cx:.2f},{cy:.2f}) dist {math.hypot(p1.x-cx, p1.y-cy):.3f} m deterministic={p1 == p2}", flush=True)

# determinism: short config twice -> bit identical
short = M.TrainConfig(learning_rate=3e-3, epochs=3, batch_size=64, seed=1)
obs = [it.sim for it in train_items[:400]]
mc = s.model_config()
ma = M.train(obs, short, model_config=mc)
mb = M.train(obs, short, model_config=mc)
bit = all(np.array_equal(a, b) for a, b in zip(ma.weights, mb.weights))
print(f"bit-identical short trainings: {bit}", flush=True)
