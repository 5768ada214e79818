"""Does a low-dimensional reconstruction preserve the attractor's shape?

Witness complexes answer with Betti numbers: beta_0 components and
beta_1 independent loops, swept over the fuzziness scale. The Lorenz
attractor has one component and two holes; a two-dimensional delay
reconstruction of its x coordinate recovers exactly that signature over
a wide scale band, even though two dimensions are far below what the
embedding theory asks for.
"""

import numpy as np

import delaykit as dk
from delaykit.timeseries import delay_matrix

spec = dk.FlowSpec("lorenz63", {}, dt=1 / 16, steps=13000, transient=1000)
x0 = dk.default_initial_state("lorenz63", spec.params, seed=1)
traj = dk.integrate_rk4(spec.field_function(), x0, spec.dt, spec.steps)[1000:]
series = dk.ScalarSeries(traj[:, 0], sample_interval=spec.dt)

tau = dk.tau_first_min_mi(series, 200).tau
recon = delay_matrix(series.values, 2, tau)
print(f"{len(series)} samples; 2D reconstruction at tau = {tau}\n")

for label, cloud in (("true 3D trajectory", traj),
                     (f"2D reconstruction (tau={tau})", recon)):
    landmarks = dk.select_landmarks(cloud, 200)
    print(f"{label}: diameter {dk.scaled_epsilon(1.0, cloud):.1f}")
    print("   xi      beta0  beta1  edges  triangles")
    for xi in (0.002, 0.005, 0.01, 0.02, 0.05, 0.3):
        eps = dk.scaled_epsilon(xi, cloud)
        snap = dk.build_complex(cloud, landmarks, eps)
        b0, b1 = dk.betti_numbers(snap)
        print(f"   {xi:<7} {b0:5d} {b1:6d} {snap.edges.shape[0]:6d} "
              f"{snap.triangles.shape[0]:10d}")
    print()

print("Edge lifespans across reconstruction dimensions m = 1..6:")
spans = dk.edge_lifespan_diagram(series, range(1, 7), tau=tau, xi=0.0054,
                                 ell=150)
lifetimes = spans[np.triu_indices(150, k=1)]
lifetimes = lifetimes[lifetimes > 0]
for span in range(1, 7):
    print(f"  lifespan {span}: {int(np.sum(lifetimes == span))} edges")
print("Short-lived edges are mostly projection artifacts of m=1; the")
print("long-lived ones form the core that keeps the homology stable.")
