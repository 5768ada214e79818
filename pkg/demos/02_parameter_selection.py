"""Pick reconstruction parameters three ways and compare.

A Lorenz 96 (K=22) trace is analyzed with the classical pipeline (delay
from the first minimum of the lagged mutual information, dimension from
false nearest neighbors) and with the information-storage sweep, which
asks directly: which (m, tau) reconstruction shares the most information
with the next observation?
"""


import delaykit as dk

spec = dk.FlowSpec("lorenz96", {"K": 22, "F": 5.0}, dt=1 / 64,
                   steps=20000, transient=10000)
series = dk.generate_flow_trace(
    spec, dk.default_initial_state("lorenz96", spec.params, seed=7))
print(f"Lorenz 96 K=22 trace: {len(series)} samples")

tau_mi = dk.tau_first_min_mi(series, 60).tau
m_fnn = dk.estimate_m_fnn(series, tau_mi).m
print(f"\nclassical heuristics: tau = {tau_mi} (first MI minimum), "
      f"m = {m_fnn} (false neighbors at 10%)")

choice = dk.atau_optimal_params(series, range(1, 9), range(1, 11), h=1, k=4)
print(f"information-storage optimum: (m, tau) = ({choice.m}, {choice.tau}) "
      f"storing {choice.score:.2f} bits about the next step")

grid = dk.atau_surface(series, [2, m_fnn], [1, tau_mi], h=1, k=4)
print("\n   cell        stored bits")
for m in (2, m_fnn):
    for tau in (1, tau_mi):
        print(f"   ({m:2d},{tau:3d})   {grid.value_at(m, tau):10.3f}")
print("\nThe low-dimensional short-delay cell holds more information about")
print("the immediate future than the classically embedded one, which is")
print("why the reduced-order forecaster in demo 03 wins.")
