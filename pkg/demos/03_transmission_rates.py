"""Transmission rates: memory lowers I_c per use but raises I_c per unit time.

For every separation lambda tau the input population p is re-optimised
against its own stationary cavity state. The coherent information grows
with tau (less memory), yet the rate I_c / (lambda tau) is largest for
short separations, i.e. memory parameters mu close to one.
"""
import numpy as np

from memchannel import (
    ChannelParams,
    QubitInput,
    memoryless_quantum_capacity,
    private_rate_report,
    rate_sweep,
    steady_state_coherent_information,
)

grid = np.geomspace(0.5, 40.0, 12)
for eta in (0.95, 0.7):
    _, p_inf = memoryless_quantum_capacity(eta)
    print(f"\neta = {eta}   (memoryless p_opt = {p_inf:.4f})")
    print("  lambda_tau    mu     p_opt    I_c     rate    I_c at fixed p")
    for pt in map(private_rate_report, rate_sweep(eta, 20.0, grid)):
        fixed = steady_state_coherent_information(QubitInput(p_inf), ChannelParams.from_eta(eta, pt.lambda_tau, 20.0))
        print(f"  {pt.lambda_tau:9.3f}  {pt.mu:.3f}  {pt.p_opt:.4f}  {pt.i_c_opt:.4f}  {pt.rate:.4f}  {fixed:+.4f}")

# The private classical rate is bounded below by the same numbers.
