"""Memoryless limit: the channel is amplitude damping with retention eta.

When the cavity relaxes completely between uses, every qubit meets the
vacuum and the transit acts as an amplitude-damping channel with
eta = cos^2(lambda tau_p). Its quantum capacity is a one-dimensional
maximisation over the excited population p of a diagonal input.
"""
import numpy as np

from memchannel import ChannelParams, QubitInput, amplitude_damping_output, memoryless_quantum_capacity, single_use_output

# The Kraus form and the JC dilation with the cavity in |0> agree.
q = QubitInput(0.45, 0.2)
eta = 0.8
theta = ChannelParams.from_eta(eta, 1.0, 1.0).theta
print("lambda tau_p for eta = 0.8:", round(theta, 4))
print("Kraus vs dilation, max deviation:",
      np.abs(amplitude_damping_output(q, eta) - single_use_output(q, [1.0], theta)).max())

# Capacity curve. Below eta = 1/2 the channel cannot carry quantum information.
print("\n  eta      Q        p_opt")
for eta in np.linspace(0.5, 1.0, 11):
    Q, p_opt = memoryless_quantum_capacity(eta)
    print(f"  {eta:.2f}  {Q:.5f}  {p_opt:.4f}")
