"""Forgetfulness: cavity memory decays exponentially over idle intervals.

Two cavity states are left to relax through L idle intervals of length
tau. Their distance shrinks geometrically; a single photon against the
vacuum decays exactly as exp(-Gamma tau L).
"""
import math

from memchannel import ChannelParams, fock, forgetfulness_probe

params = ChannelParams.from_eta(0.8, lambda_tau=2.0, lambda_tau_d=20.0)

single = forgetfulness_probe(params, 20, initial_pair=(fock(1), fock(0)))
print(f"single photon: c = {single.c:.10f}, exp(Gamma tau) = {math.exp(params.gt):.10f}")

fit = forgetfulness_probe(params, 20, p=0.5)
print(f"vacuum vs steady state: c = {fit.c:.5f}, h = {fit.h:.5f}, r^2 = {fit.r_squared:.5f}")
for L, d in fit.distances[::4]:
    print(f"  L={L:2d}  d={d:.3e}")
