"""Relaxation of the semi-discrete system to its steady state.

Starts from rest, applies a fixed forcing and reports the distance to the
steady solve at several times, with and without the backward-Euler startup.
"""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from sixpg.expansion import SpectralCoefficients
from sixpg.solver import SteadyProblem, assemble_semidiscrete, evolve, solve_steady


@dataclass
class RelaxConfig:
    M: int = 60
    bond: float = 256 * math.pi ** 4
    t_final: float = 0.01
    dt: float = 1e-5
    record_every: int = 100


def run(cfg: RelaxConfig):
    f = lambda x: 960 * math.pi ** 6 * np.cos(2 * math.pi * x)
    system = assemble_semidiscrete(cfg.M, cfg.bond, f, time_dependent=False)
    ref = solve_steady(SteadyProblem(-cfg.bond, lambda x: -f(x), cfg.M)).coefficients
    for startup in (2, 0):
        tr = evolve(system, SpectralCoefficients.zeros(cfg.M), cfg.t_final, cfg.dt,
                    startup_steps=startup, record_every=cfg.record_every)
        print(f"startup_steps={startup}")
        for t, s in zip(tr.times, tr.states):
            print(f"  t={t:.4e}  max|u - u_steady| = {np.max(np.abs(s.uc - ref.uc)):.3e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--M", type=int, default=RelaxConfig.M)
    ap.add_argument("--bond", type=float, default=RelaxConfig.bond)
    a = ap.parse_args()
    run(RelaxConfig(M=a.M, bond=a.bond))
