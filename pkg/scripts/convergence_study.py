"""Error and coefficient decay for both model problems over a range of truncations.

    python3 scripts/convergence_study.py --out results/convergence
"""
import argparse
from dataclasses import dataclass

from sixpg.cli import Sink, StudyConfig, run_convergence_study, write_study


@dataclass
class Experiment:
    truncations: tuple = (10, 25, 50, 100, 150)
    m_min: int = 20
    out: str = "results/convergence"


def run(exp: Experiment):
    for problem in ("model1", "model2"):
        cfg = StudyConfig(problem, exp.truncations, exp.m_min)
        rep = run_convergence_study(cfg)
        write_study(rep, Sink(f"{exp.out}/{problem}"))
        for M, err, status in rep.rows:
            fit = rep.fits.get(M, {})
            print(f"{problem} M={M:4d} max_error={err:.3e} exponent={fit.get('exponent', float('nan')):.3f} {status}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=Experiment.out)
    run(Experiment(out=ap.parse_args().out))
