"""Plot-ready tables: sample eigenfunctions and the decay of three coefficient families."""
import argparse
from dataclasses import dataclass

import numpy as np

from sixpg.cli import Sink, csv_text
from sixpg.discretization import get_discretization
from sixpg.expansion import beta_matrix, chi_coefficient, cosine_coefficient, fit_decay_exponent


@dataclass
class FigureConfig:
    M: int = 100
    samples: int = 801
    indices: tuple = (0, 1, 2, 3)
    out: str = "results/figures"


def run(cfg: FigureConfig):
    d = get_discretization(cfg.M)
    sink = Sink(cfg.out)
    x = np.linspace(-1, 1, cfg.samples)
    for kind in ("trial", "test"):
        for parity in ("even", "odd"):
            idx = [m for m in cfg.indices if parity == "even" or m > 0]
            cols = [d.basis.get(kind, parity, m)(x) for m in idx]
            sink.emit(f"{kind}_{parity}.csv",
                      csv_text(["x"] + [f"m{m}" for m in idx], zip(x, *cols)))
    lam = d.lam("even")
    k = d.constants
    fam = {
        "beta_5m_over_c": beta_matrix("even", cfg.M, "closed-form", d).entries[4] / k.c[1:],
        "chi7_over_s": np.array([chi_coefficient(7, m) for m in range(1, cfg.M + 1)]) / k.s[1:],
        "cs2_over_c": np.array([cosine_coefficient(2, m, lam=lam[m]) for m in range(1, cfg.M + 1)]) / k.c[1:],
    }
    for name, v in fam.items():
        fit = fit_decay_exponent(np.abs(v), 20)
        sink.emit(f"{name}.csv", csv_text(("m", "value"), zip(range(1, cfg.M + 1), v),
                                          (f"fit {fit.amplitude!r} * m^{fit.exponent!r} over m > 20",)))
        print(f"{name}: {fit.amplitude:.3g} m^{fit.exponent:.3f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=FigureConfig.out)
    run(FigureConfig(out=ap.parse_args().out))
