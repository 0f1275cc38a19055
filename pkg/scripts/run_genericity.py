"""How often strong equilibria involve mixing, with and without perturbation.

Perturbed random 5x5 games are solved with find_sne; perturbed random 2x2x2
games are searched for pure and fully mixed 2-strong equilibria.  The two
unperturbed exemplar games in games/ are run as single trials for contrast.

    python scripts/run_genericity.py --trials 200 --three-player-trials 20
"""
import argparse
from fractions import Fraction
from pathlib import Path

from strongnash.bench import PerturbSpec, run_genericity_experiment
from strongnash.gamefile import load_game

GAMES = Path(__file__).resolve().parent.parent / "games"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--three-player-trials", type=int, default=20)
    ap.add_argument("--sigma", type=Fraction, default=Fraction(1, 10))
    ap.add_argument("--grain", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    spec = PerturbSpec(args.sigma, args.grain, args.seed)

    two = run_genericity_experiment(2, (5, 5), args.trials, spec)
    print(f"5x5 perturbed: {two.trials} trials, {two.with_sne} with a strong equilibrium, "
          f"mixed fraction {two.mixed_fraction:.3f}, undetermined {two.undetermined}")
    if args.three_player_trials:
        three = run_genericity_experiment(3, (2, 2, 2), args.three_player_trials, spec)
        print(f"2x2x2 perturbed: {three.trials} trials, {three.with_sne} with a 2-strong equilibrium, "
              f"mixed fraction {three.mixed_fraction:.3f}, unverified candidates {three.unverified_candidates}")
    line3 = run_genericity_experiment(2, (3, 3), 1, None, base=load_game(GAMES / "line3x3.game"))
    three = run_genericity_experiment(3, (2, 2, 2), 1, None, base=load_game(GAMES / "three_player.game"))
    print(f"3x3 line game unperturbed: mixed fraction {line3.mixed_fraction:.0f}")
    print(f"three-player game unperturbed: mixed fraction {three.mixed_fraction:.0f}")


if __name__ == "__main__":
    main()
