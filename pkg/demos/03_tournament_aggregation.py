"""Reducing a whole population to one sample, and checking it exactly.

Draws a population of annealed-but-noisy samples for a random fully
connected 12-qubit model, reduces it round by round with pairwise merging,
compares the survivor against the exhaustive ground-state oracle, and shows
the incremental variant that folds new batches into a running best sample.

Run: python3 demos/03_tournament_aggregation.py
"""

from mqc import (
    SamplePopulation,
    aggregate_incremental,
    complete_edges,
    exact_ground,
    gen_random_model,
    inject_noise,
    sample_sa,
    sqc_population,
    tournament_aggregate,
)


def main():
    model = gen_random_model(12, complete_edges(12), seed=7)
    pop = inject_noise(sample_sa(model, 64, seed=8), 0.1, seed=9)
    print(f"population: {len(pop)} noisy annealed samples on 12 qubits")
    print(f"best raw sample energy: {pop.best_energy:.4f}")

    fixed = sqc_population(model, pop)
    print(f"best after per-sample single-flip descent: {fixed.best_energy:.4f}")

    result = tournament_aggregate(model, pop)
    print(f"\ntournament rounds: {result.num_rounds}")
    for k, round_reports in enumerate(result.rounds):
        merged = [f"{r.energy_merged:.4f}" for r in round_reports]
        print(f"  round {k}: {len(round_reports)} merges -> energies {merged}")
    print(f"tournament survivor energy: {result.final_energy:.4f}")

    ground = exact_ground(model)
    print(f"exhaustive ground energy:   {ground.energy:.4f} "
          f"({ground.degeneracy} state(s))")
    gap = result.final_energy - ground.energy
    print(f"gap to ground: {gap:.2e}")

    # incremental variant: batches arrive over time, the running sample's
    # energy never goes back up
    print("\nincremental aggregation over 4 batches of 16:")
    prior = None
    for k in range(4):
        batch = SamplePopulation.from_spins(model, pop.spins[16 * k : 16 * (k + 1)])
        prior = aggregate_incremental(model, prior, batch)
        print(f"  after batch {k}: energy {model.energy(prior):.4f}")


if __name__ == "__main__":
    main()
