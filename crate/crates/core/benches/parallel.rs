use cgauto::decide::{ball_shells, canonical_reps};
use cgauto::groups::{bs1n, free_group, heisenberg, GroupWord, Letter};
use cgauto::par::Parallelism;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("parallel", Parallelism::Parallel),
];

fn random_words(names: &[&str], count: usize, len: usize, seed: u64) -> Vec<GroupWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            GroupWord(
                (0..len)
                    .map(|_| Letter {
                        name: names[rng.gen_range(0..names.len())].to_string(),
                        inverse: rng.gen_bool(0.5),
                    })
                    .collect(),
            )
        })
        .collect()
}

fn balls(c: &mut Criterion) {
    let mut g = c.benchmark_group("ball_shells");
    g.sample_size(10);
    for (name, p, r) in [
        ("heisenberg", heisenberg(3).unwrap(), 6),
        ("free2", free_group(2).unwrap(), 7),
    ] {
        for (mode_name, mode) in MODES {
            g.bench_with_input(BenchmarkId::new(name, mode_name), &r, |b, &r| {
                b.iter(|| ball_shells(&p, r, mode).unwrap())
            });
        }
    }
    g.finish();
}

fn reps(c: &mut Criterion) {
    let mut g = c.benchmark_group("canonical_reps");
    g.sample_size(10);
    for (name, p) in [
        ("heisenberg", heisenberg(3).unwrap()),
        ("bs1n_2", bs1n(2).unwrap()),
    ] {
        let names = p.generator_names();
        let words = random_words(&names, 64, 100, 1);
        for (mode_name, mode) in MODES {
            g.bench_with_input(BenchmarkId::new(name, mode_name), &words, |b, w| {
                b.iter(|| canonical_reps(&p, w, mode).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, balls, reps);
criterion_main!(benches);
