use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use homoglab::analysis::analyze;
use homoglab::canon::{canonical_code, enumerate_graphs};
use homoglab::homogeneity::decide_hh_conditions;
use homoglab::presentation::{check_extension_pairs, spanning_rado};
use homoglab::verify::random_graph;
use homoglab::{decide_xy, Family, MorphismKind, Presentation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn canon(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let graphs: Vec<_> = (0..32).map(|_| random_graph(&mut rng, 10)).collect();
    c.bench_function("canonical_code/random<=10", |b| {
        b.iter(|| graphs.iter().map(|g| canonical_code(g).unwrap()).count())
    });
    let mut group = c.benchmark_group("enumerate_graphs");
    group.sample_size(10);
    for n in [6, 7] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| enumerate_graphs(n).unwrap().len()));
    }
    group.finish();
}

fn deciders(c: &mut Criterion) {
    let rs3 = Presentation::new(Family::Rs(3)).unwrap().truncate(9);
    let path = Presentation::parse("two_way_path").unwrap().truncate(8);
    let mut group = c.benchmark_group("hh");
    group.sample_size(10);
    for (name, g) in [("rs3_9", &rs3), ("path_8", &path)] {
        group.bench_function(BenchmarkId::new("direct", name), |b| {
            b.iter(|| decide_xy(g, MorphismKind::H, MorphismKind::H).unwrap().verdict)
        });
        group.bench_function(BenchmarkId::new("conditions", name), |b| {
            b.iter(|| decide_hh_conditions(g, g.order()).unwrap().verdict)
        });
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let graphs: Vec<_> = (0..8).map(|_| random_graph(&mut rng, 40)).collect();
    c.bench_function("analyze/random<=40", |b| b.iter(|| graphs.iter().map(|g| analyze(g).star_number).sum::<usize>()));
}

fn presentations(c: &mut Criterion) {
    let rado = Presentation::new(Family::RadoBit).unwrap();
    let mut group = c.benchmark_group("presentation");
    group.sample_size(10);
    group.bench_function("extension_pairs/rado_bit", |b| {
        b.iter(|| check_extension_pairs(&rado, 3, 8, 1 << 16).unwrap().checked)
    });
    group.bench_function("spanning_rado/rado_bit/12", |b| b.iter(|| spanning_rado(&rado, 12, 1 << 16).unwrap().placed.len()));
    group.finish();
}

criterion_group!(benches, canon, deciders, structure, presentations);
criterion_main!(benches);
