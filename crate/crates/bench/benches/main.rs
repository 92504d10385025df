use annulate::annulus::ExchangeGraph;
use annulate::quaddiff::{QuadraticDifferential, Tolerances};
use annulate::quiver::ColoredQuiver;
use annulate::zigzag::{BraidWord, Flavor, Letter, Zigzag};
use annulate_bench::standard;
use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

fn bench_exchange_graph(c: &mut Criterion) {
    let ang = standard(4, 3, 2);
    c.bench_function("exchange_graph_depth3", |b| {
        b.iter(|| ExchangeGraph::explore(&ang, 3, false).unwrap().nodes.len())
    });
}

fn bench_mutation_class(c: &mut Criterion) {
    let ang = standard(4, 3, 2);
    let q = ColoredQuiver::of_angulation(&ang).unwrap();
    c.bench_function("mutation_class", |b| {
        b.iter(|| q.mutation_class(512).unwrap().len())
    });
}

fn bench_braid_relation(c: &mut Criterion) {
    let alg = Zigzag::new(4, 5, Flavor::R);
    let w = BraidWord::new(vec![
        Letter::Sigma(1, false),
        Letter::Sigma(2, false),
        Letter::Sigma(1, false),
        Letter::Rho(false),
        Letter::Sigma(3, true),
    ]);
    c.bench_function("apply_word_len5", |b| {
        b.iter(|| alg.apply_word(&w, 2).summand_multiset().len())
    });
}

fn bench_trace(c: &mut Criterion) {
    let phi = QuadraticDifferential::new(
        3,
        2,
        1,
        vec![
            Complex64::new(1.0, 0.0),
            1.1 * Complex64::from_polar(1.0, std::f64::consts::PI / 3.0),
        ],
        0.0,
    )
    .unwrap();
    let mut group = c.benchmark_group("quaddiff");
    group.sample_size(10);
    group.bench_function("trace_tilted_pair", |b| {
        b.iter(|| phi.trace(&Tolerances::default()).unwrap().strips.len())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_exchange_graph,
    bench_mutation_class,
    bench_braid_relation,
    bench_trace
);
criterion_main!(benches);
