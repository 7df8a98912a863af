use anchorset_core::realizability::nineteen_edge_hypergraph;
use anchorset_core::{
    degenerate_hypergraph, is_metric_hypergraph, line_metric, minimal_nonmetric_audit,
    random_rational_metric, reconstruct_line, Rational,
};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn realize(c: &mut Criterion) {
    let mut g = c.benchmark_group("realize");
    g.sample_size(10);
    let root = nineteen_edge_hypergraph();
    g.bench_function("19 edges on 6 vertices", |b| b.iter(|| is_metric_hypergraph(black_box(&root)).unwrap()));
    let h = degenerate_hypergraph(&random_rational_metric(6, 3)).unwrap();
    g.bench_function("random metric n=6", |b| b.iter(|| is_metric_hypergraph(black_box(&h)).unwrap()));
    g.bench_function("audit", |b| b.iter(|| minimal_nonmetric_audit().unwrap()));
    g.finish();
}

fn lines(c: &mut Criterion) {
    let coords: Vec<Rational> = (0..40i64).map(|i| Rational::new((i * 37 % 101).into(), 3.into())).collect();
    let d = line_metric(&coords).unwrap();
    c.bench_function("reconstruct n=40", |b| b.iter(|| reconstruct_line(black_box(&d)).unwrap()));
    let noisy = random_rational_metric(9, 1);
    c.bench_function("reconstruct non-collinear n=9", |b| b.iter(|| reconstruct_line(black_box(&noisy))));
}

criterion_group!(benches, realize, lines);
criterion_main!(benches);
