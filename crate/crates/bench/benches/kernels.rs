use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use shapeorbit::convex::circumball::enclosing_ball;
use shapeorbit::convex::generators::{
    make_ball_polygon, make_random_body, make_regular_simplex, make_reuleaux_triangle, make_segment,
};
use shapeorbit::hausdorff::{hausdorff_fans, Fan};
use shapeorbit::{check_all, d_sim, pseudometric, MetricOptions};

fn hausdorff(c: &mut Criterion) {
    let mut group = c.benchmark_group("hausdorff_fans");
    for m in [16usize, 256] {
        let a = Fan::new(&make_ball_polygon(m).unwrap()).unwrap();
        let b = Fan::new(&make_reuleaux_triangle(m).unwrap()).unwrap();
        let mut scratch = Fan::default();
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |bench, _| {
            bench.iter(|| {
                b.rotate_into(black_box(0.3), &mut scratch);
                hausdorff_fans(&a, &scratch).0
            })
        });
    }
    group.finish();
}

fn metric(c: &mut Criterion) {
    let opts = MetricOptions::default();
    let seg = make_segment();
    let ball = make_ball_polygon(256).unwrap();
    c.bench_function("metric/segment_vs_256gon", |b| {
        b.iter(|| pseudometric(black_box(&seg), black_box(&ball), &opts).unwrap().value)
    });
    let t = make_regular_simplex(2, 1.0).unwrap();
    let rt = make_reuleaux_triangle(256).unwrap();
    c.bench_function("metric/triangle_vs_reuleaux", |b| {
        b.iter(|| pseudometric(black_box(&t), black_box(&rt), &opts).unwrap().value)
    });
    let (k, l) = (make_random_body(1, 10).unwrap(), make_random_body(2, 10).unwrap());
    c.bench_function("metric/random_10gons", |b| {
        b.iter(|| pseudometric(black_box(&k), black_box(&l), &opts).unwrap().value)
    });
    c.bench_function("check_all/random_10gons", |b| {
        b.iter(|| check_all(black_box(&k), black_box(&l), &opts).unwrap().all_pass())
    });
}

fn sim(c: &mut Criterion) {
    let (k, l) = (make_random_body(3, 8).unwrap(), make_random_body(4, 8).unwrap());
    let mut group = c.benchmark_group("d_sim");
    group.sample_size(10);
    group.bench_function("random_8gons", |b| b.iter(|| d_sim(black_box(&k), black_box(&l), 1e-2).unwrap().value));
    group.finish();
}

fn circumball(c: &mut Criterion) {
    let pts = make_ball_polygon(1024).unwrap().core_points().to_vec();
    c.bench_function("enclosing_ball/1024", |b| b.iter(|| enclosing_ball(black_box(&pts), 0).radius));
}

criterion_group!(benches, hausdorff, metric, sim, circumball);
criterion_main!(benches);
