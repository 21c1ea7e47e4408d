use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mincodes::alpha::{alpha_brute, BruteGuard};
use mincodes::geometry::pg_points;
use mincodes::search::{canonical_form, m_table, Engine};
use mincodes::{FieldSpec, LinearCode, Matrix, Mode, PointSet, ProjectiveSpace, SearchConfig};

fn simplex(q: u32, k: usize) -> LinearCode {
    let f = FieldSpec::new(q).unwrap();
    let pts = pg_points(&f, k);
    let rows: Vec<Vec<u8>> = (0..k).map(|i| pts.iter().map(|p| p[i]).collect()).collect();
    LinearCode::from_matrix(Matrix::from_rows(&f, pts.len(), &rows).unwrap()).unwrap()
}

fn rank(c: &mut Criterion) {
    let code = simplex(3, 4);
    let g = code.generator().transpose();
    c.bench_function("rank 40x4 GF(3)", |b| b.iter(|| black_box(&g).rank()));
}

fn count_minimal(c: &mut Criterion) {
    let s2 = simplex(2, 5);
    let s4 = simplex(4, 3);
    c.bench_function("count_minimal simplex [31,5]_2", |b| b.iter(|| black_box(&s2).count_minimal()));
    c.bench_function("count_minimal simplex [21,3]_4", |b| b.iter(|| black_box(&s4).count_minimal()));
}

fn canonical(c: &mut Criterion) {
    let space = ProjectiveSpace::new(&FieldSpec::new(2).unwrap(), 5).unwrap();
    let set = PointSet::from_indices(space.num_points(), [1, 4, 6, 9, 13, 17, 22, 25, 30]);
    c.bench_function("canonical_form 9 points PG(4,2)", |b| {
        b.iter(|| canonical_form(&space, black_box(&set)).unwrap())
    });
}

fn table(c: &mut Criterion) {
    let subset = SearchConfig { engine: Engine::Subset, ..SearchConfig::default() };
    let canon = SearchConfig { engine: Engine::Canon, ..SearchConfig::default() };
    let mut g = c.benchmark_group("m_table q=2 n<=15 k<=4");
    g.sample_size(10);
    g.bench_function("subset", |b| b.iter(|| m_table(2, 15, 4, Mode::Min, &subset).unwrap()));
    g.bench_function("canon", |b| b.iter(|| m_table(2, 15, 4, Mode::Min, &canon).unwrap()));
    g.finish();
}

fn alpha(c: &mut Criterion) {
    let space = ProjectiveSpace::new(&FieldSpec::new(2).unwrap(), 4).unwrap();
    let mut g = c.benchmark_group("alpha brute");
    g.sample_size(10);
    g.bench_function("alpha_2(4,4)", |b| b.iter(|| alpha_brute(&space, 4, 1, BruteGuard::default()).unwrap()));
    g.finish();
}

criterion_group!(benches, rank, count_minimal, canonical, table, alpha);
criterion_main!(benches);
