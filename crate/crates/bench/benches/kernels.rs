use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dp2_bench::{fermat, klein, point};
use dp2_core::covers::{CoverContext, Param};
use dp2_core::fforacle::SurfaceModP;
use dp2_core::geometry::{classify_point, count_all_bitangents, osculating_section, phi};

criterion_group!(benches, geometry, covers, finite_fields);
criterion_main!(benches);

fn geometry(c: &mut Criterion) {
    let s = fermat();
    let p = point(&s, [12, 15, 20, 481]);
    let q = point(&s, [12, -15, 20, 481]);
    c.bench_function("count_all_bitangents_fermat", |b| b.iter(|| count_all_bitangents(black_box(&s))));
    c.bench_function("classify_point", |b| b.iter(|| classify_point(&s, black_box(&p))));
    c.bench_function("osculating_section", |b| b.iter(|| osculating_section(&s, black_box(&p))));
    c.bench_function("phi", |b| b.iter(|| phi(&s, black_box(&p), black_box(&q))));
}

fn covers(c: &mut Criterion) {
    let ctx = CoverContext::search(klein(), None, 5).unwrap();
    let (a, b2, d) = (Param::new(1, 2).unwrap(), Param::new(3, -1).unwrap(), Param::new(2, 5).unwrap());
    c.bench_function("f1", |b| b.iter(|| ctx.f1(black_box(a))));
    c.bench_function("f2", |b| b.iter(|| ctx.f2(black_box(a), black_box(b2))));
    c.bench_function("f3", |b| b.iter(|| ctx.f3(black_box(d), black_box(a), black_box(b2))));
}

fn finite_fields(c: &mut Criterion) {
    let s = fermat();
    let mut g = c.benchmark_group("mod_p");
    g.sample_size(10);
    g.bench_function("enumerate_13", |b| b.iter(|| SurfaceModP::new(&s, black_box(13))));
    let m = SurfaceModP::new(&s, 11).unwrap();
    g.bench_function("phi_surjectivity_11", |b| b.iter(|| m.phi_surjectivity()));
    g.finish();
}
