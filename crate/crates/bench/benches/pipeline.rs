use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fintop::group::{best_oracle, DEFAULT_MAX_COSETS};
use fintop::pi1::VerifyLimits;
use fintop::pipeline::explicit_from_presentation;
use fintop::presentation::ReducedPresentation;
use fintop::zn::build_zn_quotient;
use fintop::{quotient_model, todd_coxeter, verify_pi1};
use fintop_bench::{presentation, FINITE_GROUPS};

fn reduced(text: &str) -> ReducedPresentation {
    let p = presentation(text);
    let oracle = best_oracle(&p, DEFAULT_MAX_COSETS).unwrap();
    ReducedPresentation::certify(p, oracle.as_ref()).unwrap()
}

fn stages(c: &mut Criterion) {
    let mut group = c.benchmark_group("stages");
    for &(name, text) in FINITE_GROUPS {
        let p = presentation(text);
        let rp = reduced(text);
        let model = quotient_model(&rp);
        group.bench_with_input(BenchmarkId::new("todd_coxeter", name), &p, |b, p| {
            b.iter(|| todd_coxeter(black_box(p), DEFAULT_MAX_COSETS).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("quotient_model", name), &rp, |b, rp| {
            b.iter(|| quotient_model(black_box(rp)))
        });
        group.bench_with_input(BenchmarkId::new("explicit", name), &p, |b, p| {
            b.iter(|| explicit_from_presentation(black_box(p), DEFAULT_MAX_COSETS).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("verify_pi1", name), &p, |b, p| {
            b.iter(|| verify_pi1(black_box(model.poset()), p, VerifyLimits::default()).unwrap())
        });
    }
    group.finish();
}

fn zn(c: &mut Criterion) {
    let mut group = c.benchmark_group("zn_quotient");
    for n in [2u64, 8, 32] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| build_zn_quotient(black_box(n)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, stages, zn);
criterion_main!(benches);
