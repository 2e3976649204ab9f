use chern_gate::enumerate::enumerate_cases_with_workers;
use chern_gate::obstruction::{eliminate, DEFAULT_MAX_MODULUS};
use chern_gate::{reproduce, LemmaId};
use chern_gate_bench::{appendix_polynomials, constraint_system};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for id in [LemmaId::FanoQHomP4, LemmaId::HodgeClasses, LemmaId::HodgeLevel] {
        let sys = constraint_system(id);
        for workers in [1, 4] {
            group.bench_with_input(BenchmarkId::new(id.as_str(), workers), &workers, |b, &w| {
                b.iter(|| enumerate_cases_with_workers(black_box(&sys), w).unwrap())
            });
        }
    }
    group.finish();
}

fn elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("eliminate");
    for (label, p) in appendix_polynomials() {
        group.bench_function(label, |b| {
            b.iter(|| eliminate(black_box(&p), DEFAULT_MAX_MODULUS, None).unwrap())
        });
    }
    group.finish();
}

fn full_replay(c: &mut Criterion) {
    let mut group = c.benchmark_group("reproduce");
    group.sample_size(10);
    for id in LemmaId::ALL {
        group.bench_function(id.as_str(), |b| b.iter(|| reproduce(black_box(id)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, enumeration, elimination, full_replay);
criterion_main!(benches);
