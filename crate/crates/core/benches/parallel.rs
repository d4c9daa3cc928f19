use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use halg_core::affinization::{AffineMode, Affinization};
use halg_core::conformal::quadratic_from_gd;
use halg_core::constructions::GDStructure;
use halg_core::par::{self, ExecMode};
use halg_core::random::Generator;
use halg_core::samples;

const MODES: [(&str, ExecMode); 2] = [
    ("parallel", ExecMode::Parallel),
    ("sequential", ExecMode::Sequential),
];

fn triple_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("triple_checks");
    let exam33 = samples::exam33_gd().unwrap();
    let lie = Generator::new(3).graded_lie().algebra;
    for (name, mode) in MODES {
        par::set_mode(mode);
        group.bench_function(BenchmarkId::new("gd_exam33", name), |b| {
            b.iter(|| exam33.check().unwrap())
        });
        group.bench_function(BenchmarkId::new("hom_lie_graded", name), |b| {
            b.iter(|| {
                halg_core::superalgebra::check_hom_lie_super(&lie, "bracket", "alpha").unwrap()
            })
        });
    }
    group.finish();
}

fn affine_window(c: &mut Criterion) {
    let mut group = c.benchmark_group("affine_window");
    group.sample_size(10);
    let aff = Affinization::new(&samples::exam32_gd().unwrap()).unwrap();
    for (name, mode) in MODES {
        par::set_mode(mode);
        for w in [2i64, 3] {
            group.bench_function(BenchmarkId::new(name, format!("-{w}..{w}")), |b| {
                b.iter(|| aff.check(&AffineMode::Window(-w..=w)))
            });
        }
    }
    group.finish();
}

fn random_batches(c: &mut Criterion) {
    let mut group = c.benchmark_group("random_batches");
    group.sample_size(10);
    let mut gen = Generator::new(0xbe4c);
    let batch: Vec<GDStructure> = (0..64)
        .map(|_| {
            let n = gen.dim_between(2, 3);
            gen.gd_candidate(n)
        })
        .collect();
    for (name, mode) in MODES {
        par::set_mode(mode);
        group.bench_function(BenchmarkId::new("gd_vs_conformal", name), |b| {
            b.iter(|| {
                par::map_indices(batch.len(), |i| {
                    let g = &batch[i];
                    g.check().unwrap().passed()
                        == quadratic_from_gd(g).unwrap().check_axioms().passed()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, triple_checks, affine_window, random_batches);
criterion_main!(benches);
