use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use realflow::charge::{level_form, positivity_check};
use realflow::flow::validate_flow;
use realflow::{catalog, CoxeterSystem, Exec, FlowAssignment, Region};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn system(name: &str) -> CoxeterSystem {
    CoxeterSystem::new(catalog::parse(name).unwrap())
}

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    for (name, radius) in [("A_tilde:2", 10), ("A_hyp:1", 8)] {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), &exec, |b, &exec| {
                b.iter(|| Region::enumerate_with(system(name), radius, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    let graphs: Vec<_> = ["E_hyp:8", "D_hyp:8", "A_hyp:7"].iter().map(|n| catalog::parse(n).unwrap()).collect();
    for (mode, exec) in MODES {
        g.bench_function(mode, |b| {
            b.iter(|| {
                for graph in &graphs {
                    black_box(graph.classify_with(exec).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn validate(c: &mut Criterion) {
    let mut g = c.benchmark_group("validate_flow");
    let reg = Region::enumerate(system("A_hyp:1"), 8).unwrap();
    let flow = FlowAssignment::bruhat(&reg);
    for (mode, exec) in MODES {
        g.bench_function(mode, |b| b.iter(|| validate_flow(&flow, exec).unwrap()));
    }
    g.finish();
}

fn positivity(c: &mut Criterion) {
    let mut g = c.benchmark_group("positivity");
    let reg = Region::enumerate(system("A_tilde:2"), 8).unwrap();
    let flow = FlowAssignment::bruhat(&reg);
    let qf = level_form(reg.system()).unwrap();
    for (mode, exec) in MODES {
        g.bench_function(mode, |b| b.iter(|| positivity_check(&flow, &qf, 5, 0, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, enumerate, classify, validate, positivity);
criterion_main!(benches);
