use std::collections::{HashSet, VecDeque};

use realflow::arrangement::RegionReport;
use realflow::flow::{is_valid_flow, monodromy_reduce, validate_flow, DEFAULT_SEARCH_BUDGET};
use realflow::{catalog, CoxeterSystem, Exec, FlowAssignment, Region, WeylElt};

fn sys(name: &str) -> CoxeterSystem {
    CoxeterSystem::new(catalog::parse(name).unwrap())
}

fn ball(s: &CoxeterSystem, radius: usize) -> HashSet<WeylElt> {
    let mut seen = HashSet::from([s.identity()]);
    let mut queue = VecDeque::from([(s.identity(), 0)]);
    while let Some((w, d)) = queue.pop_front() {
        if d < radius {
            for i in s.generators() {
                let v = s.mul_gen(&w, i);
                if seen.insert(v.clone()) {
                    queue.push_back((v, d + 1));
                }
            }
        }
    }
    seen
}

#[test]
fn alcoves_are_the_cayley_ball() {
    for (name, radius) in [("A_tilde:2", 6), ("A_hyp:1", 5), ("A_tilde:2,1", 4), ("A_hyp:2", 4), ("K:3", 7)] {
        let reg = Region::enumerate(sys(name), radius).unwrap();
        let oracle = ball(reg.system(), radius);
        assert_eq!(reg.len(), oracle.len(), "{name}");
        assert!(reg.alcoves().iter().all(|w| oracle.contains(w)));
        // shortlex order: lengths never decrease
        assert!((1..reg.len()).all(|a| reg.length(a - 1) <= reg.length(a)));
    }
}

#[test]
fn walls_join_neighbours() {
    let reg = Region::enumerate(sys("A_hyp:1"), 4).unwrap();
    let s = reg.system();
    for w in reg.walls() {
        let longer = s.mul_gen(reg.alcove(w.base), w.gen);
        assert_eq!(s.length(&longer), reg.length(w.base) + 1);
        assert_eq!(w.other, reg.index_of(&longer));
        assert_eq!(reg.alcove(w.base).image_of_simple(w.gen), w.root);
        assert!(w.root.is_positive());
    }
    // each alcove has one wall per generator
    for a in 0..reg.len() {
        for i in s.generators() {
            assert!(reg.wall_id(a, i).is_some());
        }
    }
}

fn loop_free_small(names: impl IntoIterator<Item = String>) -> Vec<String> {
    names
        .into_iter()
        .filter(|n| {
            let g = catalog::parse(n).unwrap();
            g.rank() <= 4 && !g.has_loops()
        })
        .collect()
}

#[test]
fn bruhat_flow_is_real_on_small_graphs() {
    let mut names = loop_free_small(catalog::affine_table());
    names.extend(loop_free_small(catalog::hyperbolic_table().into_iter().map(|(_, n)| n.to_string())));
    assert!(names.len() >= 10);
    for name in names {
        let reg = Region::enumerate(sys(&name), 4).unwrap();
        let flow = FlowAssignment::bruhat(&reg);
        for r in validate_flow(&flow, Exec::Parallel).unwrap() {
            assert!(r.valid, "{name}: flat {} at {}", r.flat, r.base);
            // the coset minimum is the source and the longest element the sink
            assert_eq!((r.sources.as_slice(), r.sinks.as_slice()), (&[0][..], &[r.m][..]), "{name}");
        }
    }
}

#[test]
fn bruhat_loops_have_trivial_monodromy() {
    for name in ["A_tilde:2", "A_hyp:1"] {
        let reg = Region::enumerate(sys(name), 4).unwrap();
        let flow = FlowAssignment::bruhat(&reg);
        let cycles = reg.simple_cycles(8, Exec::Parallel);
        assert!(!cycles.is_empty());
        for p in &cycles {
            assert!(monodromy_reduce(&flow, p, DEFAULT_SEARCH_BUDGET).unwrap().is_empty(), "{name} {p:?}");
        }
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let name = "A_hyp:2";
    let a = Region::enumerate_with(sys(name), 4, Exec::Sequential).unwrap();
    let b = Region::enumerate_with(sys(name), 4, Exec::Parallel).unwrap();
    assert_eq!(a.alcoves(), b.alcoves());
    assert_eq!(a.walls(), b.walls());
    assert_eq!(a.flats(), b.flats());
    let fa = FlowAssignment::random(&a, 3);
    let fb = FlowAssignment::random(&b, 3);
    assert_eq!(validate_flow(&fa, Exec::Sequential).unwrap(), validate_flow(&fb, Exec::Parallel).unwrap());
    assert_eq!(a.simple_cycles(6, Exec::Sequential), b.simple_cycles(6, Exec::Parallel));
}

#[test]
fn report_round_trip() {
    let reg = Region::enumerate(sys("A_tilde:2"), 3).unwrap();
    let text = serde_json::to_string(&reg.report()).unwrap();
    let back: RegionReport = serde_json::from_str(&text).unwrap();
    let again = Region::from_report(&back).unwrap();
    assert_eq!(again.alcoves(), reg.alcoves());
    assert_eq!(back.alcoves.len(), 19);
}

#[test]
fn flow_entries_round_trip() {
    let reg = Region::enumerate(sys("A_hyp:1"), 3).unwrap();
    let flow = FlowAssignment::random(&reg, 11);
    let back = FlowAssignment::from_entries(&reg, &flow.to_entries()).unwrap();
    assert_eq!(is_valid_flow(&back, Exec::Sequential).unwrap(), is_valid_flow(&flow, Exec::Sequential).unwrap());
    assert!((0..reg.walls().len()).all(|k| back.direction(k) == flow.direction(k)));
}
