use std::time::Duration;

use cayrep::autgroup::{aut_group, aut_group_with, Strategy};
use cayrep::cayley::{named_set, transposition_graph, NamedSet};
use cayrep::gbase::{are_conjugate_regular, g_base, ht_subgroup, Membership, RegSubgroup};
use cayrep::{Budget, CayleyGraph, IndexedGroup, Perm};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn build(s: &str) -> IndexedGroup {
    IndexedGroup::build(&s.parse().unwrap()).unwrap()
}

fn atlas(c: &mut Criterion) {
    c.bench_function("index psl2:11", |b| b.iter(|| build(black_box("psl2:11"))));
    let g = build("alt:6");
    c.bench_function("automorphisms alt:6", |b| b.iter(|| g.automorphisms().len()));
}

fn autgroup(c: &mut Criterion) {
    let budget = Budget::default();
    let a5 = build("alt:5");
    let inv = CayleyGraph::new(&a5, &named_set(&a5, NamedSet::Involutions)).unwrap();
    c.bench_function("aut alt:5 involutions d2 filter", |b| {
        b.iter(|| aut_group_with(&inv, Strategy::SimpleD2Filter, &budget).unwrap())
    });
    c.bench_function("aut alt:5 involutions refinement", |b| {
        b.iter(|| aut_group_with(&inv, Strategy::RefinementBacktrack, &budget).unwrap())
    });
    let s5 = build("sym:5");
    let odd = CayleyGraph::new(&s5, &named_set(&s5, NamedSet::Odd)).unwrap();
    c.bench_function("aut sym:5 odd wreath", |b| b.iter(|| aut_group(&odd, &budget).unwrap()));
}

fn gbase(c: &mut Criterion) {
    let budget = Budget::default();
    let s5 = build("sym:5");
    let gamma = transposition_graph(&s5).unwrap();
    c.bench_function("g_base sym:5 transpositions", |b| b.iter(|| g_base(&gamma, &budget).unwrap()));

    let s8 = build("sym:8");
    let x = s8.index_of(&Perm::parse("(1 2)", 8).unwrap()).unwrap();
    let t = s8.index_of(&Perm::parse("(1 2)(3 4)", 8).unwrap()).unwrap();
    let ht = ht_subgroup(&s8, t, x).unwrap();
    let gr = RegSubgroup::right_regular(&s8);
    let gamma8 = transposition_graph(&s8).unwrap();
    c.bench_function("d2 conjugacy scan sym:8", |b| {
        b.iter(|| are_conjugate_regular(&Membership::D2, &gamma8, &ht, &gr).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(5));
    targets = atlas, autgroup, gbase
}
criterion_main!(benches);
