use proptest::prelude::*;

use spatial_linking::aggregate::{Analyzer, CycleClass, Statistic};
use spatial_linking::diagram::{extract_link_diagram, gauss_diagram};
use spatial_linking::generators::random_embedding;
use spatial_linking::geometry::{generic_scene, PLEmbedding, Point3, Rational};
use spatial_linking::graph::{enumerate_cycles, enumerate_disjoint_pairs, VertexId};
use spatial_linking::invariants::{
    a2, conway_skein_oracle, diagram_linking_number, linking_number, triangle_disk_lk_oracle, DEFAULT_SKEIN_CUTOFF,
};

fn map_vertices(e: &PLEmbedding, f: impl Fn(&Point3) -> Point3) -> PLEmbedding {
    let n = e.n();
    PLEmbedding::rectilinear((1..=n).map(|v| f(e.vertex(VertexId::new(v, n).unwrap()))).collect()).unwrap()
}

fn all_lk(a: &Analyzer) -> Vec<i64> {
    let n = a.n();
    let mut out = Vec::new();
    for p in 3..=n / 2 {
        for q in p..=n - p {
            out.extend(a.linking_numbers(p, q).unwrap().into_iter().map(|x| x.1));
        }
    }
    out
}

fn all_a2(a: &Analyzer) -> Vec<i64> {
    (3..=a.n()).flat_map(|p| a.a2_values(p).unwrap().into_iter().map(|x| x.1)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn rescaling_changes_nothing(seed in 0u64..10_000, num in 1i64..50, den in 1i64..50) {
        let e = random_embedding(6, seed, 30).unwrap();
        let k = Rational::new(num.into(), den.into());
        let scaled = map_vertices(&e, |p| p.scale(&k));
        let (a, b) = (Analyzer::new(e).unwrap(), Analyzer::new(scaled).unwrap());
        prop_assert_eq!(a.scene().direction(), b.scene().direction());
        prop_assert_eq!(all_lk(&a), all_lk(&b));
        prop_assert_eq!(all_a2(&a), all_a2(&b));
    }

    #[test]
    fn mirror_negates_lk_and_keeps_a2(seed in 0u64..10_000) {
        let e = random_embedding(7, seed, 40).unwrap();
        let m = map_vertices(&e, |p| Point3::new(p.x.clone(), p.y.clone(), -p.z.clone()));
        let (a, b) = (Analyzer::new(e).unwrap(), Analyzer::new(m).unwrap());
        let neg: Vec<i64> = all_lk(&b).into_iter().map(|x| -x).collect();
        prop_assert_eq!(all_lk(&a), neg);
        prop_assert_eq!(all_a2(&a), all_a2(&b));
    }

    #[test]
    fn lk_symmetric_in_components(seed in 0u64..10_000) {
        let e = random_embedding(7, seed, 40).unwrap();
        let scene = generic_scene(&e, 64).unwrap();
        for pair in enumerate_disjoint_pairs(7, 3, 4).unwrap() {
            let ab = diagram_linking_number(&scene, &pair).unwrap();
            let ld = extract_link_diagram(&scene, &[pair.second.clone(), pair.first.clone()]).unwrap();
            prop_assert_eq!(linking_number(&ld).unwrap(), ab);
            let reversed = ld.code().reverse_component(0);
            prop_assert_eq!(linking_number(&reversed).unwrap(), -ab);
        }
    }

    #[test]
    fn triangle_disk_oracle_agrees(seed in 0u64..10_000) {
        let e = random_embedding(6, seed, 50).unwrap();
        let a = Analyzer::new(e.clone()).unwrap();
        for (pair, lk) in a.linking_numbers(3, 3).unwrap() {
            if let Ok(v) = triangle_disk_lk_oracle(&e, &pair) {
                prop_assert_eq!(v, lk);
            }
        }
    }

    #[test]
    fn skein_oracle_agrees_on_k6(seed in 0u64..10_000) {
        let a = Analyzer::new(random_embedding(6, seed, 60).unwrap()).unwrap();
        for p in 3..=6 {
            for (cycle, value) in a.a2_values(p).unwrap() {
                let ld = extract_link_diagram(a.scene(), std::slice::from_ref(&cycle)).unwrap();
                if let Some(poly) = conway_skein_oracle(&ld, DEFAULT_SKEIN_CUTOFF) {
                    prop_assert_eq!(poly.coefficient(0), 1);
                    prop_assert_eq!(poly.coefficient(2), value);
                }
            }
        }
        for (pair, value) in a.linking_numbers(3, 3).unwrap() {
            let ld = extract_link_diagram(a.scene(), &[pair.first.clone(), pair.second.clone()]).unwrap();
            let poly = conway_skein_oracle(&ld, DEFAULT_SKEIN_CUTOFF).unwrap();
            prop_assert_eq!(poly.coefficient(0), 0);
            prop_assert_eq!(poly.coefficient(1), value);
        }
    }

    #[test]
    fn a2_independent_of_base_point(seed in 0u64..10_000) {
        let e = random_embedding(6, seed, 60).unwrap();
        let scene = generic_scene(&e, 64).unwrap();
        for cycle in enumerate_cycles(6, 6).unwrap() {
            let gd = gauss_diagram(&extract_link_diagram(&scene, std::slice::from_ref(&cycle)).unwrap()).unwrap();
            let base = a2(&gd);
            for s in 1..gd.len() {
                prop_assert_eq!(a2(&gd.rotate(s)), base);
            }
        }
    }

    #[test]
    fn stick_number_facts(seed in 0u64..10_000) {
        let a = Analyzer::new(random_embedding(7, seed, 30).unwrap()).unwrap();
        prop_assert!(a.linking_numbers(3, 3).unwrap().iter().all(|x| x.1.abs() <= 1));
        for p in 3..=5 {
            prop_assert!(a.a2_values(p).unwrap().iter().all(|x| x.1 == 0));
        }
    }

    #[test]
    fn thread_count_does_not_change_sums(seed in 0u64..10_000) {
        let e = random_embedding(7, seed, 50).unwrap();
        let sums = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                let a = Analyzer::new(e.clone()).unwrap();
                let mut v = Vec::new();
                for s in [Statistic::Lk, Statistic::Lk2, Statistic::MaxAbsLk] {
                    v.push(a.class_sum(CycleClass::pair(3, 4), s).unwrap());
                }
                v.push(a.class_sum(CycleClass::knot(7), Statistic::A2).unwrap());
                v
            })
        };
        prop_assert_eq!(sums(1), sums(4));
    }

    #[test]
    fn json_roundtrip(seed in 0u64..10_000, n in 3usize..10) {
        let e = random_embedding(n, seed, 100).unwrap();
        let back = PLEmbedding::from_json(&e.to_json()).unwrap();
        prop_assert_eq!(back, e);
    }
}
