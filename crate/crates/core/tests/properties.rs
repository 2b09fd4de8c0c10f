use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmgraph::circuit::{self, ResistanceValue};
use pmgraph::hyperelliptic::{combi_rhs, d_invariant, psi_explicit, NodeTypeCounts};
use pmgraph::rational::{int, ratio};
use pmgraph::sampling::{random_interior_point, random_polarized_graph, random_stable_graph};
use pmgraph::{invariants, oracle, GraphPoint, PolarizedMetricGraph, Potential, Rational};

fn graph(seed: u64, max_genus: u32) -> PolarizedMetricGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = rng.gen_range(1..=max_genus);
    random_polarized_graph(&mut rng, h)
}

fn some_points(g: &PolarizedMetricGraph, rng: &mut ChaCha8Rng, n: usize) -> Vec<GraphPoint> {
    let mut pts: Vec<GraphPoint> = g.vertices().iter().map(|v| GraphPoint::vertex(&v.id)).collect();
    if !g.edges().is_empty() {
        for _ in 0..n {
            pts.push(random_interior_point(rng, g));
        }
    }
    pts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resistance_is_a_metric(seed in any::<u64>()) {
        let g = graph(seed, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let pts = some_points(&g, &mut rng, 2);
        let (x, y, z) = (&pts[rng.gen_range(0..pts.len())], &pts[rng.gen_range(0..pts.len())], &pts[rng.gen_range(0..pts.len())]);
        let rxy = circuit::resistance(&g, x, y).unwrap();
        prop_assert_eq!(&rxy, &circuit::resistance(&g, y, x).unwrap());
        prop_assert!(!rxy.is_negative());
        prop_assert!(circuit::resistance(&g, x, x).unwrap().is_zero());
        let rxz = circuit::resistance(&g, x, z).unwrap();
        let rzy = circuit::resistance(&g, z, y).unwrap();
        prop_assert!(rxy <= rxz + rzy);
    }

    #[test]
    fn foster_identity_and_unit_masses(seed in any::<u64>()) {
        let g = graph(seed, 5);
        let (b1, _) = g.genus().unwrap();
        prop_assert_eq!(circuit::foster_sum(&g).unwrap(), int(b1 as i64));
        let pot = Potential::new(&g).unwrap();
        prop_assert_eq!(pot.canonical_measure().total_mass(), int(1));
        prop_assert_eq!(pot.admissible_measure().total_mass(), int(1));
    }

    #[test]
    fn closed_form_resistance_profile(seed in any::<u64>()) {
        let g = graph(seed, 3);
        prop_assume!(!g.edges().is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let e = &g.edges()[rng.gen_range(0..g.edges().len())];
        let x = GraphPoint::vertex(&g.vertices()[rng.gen_range(0..g.vertices().len())].id);
        let c = GraphPoint::vertex(&g.vertices()[e.ends[0]].id);
        let d = GraphPoint::vertex(&g.vertices()[e.ends[1]].id);
        let l = e.length.clone();
        let t = &l * ratio(rng.gen_range(1..13), 13);
        let bump = match circuit::excised_edge_resistance(&g, &e.id).unwrap() {
            ResistanceValue::Infinite => Rational::zero(),
            ResistanceValue::Finite(r) => &t * (&l - &t) / (&l + r),
        };
        let expected = (int(1) - &t / &l) * circuit::resistance(&g, &x, &c).unwrap()
            + &t / &l * circuit::resistance(&g, &x, &d).unwrap()
            + bump;
        let p = GraphPoint::interior(&e.id, t);
        prop_assert_eq!(circuit::resistance(&g, &x, &p).unwrap(), expected);
    }

    #[test]
    fn green_contract(seed in any::<u64>()) {
        let g = graph(seed, 3);
        let pot = Potential::new(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let pts = some_points(&g, &mut rng, 2);
        let x = &pts[rng.gen_range(0..pts.len())];
        let y = &pts[rng.gen_range(0..pts.len())];
        prop_assert_eq!(pot.green(x, y).unwrap(), pot.green(y, x).unwrap());
        prop_assert!(pot.green_mass(x).unwrap().is_zero());
        prop_assert_eq!(pot.green(x, x).unwrap(), pot.potential_f(x).unwrap() - pot.capacity());
    }

    #[test]
    fn weight_one_homogeneity(seed in any::<u64>(), num in 1i64..20, den in 1i64..9) {
        let g = graph(seed, 3);
        let lam = ratio(num, den);
        let scaled = g.scaled(&lam);
        let (a, b) = (Potential::new(&g).unwrap(), Potential::new(&scaled).unwrap());
        prop_assert_eq!(invariants::phi_of(&b).unwrap(), &lam * invariants::phi_of(&a).unwrap());
        prop_assert_eq!(invariants::epsilon_of(&b).unwrap(), &lam * invariants::epsilon_of(&a).unwrap());
        prop_assert_eq!(b.capacity().clone(), &lam * a.capacity());
        let v = GraphPoint::vertex(&g.vertices()[0].id);
        prop_assert_eq!(b.green(&v, &v).unwrap(), &lam * a.green(&v, &v).unwrap());
    }

    #[test]
    fn model_independence(seed in any::<u64>()) {
        let g = graph(seed, 3);
        prop_assume!(!g.edges().is_empty());
        let rep = oracle::subdivision_invariance_check(&g, 1, seed).unwrap();
        prop_assert!(rep.passed, "{:?}", rep.trials);
    }

    #[test]
    fn phi_non_negative_on_stable_graphs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = rng.gen_range(2..=3);
        let g = random_stable_graph(&mut rng, h);
        prop_assert!(!invariants::phi(&g).unwrap().is_negative());
    }

    #[test]
    fn graph_json_round_trip(seed in any::<u64>()) {
        let g = graph(seed, 5);
        let s = g.to_json();
        let back = PolarizedMetricGraph::from_json(&s).unwrap();
        prop_assert_eq!(back.to_json(), s);
    }
}

fn counts_strategy() -> impl Strategy<Value = NodeTypeCounts> {
    (2u64..=8).prop_flat_map(|h| {
        let nxi = ((h - 1) / 2 + 1) as usize;
        let nd = (h / 2) as usize;
        let r = (0i64..40, 1i64..6).prop_map(|(n, d)| ratio(n, d));
        (Just(h), r.clone(), prop::collection::vec(r.clone(), nxi), prop::collection::vec(r, nd))
            .prop_map(|(h, f, xi, di)| NodeTypeCounts::new(h, f, xi, di))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn count_side_formulas_agree(c in counts_strategy()) {
        let two_h_plus_1 = int(2 * c.h as i64 + 1);
        let rhs = combi_rhs(&c).unwrap();
        prop_assert_eq!(&two_h_plus_1 * psi_explicit(&c).unwrap(), rhs.clone());
        prop_assert_eq!(int(3) * d_invariant(&c).unwrap() - &two_h_plus_1 * c.total_delta(), rhs);
        let back = NodeTypeCounts::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(back, c);
    }
}
