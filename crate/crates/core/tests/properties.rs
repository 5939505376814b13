use std::sync::Arc;

use proptest::prelude::*;
use ringlab::homology::{ext, poincare_truncation, tor};
use ringlab::module::hom_dim;
use ringlab::{rings, sr, verify};
use ringlab::{FPModule, Field, FieldSpec, Graph, LocalAlgebra, MonomialIdeal, Presentation, PrimeField, Rationals};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges.collect::<Vec<_>>()).unwrap()
        })
    })
}

/// Monomial ideal on `nvars` variables with generators of degree 2..=3.
fn monomial_ideal(nvars: usize) -> impl Strategy<Value = MonomialIdeal> {
    let gen = proptest::collection::vec(0..nvars, 2..=3);
    proptest::collection::vec(gen, 1..=4).prop_map(move |gens| {
        let vars: Vec<String> = (0..nvars).map(|i| format!("x{i}")).collect();
        let gens = gens
            .into_iter()
            .map(|g| {
                let mut e = vec![0u32; nvars];
                for v in g {
                    e[v] += 1;
                }
                ringlab::Monomial(e)
            })
            .collect();
        MonomialIdeal::new(vars, gens).unwrap()
    })
}

fn relabel(i: &MonomialIdeal, prefix: &str) -> MonomialIdeal {
    let map: Vec<(String, String)> = i.vars().iter().map(|v| (v.clone(), format!("{prefix}{v}"))).collect();
    i.rename(&map).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_and_json_round_trip(g in graph(7)) {
        prop_assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g.clone());
        let json = serde_json::to_string(&g.to_json()).unwrap();
        prop_assert_eq!(Graph::parse(&json).unwrap(), g.clone());
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn presentation_json_round_trip(i in monomial_ideal(3)) {
        let p = i.to_presentation(FieldSpec::Prime(3));
        prop_assert_eq!(Presentation::parse_json(&serde_json::to_string(&p.to_json()).unwrap()).unwrap(), p);
    }

    #[test]
    fn fiber_product_dimension_is_additive(s in monomial_ideal(2), t in monomial_ideal(3), n in 1u32..=5) {
        let f = PrimeField::new(3).unwrap();
        let s = relabel(&s, "a").to_presentation(FieldSpec::Prime(3));
        let t = relabel(&t, "b").to_presentation(FieldSpec::Prime(3));
        let fp = Presentation::fiber_product(&s, &t).unwrap();
        let dim = |p: &Presentation| LocalAlgebra::truncate(&f, p, n).unwrap().dim();
        prop_assert_eq!(dim(&fp), dim(&s) + dim(&t) - 1);
    }

    /// For artinian `k[G]'` the Hilbert series is a polynomial and must equal the Hilbert
    /// function of the multiplication table.
    #[test]
    fn hilbert_series_matches_algebra(g in graph(6)) {
        let i = rings::kprime(&g).unwrap();
        let hs = sr::hilbert_series(&i).unwrap();
        prop_assert_eq!(hs.denominator_power, 0);
        let a = LocalAlgebra::truncate(&Rationals, &i.to_presentation(FieldSpec::Rational), g.n() as u32 + 1).unwrap();
        let hf: Vec<i64> = a.hilbert_function().iter().map(|&x| x as i64).collect();
        prop_assert_eq!(hs.expand(hf.len() + 1), [hf.clone(), vec![0]].concat());
        prop_assert_eq!(sr::multiplicity(&i).unwrap(), a.dim() as u64);
    }

    #[test]
    fn depth_at_most_dim(i in monomial_ideal(4)) {
        let dim = sr::krull_dim(&i).unwrap();
        for f in [FieldSpec::Rational, FieldSpec::Prime(2)] {
            prop_assert!(sr::depth(&i, f).unwrap() <= dim);
        }
    }

    #[test]
    fn star_factorization_holds(g in graph(7)) {
        prop_assert!(verify::check_star_factorization(&g).unwrap().passed);
    }

    /// `Ext^0` is Hom, and Betti numbers equal both `Tor_i(M, k)` and `Ext^i(M, k)`.
    #[test]
    fn ext_tor_consistency(a_idx in 0usize..3, coeffs in proptest::collection::vec(-2i64..=2, 8)) {
        let fixtures: [(&[&str], &[&str]); 3] = [
            (&["x", "y"], &["x^2", "y^2"]),
            (&["x", "y"], &["x^2", "x*y", "y^2"]),
            (&["x"], &["x^4"]),
        ];
        let (vars, gens) = fixtures[a_idx];
        let p = Presentation::parse(vars, gens, FieldSpec::Rational).unwrap();
        let a = Arc::new(LocalAlgebra::truncate(&Rationals, &p, 4).unwrap());
        let mut g = vec![Rationals.zero(); a.dim()];
        for (slot, &c) in g.iter_mut().zip(&coeffs).skip(1) {
            *slot = Rationals.from_i64(c);
        }
        let m = FPModule::cyclic_module(&a, &[g]).unwrap();
        let k = FPModule::residue_field(&a);
        prop_assert_eq!(ext(&m, &m, 0).unwrap(), hom_dim(&m, &m));
        let betti = poincare_truncation(&m, 3).unwrap();
        for (i, &b) in betti.iter().enumerate() {
            prop_assert_eq!(tor(&m, &k, i).unwrap(), b);
            prop_assert_eq!(ext(&m, &k, i).unwrap(), b);
        }
    }
}
