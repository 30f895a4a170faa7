mod common;

use std::sync::Arc;

use common::*;
use icis_core::engine::{Budget, QuotientDimension};
use icis_core::ideal::Ideal;
use icis_core::invariants::{milnor_number, tjurina_hypersurface, tjurina_icis, weighted_homogeneous_weights};
use icis_core::{Polynomial, Rational, RingSpec};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn ring(nvars: usize) -> Arc<RingSpec> {
    RingSpec::new(&names(nvars)).unwrap()
}

fn poly(p: &IntPoly, r: &Arc<RingSpec>) -> Polynomial<Rational> {
    Polynomial::parse(&p.to_text(), r).unwrap()
}

#[test]
fn milnor_and_tjurina_match_truncated_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    let b = Budget::default();
    let mut strict = 0;
    for case in 0..20 {
        let nvars = if case % 2 == 0 { 2 } else { 3 };
        let max_pow = if nvars == 2 { 5 } else { 4 };
        let g = random_isolated(&mut rng, nvars, max_pow, 5);
        let r = ring(nvars);
        let gp = poly(&g, &r);
        let mu = milnor_number(&gp, &b).unwrap();
        let tau = tjurina_hypersurface(&gp, &b).unwrap();
        let mu_o = milnor_oracle(&g, 40).expect("oracle stabilises");
        let tau_o = tjurina_oracle(&g, 40).expect("oracle stabilises");
        assert_eq!(mu, QuotientDimension::Finite(mu_o), "mu of {}", g.to_text());
        assert_eq!(tau, QuotientDimension::Finite(tau_o), "tau of {}", g.to_text());
        assert!(mu_o >= tau_o);
        if weighted_homogeneous_weights(&gp).is_some() {
            assert_eq!(mu_o, tau_o, "weighted homogeneous {}", g.to_text());
        }
        if mu_o > tau_o {
            strict += 1;
        }
        // k = 1 ICIS Tjurina number agrees with the hypersurface one.
        assert_eq!(tjurina_icis(&[gp], &b).unwrap(), tau);
    }
    eprintln!("{strict} of 20 germs have tau < mu");
}

#[test]
fn classical_tjurina_drop() {
    // Semi-quasihomogeneous with a term above the Newton boundary.
    let g = IntPoly::new(2, vec![(vec![4, 0], 1), (vec![0, 5], 1), (vec![2, 3], 1)]);
    assert_eq!(milnor_oracle(&g, 40), Some(12));
    assert_eq!(tjurina_oracle(&g, 40), Some(11));
    let r = ring(2);
    let b = Budget::default();
    assert_eq!(milnor_number(&poly(&g, &r), &b).unwrap(), QuotientDimension::Finite(12));
    assert_eq!(
        tjurina_hypersurface(&poly(&g, &r), &b).unwrap(),
        QuotientDimension::Finite(11)
    );
}

#[test]
fn monomial_staircases_match_enumeration() {
    let mut rng = StdRng::seed_from_u64(11);
    let b = Budget::default();
    for _ in 0..300 {
        let nvars = rng.gen_range(1..=4);
        let gens = random_monomial_ideal(&mut rng, nvars, 6);
        let r = ring(nvars);
        let ps: Vec<Polynomial<Rational>> = gens
            .iter()
            .map(|e| Polynomial::parse(&monomial_text(e), &r).unwrap())
            .collect();
        let count = staircase_count(&gens);
        let local = Ideal::local(&r, ps.clone()).unwrap().vdim(&b).unwrap();
        let global = Ideal::global(&r, ps).unwrap().vdim(&b).unwrap();
        assert_eq!(local, QuotientDimension::Finite(count), "{gens:?}");
        assert_eq!(global, QuotientDimension::Finite(count), "{gens:?}");
    }
}

#[test]
fn local_colength_matches_truncated_oracle() {
    let mut rng = StdRng::seed_from_u64(23);
    let b = Budget::default();
    let mut compared = 0;
    for _ in 0..60 {
        let nvars = rng.gen_range(2..=3);
        // Pure powers plus perturbations, some of them of lower order, so the
        // ideal is often not monomial and has zeros away from the origin.
        let mut gens = Vec::new();
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = rng.gen_range(1..=4);
            let mut terms = vec![(e, 1)];
            for _ in 0..rng.gen_range(0..=2) {
                let mut m = vec![0u32; nvars];
                for _ in 0..rng.gen_range(1..=4) {
                    m[rng.gen_range(0..nvars)] += 1;
                }
                terms.push((m, rng.gen_range(-2i64..=2)));
            }
            let p = IntPoly::new(nvars, terms);
            if !p.is_zero() && p.order() > 0 {
                gens.push(p);
            }
        }
        let Some(expected) = local_colength(&gens, nvars, 24) else {
            continue;
        };
        let r = ring(nvars);
        let ps = gens.iter().map(|g| poly(g, &r)).collect();
        let local = Ideal::local(&r, ps).unwrap().vdim(&b).unwrap();
        assert_eq!(
            local,
            QuotientDimension::Finite(expected),
            "{:?}",
            gens.iter().map(|g| g.to_text()).collect::<Vec<_>>()
        );
        compared += 1;
    }
    assert!(compared >= 30, "only {compared} ideals compared");
}
