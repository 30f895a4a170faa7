mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use common::IntPoly;
use icis_core::engine::Budget;
use icis_core::engine::ModuleOrdering;
use icis_core::ideal::{eliminate, Ideal};
use icis_core::module::{module_standard_basis, subquotient_dim, syzygies, FreeModuleElement};
use icis_core::{Field, Monomial, MonomialOrdering, Polynomial, Rational, RingSpec};
use proptest::prelude::*;

fn ring(names: &[&str]) -> Arc<RingSpec> {
    RingSpec::new(names).unwrap()
}

fn poly(p: &IntPoly, r: &Arc<RingSpec>) -> Polynomial<Rational> {
    Polynomial::parse(&p.to_text(), r).unwrap()
}

fn int_poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -4i64..=4), 0..=max_terms).prop_map(
        move |terms| {
            let terms = terms
                .into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg)
                .collect();
            IntPoly::new(nvars, terms)
        },
    )
}

fn orderings() -> Vec<MonomialOrdering> {
    vec![
        MonomialOrdering::DegRevLex,
        MonomialOrdering::Lex,
        MonomialOrdering::NegDegRevLex,
        MonomialOrdering::Weighted(vec![1, 2, 3]),
        MonomialOrdering::Weighted(vec![-2, -1, -1]),
        MonomialOrdering::Block(vec![
            (vec![0], MonomialOrdering::DegRevLex),
            (vec![1, 2], MonomialOrdering::NegDegRevLex),
        ]),
        MonomialOrdering::elimination(3, &[1]),
    ]
}

fn mono(e: &[u32]) -> Monomial {
    Monomial::from_exponents(e).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn orderings_are_total_and_multiplicative(
        a in prop::collection::vec(0u32..5, 3),
        b in prop::collection::vec(0u32..5, 3),
        c in prop::collection::vec(0u32..5, 3),
    ) {
        let (a, b, c) = (mono(&a), mono(&b), mono(&c));
        for o in orderings() {
            let ab = o.compare(&a, &b);
            prop_assert_eq!(ab, o.compare(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Less && o.compare(&b, &c) == Ordering::Less {
                prop_assert_eq!(o.compare(&a, &c), Ordering::Less);
            }
            prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), ab);
        }
    }

    #[test]
    fn ring_axioms_and_printing(p in int_poly(3, 4, 6), q in int_poly(3, 4, 6), s in int_poly(3, 3, 4)) {
        let r = ring(&["x", "y", "z"]);
        let (p, q, s) = (poly(&p, &r), poly(&q, &r), poly(&s, &r));
        prop_assert_eq!(p.try_add(&q).unwrap(), q.try_add(&p).unwrap());
        prop_assert_eq!(p.try_mul(&q).unwrap(), q.try_mul(&p).unwrap());
        prop_assert_eq!(
            p.try_add(&q).unwrap().try_add(&s).unwrap(),
            p.try_add(&q.try_add(&s).unwrap()).unwrap()
        );
        prop_assert_eq!(
            p.try_mul(&q).unwrap().try_mul(&s).unwrap(),
            p.try_mul(&q.try_mul(&s).unwrap()).unwrap()
        );
        prop_assert_eq!(
            p.try_mul(&q.try_add(&s).unwrap()).unwrap(),
            p.try_mul(&q).unwrap().try_add(&p.try_mul(&s).unwrap()).unwrap()
        );
        // Canonical form: rebuilding from (duplicated) terms changes nothing.
        let mut doubled = p.terms().to_vec();
        doubled.extend(p.terms().iter().cloned());
        prop_assert_eq!(Polynomial::from_terms(&r, doubled), p.try_add(&p).unwrap());
        prop_assert_eq!(Polynomial::from_terms(&r, p.terms().to_vec()), p.clone());
        prop_assert_eq!(Polynomial::parse(&p.to_string(), &r).unwrap(), p);
    }

    #[test]
    fn membership_soundness(
        g in prop::collection::vec(int_poly(2, 3, 3), 1..=3),
        a in prop::collection::vec(int_poly(2, 2, 3), 3),
    ) {
        let r = ring(&["x", "y"]);
        let b = Budget::default();
        let g: Vec<Polynomial<Rational>> = g.iter().map(|p| poly(p, &r)).collect();
        let mut c = Polynomial::zero(&r);
        for (gi, ai) in g.iter().zip(&a) {
            c = c.try_add(&gi.try_mul(&poly(ai, &r)).unwrap()).unwrap();
        }
        let global = Ideal::global(&r, g.clone()).unwrap();
        prop_assert!(global.normal_form(&c, &b).unwrap().is_zero());
        let local = Ideal::local(&r, g).unwrap();
        prop_assert!(local.contains(&c, &b).unwrap());
    }

    #[test]
    fn elimination_of_parametrised_curves(a in int_poly(1, 4, 3), c in int_poly(1, 4, 3)) {
        // Parameter x, curve coordinates y and z.
        let r = ring(&["x", "y", "z"]);
        let src = ring(&["x"]);
        let (a, c) = (poly(&a, &src), poly(&c, &src));
        let lift = |p: &Polynomial<Rational>| p.embed(&r, &[0]);
        let x = Polynomial::var(&r, 1);
        let y = Polynomial::var(&r, 2);
        let i = Ideal::global(&r, vec![x.try_sub(&lift(&a)).unwrap(), y.try_sub(&lift(&c)).unwrap()]).unwrap();
        let e = eliminate(&i, &[0], &Budget::default()).unwrap();
        prop_assert!(!e.generators().is_empty() || (a.is_constant() && c.is_constant()));
        for g in e.generators() {
            prop_assert!(g.substitute(&[a.clone(), c.clone()]).unwrap().is_zero(), "{} does not vanish", g);
        }
    }

    #[test]
    fn syzygies_annihilate_and_contain_koszul(g in prop::collection::vec(int_poly(2, 3, 3), 2..=3)) {
        let r = ring(&["x", "y"]);
        let b = Budget::default();
        let g: Vec<Polynomial<Rational>> = g.iter().map(|p| poly(p, &r)).collect();
        let gens: Vec<FreeModuleElement<Rational>> =
            g.iter().map(|p| FreeModuleElement::single(p.clone(), 1, 0)).collect();
        let syz = syzygies(&r, 1, &gens, &b).unwrap();
        for s in syz.generators() {
            let mut acc = Polynomial::zero(&r);
            for (si, gi) in s.components().iter().zip(&g) {
                acc = acc.try_add(&si.try_mul(gi).unwrap()).unwrap();
            }
            prop_assert!(acc.is_zero());
        }
        let ord = ModuleOrdering::top(MonomialOrdering::DegRevLex);
        let m = g.len();
        let sb = module_standard_basis(&r, m, syz.generators(), &ord, &b).unwrap();
        for i in 0..m {
            for j in i + 1..m {
                let mut comps = vec![Polynomial::zero(&r); m];
                comps[i] = g[j].clone();
                comps[j] = g[i].scale(&Rational::integer(-1));
                let k = FreeModuleElement::new(comps).unwrap();
                prop_assert!(sb.contains(&k, &b).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_additive(
        g in prop::collection::vec(int_poly(3, 3, 3), 1..=3),
        p in int_poly(3, 4, 5),
        q in int_poly(3, 4, 5),
    ) {
        let r = ring(&["x", "y", "z"]);
        let b = Budget::default();
        let i = Ideal::global(&r, g.iter().map(|x| poly(x, &r)).collect()).unwrap();
        let (p, q) = (poly(&p, &r), poly(&q, &r));
        let lhs = i.normal_form(&p.try_add(&q).unwrap(), &b).unwrap();
        let rhs = i.normal_form(&i.normal_form(&p, &b).unwrap().try_add(&q).unwrap(), &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn completed_bases_have_reducing_s_pairs(g in prop::collection::vec(int_poly(3, 3, 3), 1..=3)) {
        let r = ring(&["x", "y", "z"]);
        let b = Budget::default();
        let i = Ideal::global(&r, g.iter().map(|x| poly(x, &r)).collect()).unwrap();
        let basis = i.basis_polynomials(&b).unwrap();
        let ord = MonomialOrdering::DegRevLex;
        let lead = |p: &Polynomial<Rational>| {
            p.terms().iter().max_by(|a, c| ord.compare(&a.0, &c.0)).cloned().unwrap()
        };
        let check = Ideal::global(&r, basis.clone()).unwrap();
        for (k, a) in basis.iter().enumerate() {
            for c in &basis[k + 1..] {
                let (ma, ca) = lead(a);
                let (mc, cc) = lead(c);
                let l = ma.lcm(&mc);
                let sa = a.mul_monomial(&ma.quotient_of(&l)).unwrap().scale(&cc);
                let sc = c.mul_monomial(&mc.quotient_of(&l)).unwrap().scale(&ca);
                let s = sa.try_sub(&sc).unwrap();
                // Reduction by the basis itself, not by a recomputed one.
                prop_assert!(reduces_to_zero(&s, &basis, &ord));
                prop_assert!(check.contains(&s, &b).unwrap());
            }
        }
    }

    #[test]
    fn subquotient_lengths_add_up(
        e in prop::collection::vec(prop::collection::vec(0u32..3, 2), 1..=2),
        f in prop::collection::vec(prop::collection::vec(0u32..3, 2), 1..=2),
    ) {
        // innermost ⊂ inner ⊂ outer, monomial ideals of finite colength in
        // the local ring: outer = (x^a, y^b, ...), inner = m * outer + ...,
        // innermost = m^2 * outer.
        let r = ring(&["x", "y"]);
        let b = Budget::default();
        let mono_poly = |e: &[u32]| poly(&IntPoly::new(2, vec![(e.to_vec(), 1)]), &r);
        let mut outer: Vec<Polynomial<Rational>> = e.iter().map(|x| mono_poly(x)).collect();
        outer.push(mono_poly(&[3, 0]));
        outer.push(mono_poly(&[0, 3]));
        let times = |ideal: &[Polynomial<Rational>], by: &[Polynomial<Rational>]| -> Vec<Polynomial<Rational>> {
            ideal.iter().flat_map(|p| by.iter().map(move |q| p.try_mul(q).unwrap())).collect()
        };
        let m = vec![mono_poly(&[1, 0]), mono_poly(&[0, 1])];
        let mut inner = times(&outer, &m);
        inner.extend(times(&outer, &f.iter().map(|x| mono_poly(x)).filter(|p| !p.is_constant()).collect::<Vec<_>>()));
        let innermost = times(&times(&outer, &m), &m);
        let el = |v: &[Polynomial<Rational>]| -> Vec<FreeModuleElement<Rational>> {
            v.iter().map(|p| FreeModuleElement::single(p.clone(), 1, 0)).collect()
        };
        let a = subquotient_dim(&r, 1, &el(&outer), &el(&inner), &b).unwrap().finite().unwrap();
        let c = subquotient_dim(&r, 1, &el(&inner), &el(&innermost), &b).unwrap().finite().unwrap();
        let t = subquotient_dim(&r, 1, &el(&outer), &el(&innermost), &b).unwrap().finite().unwrap();
        prop_assert_eq!(a + c, t);
    }
}

/// Multivariate division by a fixed list, degrevlex.
fn reduces_to_zero(p: &Polynomial<Rational>, basis: &[Polynomial<Rational>], ord: &MonomialOrdering) -> bool {
    let lead = |p: &Polynomial<Rational>| p.terms().iter().max_by(|a, c| ord.compare(&a.0, &c.0)).cloned();
    let mut h = p.clone();
    let mut rem = Polynomial::zero(p.ring());
    while let Some((m, c)) = lead(&h) {
        match basis.iter().find_map(|g| {
            let (gm, gc) = lead(g)?;
            gm.divides(&m).then_some((g, gm, gc))
        }) {
            Some((g, gm, gc)) => {
                let f = g.mul_monomial(&gm.quotient_of(&m)).unwrap().scale(&c.div(&gc).unwrap());
                h = h.try_sub(&f).unwrap();
            }
            None => {
                let t = Polynomial::monomial(p.ring(), m.clone(), c.clone());
                rem = rem.try_add(&t).unwrap();
                h = h.try_sub(&t).unwrap();
            }
        }
    }
    rem.is_zero()
}

fn random_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<IntPoly>>> {
    prop::collection::vec(prop::collection::vec(int_poly(2, 2, 2), rows), cols)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fitting_ideals_form_a_chain_and_ignore_order(
        cols in (2usize..=3, 2usize..=3).prop_flat_map(|(r, c)| random_matrix(r, c)),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        use icis_core::module::{fitting_ideal, PresentationMatrix};

        let r = ring(&["x", "y"]);
        let b = Budget::default();
        let rows = cols[0].len();
        let generators = (0..rows).map(|i| Polynomial::var(&r, i % 2)).collect();
        let columns: Vec<Vec<Polynomial<Rational>>> =
            cols.iter().map(|c| c.iter().map(|p| poly(p, &r)).collect()).collect();
        let p = PresentationMatrix { target: r.clone(), generators, columns: columns.clone() };
        let fit: Vec<Ideal<Rational>> = (0..=rows).map(|i| fitting_ideal(&p, i).unwrap()).collect();
        for w in fit.windows(2) {
            for g in w[0].generators() {
                prop_assert!(w[1].contains(g, &b).unwrap());
            }
        }
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..rows).collect();
        perm.shuffle(&mut rng);
        let mut shuffled: Vec<Vec<Polynomial<Rational>>> =
            columns.iter().map(|c| perm.iter().map(|&i| c[i].clone()).collect()).collect();
        shuffled.shuffle(&mut rng);
        let q = PresentationMatrix { target: r.clone(), generators: p.generators.clone(), columns: shuffled };
        for (i, f) in fit.iter().enumerate() {
            prop_assert!(fitting_ideal(&q, i).unwrap().same_ideal(f, &b).unwrap());
        }
    }
}
