mod common;

use hecke_core::params::*;
use hecke_core::quiver::{Adjacency, Quiver, Vertex};
use hecke_core::scalars::*;
use hecke_core::Error;
use proptest::prelude::*;

fn brute_order(l: u64, x: u64) -> u64 {
    let mut acc = x % l;
    let mut k = 1;
    while acc != 1 {
        acc = acc * x % l;
        k += 1;
    }
    k
}

fn brute_prime(n: u64) -> bool {
    n >= 2 && (2..n).all(|d| !n.is_multiple_of(d))
}

/// Smallest prime `l = 1 mod lcm(e, p)` with the smallest elements of order
/// `e` and `p`, by exhaustive search.
fn brute_field(e: u64, p: u64) -> (u64, u64, u64) {
    let mut l = 2;
    loop {
        if brute_prime(l) && (l - 1) % e == 0 && (l - 1) % p == 0 {
            let q = (1..l).find(|&x| brute_order(l, x) == e).unwrap();
            let z = (1..l).find(|&x| brute_order(l, x) == p).unwrap();
            return (l, q, z);
        }
        l += 1;
    }
}

#[test]
fn prime_search_matches_exhaustive_search() {
    for e in 2..=6 {
        for p in 1..=6 {
            let spec = find_prime_field(e, p, 2).unwrap();
            let (l, q, z) = brute_field(e, p);
            assert_eq!(spec.modulus(), Some(l), "e={e} p={p}");
            assert_eq!((spec.q, spec.zeta), (q as i64, z as i64), "e={e} p={p}");
            spec.validate().unwrap();
        }
    }
}

#[test]
fn prime_search_examples() {
    let s = find_prime_field(2, 3, 2).unwrap();
    assert_eq!((s.modulus(), s.q, s.zeta), (Some(7), 6, 2));
    let s = find_prime_field(2, 2, 2).unwrap();
    assert_eq!((s.modulus(), s.q, s.zeta), (Some(3), 2, 2));
    let s = find_prime_field(3, 3, 2).unwrap();
    assert_eq!((s.modulus(), s.q, s.zeta), (Some(7), 2, 2));
    let s = find_prime_field(2, 4, 2).unwrap();
    assert_eq!((s.modulus(), s.q, s.zeta), (Some(5), 4, 2));
    assert!(find_prime_field(1, 2, 2).is_err());
}

#[test]
fn rationals_only_hold_square_roots_of_unity() {
    let s = FieldSpec::rationals(2).unwrap();
    assert_eq!((s.q, s.zeta, s.e), (2, -1, Order::Infinite));
    s.validate().unwrap();
    assert!(FieldSpec::rationals(3).is_err());
    let f = Rationals;
    assert_eq!(element_order(&f, &f.from_i64(-1)), Ok(Order::Finite(2)));
    assert_eq!(element_order(&f, &f.from_i64(2)), Ok(Order::Infinite));
}

#[test]
fn wrong_orders_are_rejected() {
    let mut s = find_prime_field(3, 3, 2).unwrap();
    s.q = 6; // order 2 in F_7
    assert!(s.validate().is_err());
}

fn params_for(e: u64, p: u64) -> Params {
    derive_params(&common::scalars(e, p), 1).unwrap()
}

#[test]
fn worked_parameter_cases() {
    let cases = [(2, 3, (3, 0, 1)), (2, 6, (3, 1, 2)), (2, 2, (1, 1, 2)), (3, 3, (1, 1, 3)), (3, 2, (2, 0, 1))];
    for (e, p, want) in cases {
        let pr = params_for(e, p);
        assert_eq!((pr.pprime, pr.eta, pr.omega), want, "e={e} p={p}");
    }
    let s = FieldSpec::rationals(2).unwrap();
    struct Get;
    impl WithScalars for Get {
        type Output = (u64, i64, u64);
        fn run<F: Field + 'static>(self, s: Scalars<F>) -> (u64, i64, u64) {
            let p = derive_params(&s, 1).unwrap();
            (p.pprime, p.eta, p.omega)
        }
    }
    assert_eq!(s.dispatch(Get).unwrap(), (2, 0, 1));
}

#[test]
fn eta_solves_its_equation_by_brute_force() {
    for e in 2..=6u64 {
        for p in 1..=6u64 {
            let s = common::scalars(e, p);
            let pr = derive_params(&s, 1).unwrap();
            let f = &s.field;
            let target = f.pow(&s.zeta, pr.pprime);
            let eta = (0..e).find(|&k| f.pow(&s.q, k) == target).unwrap();
            assert_eq!(pr.eta, eta as i64);
            assert_eq!(pr.pprime * pr.omega, p);
            // p' is the least m with zeta^m a power of q
            let least = (1..=p)
                .find(|&m| (0..e).any(|k| f.pow(&s.q, k) == f.pow(&s.zeta, m)))
                .unwrap();
            assert_eq!(pr.pprime, least);
        }
    }
}

#[test]
fn fiber_counts() {
    let pr = params_for(2, 6); // eta = 1, omega = 2
    assert_eq!(pr.fiber_count(0), 1);
    assert_eq!(pr.fiber_count(1), 1);
    let pr = params_for(2, 3); // omega = 1
    assert_eq!(pr.fiber_count(0), 1);
    assert_eq!(pr.fiber_count(1), 0);
    assert_eq!(fiber_count(Order::Infinite, 0, 1, 0), 1);
}

#[test]
fn default_weight_and_collapse() {
    let pr = params_for(2, 2); // p' = 1, eta = 1, omega = 2
    let w = pr.default_weight();
    assert_eq!(w.triples(), vec![(0, 0, 1), (1, 0, 1)]);
    check_sigma_stable(&pr, &w).unwrap();
    let k = weight_on_k(&pr, &w).unwrap();
    assert_eq!(k.triples(), vec![(0, 1, 1), (1, 1, 1)]);
    let v = level_d_weight(&pr, &w).unwrap();
    assert_eq!(v.triples(), vec![(0, 0, 1)]);
    assert_eq!(lift_level_d(&pr, &v), w);

    // one box per j in 1..=p collapses onto I x J'
    let full = Weight::from_triples(WeightDomain::IxJ, &[(0, 1, 1), (0, 2, 1)]);
    let c = collapse_weight(&pr, &full).unwrap();
    assert_eq!(c.triples(), vec![(0, 1, 1), (1, 1, 1)]);
    let back = expand_weight(&pr, &c).unwrap();
    assert_eq!(collapse_weight(&pr, &Weight::from_triples(WeightDomain::IxJ, &[(0, 1, 1), (1, 1, 1)])).unwrap(), c);
    assert_eq!(back.level(), 2);
}

#[test]
fn unstable_weight_is_refused() {
    let pr = params_for(3, 3); // eta = 1
    let w = Weight::from_triples(WeightDomain::I, &[(0, 0, 1)]);
    assert!(matches!(check_sigma_stable(&pr, &w), Err(Error::NotShiftStable(_))));
    assert!(level_d_weight(&pr, &w).is_err());
}

#[test]
fn adjacency_examples() {
    let q2 = Quiver::new(&params_for(2, 2), None, 0).unwrap();
    assert_eq!(q2.adjacency(Vertex::new(0, 1), Vertex::new(1, 1)), Adjacency::Both);
    assert_eq!(q2.adjacency(Vertex::new(0, 1), Vertex::new(0, 1)), Adjacency::Equal);
    let q3 = Quiver::new(&params_for(3, 3), None, 0).unwrap();
    assert_eq!(q3.adjacency(Vertex::new(0, 1), Vertex::new(1, 1)), Adjacency::Forward);
    assert_eq!(q3.adjacency(Vertex::new(1, 1), Vertex::new(0, 1)), Adjacency::Backward);
    assert_eq!(q3.adjacency(Vertex::new(0, 1), Vertex::new(2, 1)), Adjacency::Backward);
    let q23 = Quiver::new(&params_for(2, 3), None, 0).unwrap();
    assert_eq!(q23.vertices.len(), 6);
    assert_eq!(q23.adjacency(Vertex::new(0, 1), Vertex::new(1, 2)), Adjacency::None);
    assert_eq!(q23.arrows().len(), 6);
    for v in &q23.vertices {
        assert_eq!(Vertex::parse(&v.to_string()), Some(*v));
    }
}

#[test]
fn infinite_quiver_is_a_window() {
    struct Get;
    impl WithScalars for Get {
        type Output = Quiver;
        fn run<F: Field + 'static>(self, s: Scalars<F>) -> Quiver {
            let p = derive_params(&s, 1).unwrap();
            let lam = weight_on_k(&p, &p.default_weight()).unwrap();
            Quiver::new(&p, Some(&lam), 2).unwrap()
        }
    }
    let q = FieldSpec::rationals(2).unwrap().dispatch(Get).unwrap();
    assert_eq!(q.vertices.len(), 5 * 2);
    assert_eq!(q.adjacency(Vertex::new(0, 1), Vertex::new(1, 1)), Adjacency::Forward);
    assert_eq!(q.adjacency(Vertex::new(0, 1), Vertex::new(2, 1)), Adjacency::None);
    assert_eq!(q.shift(Vertex::new(0, 2)), Vertex::new(0, 1));
}

#[test]
fn shift_has_order_p_and_orbits_partition() {
    for (e, p) in [(2, 2), (2, 3), (3, 3), (2, 6), (3, 2), (2, 4)] {
        let pr = params_for(e, p);
        let q = Quiver::new(&pr, None, 0).unwrap();
        for &v in &q.vertices {
            let mut w = v;
            for _ in 0..p {
                w = q.shift(w);
            }
            assert_eq!(w, v);
            assert_eq!(q.shift_inv(q.shift(v)), v);
            // the value is multiplied by zeta
            let s = common::scalars(e, p);
            assert_eq!(q.shift(v).value(&s), s.field.mul(&s.zeta, &v.value(&s)));
        }
        let n = 2;
        let classes = q.orbit_classes(n).unwrap();
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, q.vertices.len().pow(n as u32));
        for c in &classes {
            assert_eq!(p as usize % c.members.len(), 0);
            assert_eq!(c.rep, *c.members.iter().min().unwrap());
        }
    }
}

proptest! {
    #[test]
    fn prime_field_axioms(a in -500i64..500, b in -500i64..500, c in -500i64..500, m in prop::sample::select(vec![2u64, 3, 7, 13, 101])) {
        let f = PrimeField::new(m).unwrap();
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a);
        prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
        if let Some(i) = f.inv(&a) {
            prop_assert_eq!(f.mul(&a, &i), 1);
        } else {
            prop_assert_eq!(a, 0);
        }
        prop_assert_eq!(f.parse(&f.render(&a)), Some(a));
    }

    #[test]
    fn rational_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50) {
        let f = Rationals;
        let x = f.parse(&format!("{a}/{b}")).unwrap();
        let y = f.from_i64(c);
        prop_assert_eq!(f.parse(&f.render(&x)), Some(x.clone()));
        prop_assert_eq!(f.sub(&f.add(&x, &y), &y), x.clone());
        if !f.is_zero(&x) {
            prop_assert!(f.is_one(&f.mul(&x, &f.inv(&x).unwrap())));
        }
        prop_assert_eq!(f.powi(&f.from_i64(2), -2).unwrap(), f.parse("1/4").unwrap());
    }

    #[test]
    fn collapse_after_expand_is_identity(t in prop::collection::vec((0i64..2, 1u32..=1, 1u64..3), 1..4)) {
        let pr = params_for(2, 2);
        let w = Weight::from_triples(WeightDomain::IxJPrime, &t);
        let mut full = expand_weight(&pr, &w).unwrap();
        full.domain = WeightDomain::IxJ;
        if full.level() == pr.r {
            prop_assert_eq!(collapse_weight(&pr, &full).unwrap(), w.normalized(&pr));
        }
    }
}
