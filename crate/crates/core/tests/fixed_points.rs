mod common;

use std::sync::OnceLock;

use hecke_core::bkiso::{build_images, Family};
use hecke_core::fixedpoint::*;
use hecke_core::params::{Weight, WeightDomain};
use hecke_core::presentations::{ariki_koike, klr_cyclotomic, KlrVertices};
use hecke_core::repalg::{matrix, HeckeAlgebra};
use hecke_core::report::{Check, Status};
use hecke_core::rewrite::Caps;
use hecke_core::scalars::{find_prime_field, PrimeField};
use hecke_core::Error;
use proptest::prelude::*;

fn find<'a>(checks: &'a [Check], name: &str) -> &'a Check {
    checks.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn shift_on_generators() {
    let h = common::hecke(2, 2, 1, 2);
    let (shift, checks) = hecke_shift(&h).unwrap();
    assert!(checks.iter().all(Check::passed));
    let f = h.scalars.field;
    let sq = matrix::mul(&f, &shift.linear, &shift.linear);
    assert_eq!(sq, matrix::identity(&f, h.dim()));
    assert_eq!(shift.apply(&h.alg, &h.s), h.alg.scale(&h.s, &h.scalars.zeta));
    assert_eq!(shift.apply(&h.alg, &h.t[0]), h.t[0]);

    let h = common::hecke(2, 3, 1, 2);
    let (shift, _) = hecke_shift(&h).unwrap();
    assert_eq!(shift.apply(&h.alg, &h.x[1]), h.alg.scale(&h.x[1], &h.scalars.zeta));
    assert_ne!(shift.apply(&h.alg, &h.x[1]), h.x[1]);
}

#[test]
fn unstable_weight_has_no_shift() {
    let (s, params, _) = common::setup(2, 2, 1);
    let lam = Weight::from_triples(WeightDomain::IxJPrime, &[(0, 1, 2)]);
    let h = HeckeAlgebra::build(&s, &params, &lam, 2, &Caps::default()).unwrap();
    assert!(matches!(hecke_shift(&h), Err(Error::NotShiftStable(_))));
}

#[test]
fn fixed_dimensions() {
    for (e, p, expect) in [(2, 2, 4), (2, 3, 6), (3, 3, 6), (3, 2, 4), (2, 4, 8)] {
        let h = common::hecke(e, p, 1, 2);
        let (shift, _) = hecke_shift(&h).unwrap();
        let (mu, checks) = averaging_projector(&h, &shift).unwrap();
        assert!(checks.iter().all(Check::passed));
        assert_eq!(matrix::rank(&h.scalars.field, &mu), expect);
        let (phi, dim) = verify_phi(&h, &mu).unwrap();
        assert!(phi.iter().all(Check::passed), "e={e} p={p}: {phi:?}");
        assert_eq!(dim, expect);
        let sectors = sector_ranks(&h, &shift);
        assert_eq!(sectors.len() as u64, p);
        assert!(sectors.iter().all(|&r| r == expect), "equal sectors {sectors:?}");
    }
}

#[test]
fn fixed_presentations_complete_to_the_fixed_dimension() {
    for (e, p, expect) in [(2, 2, 4), (2, 3, 6)] {
        let h = common::hecke(e, p, 1, 2);
        let (shift, _) = hecke_shift(&h).unwrap();
        let (checks, summary) = fixed_presentation_check(&h, &shift, expect, &Caps::default()).unwrap();
        assert!(checks.iter().all(Check::passed), "{checks:?}");
        assert_eq!(summary.fixed_dim, Some(expect));
        assert_eq!(summary.full_dim, Some(h.dim()));
    }
    let h = common::hecke(2, 2, 1, 2);
    let (shift, _) = hecke_shift(&h).unwrap();
    let (_, summary) = fixed_presentation_check(&h, &shift, 4, &Caps::default()).unwrap();
    assert_eq!(summary.fixed_graded, Some([(0, 1), (2, 2), (4, 1)].into_iter().collect()));
}

#[test]
fn intertwining_dichotomy() {
    for (e, p) in [(2, 2), (2, 3), (3, 3), (3, 2)] {
        let h = common::hecke(e, p, 1, 2);
        let (shift, _) = hecke_shift(&h).unwrap();
        let img = build_images(&h, Family::Sw).unwrap();
        let checks = verify_intertwining(&h, &img, &shift);
        assert!(checks.iter().all(Check::passed), "SW e={e} p={p}: {checks:?}");
    }
    let h = common::hecke(3, 3, 1, 2);
    let (shift, _) = hecke_shift(&h).unwrap();
    let img = build_images(&h, Family::Bk).unwrap();
    let checks = verify_intertwining(&h, &img, &shift);
    assert!(find(&checks, "shift on idempotents").passed());
    assert!(find(&checks, "shift on y").passed());
    let psi = find(&checks, "shift on psi");
    assert_eq!(psi.status, Status::Fail);
    assert!(psi.failures.iter().all(|f| f.starts_with("a=1, k=(")));
}

#[test]
fn gradings() {
    let (s, params, lam) = common::setup(3, 3, 1);
    let h = common::hecke(3, 3, 1, 2);
    let seqs = h.quiver.sequences(2).unwrap();
    let classes = h.quiver.orbit_classes(2).unwrap();
    let full = klr_cyclotomic(&s.field, &s.spec, &h.quiver, &lam, KlrVertices::Sequences(&seqs), 2).unwrap();
    let fixed = klr_cyclotomic(&s.field, &s.spec, &h.quiver, &lam, KlrVertices::Orbits(&classes), 2).unwrap();
    assert!(homogeneity_check(&s.field, &full).unwrap().passed());
    assert!(homogeneity_check(&s.field, &fixed).unwrap().passed());
    let ak = ariki_koike(&s, &params, &lam, 2).unwrap();
    let control = homogeneity_check(&s.field, &length_graded(&ak)).unwrap();
    assert_eq!(control.status, Status::Fail);
    assert!(control.failures.iter().any(|f| f.starts_with("quadratic")));
}

#[test]
fn appendix() {
    for (e, p) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 3)] {
        let h = common::hecke(e, p, 1, 2);
        let checks = appendix_checks(&h, &Caps::default()).unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(Check::passed), "e={e} p={p}: {checks:?}");
        if p == 1 {
            assert!(find(&checks, "mutual inverses").passed());
        } else {
            assert!(find(&checks, "rational identity").passed());
            assert!(find(&checks, "variants agree").passed());
        }
    }
}

#[test]
fn second_roots() {
    let spec = find_prime_field(3, 3, 2).unwrap();
    let other = second_root(&spec).unwrap().unwrap();
    assert_eq!((other.q, other.zeta), (4, 4));
    assert_eq!(other.modulus(), Some(7));
    // q = -1 is the only element of order 2
    assert_eq!(second_root(&find_prime_field(2, 3, 2).unwrap()).unwrap(), None);
}

#[test]
fn independence_of_q() {
    let spec = find_prime_field(3, 3, 2).unwrap();
    let a = common::prime_scalars(&spec);
    let b = common::prime_scalars(&second_root(&spec).unwrap().unwrap());
    let check = independence_check(&a, &b, 1, 2, &Caps::default()).unwrap();
    assert!(check.passed(), "{check:?}");
    assert_eq!(check.data.get("dimension").map(String::as_str), Some("6"));
}

#[test]
fn canonical_form_detects_differences() {
    let (s, _, lam) = common::setup(3, 3, 1);
    let h = common::hecke(3, 3, 1, 2);
    let classes = h.quiver.orbit_classes(2).unwrap();
    let pres = klr_cyclotomic(&s.field, &s.spec, &h.quiver, &lam, KlrVertices::Orbits(&classes), 2).unwrap();
    let mut other = pres.clone();
    other.relations.pop();
    assert_eq!(canonical_form(&s.field, &pres), canonical_form(&s.field, &pres.clone()));
    assert_ne!(canonical_form(&s.field, &pres), canonical_form(&s.field, &other));
}

struct Fixture {
    h: HeckeAlgebra<PrimeField>,
    shift: ShiftMap<u64>,
    mu: matrix::Matrix<u64>,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let h = common::hecke(2, 3, 1, 2);
        let (shift, _) = hecke_shift(&h).unwrap();
        let (mu, _) = averaging_projector(&h, &shift).unwrap();
        Fixture { h, shift, mu }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shift_is_multiplicative(a in prop::collection::vec(0u64..7, 18), b in prop::collection::vec(0u64..7, 18)) {
        let fx = fixture();
        let alg = &fx.h.alg;
        let (x, y) = (alg.from_coords(&a), alg.from_coords(&b));
        let lhs = fx.shift.apply(alg, &alg.mul(&x, &y));
        let rhs = alg.mul(&fx.shift.apply(alg, &x), &fx.shift.apply(alg, &y));
        prop_assert_eq!(lhs, rhs);
        // on coordinates the shift is the linear map
        let f = &alg.field;
        prop_assert_eq!(alg.coords(&fx.shift.apply(alg, &x)), matrix::mul_vec(f, &fx.shift.linear, &a));
    }

    #[test]
    fn averaging_absorbs_the_shift(a in prop::collection::vec(0u64..7, 18)) {
        let fx = fixture();
        let alg = &fx.h.alg;
        let f = &alg.field;
        let x = alg.from_coords(&a);
        let sx = alg.coords(&fx.shift.apply(alg, &x));
        let m = matrix::mul_vec(f, &fx.mu, &a);
        prop_assert_eq!(matrix::mul_vec(f, &fx.mu, &sx), m.clone());
        // mu(x) is fixed by the shift
        let mx = alg.from_coords(&m);
        prop_assert_eq!(fx.shift.apply(alg, &mx), mx);
    }
}
