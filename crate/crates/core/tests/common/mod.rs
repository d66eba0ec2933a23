#![allow(dead_code)]

use hecke_core::params::{derive_params, weight_on_k, Params, Weight};
use hecke_core::repalg::HeckeAlgebra;
use hecke_core::rewrite::Caps;
use hecke_core::scalars::{find_prime_field, Field, FieldKind, FieldSpec, PrimeField, Scalars};

pub fn prime_scalars(spec: &FieldSpec) -> Scalars<PrimeField> {
    let FieldKind::Prime { modulus } = spec.kind else {
        panic!("prime field expected");
    };
    let field = PrimeField::new(modulus).unwrap();
    Scalars {
        field,
        q: field.from_i64(spec.q),
        zeta: field.from_i64(spec.zeta),
        spec: spec.clone(),
    }
}

/// Smallest prime field for `(e, p)`.
pub fn scalars(e: u64, p: u64) -> Scalars<PrimeField> {
    prime_scalars(&find_prime_field(e, p, 2).unwrap())
}

pub fn setup(e: u64, p: u64, d: u64) -> (Scalars<PrimeField>, Params, Weight) {
    let s = scalars(e, p);
    let params = derive_params(&s, d).unwrap();
    let lam = weight_on_k(&params, &params.default_weight()).unwrap();
    (s, params, lam)
}

pub fn hecke(e: u64, p: u64, d: u64, n: usize) -> HeckeAlgebra<PrimeField> {
    let (s, params, lam) = setup(e, p, d);
    HeckeAlgebra::build(&s, &params, &lam, n, &Caps::default()).unwrap()
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
