//! Dense univariate polynomials, lowest coefficient first, no trailing zeros.

use alloc::vec::Vec;

use crate::scalars::Field;

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut p: Poly<F::Elem>) -> Poly<F::Elem> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let b = trim(f, b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(f, a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv(b.last().expect("nonzero")).expect("nonzero");
    let mut q = alloc::vec![f.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(r.last().expect("nonempty"), &lead_inv);
        for (i, y) in b.iter().enumerate() {
            r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, y));
        }
        q[shift] = c;
        r.pop();
        r = trim(f, r);
    }
    (trim(f, q), r)
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn ext_gcd<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
    let (mut r0, mut r1) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    let (mut s0, mut s1) = (alloc::vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), alloc::vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divmod(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = f.inv(&lead).expect("nonzero");
        let sc = |p: Poly<F::Elem>| p.iter().map(|c| f.mul(c, &inv)).collect::<Vec<_>>();
        (sc(r0), sc(s0), sc(t0))
    } else {
        (r0, s0, t0)
    }
}

pub fn eval<F: Field>(f: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in p.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// `(t - v)^m`.
pub fn linear_power<F: Field>(f: &F, v: &F::Elem, m: usize) -> Poly<F::Elem> {
    let lin = alloc::vec![f.neg(v), f.one()];
    let mut out = alloc::vec![f.one()];
    for _ in 0..m {
        out = mul(f, &out, &lin);
    }
    out
}
