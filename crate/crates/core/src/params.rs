//! Derived parameters `p'`, `eta`, `omega` and weights over `I`, `I x J`,
//! `I x J'`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{Field, FieldSpec, Order, Scalars};

/// Parameters of a configuration. Residues `i` live in `Z/e` (stored in
/// `0..e`) or in `Z` when `e` is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub e: Order,
    pub p: u64,
    pub d: u64,
    pub r: u64,
    pub pprime: u64,
    pub eta: i64,
    pub omega: u64,
    pub field: FieldSpec,
}

/// Compute `p'`, `eta` and `omega` from the field, with level `d`.
pub fn derive_params<F: Field>(s: &Scalars<F>, d: u64) -> Result<Params> {
    let p = s.spec.p;
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    let (pprime, eta) = match s.spec.e {
        Order::Infinite => {
            if !s.field.is_one(&s.field.pow(&s.zeta, p)) {
                return Err(Error::Domain("zeta^p != 1".into()));
            }
            (p, 0)
        }
        Order::Finite(e) => {
            let pprime = p / num_integer::gcd(p, e);
            let target = s.field.pow(&s.zeta, pprime);
            let eta = (0..e)
                .find(|&k| s.field.pow(&s.q, k) == target)
                .ok_or_else(|| {
                    Error::Domain(format!("zeta^{pprime} is not a power of q"))
                })?;
            (pprime, eta as i64)
        }
    };
    Ok(Params {
        e: s.spec.e,
        p,
        d,
        r: p * d,
        pprime,
        eta,
        omega: p / pprime,
        field: s.spec.clone(),
    })
}

impl Params {
    /// Reduce a residue into canonical range.
    pub fn residue(&self, i: i64) -> i64 {
        match self.e {
            Order::Finite(e) => i.rem_euclid(e as i64),
            Order::Infinite => i,
        }
    }

    /// `#{a in Z/omega : eta * a = i}`.
    pub fn fiber_count(&self, i: i64) -> u64 {
        fiber_count(self.e, self.eta, self.omega, i)
    }

    /// The default weight over `I`: `d` on every residue of `eta * Z`.
    pub fn default_weight(&self) -> Weight {
        let mut w = Weight::new(WeightDomain::I);
        for a in 0..self.omega as i64 {
            let i = self.residue(self.eta * a);
            w.set(i, 0, self.d);
        }
        w
    }
}

/// `#{a in Z/omega : eta * a = i in I}`, always 0 or 1 for valid parameters.
pub fn fiber_count(e: Order, eta: i64, omega: u64, i: i64) -> u64 {
    let norm = |x: i64| match e {
        Order::Finite(e) => x.rem_euclid(e as i64),
        Order::Infinite => x,
    };
    (0..omega as i64).filter(|a| norm(eta * a) == norm(i)).count() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightDomain {
    /// Indexed by `i` alone; stored with `j = 0`.
    I,
    /// Indexed by `(i, j)` with `j` in `1..=p`.
    IxJ,
    /// Indexed by `(i, j)` with `j` in `1..=p'`.
    IxJPrime,
}

/// A finitely supported nonnegative weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weight {
    pub domain: WeightDomain,
    pub entries: BTreeMap<(i64, u32), u64>,
}

impl Weight {
    pub fn new(domain: WeightDomain) -> Self {
        Weight {
            domain,
            entries: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, i: i64, j: u32, v: u64) {
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn get(&self, i: i64, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn level(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Build from `[i, j, value]` triples.
    pub fn from_triples(domain: WeightDomain, t: &[(i64, u32, u64)]) -> Self {
        let mut w = Weight::new(domain);
        for &(i, j, v) in t {
            let cur = w.get(i, j);
            w.set(i, j, cur + v);
        }
        w
    }

    pub fn triples(&self) -> Vec<(i64, u32, u64)> {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v)).collect()
    }

    /// Canonicalize residues (mod `e`).
    pub fn normalized(&self, params: &Params) -> Weight {
        let mut w = Weight::new(self.domain);
        for (&(i, j), &v) in &self.entries {
            let i = params.residue(i);
            let cur = w.get(i, j);
            w.set(i, j, cur + v);
        }
        w
    }
}

/// Collapse a weight over `I x J` (level `r`) to one over `I x J'`:
/// `L_{i,j} = sum over a in Z/omega of W_{i - eta a, j + p' a}`.
pub fn collapse_weight(params: &Params, w: &Weight) -> Result<Weight> {
    if w.domain != WeightDomain::IxJ {
        return Err(Error::Precondition("collapse expects a weight over I x J".into()));
    }
    if w.level() != params.r {
        return Err(Error::Precondition(format!(
            "weight has level {}, expected r = {}",
            w.level(),
            params.r
        )));
    }
    let mut out = Weight::new(WeightDomain::IxJPrime);
    for (&(i, j), &v) in &w.normalized(params).entries {
        if j == 0 || j as u64 > params.p {
            return Err(Error::Domain(format!("j = {j} outside 1..={}", params.p)));
        }
        // j = j0 + p' a with j0 in 1..=p', contributing to (i + eta a, j0).
        let a = (j as u64 - 1) / params.pprime;
        let j0 = (j as u64 - 1) % params.pprime + 1;
        let i0 = params.residue(i + params.eta * a as i64);
        let cur = out.get(i0, j0 as u32);
        out.set(i0, j0 as u32, cur + v);
    }
    Ok(out)
}

/// Right inverse of [`collapse_weight`]: place `L_{i,j}` at `(i, j)`.
pub fn expand_weight(params: &Params, w: &Weight) -> Result<Weight> {
    if w.domain != WeightDomain::IxJPrime {
        return Err(Error::Precondition("expand expects a weight over I x J'".into()));
    }
    let mut out = w.normalized(params);
    out.domain = WeightDomain::IxJ;
    Ok(out)
}

/// Verify `L_i = L_{i + eta}` for a weight over `I`.
pub fn check_sigma_stable(params: &Params, w: &Weight) -> Result<()> {
    if w.domain != WeightDomain::I {
        return Err(Error::Precondition("shift stability is tested on weights over I".into()));
    }
    let w = w.normalized(params);
    for (&(i, _), &v) in &w.entries {
        let shifted = params.residue(i + params.eta);
        if w.get(shifted, 0) != v {
            return Err(Error::NotShiftStable(format!(
                "L_{i} = {v} but L_{shifted} = {}",
                w.get(shifted, 0)
            )));
        }
    }
    Ok(())
}

/// `L_{i,j} = L_i` for every `j` in `J'`.
pub fn weight_on_k(params: &Params, w: &Weight) -> Result<Weight> {
    if w.domain != WeightDomain::I {
        return Err(Error::Precondition("expected a weight over I".into()));
    }
    let mut out = Weight::new(WeightDomain::IxJPrime);
    for (&(i, _), &v) in &w.normalized(params).entries {
        for j in 1..=params.pprime as u32 {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Level `d` weight `V` over `I` with `L_i = sum over a of V_{i - eta a}`,
/// supported on the least representative of each `eta`-coset.
pub fn level_d_weight(params: &Params, w: &Weight) -> Result<Weight> {
    check_sigma_stable(params, w)?;
    let w = w.normalized(params);
    let mut out = Weight::new(WeightDomain::I);
    for (&(i, _), &v) in &w.entries {
        let coset_min = (0..params.omega as i64)
            .map(|a| params.residue(i + params.eta * a))
            .min()
            .unwrap_or(i);
        out.set(coset_min, 0, v);
    }
    if out.level() != params.d {
        return Err(Error::Precondition(format!(
            "weight has level {}, expected omega * d = {}",
            w.level(),
            params.omega * params.d
        )));
    }
    Ok(out)
}

/// Inverse of [`level_d_weight`]: spread a level `d` weight over its cosets.
pub fn lift_level_d(params: &Params, v: &Weight) -> Weight {
    let mut out = Weight::new(WeightDomain::I);
    for (&(i, _), &c) in &v.normalized(params).entries {
        for a in 0..params.omega as i64 {
            let t = params.residue(i + params.eta * a);
            let cur = out.get(t, 0);
            out.set(t, 0, cur + c);
        }
    }
    out
}
