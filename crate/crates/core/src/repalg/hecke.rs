use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::{poly, regular_representation, AlgElement, MatrixAlgebra};
use crate::error::{Error, Result};
use crate::params::{Params, Weight};
use crate::presentations::ariki_koike;
use crate::quiver::{seq_label, Quiver, ResidueSeq, Vertex};
use crate::rewrite::{complete, Caps, Presentation, RewriteSystem};
use crate::scalars::{Field, Scalars};

/// Vertices of the quiver with their (distinct) values `zeta^j q^i`.
#[derive(Clone, Debug)]
pub struct SpectralGrid<F: Field> {
    pub entries: Vec<(Vertex, F::Elem)>,
}

impl<F: Field> SpectralGrid<F> {
    pub fn new(s: &Scalars<F>, quiver: &Quiver) -> Result<Self> {
        let entries: Vec<(Vertex, F::Elem)> = quiver.vertices.iter().map(|v| (*v, v.value(s))).collect();
        for (a, (va, xa)) in entries.iter().enumerate() {
            if let Some((vb, _)) = entries[a + 1..].iter().find(|(_, xb)| xb == xa) {
                return Err(Error::Domain(format!("vertices {va} and {vb} share a value")));
            }
        }
        Ok(SpectralGrid { entries })
    }

    pub fn value(&self, v: Vertex) -> Option<&F::Elem> {
        self.entries.iter().find(|(w, _)| *w == v).map(|(_, x)| x)
    }
}

/// The Ariki–Koike algebra realised as matrices, with its Jucys–Murphy
/// elements and the idempotents `e(k)` cut out by their spectrum.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra<F: Field> {
    pub scalars: Scalars<F>,
    pub params: Params,
    pub lambda: Weight,
    pub n: usize,
    pub quiver: Quiver,
    pub grid: SpectralGrid<F>,
    pub presentation: Presentation<F::Elem>,
    pub system: RewriteSystem<F>,
    pub alg: MatrixAlgebra<F>,
    pub s: AlgElement<F::Elem>,
    /// `T_1 .. T_{n-1}` at indices `0 .. n-2`.
    pub t: Vec<AlgElement<F::Elem>>,
    /// `X_1 .. X_n` at indices `0 .. n-1`.
    pub x: Vec<AlgElement<F::Elem>>,
    /// Nonzero `e(k)` only.
    pub idempotents: BTreeMap<ResidueSeq, AlgElement<F::Elem>>,
}

impl<F: Field> HeckeAlgebra<F> {
    /// `lambda` is a weight on `K = I x J'`.
    pub fn build(s: &Scalars<F>, params: &Params, lambda: &Weight, n: usize, caps: &Caps) -> Result<Self> {
        let lambda = lambda.normalized(params);
        let pres = ariki_koike(s, params, &lambda, n)?;
        let system = complete(&s.field, &pres, None, caps)?;
        let alg = regular_representation(&system, &pres)?;
        let f = &s.field;
        let sgen = alg.gens[0].clone();
        let t: Vec<AlgElement<F::Elem>> = (1..n).map(|a| alg.gens[a].clone()).collect();
        let qinv = f.inv(&s.q).expect("q is nonzero");
        let mut x = alloc::vec![sgen.clone()];
        for a in 0..n.saturating_sub(1) {
            let next = alg.scale(&alg.mul_all(&[&t[a], &x[a], &t[a]]), &qinv);
            x.push(next);
        }
        let quiver = Quiver::new(params, Some(&lambda), n as u64)?;
        let grid = SpectralGrid::new(s, &quiver)?;
        let idempotents = spectral_idempotents(&alg, &x, &grid)?;
        Ok(HeckeAlgebra {
            scalars: s.clone(),
            params: params.clone(),
            lambda,
            n,
            quiver,
            grid,
            presentation: pres,
            system,
            alg,
            s: sgen,
            t,
            x,
            idempotents,
        })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim
    }

    pub fn value(&self, v: Vertex) -> F::Elem {
        self.grid.value(v).cloned().unwrap_or_else(|| v.value(&self.scalars))
    }

    pub fn e(&self, k: &[Vertex]) -> Option<&AlgElement<F::Elem>> {
        self.idempotents.get(k)
    }
}

/// Projectors `pi_v(X)` onto the generalized eigenspaces of `X` for each
/// grid value `v`, by CRT against the minimal polynomial.
pub fn eigenprojectors<F: Field>(
    alg: &MatrixAlgebra<F>,
    x: &AlgElement<F::Elem>,
    grid: &SpectralGrid<F>,
) -> Result<Vec<(Vertex, AlgElement<F::Elem>)>> {
    let f = &alg.field;
    let m = alg.minimal_polynomial(x);
    let mut rest = m.clone();
    let mut factors = Vec::new();
    for (v, val) in &grid.entries {
        let lin = alloc::vec![f.neg(val), f.one()];
        let mut mult = 0;
        loop {
            let (q, r) = poly::divmod(f, &rest, &lin);
            if !r.is_empty() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((*v, val.clone(), mult));
        }
    }
    if rest.len() > 1 {
        let stray = f
            .elements()
            .and_then(|els| els.into_iter().find(|c| f.is_zero(&poly::eval(f, &rest, c))))
            .map(|c| f.render(&c))
            .unwrap_or_else(|| format!("root of a factor of degree {}", rest.len() - 1));
        return Err(Error::StrayEigenvalue(stray));
    }
    let mut out = Vec::new();
    for (v, val, mult) in factors {
        let a = poly::linear_power(f, &val, mult);
        let (b, _) = poly::divmod(f, &m, &a);
        // u b = 1 mod a, projector = u b mod m
        let (_, u, _) = poly::ext_gcd(f, &b, &a);
        let (_, proj) = poly::divmod(f, &poly::mul(f, &u, &b), &m);
        out.push((v, alg.eval_poly(&proj, x)));
    }
    Ok(out)
}

/// The nonzero `e(k) = prod_a pi_{k_a}(X_a)` over residue sequences `k`.
pub fn spectral_idempotents<F: Field>(
    alg: &MatrixAlgebra<F>,
    xs: &[AlgElement<F::Elem>],
    grid: &SpectralGrid<F>,
) -> Result<BTreeMap<ResidueSeq, AlgElement<F::Elem>>> {
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            if !alg.commutes(&xs[a], &xs[b]) {
                return Err(Error::RelationFailed(format!("X_{} and X_{} do not commute", a + 1, b + 1)));
            }
        }
    }
    let projs: Vec<Vec<(Vertex, AlgElement<F::Elem>)>> = xs
        .iter()
        .map(|x| eigenprojectors(alg, x, grid))
        .collect::<Result<_>>()?;
    let mut layer: Vec<(ResidueSeq, AlgElement<F::Elem>)> = alloc::vec![(Vec::new(), alg.one())];
    for pa in &projs {
        let mut next = Vec::new();
        for (k, e) in &layer {
            for (v, p) in pa {
                let prod = alg.mul(e, p);
                if !alg.is_zero(&prod) {
                    let mut k2 = k.clone();
                    k2.push(*v);
                    next.push((k2, prod));
                }
            }
        }
        layer = next;
    }
    let out: BTreeMap<ResidueSeq, AlgElement<F::Elem>> = layer.into_iter().collect();
    let mut sum = alg.zero();
    for (k, e) in &out {
        if alg.mul(e, e) != *e {
            return Err(Error::RelationFailed(format!("e({}) is not idempotent", seq_label(k))));
        }
        sum = alg.add(&sum, e);
    }
    if sum != alg.one() {
        return Err(Error::RelationFailed("spectral idempotents do not sum to 1".into()));
    }
    Ok(out)
}
