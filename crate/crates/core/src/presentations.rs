//! Emitters for the defining presentations: the Ariki–Koike algebra, the
//! cyclotomic quiver Hecke algebra, its shift-fixed version on orbit
//! classes, and the Hecke algebra of `G(r,p,n)` in two variants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Params, Weight, WeightDomain};
use crate::quiver::{seq_label, swap_at, Adjacency, OrbitClass, Quiver, ResidueSeq};
use crate::rewrite::{Degree, FreeElem, GenId, Generator, Presentation, Relation};
use crate::scalars::{Field, Scalars};

struct Builder<'a, F: Field> {
    f: &'a F,
    gens: Vec<Generator>,
    rels: Vec<Relation<F::Elem>>,
}

impl<'a, F: Field> Builder<'a, F> {
    fn new(f: &'a F) -> Self {
        Builder {
            f,
            gens: Vec::new(),
            rels: Vec::new(),
        }
    }

    fn gen(&mut self, label: String, idempotent: bool, degree: Degree) -> GenId {
        self.gens.push(Generator {
            label,
            idempotent,
            degree,
        });
        self.gens.len() - 1
    }

    fn w(&self, word: &[GenId]) -> FreeElem<F::Elem> {
        FreeElem::mono(word.to_vec(), self.f.one())
    }

    fn c(&self, c: F::Elem) -> FreeElem<F::Elem> {
        FreeElem::mono(Vec::new(), c)
    }

    fn int(&self, v: i64) -> FreeElem<F::Elem> {
        self.c(self.f.from_i64(v))
    }

    fn rel(&mut self, tag: &str, elem: FreeElem<F::Elem>) {
        self.rels.push(Relation {
            tag: tag.to_string(),
            elem,
        });
    }

    fn finish(self, name: String, s_field: crate::scalars::FieldSpec) -> Presentation<F::Elem> {
        Presentation {
            name,
            field: s_field,
            generators: self.gens,
            relations: self.rels,
            notes: BTreeMap::new(),
        }
    }
}

/// `prod (x - v)^m` as coefficients, lowest degree first.
fn root_poly<F: Field>(f: &F, roots: &[(F::Elem, u64)]) -> Vec<F::Elem> {
    let mut poly = alloc::vec![f.one()];
    for (v, m) in roots {
        for _ in 0..*m {
            let mut next = alloc::vec![f.zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] = f.add(&next[k + 1], c);
                next[k] = f.sub(&next[k], &f.mul(c, v));
            }
            poly = next;
        }
    }
    poly
}

fn poly_in<F: Field>(b: &Builder<'_, F>, x: GenId, coeffs: &[F::Elem]) -> FreeElem<F::Elem> {
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        terms.push((alloc::vec![x; k], c.clone()));
    }
    FreeElem { terms }.simplify(b.f)
}

fn quadratic<F: Field>(b: &Builder<'_, F>, t: GenId, q: &F::Elem) -> FreeElem<F::Elem> {
    // (t + 1)(t - q) = t^2 + (1 - q) t - q
    let f = b.f;
    poly_in(b, t, &[f.neg(q), f.sub(&f.one(), q), f.one()])
}

/// The Ariki–Koike algebra with generators `S, T1, ..., T(n-1)` and
/// cyclotomic relation `prod over (i,j) in K of (S - zeta^j q^i)^L_{i,j}`.
pub fn ariki_koike<F: Field>(s: &Scalars<F>, params: &Params, lambda: &Weight, n: usize) -> Result<Presentation<F::Elem>> {
    if lambda.domain != WeightDomain::IxJPrime {
        return Err(Error::Precondition("the Ariki–Koike weight lives on I x J'".into()));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let f = &s.field;
    let mut b = Builder::new(f);
    let sg = b.gen("S".into(), false, Degree::Fixed(0));
    let t: Vec<GenId> = (1..n).map(|a| b.gen(format!("T{a}"), false, Degree::Fixed(0))).collect();

    let mut roots = Vec::new();
    for (&(i, j), &m) in &lambda.normalized(params).entries {
        roots.push((crate::quiver::Vertex::new(i, j).value(s), m));
    }
    let cyc = root_poly(f, &roots);
    let e = poly_in(&b, sg, &cyc);
    b.rel("cyclotomic", e);
    for &ta in &t {
        let e = quadratic(&b, ta, &s.q);
        b.rel("quadratic", e);
    }
    if n >= 2 {
        let e = b.w(&[sg, t[0], sg, t[0]]).sub(f, &b.w(&[t[0], sg, t[0], sg]));
        b.rel("type-B braid", e);
    }
    for &ta in t.iter().skip(1) {
        let e = b.w(&[sg, ta]).sub(f, &b.w(&[ta, sg]));
        b.rel("S commutes", e);
    }
    for a in 0..t.len() {
        for c in a + 2..t.len() {
            let e = b.w(&[t[a], t[c]]).sub(f, &b.w(&[t[c], t[a]]));
            b.rel("far commute", e);
        }
    }
    for a in 0..t.len().saturating_sub(1) {
        let e = b
            .w(&[t[a], t[a + 1], t[a]])
            .sub(f, &b.w(&[t[a + 1], t[a], t[a + 1]]));
        b.rel("braid", e);
    }
    Ok(b.finish(format!("ariki-koike n={n}"), s.spec.clone()))
}

/// Vertices of a quiver Hecke presentation: either full residue sequences
/// or shift orbit classes (with their least representative).
pub enum KlrVertices<'a> {
    Sequences(&'a [ResidueSeq]),
    Orbits(&'a [OrbitClass]),
}

/// The cyclotomic quiver Hecke algebra on the given vertices, with
/// cyclotomic relation `y_1^{L_{k_1}} e(k) = 0` where `L` lives on `K`.
pub fn klr_cyclotomic<F: Field>(
    f: &F,
    spec: &crate::scalars::FieldSpec,
    quiver: &Quiver,
    lambda: &Weight,
    vertices: KlrVertices<'_>,
    n: usize,
) -> Result<Presentation<F::Elem>> {
    if lambda.domain != WeightDomain::IxJPrime {
        return Err(Error::Precondition("the cyclotomic weight lives on K = I x J'".into()));
    }
    let (reps, labels, name): (Vec<ResidueSeq>, Vec<String>, &str) = match vertices {
        KlrVertices::Sequences(seqs) => (
            seqs.to_vec(),
            seqs.iter().map(|k| format!("e[{}]", seq_label(k))).collect(),
            "quiver-hecke",
        ),
        KlrVertices::Orbits(classes) => (
            classes.iter().map(|c| c.rep.clone()).collect(),
            classes.iter().map(|c| format!("e{{{}}}", seq_label(&c.rep))).collect(),
            "quiver-hecke-fixed",
        ),
    };
    if reps.iter().any(|k| k.len() != n) {
        return Err(Error::Precondition(format!("residue sequences must have length {n}")));
    }
    // Locate s_a . k among the vertices.
    let orbit_index: BTreeMap<ResidueSeq, usize> = match vertices {
        KlrVertices::Sequences(seqs) => seqs.iter().enumerate().map(|(x, k)| (k.clone(), x)).collect(),
        KlrVertices::Orbits(classes) => {
            let mut m = BTreeMap::new();
            for (x, c) in classes.iter().enumerate() {
                for k in &c.members {
                    m.insert(k.clone(), x);
                }
            }
            m
        }
    };
    let find = |k: &ResidueSeq| -> Result<usize> {
        orbit_index
            .get(k)
            .copied()
            .ok_or_else(|| Error::Precondition(format!("vertex set not closed: {}", seq_label(k))))
    };

    let mut b = Builder::new(f);
    let es: Vec<GenId> = labels
        .into_iter()
        .map(|l| b.gen(l, true, Degree::Fixed(0)))
        .collect();
    let ys: Vec<GenId> = (1..=n).map(|a| b.gen(format!("y{a}"), false, Degree::Fixed(2))).collect();
    let psis: Vec<GenId> = (1..n)
        .map(|a| {
            let degs = reps
                .iter()
                .map(|k| quiver.adjacency(k[a - 1], k[a]).psi_degree())
                .collect();
            b.gen(format!("psi{a}"), false, Degree::PerObject(degs))
        })
        .collect();

    let mut sum = b.int(-1);
    for &e in &es {
        sum = sum.add(f, &b.w(&[e]));
    }
    b.rel("idempotents sum to one", sum);
    for &e1 in &es {
        for &e2 in &es {
            let mut el = b.w(&[e1, e2]);
            if e1 == e2 {
                el = el.sub(f, &b.w(&[e1]));
            }
            b.rel("orthogonal idempotents", el);
        }
    }
    for &y in &ys {
        for &e in &es {
            let el = b.w(&[y, e]).sub(f, &b.w(&[e, y]));
            b.rel("y fixes idempotents", el);
        }
    }
    for (a0, &psi) in psis.iter().enumerate() {
        for (x, k) in reps.iter().enumerate() {
            let target = es[find(&swap_at(k, a0 + 1))?];
            let el = b.w(&[psi, es[x]]).sub(f, &b.w(&[target, psi]));
            b.rel("psi permutes idempotents", el);
        }
    }
    for a in 0..n {
        for c in a + 1..n {
            let el = b.w(&[ys[a], ys[c]]).sub(f, &b.w(&[ys[c], ys[a]]));
            b.rel("y commute", el);
        }
    }
    for (a, &psi) in psis.iter().enumerate() {
        for (c, &y) in ys.iter().enumerate() {
            if c != a && c != a + 1 {
                let el = b.w(&[psi, y]).sub(f, &b.w(&[y, psi]));
                b.rel("psi commutes with distant y", el);
            }
        }
    }
    for a in 0..psis.len() {
        for c in a + 2..psis.len() {
            let el = b.w(&[psis[a], psis[c]]).sub(f, &b.w(&[psis[c], psis[a]]));
            b.rel("distant psi commute", el);
        }
    }
    for (a, &psi) in psis.iter().enumerate() {
        let (ya, yb) = (ys[a], ys[a + 1]);
        for (x, k) in reps.iter().enumerate() {
            let e = es[x];
            let adj = quiver.adjacency(k[a], k[a + 1]);
            let delta = if adj == Adjacency::Equal { b.w(&[e]) } else { FreeElem::zero() };
            let el = b
                .w(&[psi, yb, e])
                .sub(f, &b.w(&[ya, psi, e]))
                .sub(f, &delta);
            b.rel("psi y_(a+1)", el);
            let el = b
                .w(&[yb, psi, e])
                .sub(f, &b.w(&[psi, ya, e]))
                .sub(f, &delta);
            b.rel("y_(a+1) psi", el);
            let diff = b.w(&[yb, e]).sub(f, &b.w(&[ya, e])); // (y_{a+1} - y_a) e
            let rhs = match adj {
                Adjacency::Equal => FreeElem::zero(),
                Adjacency::None => b.w(&[e]),
                Adjacency::Forward => diff,
                Adjacency::Backward => diff.scale(f, &f.from_i64(-1)),
                Adjacency::Both => {
                    let d1 = b.w(&[yb]).sub(f, &b.w(&[ya]));
                    d1.mul(f, &d1).scale(f, &f.from_i64(-1)).mul(f, &b.w(&[e]))
                }
            };
            let el = b.w(&[psi, psi, e]).sub(f, &rhs);
            b.rel("psi squared", el);
        }
    }
    for a in 0..psis.len().saturating_sub(1) {
        let (p1, p2) = (psis[a], psis[a + 1]);
        for (x, k) in reps.iter().enumerate() {
            let e = es[x];
            let lhs = b.w(&[p2, p1, p2, e]);
            let mut rhs = b.w(&[p1, p2, p1, e]);
            if k[a + 2] == k[a] {
                match quiver.adjacency(k[a], k[a + 1]) {
                    Adjacency::Forward => rhs = rhs.sub(f, &b.w(&[e])),
                    Adjacency::Backward => rhs = rhs.add(f, &b.w(&[e])),
                    Adjacency::Both => {
                        let corr = b
                            .w(&[ys[a + 1], e])
                            .scale(f, &f.from_i64(2))
                            .sub(f, &b.w(&[ys[a], e]))
                            .sub(f, &b.w(&[ys[a + 2], e]));
                        rhs = rhs.add(f, &corr);
                    }
                    _ => {}
                }
            }
            b.rel("braid", lhs.sub(f, &rhs));
        }
    }
    for (x, k) in reps.iter().enumerate() {
        let m = lambda.get(k[0].i, k[0].j);
        let mut word = alloc::vec![ys[0]; m as usize];
        word.push(es[x]);
        let el = b.w(&word);
        b.rel("cyclotomic", el);
    }
    Ok(b.finish(format!("{name} n={n}"), spec.clone()))
}

/// Which form of the last `G(r,p,n)` relation to emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrpnVariant {
    /// `s t'1 t1 t'1 ... = t1 s t'1 t1 ...` with `p + 1` factors each side.
    Bmr,
    /// The rational form, cleared of negative powers by left multiplication
    /// with `(q^-1 t'1 t1)^(p-2)`.
    Ar,
}

/// The `G(r,p,n)` Hecke algebra on `s, t'1, t1, ..., t(n-1)`. `small` is the
/// level `d` weight on `I` in the cyclotomic relation `prod (s - q^{p i})^V_i`.
pub fn grpn<F: Field>(
    s: &Scalars<F>,
    params: &Params,
    small: &Weight,
    n: usize,
    variant: GrpnVariant,
) -> Result<Presentation<F::Elem>> {
    if small.domain != WeightDomain::I {
        return Err(Error::Precondition("the G(r,p,n) weight lives on I".into()));
    }
    if n < 2 {
        return Err(Error::Precondition("G(r,p,n) presentations need n >= 2".into()));
    }
    let p = params.p;
    if variant == GrpnVariant::Ar && p < 2 {
        return Err(Error::Precondition("the rational variant needs p >= 2".into()));
    }
    let f = &s.field;
    let mut b = Builder::new(f);
    let sg = b.gen("s".into(), false, Degree::Fixed(0));
    let tp = b.gen("t'1".into(), false, Degree::Fixed(0));
    let t: Vec<GenId> = (1..n).map(|a| b.gen(format!("t{a}"), false, Degree::Fixed(0))).collect();

    let mut roots = Vec::new();
    for (&(i, _), &m) in &small.normalized(params).entries {
        let qi = f.powi(&s.q, i * p as i64)?;
        roots.push((qi, m));
    }
    let e = poly_in(&b, sg, &root_poly(f, &roots));
    b.rel("cyclotomic", e);
    for &g in core::iter::once(&tp).chain(t.iter()) {
        let e = quadratic(&b, g, &s.q);
        b.rel("quadratic", e);
    }
    if n >= 3 {
        let e = b.w(&[tp, t[1], tp]).sub(f, &b.w(&[t[1], tp, t[1]]));
        b.rel("braid", e);
    }
    for a in 0..t.len().saturating_sub(1) {
        let e = b
            .w(&[t[a], t[a + 1], t[a]])
            .sub(f, &b.w(&[t[a + 1], t[a], t[a + 1]]));
        b.rel("braid", e);
    }
    if n >= 3 {
        let l = b.w(&[tp, t[0], t[1], tp, t[0], t[1]]);
        let r = b.w(&[t[1], tp, t[0], t[1], tp, t[0]]);
        b.rel("six-term braid", l.sub(f, &r));
    }
    for &ta in t.iter().skip(2) {
        let e = b.w(&[tp, ta]).sub(f, &b.w(&[ta, tp]));
        b.rel("t'1 far commute", e);
    }
    for a in 0..t.len() {
        for c in a + 2..t.len() {
            let e = b.w(&[t[a], t[c]]).sub(f, &b.w(&[t[c], t[a]]));
            b.rel("far commute", e);
        }
    }
    for &ta in t.iter().skip(1) {
        let e = b.w(&[sg, ta]).sub(f, &b.w(&[ta, sg]));
        b.rel("s commutes", e);
    }
    let e = b.w(&[sg, tp, t[0]]).sub(f, &b.w(&[tp, t[0], sg]));
    b.rel("s t'1 t1", e);

    let mut notes = BTreeMap::new();
    match variant {
        GrpnVariant::Bmr => {
            let lhs: Vec<GenId> = (0..=p as usize)
                .map(|m| if m == 0 { sg } else if m % 2 == 1 { tp } else { t[0] })
                .collect();
            let rhs: Vec<GenId> = (0..=p as usize)
                .map(|m| match m {
                    0 => t[0],
                    1 => sg,
                    _ if m % 2 == 0 => tp,
                    _ => t[0],
                })
                .collect();
            let e = b.w(&lhs).sub(f, &b.w(&rhs));
            b.rel("long braid", e);
        }
        GrpnVariant::Ar => {
            // M = q^-1 t'1 t1; M^(p-2) s t'1 t1 = t1 s t'1 + (q-1) sum_{k=1}^{p-2} M^(p-1-k) s t'1
            let qinv = f.inv(&s.q).expect("q is nonzero");
            let m = b.w(&[tp, t[0]]).scale(f, &qinv);
            let clear = p - 2;
            let lhs = m.pow(f, clear).mul(f, &b.w(&[sg, tp, t[0]]));
            let mut rhs = b.w(&[t[0], sg, tp]);
            let qm1 = f.sub(&s.q, &f.one());
            for k in 1..=p.saturating_sub(2) {
                let term = m.pow(f, p - 1 - k).mul(f, &b.w(&[sg, tp])).scale(f, &qm1);
                rhs = rhs.add(f, &term);
            }
            b.rel("long braid (rational form)", lhs.sub(f, &rhs));
            notes.insert("clearing factor".into(), format!("(q^-1 t'1 t1)^{clear}"));
        }
    }
    let mut pres = b.finish(format!("grpn {variant:?} n={n}").to_lowercase(), s.spec.clone());
    pres.notes = notes;
    Ok(pres)
}
