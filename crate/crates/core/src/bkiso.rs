//! The isomorphism between the cyclotomic Hecke algebra and the cyclotomic
//! quiver Hecke algebra, realised inside the Hecke matrix algebra.
//!
//! Power series in the `y`'s are never truncated: every `P_a(k)`, `Q_a(k)`
//! and their inverses is an element of the corner `e(k) H e(k)`, computed by
//! corner inversion.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::presentations::{klr_cyclotomic, KlrVertices};
use crate::quiver::{composition_of, seq_label, swap_at, Adjacency, KComposition, ResidueSeq, Vertex};
use crate::repalg::{AlgElement, HeckeAlgebra, MatrixAlgebra};
use crate::report::Check;
use crate::scalars::Field;

/// Which family `Q_a(k)` enters the isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `Q = 1 - P` away from back edges, `1 - P` over a `y` difference on
    /// them.
    Sw,
    /// The original five-case choice.
    Bk,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sw => "sw",
            Family::Bk => "bk",
        })
    }
}

/// The two-variable data a `P`/`Q` formula sees: vertex values `vf, vs` and
/// the corner elements standing for the first and second `y`.
struct Local<'a, E> {
    e: &'a AlgElement<E>,
    vf: E,
    vs: E,
    yf: AlgElement<E>,
    ys: AlgElement<E>,
    adj: Adjacency,
}

/// `P` and `Q` on one corner, with `Q^{-1}`.
#[derive(Clone, Debug)]
pub struct CornerData<E> {
    pub p: AlgElement<E>,
    pub q: AlgElement<E>,
    pub q_inv: AlgElement<E>,
}

fn corner_inv<F: Field>(
    alg: &MatrixAlgebra<F>,
    x: &AlgElement<F::Elem>,
    e: &AlgElement<F::Elem>,
    what: &str,
) -> Result<AlgElement<F::Elem>> {
    alg.corner_inverse(x, e)
        .map_err(|_| Error::NotInvertible(what.to_string()))
}

/// Evaluate `(P, Q)` for the given local data.
fn local_pq<F: Field>(
    alg: &MatrixAlgebra<F>,
    q: &F::Elem,
    loc: &Local<'_, F::Elem>,
    family: Family,
) -> Result<(AlgElement<F::Elem>, AlgElement<F::Elem>)> {
    let f = &alg.field;
    let e = loc.e;
    let one_q = f.sub(&f.one(), q);
    if loc.adj == Adjacency::Equal {
        let qq = alg.sub(&alg.add(&alg.scale(e, &one_q), &alg.scale(&loc.ys, q)), &loc.yf);
        return Ok((e.clone(), qq));
    }
    // y(k) = v (1 - y) on the corner
    let a = alg.scale(&alg.sub(e, &loc.yf), &loc.vf);
    let b = alg.scale(&alg.sub(e, &loc.ys), &loc.vs);
    let d = corner_inv(alg, &alg.sub(&b, &a), e, "y_(a+1)(k) - y_a(k)")?;
    let p = alg.scale(&alg.mul(&b, &d), &one_q);
    let neg_d = alg.scale(&d, &f.from_i64(-1)); // (a - b)^-1
    let a_qb = alg.sub(&a, &alg.scale(&b, q));
    let qq = match (family, loc.adj) {
        // (1 - P)/(y_a - y_(a+1)) on a single back edge, (1 - P)/(y_(a+1) - y_a) on a double edge
        (Family::Sw, Adjacency::Backward) => alg.scale(&d, &loc.vf),
        (Family::Sw, Adjacency::Both) => alg.scale(&neg_d, &loc.vf),
        (Family::Sw, _) => alg.sub(e, &p),
        (Family::Bk, Adjacency::None) => alg.mul(&a_qb, &neg_d),
        (Family::Bk, Adjacency::Forward) => alg.mul_all(&[&a_qb, &neg_d, &neg_d]),
        (Family::Bk, Adjacency::Backward) => alg.scale(e, &loc.vf),
        (Family::Bk, _) => alg.scale(&neg_d, &loc.vf),
    };
    Ok((p, qq))
}

/// The images of the quiver Hecke generators inside `H`.
#[derive(Clone, Debug)]
pub struct BkImages<E> {
    pub family: Family,
    pub idempotents: BTreeMap<ResidueSeq, AlgElement<E>>,
    /// `y_1 .. y_n`
    pub y: Vec<AlgElement<E>>,
    /// `psi_1 .. psi_(n-1)`
    pub psi: Vec<AlgElement<E>>,
    /// Keyed by `(a, k)` with `a` zero based.
    pub corners: BTreeMap<(usize, ResidueSeq), CornerData<E>>,
}

fn local_at<'a, F: Field>(
    h: &HeckeAlgebra<F>,
    e: &'a AlgElement<F::Elem>,
    (u, w): (Vertex, Vertex),
    (yf, ys): (&AlgElement<F::Elem>, &AlgElement<F::Elem>),
) -> Local<'a, F::Elem> {
    Local {
        e,
        vf: h.value(u),
        vs: h.value(w),
        yf: h.alg.mul(yf, e),
        ys: h.alg.mul(ys, e),
        adj: h.quiver.adjacency(u, w),
    }
}

/// `y_a = sum_k (1 - v(k_a)^-1 X_a) e(k)`.
pub fn y_images<F: Field>(h: &HeckeAlgebra<F>) -> Vec<AlgElement<F::Elem>> {
    let alg = &h.alg;
    let f = &alg.field;
    (0..h.n)
        .map(|a| {
            let mut acc = alg.zero();
            for (k, e) in &h.idempotents {
                let vinv = f.inv(&h.value(k[a])).expect("vertex values are nonzero");
                let xe = alg.mul(&h.x[a], e);
                acc = alg.add(&acc, &alg.sub(e, &alg.scale(&xe, &vinv)));
            }
            acc
        })
        .collect()
}

/// Build `g(e(k))`, `g(y_a)` and `g(psi_a) = sum_k (T_a + P_a(k)) Q_a(k)^-1 e(k)`.
pub fn build_images<F: Field>(h: &HeckeAlgebra<F>, family: Family) -> Result<BkImages<F::Elem>> {
    let alg = &h.alg;
    let y = y_images(h);
    let mut psi = Vec::new();
    let mut corners = BTreeMap::new();
    for a in 0..h.n.saturating_sub(1) {
        let mut acc = alg.zero();
        for (k, e) in &h.idempotents {
            let loc = local_at(h, e, (k[a], k[a + 1]), (&y[a], &y[a + 1]));
            let (p, q) = local_pq(alg, &h.scalars.q, &loc, family)
                .map_err(|err| Error::NotInvertible(format!("{err} at a={}, k=({})", a + 1, seq_label(k))))?;
            if family == Family::Sw && matches!(loc.adj, Adjacency::Backward | Adjacency::Both) {
                // closed form against the quotient it stands for
                let divisor = if loc.adj == Adjacency::Backward {
                    alg.sub(&loc.yf, &loc.ys)
                } else {
                    alg.sub(&loc.ys, &loc.yf)
                };
                let lhs = alg.mul(&q, &divisor);
                if lhs != alg.sub(e, &p) {
                    return Err(Error::RelationFailed(format!(
                        "closed form of Q disagrees with its defining quotient at a={}, k=({})",
                        a + 1,
                        seq_label(k)
                    )));
                }
            }
            let q_inv = corner_inv(alg, &q, e, &format!("Q_{}({})", a + 1, seq_label(k)))?;
            let term = alg.mul(&alg.add(&h.t[a], &p), &q_inv);
            acc = alg.add(&acc, &term);
            corners.insert((a, k.clone()), CornerData { p, q, q_inv });
        }
        psi.push(acc);
    }
    Ok(BkImages {
        family,
        idempotents: h.idempotents.clone(),
        y,
        psi,
        corners,
    })
}

/// Every defining relation of the cyclotomic quiver Hecke algebra, grouped
/// by relation family, evaluated on the images. Sequences with `e(k) = 0`
/// map to zero.
pub fn verify_klr_relations<F: Field>(h: &HeckeAlgebra<F>, img: &BkImages<F::Elem>) -> Result<Vec<Check>> {
    let alg = &h.alg;
    let seqs = h.quiver.sequences(h.n)?;
    let pres = klr_cyclotomic(&alg.field, &h.scalars.spec, &h.quiver, &h.lambda, KlrVertices::Sequences(&seqs), h.n)?;
    let mut images = Vec::new();
    let mut vanishing = Vec::new();
    for k in &seqs {
        match img.idempotents.get(k) {
            Some(e) => {
                images.push(e.clone());
                vanishing.push(false);
            }
            None => {
                images.push(alg.zero());
                vanishing.push(true);
            }
        }
    }
    for g in img.y.iter().chain(&img.psi) {
        images.push(g.clone());
        vanishing.push(false);
    }
    let mut checks: Vec<Check> = Vec::new();
    for rel in &pres.relations {
        let pos = match checks.iter().position(|c| c.name == rel.tag) {
            Some(i) => i,
            None => {
                checks.push(Check::new(
                    rel.tag.clone(),
                    format!("the images of the quiver Hecke generators satisfy the '{}' relations", rel.tag),
                ));
                checks.len() - 1
            }
        };
        let v = alg.eval_sparse(&rel.elem, &images, &vanishing);
        let ok = alg.is_zero(&v);
        checks[pos].record(ok, || render_relation(&pres, &rel.elem));
    }
    for c in &mut checks {
        c.note("family", img.family.to_string());
    }
    Ok(checks)
}

fn render_relation<E: Clone>(pres: &crate::rewrite::Presentation<E>, elem: &crate::rewrite::FreeElem<E>) -> String {
    let words: Vec<String> = elem.terms.iter().take(4).map(|(w, _)| pres.word_label(w)).collect();
    words.join(" , ")
}

/// `f(g(X_a)) = X_a` and `f(g(T_a)) = T_a`, realised inside `H`.
pub fn verify_roundtrip<F: Field>(h: &HeckeAlgebra<F>, img: &BkImages<F::Elem>) -> Vec<Check> {
    let alg = &h.alg;
    let mut cx = Check::new("X from y", "sum over k of v(k_a)(1 - y_a) e(k) equals X_a");
    for a in 0..h.n {
        let mut acc = alg.zero();
        for (k, e) in &img.idempotents {
            let t = alg.scale(&alg.mul(&alg.sub(&alg.one(), &img.y[a]), e), &h.value(k[a]));
            acc = alg.add(&acc, &t);
        }
        cx.record(acc == h.x[a], || format!("X_{}", a + 1));
    }
    let mut ct = Check::new("T from psi", "sum over k of (psi_a Q_a(k) - P_a(k)) e(k) equals T_a");
    for a in 0..h.n.saturating_sub(1) {
        let mut acc = alg.zero();
        for (k, e) in &img.idempotents {
            let c = &img.corners[&(a, k.clone())];
            let t = alg.mul(&alg.sub(&alg.mul(&img.psi[a], &c.q), &c.p), e);
            acc = alg.add(&acc, &t);
        }
        ct.record(acc == h.t[a], || format!("T_{}", a + 1));
    }
    for c in [&mut cx, &mut ct] {
        c.note("family", img.family.to_string());
    }
    alloc::vec![cx, ct]
}

/// The constraints a `Q`-family must meet, checked corner by corner, plus
/// the intertwiner and commutation identities that drive the proof.
pub fn verify_bk_property<F: Field>(h: &HeckeAlgebra<F>, img: &BkImages<F::Elem>) -> Vec<Check> {
    let alg = &h.alg;
    let f = &alg.field;
    let q = &h.scalars.q;
    let family = img.family;
    let one_q = f.sub(&f.one(), q);
    let label = |a: usize, k: &[Vertex]| format!("a={}, k=({})", a + 1, seq_label(k));

    let mut inv = Check::new("Q invertible", "each Q_a(k) is invertible in the corner of e(k)");
    let mut equal = Check::new("Q on equal residues", "Q_a(k) = 1 - q + q y_(a+1) - y_a when k_a = k_(a+1)");
    let mut psym = Check::new("P symmetry", "P_a(k) + P_a(s_a k)^(s_a) = 1 - q when k_a differs from k_(a+1)");
    let mut prod = Check::new(
        "Q product",
        "Q_a(k) Q_a(s_a k)^(s_a) times the edge divisor equals (1 - P_a(k))(q + P_a(k))",
    );
    let mut braid = Check::new(
        "Q braid compatibility",
        "Q_(a+1)(s_(a+1) s_a k)^(s_a) = Q_a(s_a s_(a+1) k)^(s_(a+1))",
    );
    let mut inter = Check::new(
        "intertwiner",
        "X_(a+1) Phi_a e(k) = Phi_a X_a e(k), plus (q X_(a+1) - X_a) e(k) when k_a = k_(a+1)",
    );
    let mut comm = Check::new(
        "y psi commutation",
        "f psi_a e(k) = psi_a f^(s_a) e(k) + [k_a = k_(a+1)] d_a(f) e(k) for f = y_a, y_(a+1)",
    );
    let mut nil = Check::new("y nilpotent", "each y_a is nilpotent");

    for a in 0..h.n.saturating_sub(1) {
        let mut phi = alg.zero();
        for (k, e) in &img.idempotents {
            phi = alg.add(&phi, &alg.mul(&alg.add(&h.t[a], &img.corners[&(a, k.clone())].p), e));
        }
        for (k, e) in &img.idempotents {
            let c = &img.corners[&(a, k.clone())];
            let qe = alg.mul(&c.q, &c.q_inv);
            inv.record(qe == *e && alg.mul(&c.q_inv, &c.q) == *e, || label(a, k));
            let adj = h.quiver.adjacency(k[a], k[a + 1]);
            let ya = alg.mul(&img.y[a], e);
            let yb = alg.mul(&img.y[a + 1], e);
            if adj == Adjacency::Equal {
                let want = alg.sub(&alg.add(&alg.scale(e, &one_q), &alg.scale(&yb, q)), &ya);
                equal.record(c.q == want, || label(a, k));
            } else {
                // the s_a-twist of a formula at s_a k swaps both values and variables
                let twisted = Local {
                    e,
                    vf: h.value(k[a + 1]),
                    vs: h.value(k[a]),
                    yf: yb.clone(),
                    ys: ya.clone(),
                    adj: h.quiver.adjacency(k[a + 1], k[a]),
                };
                match local_pq(alg, q, &twisted, family) {
                    Ok((pt, qt)) => {
                        psym.record(alg.add(&c.p, &pt) == alg.scale(e, &one_q), || label(a, k));
                        let rhs = alg.mul(&alg.sub(e, &c.p), &alg.add(&alg.scale(e, q), &c.p));
                        let fwd = alg.sub(&yb, &ya);
                        let bwd = alg.sub(&ya, &yb);
                        let lhs = alg.mul(&c.q, &qt);
                        let lhs = match adj {
                            Adjacency::Forward => alg.mul(&lhs, &fwd),
                            Adjacency::Backward => alg.mul(&lhs, &bwd),
                            Adjacency::Both => alg.mul_all(&[&lhs, &fwd, &bwd]),
                            _ => lhs,
                        };
                        prod.record(lhs == rhs, || label(a, k));
                    }
                    Err(err) => {
                        psym.record(false, || format!("{}: {err}", label(a, k)));
                        prod.record(false, || format!("{}: {err}", label(a, k)));
                    }
                }
            }
            let xa = alg.mul(&h.x[a], e);
            let xb = alg.mul(&h.x[a + 1], e);
            let lhs = alg.mul_all(&[&h.x[a + 1], &phi, e]);
            let mut rhs = alg.mul(&phi, &xa);
            if adj == Adjacency::Equal {
                rhs = alg.add(&rhs, &alg.sub(&alg.scale(&xb, q), &xa));
            }
            inter.record(lhs == rhs, || label(a, k));

            let psi_e = alg.mul(&img.psi[a], e);
            for (fy, fys, sign) in [(&img.y[a], &img.y[a + 1], -1i64), (&img.y[a + 1], &img.y[a], 1)] {
                let lhs = alg.mul(fy, &psi_e);
                let mut rhs = alg.mul_all(&[&img.psi[a], fys, e]);
                if adj == Adjacency::Equal {
                    rhs = alg.add(&rhs, &alg.scale(e, &f.from_i64(sign)));
                }
                comm.record(lhs == rhs, || label(a, k));
            }
        }
    }

    if h.n >= 3 {
        for a in 0..h.n - 2 {
            for (k, e) in &img.idempotents {
                // left: positions (a+1, a+2) of s_(a+1) s_a k, variables moved by s_a
                let k1 = swap_at(&swap_at(k, a + 1), a + 2);
                let k2 = swap_at(&swap_at(k, a + 2), a + 1);
                let left = local_at(h, e, (k1[a + 1], k1[a + 2]), (&img.y[a], &img.y[a + 2]));
                let right = local_at(h, e, (k2[a], k2[a + 1]), (&img.y[a], &img.y[a + 2]));
                let ok = match (local_pq(alg, q, &left, family), local_pq(alg, q, &right, family)) {
                    (Ok((_, l)), Ok((_, r))) => l == r,
                    _ => false,
                };
                braid.record(ok, || label(a, k));
            }
        }
    } else {
        braid = braid.skip("needs n >= 3");
    }

    let mut index = 0;
    for (a, y) in img.y.iter().enumerate() {
        let mut m = 0usize;
        let mut pw = alg.one();
        while !alg.is_zero(&pw) && m <= alg.dim {
            pw = alg.mul(&pw, y);
            m += 1;
        }
        index = index.max(m);
        nil.record(alg.is_zero(&pw), || format!("y_{}", a + 1));
    }
    nil.note("nilpotency index", index.to_string());

    let mut out = alloc::vec![inv, equal, psym, prod, braid, inter, comm, nil];
    for c in &mut out {
        c.note("family", family.to_string());
    }
    out
}

/// One summand of the Morita decomposition, indexed by a composition `lambda`
/// of `n` into `p'` parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoritaSummand {
    pub lambda: Vec<u32>,
    pub multiplicity: u64,
    pub inner_dim: u64,
    pub term: u64,
    /// Dimension of the matching sum of blocks inside `H`.
    pub block_dim: Option<u64>,
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if n == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `r^n n! = sum_lambda m_lambda^2 prod_j l_j^lambda_j lambda_j!` where `l_j`
/// is the level of the weight on component `j`.
pub fn morita_table(params: &Params, levels: &[u64], n: usize) -> (u64, Vec<MoritaSummand>) {
    let r: u64 = levels.iter().sum();
    let lhs = r.pow(n as u32) * factorial(n as u64);
    let mut table = Vec::new();
    for lambda in compositions(n as u32, params.pprime as usize) {
        let m = factorial(n as u64) / lambda.iter().map(|&x| factorial(x as u64)).product::<u64>();
        let inner: u64 = lambda
            .iter()
            .zip(levels)
            .map(|(&x, &l)| l.pow(x) * factorial(x as u64))
            .product();
        table.push(MoritaSummand {
            lambda,
            multiplicity: m,
            inner_dim: inner,
            term: m * m * inner,
            block_dim: None,
        });
    }
    (lhs, table)
}

/// Arithmetic of the Morita identity and the block decomposition of `H`
/// along compositions `alpha` of residues.
pub fn morita_check<F: Field>(h: &HeckeAlgebra<F>) -> (Vec<Check>, Vec<MoritaSummand>) {
    let alg = &h.alg;
    let pp = h.params.pprime as usize;
    let mut levels = alloc::vec![0u64; pp];
    for (&(_, j), &m) in &h.lambda.entries {
        levels[j as usize - 1] += m;
    }
    let (lhs, mut table) = morita_table(&h.params, &levels, h.n);
    let rhs: u64 = table.iter().map(|s| s.term).sum();
    let mut arith = Check::new(
        "Morita identity",
        "r^n n! equals the sum over compositions lambda of m_lambda^2 prod_j l_j^lambda_j lambda_j!",
    );
    arith.record(lhs == rhs && lhs == alg.dim as u64, || format!("{lhs} vs {rhs}, dim H = {}", alg.dim));
    arith.note("lhs", lhs.to_string());
    arith.note("rhs", rhs.to_string());

    let mut blocks: BTreeMap<KComposition, AlgElement<F::Elem>> = BTreeMap::new();
    for (k, e) in &h.idempotents {
        let entry = blocks.entry(composition_of(k)).or_insert_with(|| alg.zero());
        *entry = alg.add(entry, e);
    }
    let mut central = Check::new("block idempotents", "each e(alpha) is a central idempotent and they sum to 1");
    let mut sum = alg.zero();
    let mut per_lambda: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut rank_total = 0u64;
    for (alpha, e) in &blocks {
        let ok = alg.mul(e, e) == *e && alg.gens.iter().all(|g| alg.commutes(g, e));
        let label = alpha.iter().map(|(v, c)| format!("{v}^{c}")).collect::<Vec<_>>().join(" ");
        central.record(ok, || label.clone());
        sum = alg.add(&sum, e);
        let rank = alg.rank(e) as u64;
        rank_total += rank;
        let mut lam = alloc::vec![0u32; pp];
        for (v, c) in alpha {
            lam[v.j as usize - 1] += c;
        }
        *per_lambda.entry(lam).or_insert(0) += rank;
    }
    central.record(sum == alg.one(), || "sum of e(alpha) differs from 1".into());
    central.note("nonzero blocks", blocks.len().to_string());

    let mut ranks = Check::new(
        "block dimensions",
        "block dimensions sum to dim H and the blocks over each lambda fill the lambda summand",
    );
    ranks.record(rank_total == alg.dim as u64, || format!("ranks sum to {rank_total}, dim H = {}", alg.dim));
    for s in &mut table {
        let got = per_lambda.get(&s.lambda).copied().unwrap_or(0);
        s.block_dim = Some(got);
        let lam = s.lambda.clone();
        let term = s.term;
        ranks.record(got == term, || format!("lambda {lam:?}: blocks {got}, summand {term}"));
    }
    (alloc::vec![arith, central, ranks], table)
}
