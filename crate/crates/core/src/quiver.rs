//! The quiver on `K = I x J'`, its shift automorphism and orbit classes of
//! residue sequences.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Params, Weight};
use crate::scalars::{Field, Order, Scalars};

/// Cap on `|K|^n` when enumerating residue sequences.
pub const SEQUENCE_CAP: usize = 1 << 18;

/// A vertex `(i, j)` with value `zeta^j q^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub i: i64,
    pub j: u32,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.i, self.j)
    }
}

impl Vertex {
    pub fn new(i: i64, j: u32) -> Self {
        Vertex { i, j }
    }

    pub fn value<F: Field>(&self, s: &Scalars<F>) -> F::Elem {
        let zj = s.field.pow(&s.zeta, self.j as u64);
        let qi = s.field.powi(&s.q, self.i).expect("q is nonzero");
        s.field.mul(&zj, &qi)
    }

    pub fn parse(s: &str) -> Option<Vertex> {
        let (i, j) = s.split_once('_')?;
        Some(Vertex {
            i: i.parse().ok()?,
            j: j.parse().ok()?,
        })
    }
}

/// How two vertices are joined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Adjacency {
    Equal,
    None,
    /// `u -> w`
    Forward,
    /// `u <- w`
    Backward,
    /// `u <-> w`
    Both,
}

impl Adjacency {
    /// Degree of `psi_a e(k)` when `(k_a, k_{a+1})` are joined like this.
    pub fn psi_degree(self) -> i64 {
        match self {
            Adjacency::Equal => -2,
            Adjacency::None => 0,
            Adjacency::Forward | Adjacency::Backward => 1,
            Adjacency::Both => 2,
        }
    }
}

pub type ResidueSeq = Vec<Vertex>;

pub fn seq_label(k: &[Vertex]) -> String {
    let mut s = String::new();
    for (n, v) in k.iter().enumerate() {
        if n > 0 {
            s.push(',');
        }
        s.push_str(&format!("{v}"));
    }
    s
}

/// Swap positions `a` and `a + 1` (1-based).
pub fn swap_at(k: &[Vertex], a: usize) -> ResidueSeq {
    let mut out = k.to_vec();
    out.swap(a - 1, a);
    out
}

/// The quiver with vertex set `I x J'`, or a finite window of it when
/// `e` is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub e: Order,
    pub pprime: u64,
    pub eta: i64,
    pub vertices: Vec<Vertex>,
}

impl Quiver {
    /// For infinite `e` the residues are restricted to `[lo - radius, hi + radius]`
    /// where `[lo, hi]` spans the support of `weight`.
    pub fn new(params: &Params, weight: Option<&Weight>, radius: u64) -> Result<Self> {
        let range: Vec<i64> = match params.e {
            Order::Finite(e) => (0..e as i64).collect(),
            Order::Infinite => {
                let w = weight.ok_or_else(|| {
                    Error::Precondition("an infinite quiver needs a weight to fix the window".into())
                })?;
                let lo = w.entries.keys().map(|k| k.0).min().unwrap_or(0);
                let hi = w.entries.keys().map(|k| k.0).max().unwrap_or(0);
                (lo - radius as i64..=hi + radius as i64).collect()
            }
        };
        let mut vertices = Vec::new();
        for &i in &range {
            for j in 1..=params.pprime as u32 {
                vertices.push(Vertex::new(i, j));
            }
        }
        Ok(Quiver {
            e: params.e,
            pprime: params.pprime,
            eta: params.eta,
            vertices,
        })
    }

    fn res(&self, i: i64) -> i64 {
        match self.e {
            Order::Finite(e) => i.rem_euclid(e as i64),
            Order::Infinite => i,
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn adjacency(&self, u: Vertex, w: Vertex) -> Adjacency {
        if u == w {
            return Adjacency::Equal;
        }
        if u.j != w.j {
            return Adjacency::None;
        }
        let fwd = self.res(u.i + 1) == self.res(w.i);
        let back = self.res(w.i + 1) == self.res(u.i);
        match (fwd, back) {
            (true, true) => Adjacency::Both,
            (true, false) => Adjacency::Forward,
            (false, true) => Adjacency::Backward,
            (false, false) => Adjacency::None,
        }
    }

    /// Arrows `u -> w`.
    pub fn arrows(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for &u in &self.vertices {
            let w = Vertex::new(self.res(u.i + 1), u.j);
            if self.contains(w) {
                out.push((u, w));
            }
        }
        out
    }

    /// `(i, j) -> (i, j + 1)` for `j < p'`, `(i, p') -> (i + eta, 1)`.
    pub fn shift(&self, v: Vertex) -> Vertex {
        if (v.j as u64) < self.pprime {
            Vertex::new(v.i, v.j + 1)
        } else {
            Vertex::new(self.res(v.i + self.eta), 1)
        }
    }

    pub fn shift_inv(&self, v: Vertex) -> Vertex {
        if v.j > 1 {
            Vertex::new(v.i, v.j - 1)
        } else {
            Vertex::new(self.res(v.i - self.eta), self.pprime as u32)
        }
    }

    pub fn shift_seq(&self, k: &[Vertex]) -> ResidueSeq {
        k.iter().map(|&v| self.shift(v)).collect()
    }

    pub fn shift_inv_seq(&self, k: &[Vertex]) -> ResidueSeq {
        k.iter().map(|&v| self.shift_inv(v)).collect()
    }

    /// All of `K^n` in lexicographic order.
    pub fn sequences(&self, n: usize) -> Result<Vec<ResidueSeq>> {
        let total = (self.vertices.len() as u128).pow(n as u32);
        if total > SEQUENCE_CAP as u128 {
            return Err(Error::SearchCap {
                what: format!("|K|^n = {total} residue sequences"),
                cap: SEQUENCE_CAP as u64,
            });
        }
        let mut out: Vec<ResidueSeq> = alloc::vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * self.vertices.len());
            for k in &out {
                for &v in &self.vertices {
                    let mut k2 = k.clone();
                    k2.push(v);
                    next.push(k2);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Orbits of the shift on `K^n`, each represented by its least member.
    pub fn orbit_classes(&self, n: usize) -> Result<Vec<OrbitClass>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for k in self.sequences(n)? {
            if seen.contains(&k) {
                continue;
            }
            let mut members = alloc::vec![k.clone()];
            let mut cur = self.shift_seq(&k);
            while cur != k {
                members.push(cur.clone());
                cur = self.shift_seq(&cur);
            }
            members.sort();
            for m in &members {
                seen.insert(m.clone());
            }
            out.push(OrbitClass {
                rep: members[0].clone(),
                members,
            });
        }
        out.sort_by(|a, b| a.rep.cmp(&b.rep));
        Ok(out)
    }

    /// `(sigma . alpha)_k = alpha_{sigma^-1 k}`.
    pub fn sigma_dot(&self, alpha: &KComposition) -> KComposition {
        alpha.iter().map(|(&v, &c)| (self.shift(v), c)).collect()
    }
}

/// A shift orbit in `K^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub rep: ResidueSeq,
    pub members: Vec<ResidueSeq>,
}

/// Multiset of vertices: `alpha_k` counts occurrences of `k`.
pub type KComposition = BTreeMap<Vertex, u32>;

pub fn composition_of(k: &[Vertex]) -> KComposition {
    let mut out = KComposition::new();
    for &v in k {
        *out.entry(v).or_insert(0) += 1;
    }
    out
}
