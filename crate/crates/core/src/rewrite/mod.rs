//! Finitely presented algebras and their completion to a confluent
//! rewriting system.
//!
//! Presentations are written in the free algebra. Generators flagged as
//! idempotents are treated as vertices of a path algebra: the orthogonality,
//! completeness and commutation relations they satisfy are built into the
//! word representation instead of being rewritten explicitly, so a word is
//! a path `x_1 ... x_m e(o)` anchored at its right idempotent.

mod basis;
mod engine;
mod frame;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::scalars::{Field, FieldSpec};

pub use basis::NormalBasis;
pub use engine::{complete, Caps, RewriteSystem, Rule, Stats};
pub use frame::{Frame, Path, PathPoly};

pub type GenId = usize;
pub type Word = Vec<GenId>;

/// Degree of a generator; `PerObject` gives the degree of `g e(o)` for each
/// idempotent `o` in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degree {
    Fixed(i64),
    PerObject(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub idempotent: bool,
    pub degree: Degree,
}

/// Element of the free algebra: a list of `(word, coefficient)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElem<E> {
    pub terms: Vec<(Word, E)>,
}

impl<E: Clone> FreeElem<E> {
    pub fn zero() -> Self {
        FreeElem { terms: Vec::new() }
    }

    pub fn mono(word: Word, c: E) -> Self {
        FreeElem {
            terms: alloc::vec![(word, c)],
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        FreeElem { terms }.simplify(f)
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.scale(f, &f.neg(&f.one())))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        FreeElem {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), f.mul(a, c)))
                .collect(),
        }
        .simplify(f)
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                terms.push((w, f.mul(a, b)));
            }
        }
        FreeElem { terms }.simplify(f)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, k: u64) -> Self {
        let mut acc = FreeElem::mono(Vec::new(), f.one());
        for _ in 0..k {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Merge equal words, drop zero coefficients, sort by word.
    pub fn simplify<F: Field<Elem = E>>(self, f: &F) -> Self {
        let mut map: BTreeMap<Word, E> = BTreeMap::new();
        for (w, c) in self.terms {
            match map.get_mut(&w) {
                Some(a) => *a = f.add(a, &c),
                None => {
                    map.insert(w, c);
                }
            }
        }
        FreeElem {
            terms: map.into_iter().filter(|(_, c)| !f.is_zero(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<E> {
    /// Which family of defining relations this instance belongs to.
    pub tag: String,
    pub elem: FreeElem<E>,
}

/// A finitely presented algebra over the field described by `field`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<E> {
    pub name: String,
    pub field: FieldSpec,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation<E>>,
    /// Free-form annotations (e.g. a clearing factor).
    pub notes: BTreeMap<String, String>,
}

impl<E: Clone> Presentation<E> {
    pub fn gen_id(&self, label: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.label == label)
    }

    pub fn word_label(&self, w: &[GenId]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let parts: Vec<&str> = w.iter().map(|&g| self.generators[g].label.as_str()).collect();
        parts.join(".")
    }

    pub fn relation_count(&self, tag: &str) -> usize {
        self.relations.iter().filter(|r| r.tag == tag).count()
    }
}

/// Reduce `samples` random paths (length at most `max_len`) along random
/// rule choices, seeded by `seed`, and compare with the reference normal
/// form. Any disagreement witnesses non-confluence.
pub fn confluence_audit<F: Field>(
    sys: &RewriteSystem<F>,
    seed: u64,
    samples: usize,
    max_len: usize,
) -> crate::report::Check {
    use rand_core::{RngCore, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut check = crate::report::Check::new(
        "confluence audit",
        "random reduction strategies reach the reference normal form",
    );
    check.note("seed", alloc::format!("{seed}"));
    let nletters = sys.frame.letters.len() as u64;
    let nobj = sys.frame.num_objects() as u64;
    let f = &sys.field;
    for _ in 0..samples {
        let len = (rng.next_u64() % (max_len as u64 + 1)) as usize;
        let letters: Vec<u16> = if nletters == 0 {
            Vec::new()
        } else {
            (0..len).map(|_| (rng.next_u64() % nletters) as u16).collect()
        };
        let path = Path {
            letters,
            obj: (rng.next_u64() % nobj) as u32,
        };
        let poly = alloc::vec![(path.clone(), f.one())];
        let a = sys.nf_ref(poly.clone());
        let b = sys.nf_random(poly, &mut rng);
        check.record(a == b, || sys.frame.path_label(&path));
    }
    check
}
