use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::engine::RewriteSystem;
use super::frame::Path;
use crate::error::{Error, Result};
use crate::scalars::Field;

/// The irreducible paths of a complete system, in path order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalBasis {
    pub paths: Vec<Path>,
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
    pub index: BTreeMap<Path, usize>,
}

impl NormalBasis {
    pub fn dimension(&self) -> usize {
        self.paths.len()
    }

    /// Coefficients of the Laurent polynomial `sum t^deg`.
    pub fn graded_dimension(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }
}

impl<F: Field> RewriteSystem<F> {
    /// Enumerate normal paths by prepending letters; every factor of a
    /// normal path is normal, so only prefixes need checking.
    pub fn basis(&self) -> Result<NormalBasis> {
        if !self.complete {
            return Err(Error::Incomplete(format!(
                "system is not confluent ({})",
                self.cap_tripped.as_deref().unwrap_or("not completed")
            )));
        }
        let cap = self.caps().max_basis;
        let nletters = self.frame.letters.len() as u16;
        let mut layer: Vec<Path> = (0..self.frame.num_objects() as u32)
            .filter(|&o| !self.is_dead(o))
            .map(Path::empty)
            .collect();
        let mut all = Vec::new();
        let mut len = 0;
        while !layer.is_empty() {
            let mut next = Vec::new();
            for p in &layer {
                for x in 0..nletters {
                    let mut letters = Vec::with_capacity(p.letters.len() + 1);
                    letters.push(x);
                    letters.extend_from_slice(&p.letters);
                    let cand = Path { letters, obj: p.obj };
                    if self.is_normal(&cand) {
                        next.push(cand);
                    }
                }
            }
            all.append(&mut layer);
            if all.len() + next.len() > cap {
                return Err(Error::InfiniteBasis(cap));
            }
            len += 1;
            if len > self.caps().max_degree * 4 {
                return Err(Error::InfiniteBasis(all.len()));
            }
            next.sort();
            layer = next;
        }
        all.sort();
        let labels = all.iter().map(|p| self.frame.path_label(p)).collect();
        let degrees = all.iter().map(|p| self.frame.degree_of(p)).collect();
        let index = all.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(NormalBasis {
            paths: all,
            labels,
            degrees,
            index,
        })
    }
}
