use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Degree, FreeElem, GenId, Generator, Presentation};
use crate::error::{Error, Result};
use crate::scalars::Field;

/// A word `x_1 ... x_m` followed by the idempotent `e(obj)`. Letters are
/// generator ranks in the monomial order, so the derived order on letters
/// is the precedence order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub letters: Vec<u16>,
    pub obj: u32,
}

impl Path {
    pub fn empty(obj: u32) -> Self {
        Path {
            letters: Vec::new(),
            obj,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Degree-lexicographic: length, then letters, then anchor.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.obj.cmp(&other.obj))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms sorted in decreasing order, nonzero coefficients.
pub type PathPoly<E> = Vec<(Path, E)>;

/// How the generators of a presentation become letters and vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    /// Idempotent generators; empty means a single implicit vertex.
    pub objects: Vec<GenId>,
    /// Letter rank to generator.
    pub letters: Vec<GenId>,
    pub letter_of: Vec<Option<u16>>,
    pub object_of: Vec<Option<u32>>,
    /// `trans[x][o]` is the vertex `o'` with `x e(o) = e(o') x`.
    pub trans: Vec<Vec<u32>>,
    /// `degree[x][o]` is the degree of `x e(o)`.
    pub degree: Vec<Vec<i64>>,
    pub labels: Vec<String>,
}

impl Frame {
    /// `precedence` lists the non-idempotent generators from smallest to
    /// largest; the default is declaration order.
    pub fn build<F: Field>(
        f: &F,
        pres: &Presentation<F::Elem>,
        precedence: Option<&[String]>,
    ) -> Result<Self> {
        let gens = &pres.generators;
        let objects: Vec<GenId> = (0..gens.len()).filter(|&g| gens[g].idempotent).collect();
        let plain: Vec<GenId> = (0..gens.len()).filter(|&g| !gens[g].idempotent).collect();
        let letters: Vec<GenId> = match precedence {
            None => plain.clone(),
            Some(order) => {
                let mut out = Vec::new();
                for label in order {
                    let g = pres
                        .gen_id(label)
                        .filter(|g| !gens[*g].idempotent)
                        .ok_or_else(|| Error::Precondition(format!("unknown generator {label} in precedence")))?;
                    if out.contains(&g) {
                        return Err(Error::Precondition(format!("{label} repeated in precedence")));
                    }
                    out.push(g);
                }
                if out.len() != plain.len() {
                    return Err(Error::Precondition(
                        "precedence must list every non-idempotent generator".into(),
                    ));
                }
                out
            }
        };
        if letters.len() > u16::MAX as usize {
            return Err(Error::Precondition("too many generators".into()));
        }
        let mut letter_of = alloc::vec![None; gens.len()];
        for (r, &g) in letters.iter().enumerate() {
            letter_of[g] = Some(r as u16);
        }
        let mut object_of = alloc::vec![None; gens.len()];
        for (o, &g) in objects.iter().enumerate() {
            object_of[g] = Some(o as u32);
        }
        let nobj = objects.len().max(1);

        let mut trans = alloc::vec![alloc::vec![u32::MAX; nobj]; letters.len()];
        if objects.len() <= 1 {
            for t in &mut trans {
                t.fill(0);
            }
        } else {
            // Read x e(o) = e(o') x off two-term relations.
            for rel in &pres.relations {
                let t = &rel.elem.terms;
                if t.len() != 2 || f.add(&t[0].1, &t[1].1) != f.zero() {
                    continue;
                }
                for (a, b) in [(&t[0].0, &t[1].0), (&t[1].0, &t[0].0)] {
                    if a.len() == 2 && b.len() == 2 && a[0] == b[1] {
                        if let (Some(x), Some(o), Some(o2)) =
                            (letter_of[a[0]], object_of[a[1]], object_of[b[0]])
                        {
                            trans[x as usize][o as usize] = o2;
                        }
                    }
                }
            }
            for (x, t) in trans.iter().enumerate() {
                if let Some(o) = t.iter().position(|&v| v == u32::MAX) {
                    return Err(Error::Precondition(format!(
                        "no commutation relation {}.{} = e(..).{}",
                        gens[letters[x]].label,
                        gens[objects[o]].label,
                        gens[letters[x]].label
                    )));
                }
            }
        }

        let mut degree = Vec::new();
        for &g in &letters {
            degree.push(match &gens[g].degree {
                Degree::Fixed(d) => alloc::vec![*d; nobj],
                Degree::PerObject(v) => {
                    if v.len() != nobj {
                        return Err(Error::Precondition(format!(
                            "generator {} has {} per-vertex degrees, expected {nobj}",
                            gens[g].label,
                            v.len()
                        )));
                    }
                    v.clone()
                }
            });
        }

        Ok(Frame {
            objects,
            letters,
            letter_of,
            object_of,
            trans,
            degree,
            labels: gens.iter().map(|g: &Generator| g.label.clone()).collect(),
        })
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len().max(1)
    }

    /// Vertices at the boundaries of `path`: `out[m]` sits left of letter `m`.
    pub fn along(&self, path: &Path) -> Vec<u32> {
        let n = path.letters.len();
        let mut out = alloc::vec![0u32; n + 1];
        out[n] = path.obj;
        for m in (0..n).rev() {
            out[m] = self.trans[path.letters[m] as usize][out[m + 1] as usize];
        }
        out
    }

    pub fn left_obj(&self, path: &Path) -> u32 {
        let mut o = path.obj;
        for &x in path.letters.iter().rev() {
            o = self.trans[x as usize][o as usize];
        }
        o
    }

    pub fn degree_of(&self, path: &Path) -> i64 {
        let objs = self.along(path);
        path.letters
            .iter()
            .enumerate()
            .map(|(m, &x)| self.degree[x as usize][objs[m + 1] as usize])
            .sum()
    }

    /// Render as a free-algebra word: letters, then the idempotent.
    pub fn path_label(&self, path: &Path) -> String {
        let mut parts: Vec<&str> = path
            .letters
            .iter()
            .map(|&x| self.labels[self.letters[x as usize]].as_str())
            .collect();
        if !self.objects.is_empty() {
            parts.push(self.labels[self.objects[path.obj as usize]].as_str());
        }
        if parts.is_empty() {
            return "1".into();
        }
        parts.join(".")
    }

    /// The free-algebra word for a path.
    pub fn path_word(&self, path: &Path) -> Vec<GenId> {
        let mut w: Vec<GenId> = path
            .letters
            .iter()
            .map(|&x| self.letters[x as usize])
            .collect();
        if !self.objects.is_empty() {
            w.push(self.objects[path.obj as usize]);
        }
        w
    }

    /// Write `elem` as a sum of paths, one polynomial per pair of end
    /// vertices, using `elem = sum over o of elem e(o)`.
    pub fn frame_elem<F: Field>(&self, f: &F, elem: &FreeElem<F::Elem>) -> Vec<PathPoly<F::Elem>> {
        let nobj = self.num_objects() as u32;
        let anchored: Option<Vec<u32>> = if self.objects.is_empty() {
            None
        } else {
            elem.terms
                .iter()
                .map(|(w, _)| w.last().and_then(|&g| self.object_of[g]))
                .collect()
        };
        let candidates: Vec<u32> = match anchored {
            Some(mut v) => {
                v.sort_unstable();
                v.dedup();
                v
            }
            None => (0..nobj).collect(),
        };
        let mut blocks: BTreeMap<(u32, u32), BTreeMap<Path, F::Elem>> = BTreeMap::new();
        for &o in &candidates {
            'term: for (w, c) in &elem.terms {
                let mut cur = o;
                let mut letters = Vec::with_capacity(w.len());
                for &g in w.iter().rev() {
                    if let Some(x) = self.object_of[g] {
                        if x != cur {
                            continue 'term;
                        }
                    } else {
                        let x = self.letter_of[g].expect("generator is a letter or a vertex");
                        letters.push(x);
                        cur = self.trans[x as usize][cur as usize];
                    }
                }
                letters.reverse();
                let path = Path { letters, obj: o };
                let block = blocks.entry((cur, o)).or_default();
                match block.get_mut(&path) {
                    Some(a) => *a = f.add(a, c),
                    None => {
                        block.insert(path, c.clone());
                    }
                }
            }
        }
        blocks
            .into_values()
            .map(|b| {
                let mut v: PathPoly<F::Elem> = b.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
                v.reverse();
                v
            })
            .filter(|v| !v.is_empty())
            .collect()
    }
}
