//! Algebras realised through their left regular representation.
//!
//! A complete rewriting system gives a basis of normal words; every element
//! is stored as its left multiplication matrix in that basis, which is a
//! faithful algebra embedding. Coordinates are recovered by applying the
//! matrix to the unit.

mod hecke;
pub mod matrix;
pub mod poly;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rewrite::{FreeElem, Path, Presentation, RewriteSystem};
use crate::scalars::Field;

pub use hecke::{eigenprojectors, spectral_idempotents, HeckeAlgebra, SpectralGrid};
pub use matrix::{Echelon, Matrix};
pub use poly::Poly;

/// An element, as its left multiplication matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElement<E> {
    pub mat: Matrix<E>,
}

/// A finite-dimensional algebra with chosen basis and generator images.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra<F: Field> {
    pub field: F,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub basis_degrees: Vec<i64>,
    /// Left multiplication by each generator, indexed like the presentation.
    pub gens: Vec<AlgElement<F::Elem>>,
    pub gen_labels: Vec<String>,
    pub unit_coords: Vec<F::Elem>,
    /// Basis words as free-algebra words, for evaluating algebra maps.
    pub basis_words: Vec<Vec<usize>>,
}

/// Build the regular representation from a complete system and check that
/// every defining relation of `pres` acts as zero.
pub fn regular_representation<F: Field>(
    sys: &RewriteSystem<F>,
    pres: &Presentation<F::Elem>,
) -> Result<MatrixAlgebra<F>> {
    let basis = sys.basis()?;
    let f = &sys.field;
    let dim = basis.dimension();
    let mut gens = Vec::new();
    for (g, gen) in pres.generators.iter().enumerate() {
        let mut m = matrix::zeros(f, dim, dim);
        if let Some(o) = sys.frame.object_of[g] {
            for (c, p) in basis.paths.iter().enumerate() {
                if sys.frame.left_obj(p) == o {
                    m.set(c, c, f.one());
                }
            }
        } else {
            let x = sys.frame.letter_of[g].ok_or_else(|| Error::Precondition(format!("generator {} unknown", gen.label)))?;
            for (c, p) in basis.paths.iter().enumerate() {
                let mut letters = alloc::vec![x];
                letters.extend_from_slice(&p.letters);
                let nf = sys.nf_ref(alloc::vec![(Path { letters, obj: p.obj }, f.one())]);
                for (q, v) in nf {
                    let r = *basis.index.get(&q).ok_or_else(|| {
                        Error::Incomplete(format!("normal form {} is not a basis word", sys.frame.path_label(&q)))
                    })?;
                    m.set(r, c, v);
                }
            }
        }
        gens.push(AlgElement { mat: m });
    }
    let mut unit = alloc::vec![f.zero(); dim];
    for o in 0..sys.frame.num_objects() as u32 {
        if let Some(&i) = basis.index.get(&Path::empty(o)) {
            unit[i] = f.one();
        }
    }
    let alg = MatrixAlgebra {
        field: f.clone(),
        dim,
        basis_labels: basis.labels.clone(),
        basis_degrees: basis.degrees.clone(),
        gens,
        gen_labels: pres.generators.iter().map(|g| g.label.clone()).collect(),
        unit_coords: unit,
        basis_words: basis.paths.iter().map(|p| sys.frame.path_word(p)).collect(),
    };
    for rel in &pres.relations {
        let v = alg.eval(&rel.elem);
        if !alg.is_zero(&v) {
            return Err(Error::RelationFailed(format!(
                "relation '{}' acts nonzero in the regular representation",
                rel.tag
            )));
        }
    }
    Ok(alg)
}

impl<F: Field> MatrixAlgebra<F> {
    pub fn one(&self) -> AlgElement<F::Elem> {
        AlgElement {
            mat: matrix::identity(&self.field, self.dim),
        }
    }

    pub fn zero(&self) -> AlgElement<F::Elem> {
        AlgElement {
            mat: matrix::zeros(&self.field, self.dim, self.dim),
        }
    }

    pub fn gen(&self, label: &str) -> Option<&AlgElement<F::Elem>> {
        self.gen_labels
            .iter()
            .position(|l| l == label)
            .map(|i| &self.gens[i])
    }

    pub fn scalar(&self, c: &F::Elem) -> AlgElement<F::Elem> {
        AlgElement {
            mat: matrix::scale(&self.field, &matrix::identity(&self.field, self.dim), c),
        }
    }

    pub fn mul(&self, a: &AlgElement<F::Elem>, b: &AlgElement<F::Elem>) -> AlgElement<F::Elem> {
        AlgElement {
            mat: matrix::mul(&self.field, &a.mat, &b.mat),
        }
    }

    pub fn mul_all(&self, xs: &[&AlgElement<F::Elem>]) -> AlgElement<F::Elem> {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn add(&self, a: &AlgElement<F::Elem>, b: &AlgElement<F::Elem>) -> AlgElement<F::Elem> {
        AlgElement {
            mat: matrix::add(&self.field, &a.mat, &b.mat),
        }
    }

    pub fn sub(&self, a: &AlgElement<F::Elem>, b: &AlgElement<F::Elem>) -> AlgElement<F::Elem> {
        AlgElement {
            mat: matrix::sub(&self.field, &a.mat, &b.mat),
        }
    }

    pub fn scale(&self, a: &AlgElement<F::Elem>, c: &F::Elem) -> AlgElement<F::Elem> {
        AlgElement {
            mat: matrix::scale(&self.field, &a.mat, c),
        }
    }

    pub fn pow(&self, a: &AlgElement<F::Elem>, k: u64) -> AlgElement<F::Elem> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn is_zero(&self, a: &AlgElement<F::Elem>) -> bool {
        matrix::is_zero(&self.field, &a.mat)
    }

    pub fn coords(&self, a: &AlgElement<F::Elem>) -> Vec<F::Elem> {
        matrix::mul_vec(&self.field, &a.mat, &self.unit_coords)
    }

    pub fn inverse(&self, a: &AlgElement<F::Elem>) -> Result<AlgElement<F::Elem>> {
        matrix::inverse(&self.field, &a.mat)
            .map(|mat| AlgElement { mat })
            .ok_or_else(|| Error::NotInvertible("element of the algebra".into()))
    }

    /// Evaluate a free-algebra element on the generator images.
    pub fn eval(&self, elem: &FreeElem<F::Elem>) -> AlgElement<F::Elem> {
        self.eval_with(elem, &self.gens)
    }

    /// Evaluate on arbitrary images of the generators.
    pub fn eval_with(&self, elem: &FreeElem<F::Elem>, images: &[AlgElement<F::Elem>]) -> AlgElement<F::Elem> {
        let mut acc = self.zero();
        for (w, c) in &elem.terms {
            let mut m = self.scalar(c);
            for &g in w {
                m = self.mul(&m, &images[g]);
            }
            acc = self.add(&acc, &m);
        }
        acc
    }

    /// Like [`eval_with`](Self::eval_with), dropping every term that
    /// contains a generator flagged in `vanishing`.
    pub fn eval_sparse(
        &self,
        elem: &FreeElem<F::Elem>,
        images: &[AlgElement<F::Elem>],
        vanishing: &[bool],
    ) -> AlgElement<F::Elem> {
        let mut acc = self.zero();
        for (w, c) in &elem.terms {
            if w.iter().any(|&g| vanishing[g]) {
                continue;
            }
            let mut m = self.scalar(c);
            for &g in w {
                m = self.mul(&m, &images[g]);
            }
            acc = self.add(&acc, &m);
        }
        acc
    }

    /// Left multiplication matrix of the basis word `i`.
    pub fn basis_element(&self, i: usize) -> AlgElement<F::Elem> {
        let mut m = self.one();
        for &g in &self.basis_words[i] {
            m = self.mul(&m, &self.gens[g]);
        }
        m
    }

    /// Element with the given coordinates.
    pub fn from_coords(&self, coords: &[F::Elem]) -> AlgElement<F::Elem> {
        let mut acc = self.zero();
        for (i, c) in coords.iter().enumerate() {
            if !self.field.is_zero(c) {
                acc = self.add(&acc, &self.scale(&self.basis_element(i), c));
            }
        }
        acc
    }

    /// Minimal polynomial of `x` (monic), from the Krylov sequence `x^k . 1`.
    pub fn minimal_polynomial(&self, x: &AlgElement<F::Elem>) -> Poly<F::Elem> {
        let f = &self.field;
        let mut rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)> = Vec::new();
        let mut v = self.unit_coords.clone();
        for m in 0..=self.dim {
            let mut w = v.clone();
            let mut combo = alloc::vec![f.zero(); self.dim + 1];
            combo[m] = f.one();
            for (piv, row, rc) in &rows {
                let c = w[*piv].clone();
                if f.is_zero(&c) {
                    continue;
                }
                for (a, b) in w.iter_mut().zip(row) {
                    *a = f.sub(a, &f.mul(&c, b));
                }
                for (a, b) in combo.iter_mut().zip(rc) {
                    *a = f.sub(a, &f.mul(&c, b));
                }
            }
            match w.iter().position(|a| !f.is_zero(a)) {
                None => {
                    combo.truncate(m + 1);
                    return combo;
                }
                Some(piv) => {
                    let inv = f.inv(&w[piv]).expect("nonzero");
                    let w = w.iter().map(|a| f.mul(a, &inv)).collect();
                    let rc = combo.iter().map(|a| f.mul(a, &inv)).collect();
                    rows.push((piv, w, rc));
                }
            }
            v = matrix::mul_vec(f, &x.mat, &v);
        }
        unreachable!("a dependency appears within dim + 1 steps")
    }

    /// `p(x)` by Horner's rule.
    pub fn eval_poly(&self, p: &[F::Elem], x: &AlgElement<F::Elem>) -> AlgElement<F::Elem> {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.scalar(c));
        }
        acc
    }

    /// Inverse of `x` inside the corner `e A e`; `x` must lie in the corner.
    pub fn corner_inverse(&self, x: &AlgElement<F::Elem>, e: &AlgElement<F::Elem>) -> Result<AlgElement<F::Elem>> {
        // x + (1 - e) is invertible in A exactly when x is invertible in eAe.
        let z = self.add(x, &self.sub(&self.one(), e));
        let zi = self
            .inverse(&z)
            .map_err(|_| Error::NotInvertible("element of a corner algebra".into()))?;
        Ok(self.sub(&zi, &self.sub(&self.one(), e)))
    }

    pub fn commutes(&self, a: &AlgElement<F::Elem>, b: &AlgElement<F::Elem>) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Dimension of the subspace `x A` (rank of left multiplication).
    pub fn rank(&self, x: &AlgElement<F::Elem>) -> usize {
        matrix::rank(&self.field, &x.mat)
    }

    /// Subalgebra generated by `images`, as a reduced row space of
    /// coordinate vectors.
    pub fn generated_subalgebra(&self, images: &[AlgElement<F::Elem>]) -> Echelon<F::Elem> {
        let f = &self.field;
        let mut span = Echelon::new();
        let mut queue = alloc::vec![self.unit_coords.clone()];
        span.insert(f, self.unit_coords.clone());
        while let Some(v) = queue.pop() {
            for g in images {
                let w = matrix::mul_vec(f, &g.mat, &v);
                if span.insert(f, w.clone()) {
                    queue.push(w);
                }
            }
        }
        span
    }
}
