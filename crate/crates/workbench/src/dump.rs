//! Completion of presets and `.pres` files, dimension summaries, and CSV
//! matrix dumps.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use hecke_core::fixedpoint::base_weight;
use hecke_core::params::{derive_params, level_d_weight, Params};
use hecke_core::presentations::{ariki_koike, grpn, klr_cyclotomic, GrpnVariant, KlrVertices};
use hecke_core::quiver::{seq_label, Quiver};
use hecke_core::repalg::{HeckeAlgebra, Matrix};
use hecke_core::rewrite::{complete, Presentation};
use hecke_core::scalars::{Field, Scalars, WithScalars};
use hecke_core::Error;
use serde::Serialize;

use crate::config::{Scenario, VariantChoice};
use crate::pres;
use crate::runner::scenario_weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    ArikiKoike,
    QuiverHecke,
    QuiverHeckeFixed,
    Grpn,
}

pub fn build_preset<F: Field>(
    s: &Scalars<F>,
    params: &Params,
    sc: &Scenario,
    preset: Preset,
) -> Result<Presentation<F::Elem>, Error> {
    let lam = scenario_weight(sc, params).map_err(|e| Error::Precondition(e.to_string()))?;
    let lam = lam.normalized(params);
    let f = &s.field;
    match preset {
        Preset::ArikiKoike => ariki_koike(s, params, &lam, sc.n),
        Preset::QuiverHecke | Preset::QuiverHeckeFixed => {
            let quiver = Quiver::new(params, Some(&lam), sc.n as u64)?;
            if preset == Preset::QuiverHecke {
                let seqs = quiver.sequences(sc.n)?;
                klr_cyclotomic(f, &s.spec, &quiver, &lam, KlrVertices::Sequences(&seqs), sc.n)
            } else {
                let classes = quiver.orbit_classes(sc.n)?;
                klr_cyclotomic(f, &s.spec, &quiver, &lam, KlrVertices::Orbits(&classes), sc.n)
            }
        }
        Preset::Grpn => {
            let small = level_d_weight(params, &base_weight(params, &lam)?)?;
            let variant = match sc.variant {
                VariantChoice::Bmr => GrpnVariant::Bmr,
                VariantChoice::Ar => GrpnVariant::Ar,
            };
            grpn(s, params, &small, sc.n, variant)
        }
    }
}

/// What `gb` prints.
#[derive(Clone, Debug, Serialize)]
pub struct GbSummary {
    pub name: String,
    pub generators: usize,
    pub relations: usize,
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<String>,
    pub rules: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded: Option<BTreeMap<i64, u64>>,
}

pub struct GbResult {
    pub summary: GbSummary,
    pub rules: Vec<String>,
    pub pres_text: String,
}

/// Complete a preset for the scenario, or the presentation in `input`
/// (a `.pres` text, whose own field line is used).
pub struct GbJob<'a> {
    pub sc: &'a Scenario,
    pub preset: Preset,
    pub input: Option<&'a str>,
}

impl WithScalars for GbJob<'_> {
    type Output = Result<GbResult, Error>;

    fn run<F: Field + 'static>(self, s: Scalars<F>) -> Self::Output {
        let p = match self.input {
            Some(text) => pres::parse(&s.field, text)?,
            None => {
                let params = derive_params(&s, self.sc.d)?;
                build_preset(&s, &params, self.sc, self.preset)?
            }
        };
        complete_presentation(&s.field, &p, self.sc)
    }
}

pub fn complete_presentation<F: Field>(f: &F, p: &Presentation<F::Elem>, sc: &Scenario) -> Result<GbResult, Error> {
    let sys = complete(f, p, None, &sc.caps)?;
    let mut summary = GbSummary {
        name: p.name.clone(),
        generators: p.generators.len(),
        relations: p.relations.len(),
        complete: sys.complete,
        cap: sys.cap_tripped.clone(),
        rules: sys.rule_count(),
        dimension: None,
        graded: None,
    };
    if sys.complete {
        match sys.basis() {
            Ok(b) => {
                summary.dimension = Some(b.dimension());
                summary.graded = Some(b.graded_dimension());
            }
            Err(Error::InfiniteBasis(n)) => summary.cap = Some(format!("basis exceeds {n} words")),
            Err(e) => return Err(e),
        }
    }
    Ok(GbResult {
        summary,
        rules: sys.dump_rules(),
        pres_text: pres::print(f, p),
    })
}

/// Write `matrix` as CSV, row major, entries rendered exactly.
pub fn write_csv<F: Field>(f: &F, m: &Matrix<F::Elem>, dim: usize, path: &Path) -> std::io::Result<()> {
    let mut out = String::new();
    for r in 0..dim {
        let row: Vec<String> = m.row(r).iter().map(|x| f.render(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixIndex {
    pub dimension: usize,
    pub basis: Vec<String>,
    pub generators: BTreeMap<String, String>,
    pub jucys_murphy: BTreeMap<String, String>,
    /// Residue sequence label to file.
    pub idempotents: BTreeMap<String, String>,
}

/// Left multiplication matrices of `S`, `T_a`, `X_a` and every nonzero
/// `e(k)`, one CSV per element, plus `index.json`.
pub struct DumpJob<'a> {
    pub sc: &'a Scenario,
    pub dir: PathBuf,
}

impl WithScalars for DumpJob<'_> {
    type Output = anyhow::Result<MatrixIndex>;

    fn run<F: Field + 'static>(self, s: Scalars<F>) -> Self::Output {
        let params = derive_params(&s, self.sc.d)?;
        let lam = scenario_weight(self.sc, &params)?;
        let h = HeckeAlgebra::build(&s, &params, &lam, self.sc.n, &self.sc.caps)?;
        let f = &h.alg.field;
        fs::create_dir_all(&self.dir)?;
        let mut index = MatrixIndex {
            dimension: h.dim(),
            basis: h.alg.basis_labels.clone(),
            generators: BTreeMap::new(),
            jucys_murphy: BTreeMap::new(),
            idempotents: BTreeMap::new(),
        };
        let write = |name: String, m: &Matrix<F::Elem>| -> std::io::Result<String> {
            let file = format!("{name}.csv");
            write_csv(f, m, h.dim(), &self.dir.join(&file))?;
            Ok(file)
        };
        for (label, g) in h.alg.gen_labels.iter().zip(&h.alg.gens) {
            index.generators.insert(label.clone(), write(label.clone(), &g.mat)?);
        }
        for (a, x) in h.x.iter().enumerate() {
            let label = format!("X{}", a + 1);
            index.jucys_murphy.insert(label.clone(), write(label, &x.mat)?);
        }
        for (k, e) in &h.idempotents {
            let label = seq_label(k);
            let name = format!("e_{}", label.replace(',', "+"));
            index.idempotents.insert(label, write(name, &e.mat)?);
        }
        fs::write(self.dir.join("index.json"), serde_json::to_string_pretty(&index)?)?;
        Ok(index)
    }
}
