//! Runs the check suites of a scenario in dependency order: field and
//! parameters, the Hecke algebra, the shift, then the independent suites on
//! a worker pool.

use std::collections::BTreeMap;
use std::time::Instant;

use hecke_core::bkiso::{build_images, morita_check, verify_bk_property, verify_klr_relations, verify_roundtrip, Family, MoritaSummand};
use hecke_core::fixedpoint::{
    appendix_checks, averaging_projector, complete_dims, fixed_presentation_check, hecke_shift, homogeneity_check,
    independence_check, length_graded, second_root, verify_intertwining, verify_phi, ShiftMap,
};
use hecke_core::params::{derive_params, weight_on_k, Params, Weight, WeightDomain};
use hecke_core::presentations::{klr_cyclotomic, KlrVertices};
use hecke_core::repalg::{matrix, HeckeAlgebra, Matrix};
use hecke_core::report::Check;
use hecke_core::rewrite::confluence_audit;
use hecke_core::scalars::{Field, Order, Scalars, WithScalars};
use hecke_core::Error;
use rayon::prelude::*;

use crate::config::{ConfigError, FamilyChoice, Scenario, Suite};
use crate::report::Report;

/// A failed computation as a check: caps become skips, anything else a failure.
pub fn error_check(name: &str, err: &Error) -> Check {
    let c = Check::new(name, "the computation completes");
    if is_cap(err) {
        c.skip(format!("cap: {err}"))
    } else {
        let mut c = c;
        c.record(false, || err.to_string());
        c
    }
}

pub fn is_cap(err: &Error) -> bool {
    matches!(err, Error::Incomplete(_) | Error::InfiniteBasis(_) | Error::SearchCap { .. })
}

#[derive(Default)]
struct SuiteOut {
    checks: Vec<(Option<String>, Check)>,
    dims: Vec<(String, u64)>,
    graded: Vec<(String, BTreeMap<i64, u64>)>,
    morita: Option<Vec<MoritaSummand>>,
}

impl SuiteOut {
    fn push(&mut self, c: Check) {
        self.checks.push((None, c));
    }

    fn push_fam(&mut self, fam: Family, c: Check) {
        self.checks.push((Some(fam.to_string()), c));
    }

    fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        for c in cs {
            self.push(c);
        }
    }
}

struct Stage<E> {
    shift: ShiftMap<E>,
    shift_checks: Vec<Check>,
    mu: Matrix<E>,
    rank: usize,
}

pub fn families(choice: FamilyChoice) -> Vec<Family> {
    match choice {
        FamilyChoice::Sw => vec![Family::Sw],
        FamilyChoice::Bk => vec![Family::Bk],
        FamilyChoice::Both => vec![Family::Sw, Family::Bk],
    }
}

/// The weight on `K` of a scenario: the explicit one or the default.
pub fn scenario_weight(sc: &Scenario, params: &Params) -> Result<Weight, ConfigError> {
    match &sc.lambda {
        Some(t) => Ok(Weight::from_triples(WeightDomain::IxJPrime, t)),
        None => weight_on_k(params, &params.default_weight()).map_err(|e| ConfigError::new("lambda", e.to_string())),
    }
}

/// Run every requested suite. Only configuration problems are errors; all
/// mathematical outcomes end up in the report.
pub fn run(sc: &Scenario, jobs: usize) -> Result<Report, ConfigError> {
    sc.field.dispatch(Runner { sc, jobs }).map_err(|e| ConfigError::new("field", e.to_string()))?
}

struct Runner<'a> {
    sc: &'a Scenario,
    jobs: usize,
}

impl WithScalars for Runner<'_> {
    type Output = Result<Report, ConfigError>;

    fn run<F: Field + 'static>(self, s: Scalars<F>) -> Self::Output {
        let sc = self.sc;
        let mut report = Report::new(sc.clone());
        let mut timings = BTreeMap::new();
        let params = derive_params(&s, sc.d).map_err(|e| ConfigError::new("params", e.to_string()))?;
        let lam = scenario_weight(sc, &params)?;
        report.params = Some(params.clone());

        let suites: Vec<Suite> = sc.checks.clone();
        let t = Instant::now();
        let built = HeckeAlgebra::build(&s, &params, &lam, sc.n, &sc.caps);
        timings.insert("build".to_string(), t.elapsed().as_secs_f64());
        let h = match built {
            Ok(h) => h,
            Err(err) => {
                for suite in &suites {
                    if *suite == Suite::Params {
                        let out = params_suite(&s, &params);
                        for (_, c) in out.checks {
                            report.push("params", None, c);
                        }
                    } else {
                        report.push(suite.name(), None, error_check("build", &err));
                    }
                }
                report.timings = Some(timings);
                report.finish();
                return Ok(report);
            }
        };

        let stage = if suites.iter().any(|x| x.needs_shift()) {
            let t = Instant::now();
            let st = hecke_shift(&h).and_then(|(shift, shift_checks)| {
                let (mu, more) = averaging_projector(&h, &shift)?;
                let rank = matrix::rank(&h.alg.field, &mu);
                let mut shift_checks = shift_checks;
                shift_checks.extend(more);
                Ok(Stage {
                    shift,
                    shift_checks,
                    mu,
                    rank,
                })
            });
            timings.insert("shift".to_string(), t.elapsed().as_secs_f64());
            Some(st)
        } else {
            None
        };

        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.max(1))
            .build()
            .map_err(|e| ConfigError::new("jobs", e.to_string()))?;
        let ctx = Ctx {
            sc,
            s: &s,
            params: &params,
            lam: &lam,
            h: &h,
            stage: stage.as_ref(),
        };
        let outs: Vec<(Suite, SuiteOut, f64)> = pool.install(|| {
            suites
                .par_iter()
                .map(|&suite| {
                    let t = Instant::now();
                    let out = ctx.run_suite(suite);
                    (suite, out, t.elapsed().as_secs_f64())
                })
                .collect()
        });
        for (suite, out, secs) in outs {
            timings.insert(suite.name().to_string(), secs);
            for (fam, c) in out.checks {
                report.push(suite.name(), fam.as_deref(), c);
            }
            for (k, v) in out.dims {
                report.dims.insert(k, v);
            }
            for (k, v) in out.graded {
                report.graded.insert(k, v);
            }
            if out.morita.is_some() {
                report.morita = out.morita;
            }
        }
        report.timings = Some(timings);
        report.finish();
        Ok(report)
    }
}

struct Ctx<'a, F: Field> {
    sc: &'a Scenario,
    s: &'a Scalars<F>,
    params: &'a Params,
    lam: &'a Weight,
    h: &'a HeckeAlgebra<F>,
    stage: Option<&'a Result<Stage<F::Elem>, Error>>,
}

impl<F: Field> Ctx<'_, F> {
    fn run_suite(&self, suite: Suite) -> SuiteOut {
        match suite {
            Suite::Params => params_suite(self.s, self.params),
            Suite::Dims => self.dims_suite(),
            Suite::Bk => self.bk_suite(),
            Suite::Shift => self.with_stage("shift", |st, out| self.shift_suite(st, out)),
            Suite::Grpn => self.with_stage("grpn", |st, out| {
                match verify_phi(self.h, &st.mu) {
                    Ok((checks, dim)) => {
                        out.extend(checks);
                        out.dims.push(("phi".into(), dim as u64));
                    }
                    Err(e) => out.push(error_check("phi images", &e)),
                }
            }),
            Suite::Morita => {
                let (checks, table) = morita_check(self.h);
                let mut out = SuiteOut::default();
                out.extend(checks);
                out.morita = Some(table);
                out
            }
            Suite::Appendix => {
                let mut out = SuiteOut::default();
                match appendix_checks(self.h, &self.sc.caps) {
                    Ok(cs) => out.extend(cs),
                    Err(e) => out.push(error_check("appendix", &e)),
                }
                out
            }
            Suite::Grading => self.with_stage("grading", |st, out| self.grading_suite(st, out)),
            Suite::Independence => self.independence_suite(),
        }
    }

    fn with_stage(&self, what: &str, body: impl FnOnce(&Stage<F::Elem>, &mut SuiteOut)) -> SuiteOut {
        let mut out = SuiteOut::default();
        match self.stage {
            Some(Ok(st)) => body(st, &mut out),
            Some(Err(e)) => out.push(error_check("shift", e)),
            None => out.push(Check::new(what, "shift computed").skip("shift stage not run")),
        }
        out
    }

    fn dims_suite(&self) -> SuiteOut {
        let h = self.h;
        let alg = &h.alg;
        let f = &alg.field;
        let mut out = SuiteOut::default();
        let expect = self.params.r.pow(h.n as u32) * (1..=h.n as u64).product::<u64>();
        let mut c = Check::new("Ariki-Koike dimension", "the completed presentation has r^n n! normal words");
        c.record(alg.dim as u64 == expect, || format!("{} normal words, expected {expect}", alg.dim));
        c.note("dimension", alg.dim.to_string());
        out.push(c);
        out.dims.push(("H".into(), alg.dim as u64));

        let mut cert = Check::new(
            "dimension certificate",
            "normal words act faithfully: relations vanish, basis words have unit coordinates, and the generators span the regular module",
        );
        for rel in &h.presentation.relations {
            cert.record(alg.is_zero(&alg.eval(&rel.elem)), || format!("relation {}", rel.tag));
        }
        for i in 0..alg.dim {
            let coords = alg.coords(&alg.basis_element(i));
            let ok = coords.iter().enumerate().all(|(j, x)| if i == j { f.is_one(x) } else { f.is_zero(x) });
            cert.record(ok, || format!("basis word {}", alg.basis_labels[i]));
        }
        let span = alg.generated_subalgebra(&alg.gens).dim();
        cert.record(span == alg.dim, || format!("generated subalgebra has dimension {span}"));
        out.push(cert);
        out.push(confluence_audit(&h.system, self.sc.seed, 200, 2 * h.n + 4));

        let c = Check::new("quiver Hecke dimension", "the completed quiver Hecke presentation has dimension dim H");
        let klr = h
            .quiver
            .sequences(h.n)
            .and_then(|seqs| klr_cyclotomic(f, &self.s.spec, &h.quiver, self.lam, KlrVertices::Sequences(&seqs), h.n))
            .and_then(|pres| complete_dims(f, &pres, &self.sc.caps));
        match klr {
            Ok(Some((d, g))) => {
                let mut c = c.with("dimension", d.to_string());
                c.record(d == alg.dim, || format!("{d} vs {}", alg.dim));
                out.push(c);
                out.dims.push(("klr".into(), d as u64));
                out.graded.push(("klr".into(), g));
            }
            Ok(None) => out.push(c.skip("cap")),
            Err(e) => out.push(error_check("quiver Hecke dimension", &e)),
        }
        out
    }

    fn bk_suite(&self) -> SuiteOut {
        let mut out = SuiteOut::default();
        for fam in families(self.sc.family) {
            let img = match build_images(self.h, fam) {
                Ok(img) => img,
                Err(e) => {
                    out.push_fam(fam, error_check("images", &e));
                    continue;
                }
            };
            match verify_klr_relations(self.h, &img) {
                Ok(cs) => cs.into_iter().for_each(|c| out.push_fam(fam, c)),
                Err(e) => out.push_fam(fam, error_check("relations", &e)),
            }
            for c in verify_roundtrip(self.h, &img) {
                out.push_fam(fam, c);
            }
            for c in verify_bk_property(self.h, &img) {
                out.push_fam(fam, c);
            }
        }
        out
    }

    fn shift_suite(&self, st: &Stage<F::Elem>, out: &mut SuiteOut) {
        out.extend(st.shift_checks.iter().cloned());
        out.dims.push(("fixed".into(), st.rank as u64));
        for fam in families(self.sc.family) {
            match build_images(self.h, fam) {
                Ok(img) => {
                    for c in verify_intertwining(self.h, &img, &st.shift) {
                        out.push_fam(fam, c);
                    }
                }
                Err(e) => out.push_fam(fam, error_check("images", &e)),
            }
        }
    }

    fn grading_suite(&self, st: &Stage<F::Elem>, out: &mut SuiteOut) {
        let h = self.h;
        let f = &h.alg.field;
        let pres = h.quiver.sequences(h.n).and_then(|seqs| {
            let full = klr_cyclotomic(f, &self.s.spec, &h.quiver, self.lam, KlrVertices::Sequences(&seqs), h.n)?;
            let classes = h.quiver.orbit_classes(h.n)?;
            let fixed = klr_cyclotomic(f, &self.s.spec, &h.quiver, self.lam, KlrVertices::Orbits(&classes), h.n)?;
            Ok((full, fixed))
        });
        match pres {
            Ok((full, fixed)) => {
                for (label, p) in [("full", &full), ("fixed", &fixed)] {
                    match homogeneity_check(f, p) {
                        Ok(c) => {
                            let mut c = c;
                            c.name = format!("homogeneous relations ({label})");
                            out.push(c);
                        }
                        Err(e) => out.push(error_check("homogeneous relations", &e)),
                    }
                }
            }
            Err(e) => out.push(error_check("quiver Hecke presentations", &e)),
        }
        let mut control = Check::new(
            "length grading rejected",
            "the homogeneity check rejects the Ariki-Koike relations with every generator in degree 1",
        );
        match homogeneity_check(f, &length_graded(&h.presentation)) {
            Ok(c) => {
                control.record(!c.passed(), || "the inhomogeneous grading was accepted".into());
                control.note("rejected relations", c.failed.to_string());
            }
            Err(e) => control.record(false, || e.to_string()),
        }
        out.push(control);
        match fixed_presentation_check(h, &st.shift, st.rank, &self.sc.caps) {
            Ok((checks, summary)) => {
                out.extend(checks);
                if let Some(d) = summary.full_dim {
                    out.dims.push(("klr".into(), d as u64));
                }
                if let Some(d) = summary.fixed_dim {
                    out.dims.push(("klr_fixed".into(), d as u64));
                }
                if let Some(g) = summary.full_graded {
                    out.graded.push(("klr".into(), g));
                }
                if let Some(g) = summary.fixed_graded {
                    out.graded.push(("klr_fixed".into(), g));
                }
            }
            Err(e) => out.push(error_check("fixed presentation", &e)),
        }
    }

    fn independence_suite(&self) -> SuiteOut {
        let mut out = SuiteOut::default();
        let base = Check::new(
            "independence of q",
            "the fixed-point presentations for two choices of q with matching eta coincide, with equal graded dimensions",
        );
        if self.sc.lambda.is_some() {
            out.push(base.skip("only defined here for the default weight"));
            return out;
        }
        let other = match second_root(&self.s.spec) {
            Ok(Some(spec)) => spec,
            Ok(None) => {
                out.push(base.skip("no second q of the same order with matching eta in this field"));
                return out;
            }
            Err(e) => {
                out.push(error_check("independence of q", &e));
                return out;
            }
        };
        let f = &self.s.field;
        let b = Scalars {
            field: f.clone(),
            q: f.from_i64(other.q),
            zeta: f.from_i64(other.zeta),
            spec: other,
        };
        match independence_check(self.s, &b, self.sc.d, self.sc.n, &self.sc.caps) {
            Ok(c) => out.push(c),
            Err(e) => out.push(error_check("independence of q", &e)),
        }
        out
    }
}

fn params_suite<F: Field>(s: &Scalars<F>, params: &Params) -> SuiteOut {
    let f = &s.field;
    let mut out = SuiteOut::default();
    let mut orders = Check::new("field orders", "q has order e and zeta has order p");
    orders.record(s.spec.validate().is_ok(), || "orders differ from the declared ones".into());
    out.push(orders);

    let mut c = Check::new(
        "parameter arithmetic",
        "p' is the least m with zeta^m a power of q, zeta^p' = q^eta, omega = p / p' and r = p d",
    );
    let window: Vec<i64> = match params.e {
        Order::Finite(e) => (0..e as i64).collect(),
        Order::Infinite => (-64..=64).collect(),
    };
    let powers: Vec<F::Elem> = window.iter().map(|&k| f.powi(&s.q, k).expect("q is nonzero")).collect();
    let in_q = |x: &F::Elem| powers.contains(x);
    for m in 1..params.pprime {
        c.record(!in_q(&f.pow(&s.zeta, m)), || format!("zeta^{m} is already a power of q"));
    }
    let zp = f.pow(&s.zeta, params.pprime);
    c.record(in_q(&zp), || "zeta^p' is not a power of q".into());
    let qe = f.powi(&s.q, params.eta).expect("q is nonzero");
    c.record(zp == qe, || format!("zeta^p' differs from q^{}", params.eta));
    c.record(params.pprime * params.omega == params.p, || "p' omega differs from p".into());
    c.record(params.r == params.p * params.d, || "r differs from p d".into());
    for (k, v) in [("pprime", params.pprime as i64), ("eta", params.eta), ("omega", params.omega as i64)] {
        c.note(k, v.to_string());
    }
    out.push(c);
    out
}
