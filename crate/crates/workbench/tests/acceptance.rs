//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the verdicts always reach stdout; exits nonzero if any criterion fails.

use std::process::Command;

use hecke_core::report::Status;
use hecke_core::scalars::{FieldKind, Order};
use hecke_workbench::report::Outcome;
use hecke_workbench::{run, Report, Scenario, ScenarioConfig, Suite};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn scenario(e: u64, p: u64, d: u64, n: usize, checks: &[Suite]) -> Scenario {
    Scenario::simple(e, p, d, n).expect("valid scenario").with_checks(checks)
}

fn report(sc: &Scenario) -> Result<Report, String> {
    run(sc, 1).map_err(|e| e.to_string())
}

fn tag(sc: &Scenario) -> String {
    format!("e{}p{}d{}n{}", sc.e, sc.p, sc.d, sc.n)
}

/// Every non-skipped check met its expectation, and at least one ran.
fn clean(r: &Report, what: &str) -> Result<(), String> {
    if let Some(bad) = r.checks.iter().find(|c| c.outcome == Outcome::Unexpected) {
        return Err(format!("{what}: {} is {:?} ({})", bad.id, bad.check.status, bad.check.failures.join("; ")));
    }
    if r.checks.iter().all(|c| c.outcome == Outcome::Skipped) {
        return Err(format!("{what}: nothing ran"));
    }
    Ok(())
}

fn passed(r: &Report, id: &str) -> Result<(), String> {
    match r.entry(id) {
        Some(e) if e.check.status == Status::Pass => Ok(()),
        Some(e) => Err(format!("{id} is {:?}: {}", e.check.status, e.check.failures.join("; "))),
        None => Err(format!("{id} missing")),
    }
}

fn dim(r: &Report, key: &str) -> Result<u64, String> {
    r.dims.get(key).copied().ok_or_else(|| format!("no '{key}' dimension"))
}

fn parameters() -> Verdict {
    let cases = [
        (Order::Finite(2), 3, (3, 0, 1)),
        (Order::Finite(2), 6, (3, 1, 2)),
        (Order::Infinite, 2, (2, 0, 1)),
    ];
    for (e, p, want) in cases {
        let sc = ScenarioConfig {
            e: Some(e),
            p: Some(p),
            checks: Some(vec![Suite::Params]),
            ..Default::default()
        }
        .resolve(None)
        .map_err(|err| err.to_string())?;
        let r = report(&sc)?;
        clean(&r, &tag(&sc))?;
        let pa = r.params.as_ref().ok_or("no params")?;
        let got = (pa.pprime, pa.eta, pa.omega);
        if got != want {
            return Err(format!("(e={e}, p={p}): got {got:?}, want {want:?}"));
        }
    }
    Ok("(2,3)->(3,0,1), (2,6)->(3,1,2), (inf,2)->(2,0,1)".into())
}

fn ariki_koike_dimensions() -> Verdict {
    let mut seen = Vec::new();
    for (e, p, n, want) in [(2, 2, 2, 8), (2, 3, 2, 18), (3, 3, 2, 18), (2, 2, 3, 48)] {
        let sc = scenario(e, p, 1, n, &[Suite::Dims]);
        let r = report(&sc)?;
        clean(&r, &tag(&sc))?;
        let got = dim(&r, "H")?;
        if got != want {
            return Err(format!("{}: dim {got}, want {want}", tag(&sc)));
        }
        seen.push(format!("{}={got}", tag(&sc)));
    }
    Ok(seen.join(", "))
}

const BK_CONFIGS: [(u64, u64); 4] = [(2, 2), (2, 3), (3, 3), (3, 2)];

fn family_checks(r: &Report, fam: &str, names: &[&str]) -> Result<usize, String> {
    let mut count = 0;
    for e in r.checks.iter().filter(|e| e.id.starts_with(&format!("bk/{fam}/"))) {
        if names.is_empty() || names.contains(&e.check.name.as_str()) {
            if e.check.status == Status::Fail {
                return Err(format!("{}: {}", e.id, e.check.failures.join("; ")));
            }
            if e.check.status == Status::Pass {
                count += 1;
            }
        }
    }
    Ok(count)
}

fn bk_relations() -> Verdict {
    let mut total = 0;
    for (e, p) in BK_CONFIGS {
        let sc = scenario(e, p, 1, 2, &[Suite::Bk]);
        let r = report(&sc)?;
        clean(&r, &tag(&sc))?;
        for fam in ["sw", "bk"] {
            let n = family_checks(&r, fam, &[])?;
            if n == 0 {
                return Err(format!("{}: no {fam} checks ran", tag(&sc)));
            }
            total += n;
        }
    }
    Ok(format!("{total} relation checks over 4 configs, both families"))
}

fn roundtrip() -> Verdict {
    for (e, p) in BK_CONFIGS {
        let sc = scenario(e, p, 1, 2, &[Suite::Bk]);
        let r = report(&sc)?;
        for fam in ["sw", "bk"] {
            for name in ["X from y", "T from psi"] {
                passed(&r, &format!("bk/{fam}/{name}"))?;
            }
        }
    }
    Ok("X and T recovered from y, psi, e(k) on 4 configs".into())
}

fn klr_dimension() -> Verdict {
    let sc = scenario(2, 2, 1, 2, &[Suite::Dims]);
    let r = report(&sc)?;
    passed(&r, "dims/quiver Hecke dimension")?;
    match dim(&r, "klr")? {
        8 => Ok("e2p2n2 quiver Hecke dim 8".into()),
        d => Err(format!("dim {d}")),
    }
}

fn fixed_dimensions() -> Verdict {
    for (p, want) in [(2, 4), (3, 6)] {
        let sc = scenario(2, p, 1, 2, &[Suite::Shift, Suite::Grpn, Suite::Grading]);
        let r = report(&sc)?;
        clean(&r, &tag(&sc))?;
        for key in ["fixed", "phi", "klr_fixed"] {
            let got = dim(&r, key)?;
            if got != want {
                return Err(format!("{}: {key} = {got}, want {want}", tag(&sc)));
            }
        }
        passed(&r, "shift/fixed dimension")?;
        passed(&r, "grpn/phi image is the fixed subalgebra")?;
        passed(&r, "grading/fixed presentation dimension")?;
    }
    Ok("rank mu, phi image and fixed presentation agree: 4 (p=2), 6 (p=3)".into())
}

fn intertwining() -> Verdict {
    for (e, p) in BK_CONFIGS {
        let sc = scenario(e, p, 1, 2, &[Suite::Shift]);
        let r = report(&sc)?;
        clean(&r, &tag(&sc))?;
        for name in ["shift on idempotents", "shift on y", "shift on psi"] {
            passed(&r, &format!("shift/sw/{name}"))?;
        }
    }
    let sc = scenario(3, 3, 1, 2, &[Suite::Shift]);
    let r = report(&sc)?;
    clean(&r, &tag(&sc))?;
    passed(&r, "shift/bk/shift on idempotents")?;
    let psi = r.entry("shift/bk/shift on psi").ok_or("bk psi check missing")?;
    if psi.check.status != Status::Fail {
        return Err("bk psi identity holds on e3p3n2".into());
    }
    Ok(format!("sw passes on 4 configs; bk psi fails on e3p3n2 at {} k", psi.check.failed))
}

fn morita() -> Verdict {
    let mut seen = Vec::new();
    for (e, p, pprime, want) in [(2, 2, 1, 8), (3, 2, 2, 8), (2, 3, 3, 18)] {
        let sc = scenario(e, p, 1, 2, &[Suite::Params, Suite::Morita]);
        let r = report(&sc)?;
        clean(&r, &tag(&sc))?;
        let got = r.params.as_ref().ok_or("no params")?.pprime;
        if got != pprime {
            return Err(format!("{}: p' = {got}, want {pprime}", tag(&sc)));
        }
        for name in ["Morita identity", "block idempotents", "block dimensions"] {
            passed(&r, &format!("morita/{name}"))?;
        }
        let lhs = &r.entry("morita/Morita identity").unwrap().check.data;
        if lhs.get("lhs").map(String::as_str) != Some(&want.to_string()) {
            return Err(format!("{}: Morita value {:?}, want {want}", tag(&sc), lhs.get("lhs")));
        }
        seen.push(format!("p'={pprime}: {want}"));
    }
    Ok(seen.join(", "))
}

fn grading() -> Verdict {
    for (e, p) in [(2, 2), (2, 3), (3, 3)] {
        let sc = scenario(e, p, 1, 2, &[Suite::Grading]);
        let r = report(&sc)?;
        clean(&r, &tag(&sc))?;
        passed(&r, "grading/graded subalgebra")?;
        passed(&r, "grading/length grading rejected")?;
    }
    Ok("homogeneous relations and graded fixed subalgebra on 3 configs".into())
}

fn appendix() -> Verdict {
    for p in [1, 2, 3] {
        let sc = scenario(2, p, 1, 2, &[Suite::Appendix]);
        let r = report(&sc)?;
        clean(&r, &tag(&sc))?;
    }
    Ok("p = 1, 2, 3".into())
}

fn independence() -> Verdict {
    let sc = scenario(3, 3, 1, 2, &[Suite::Independence]);
    match sc.field.kind {
        FieldKind::Prime { modulus: 7 } => {}
        ref k => return Err(format!("field {k:?}, want F_7")),
    }
    let r = report(&sc)?;
    clean(&r, &tag(&sc))?;
    let e = r.entry("independence/independence of q").ok_or("missing")?;
    passed(&r, &e.id)?;
    match e.check.data.get("q").map(String::as_str) {
        Some("2 vs 4") => Ok("e=3 over F_7, q = 2 and q = 4 agree".into()),
        other => Err(format!("compared q {other:?}")),
    }
}

fn cli_json(jobs: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["run", "--e", "3", "--p", "3", "--n", "2", "--checks", "all", "--no-timings", "--jobs", jobs])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {:?}", out.status.code()));
    }
    Ok(out.stdout)
}

fn determinism() -> Verdict {
    let a = cli_json("1")?;
    let b = cli_json("1")?;
    let c = cli_json("4")?;
    if a != b {
        return Err("two runs differ".into());
    }
    if a != c {
        return Err("--jobs 1 and --jobs 4 differ".into());
    }
    let sc = scenario(3, 3, 1, 2, &Suite::ALL);
    let lib = report(&sc)?.canonical_json();
    if lib.trim_end().as_bytes() != String::from_utf8_lossy(&a).trim_end().as_bytes() {
        return Err("library and binary reports differ".into());
    }
    Ok(format!("{} bytes, identical across runs and job counts", a.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("parameters p', eta, omega", parameters),
        ("Ariki-Koike dimensions", ariki_koike_dimensions),
        ("quiver Hecke relations on both families", bk_relations),
        ("isomorphism roundtrip", roundtrip),
        ("quiver Hecke dimension", klr_dimension),
        ("fixed-point dimensions", fixed_dimensions),
        ("intertwining dichotomy", intertwining),
        ("Morita identity and blocks", morita),
        ("grading", grading),
        ("G(r,p,n) appendix suite", appendix),
        ("independence of q", independence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
