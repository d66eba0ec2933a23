//! Scenario configuration: TOML files, command-line overrides and the
//! `WORKBENCH_CAPS` environment variable.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use hecke_core::rewrite::Caps;
use hecke_core::scalars::{find_prime_field, FieldKind, FieldSpec, Order};
use serde::{Deserialize, Serialize};

/// An invalid scenario. The CLI maps this to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("config error: {field}: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Params,
    Dims,
    Bk,
    Shift,
    Grpn,
    Morita,
    Appendix,
    Grading,
    Independence,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Params,
        Suite::Dims,
        Suite::Bk,
        Suite::Shift,
        Suite::Grpn,
        Suite::Morita,
        Suite::Appendix,
        Suite::Grading,
        Suite::Independence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Params => "params",
            Suite::Dims => "dims",
            Suite::Bk => "bk",
            Suite::Shift => "shift",
            Suite::Grpn => "grpn",
            Suite::Morita => "morita",
            Suite::Appendix => "appendix",
            Suite::Grading => "grading",
            Suite::Independence => "independence",
        }
    }

    /// Suites that need the shift automorphism and the averaging projector.
    pub fn needs_shift(self) -> bool {
        matches!(self, Suite::Shift | Suite::Grpn | Suite::Grading)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| ConfigError::new("checks", format!("unknown check suite '{s}'")))
    }
}

/// Parse `all` or a comma separated list of suites.
pub fn parse_checks(s: &str) -> Result<Vec<Suite>, ConfigError> {
    if s.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out: Vec<Suite> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FamilyChoice {
    Sw,
    Bk,
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum VariantChoice {
    #[default]
    Bmr,
    Ar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Pass,
    Fail,
}

/// Partial cap settings; unset fields keep their defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CapsPatch {
    pub max_rules: Option<usize>,
    pub max_degree: Option<usize>,
    pub max_steps: Option<u64>,
    pub max_basis: Option<usize>,
}

impl CapsPatch {
    pub fn apply(&self, caps: &mut Caps) {
        if let Some(v) = self.max_rules {
            caps.max_rules = v;
        }
        if let Some(v) = self.max_degree {
            caps.max_degree = v;
        }
        if let Some(v) = self.max_steps {
            caps.max_steps = v;
        }
        if let Some(v) = self.max_basis {
            caps.max_basis = v;
        }
    }

    fn overlay(self, top: CapsPatch) -> CapsPatch {
        CapsPatch {
            max_rules: top.max_rules.or(self.max_rules),
            max_degree: top.max_degree.or(self.max_degree),
            max_steps: top.max_steps.or(self.max_steps),
            max_basis: top.max_basis.or(self.max_basis),
        }
    }
}

/// `max_rules=100,max_basis=5000`
impl FromStr for CapsPatch {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let mut out = CapsPatch::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| ConfigError::new("caps", format!("expected key=value, got '{part}'")))?;
            let bad = || ConfigError::new("caps", format!("bad value for {k}: '{v}'"));
            match k.trim() {
                "max_rules" => out.max_rules = Some(v.trim().parse().map_err(|_| bad())?),
                "max_degree" => out.max_degree = Some(v.trim().parse().map_err(|_| bad())?),
                "max_steps" => out.max_steps = Some(v.trim().parse().map_err(|_| bad())?),
                "max_basis" => out.max_basis = Some(v.trim().parse().map_err(|_| bad())?),
                other => return Err(ConfigError::new("caps", format!("unknown cap '{other}'"))),
            }
        }
        Ok(out)
    }
}

/// A scenario as written in a TOML file or assembled from flags. Every
/// field is optional so that two layers can be overlaid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub e: Option<Order>,
    pub p: Option<u64>,
    pub d: Option<u64>,
    pub n: Option<usize>,
    /// Weight on `K` as `[i, j, value]` triples.
    pub lambda: Option<Vec<(i64, u32, u64)>>,
    pub field: Option<FieldSpec>,
    pub min_prime: Option<u64>,
    pub family: Option<FamilyChoice>,
    pub variant: Option<VariantChoice>,
    pub caps: Option<CapsPatch>,
    pub checks: Option<Vec<Suite>>,
    pub seed: Option<u64>,
    /// Check ids (`suite/name` or `suite/family/name`) with their expected verdict.
    pub expect: BTreeMap<String, Expect>,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::new("config", e.message().to_string()))
    }

    /// `self` below, `top` above: set fields of `top` win.
    pub fn overlay(self, top: ScenarioConfig) -> ScenarioConfig {
        let mut expect = self.expect;
        expect.extend(top.expect);
        ScenarioConfig {
            e: top.e.or(self.e),
            p: top.p.or(self.p),
            d: top.d.or(self.d),
            n: top.n.or(self.n),
            lambda: top.lambda.or(self.lambda),
            field: top.field.or(self.field),
            min_prime: top.min_prime.or(self.min_prime),
            family: top.family.or(self.family),
            variant: top.variant.or(self.variant),
            caps: match (self.caps, top.caps) {
                (Some(a), Some(b)) => Some(a.overlay(b)),
                (a, b) => b.or(a),
            },
            checks: top.checks.or(self.checks),
            seed: top.seed.or(self.seed),
            expect,
        }
    }

    /// Fill in defaults and check consistency. `env_caps` is the content of
    /// `WORKBENCH_CAPS`, which overrides every other cap setting.
    pub fn resolve(&self, env_caps: Option<&str>) -> Result<Scenario, ConfigError> {
        let e = self.e.ok_or_else(|| ConfigError::new("e", "missing"))?;
        let p = self.p.ok_or_else(|| ConfigError::new("p", "missing"))?;
        let d = self.d.unwrap_or(1);
        let n = self.n.unwrap_or(2);
        if p == 0 {
            return Err(ConfigError::new("p", "must be positive"));
        }
        if d == 0 {
            return Err(ConfigError::new("d", "must be positive"));
        }
        if n == 0 {
            return Err(ConfigError::new("n", "must be positive"));
        }
        match e {
            Order::Finite(v) if v < 2 => return Err(ConfigError::new("e", "must be at least 2 or inf")),
            Order::Infinite if p > 2 => {
                return Err(ConfigError::new("p", "e = inf needs p <= 2 (only +1 and -1 are rational roots of unity)"))
            }
            _ => {}
        }
        let variant = self.variant.unwrap_or_default();
        if variant == VariantChoice::Ar && p < 2 {
            return Err(ConfigError::new("variant", "the rational variant needs p >= 2"));
        }
        let field = match &self.field {
            Some(spec) => {
                if spec.e != e || spec.p != p {
                    return Err(ConfigError::new(
                        "field",
                        format!("field has e = {}, p = {} but the scenario asks for e = {e}, p = {p}", spec.e, spec.p),
                    ));
                }
                spec.validate().map_err(|err| ConfigError::new("field", err.to_string()))?;
                spec.clone()
            }
            None => match e {
                Order::Infinite => FieldSpec::rationals(p).map_err(|err| ConfigError::new("field", err.to_string()))?,
                Order::Finite(ev) => find_prime_field(ev, p, self.min_prime.unwrap_or(2))
                    .map_err(|err| ConfigError::new("field", err.to_string()))?,
            },
        };
        if let (Order::Finite(ev), FieldKind::Prime { modulus }) = (e, &field.kind) {
            if p % modulus == 0 || ev % modulus == 0 {
                return Err(ConfigError::new("field", "the characteristic divides e or p"));
            }
        }
        if let Some(l) = &self.lambda {
            let level: u64 = l.iter().map(|t| t.2).sum();
            if level != p * d {
                return Err(ConfigError::new("lambda", format!("level {level} differs from r = p d = {}", p * d)));
            }
        }
        let mut caps = Caps::default();
        if let Some(c) = self.caps {
            c.apply(&mut caps);
        }
        if let Some(text) = env_caps {
            text.parse::<CapsPatch>()?.apply(&mut caps);
        }
        for key in self.expect.keys() {
            if key.split('/').count() < 2 {
                return Err(ConfigError::new("expect", format!("'{key}' is not a check id of the form suite/name")));
            }
        }
        let mut expect = self.expect.clone();
        if self.lambda.is_none() && d == 1 && e == Order::Finite(p) && p >= 3 {
            expect.entry(BK_PSI_SHIFT.to_string()).or_insert(Expect::Fail);
        }
        Ok(Scenario {
            e,
            p,
            d,
            n,
            lambda: self.lambda.clone(),
            field,
            family: self.family.unwrap_or_default(),
            variant,
            caps,
            checks: self.checks.clone().unwrap_or_else(|| Suite::ALL.to_vec()),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            expect,
        })
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed;

/// The transported psi identity for the Q^BK family. It breaks when `e = p >= 3`
/// with the default weight, so there it is expected to fail unless the
/// configuration says otherwise.
pub const BK_PSI_SHIFT: &str = "shift/bk/shift on psi";

/// A validated scenario with every default filled in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Scenario {
    pub e: Order,
    pub p: u64,
    pub d: u64,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<(i64, u32, u64)>>,
    pub field: FieldSpec,
    pub family: FamilyChoice,
    pub variant: VariantChoice,
    pub caps: Caps,
    pub checks: Vec<Suite>,
    pub seed: u64,
    pub expect: BTreeMap<String, Expect>,
}

impl Scenario {
    /// Shorthand for tests and presets: `(e, p, d, n)` with everything else
    /// at its default.
    pub fn simple(e: u64, p: u64, d: u64, n: usize) -> Result<Scenario, ConfigError> {
        ScenarioConfig {
            e: Some(Order::Finite(e)),
            p: Some(p),
            d: Some(d),
            n: Some(n),
            ..Default::default()
        }
        .resolve(None)
    }

    pub fn with_checks(mut self, checks: &[Suite]) -> Scenario {
        self.checks = checks.to_vec();
        self
    }

    pub fn expecting(mut self, id: &str, verdict: Expect) -> Scenario {
        self.expect.insert(id.to_string(), verdict);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let file = ScenarioConfig::from_toml("e = 3\np = 3\nn = 2\nfamily = \"bk\"\n[caps]\nmax_rules = 10\n").unwrap();
        let flags = ScenarioConfig {
            family: Some(FamilyChoice::Sw),
            caps: Some(CapsPatch {
                max_basis: Some(7),
                ..Default::default()
            }),
            ..Default::default()
        };
        let sc = file.overlay(flags).resolve(None).unwrap();
        assert_eq!(sc.family, FamilyChoice::Sw);
        assert_eq!(sc.caps.max_rules, 10);
        assert_eq!(sc.caps.max_basis, 7);
        assert_eq!(sc.field.modulus(), Some(7));
    }

    #[test]
    fn env_caps_override() {
        let sc = ScenarioConfig::from_toml("e = 2\np = 2\n[caps]\nmax_rules = 10\n")
            .unwrap()
            .resolve(Some("max_rules=3"))
            .unwrap();
        assert_eq!(sc.caps.max_rules, 3);
        assert!("max_rule=3".parse::<CapsPatch>().is_err());
    }

    #[test]
    fn inconsistent_configs() {
        let bad = |t: &str| ScenarioConfig::from_toml(t).unwrap().resolve(None).unwrap_err().field;
        assert_eq!(bad("e = 2\np = 1\nvariant = \"ar\""), "variant");
        assert_eq!(bad("e = \"inf\"\np = 3"), "p");
        assert_eq!(bad("e = 1\np = 2"), "e");
        assert_eq!(bad("p = 2"), "e");
        assert_eq!(bad("e = 2\np = 2\nlambda = [[0, 1, 1]]"), "lambda");
        assert!(ScenarioConfig::from_toml("e = 2\nbogus = 1").is_err());
    }

    #[test]
    fn infinite_e_uses_rationals() {
        let sc = ScenarioConfig::from_toml("e = \"inf\"\np = 2").unwrap().resolve(None).unwrap();
        assert_eq!(sc.field.kind, FieldKind::Rationals);
        assert_eq!(sc.field.zeta, -1);
    }

    #[test]
    fn checks_lists() {
        assert_eq!(parse_checks("all").unwrap().len(), 9);
        assert_eq!(parse_checks("shift,bk,shift").unwrap(), vec![Suite::Bk, Suite::Shift]);
        assert!(parse_checks("bk,nope").is_err());
    }

    #[test]
    fn bk_psi_expectation_defaults() {
        assert_eq!(Scenario::simple(3, 3, 1, 2).unwrap().expect.get(BK_PSI_SHIFT), Some(&Expect::Fail));
        assert!(Scenario::simple(2, 3, 1, 2).unwrap().expect.is_empty());
        assert!(Scenario::simple(3, 3, 2, 2).unwrap().expect.is_empty());
        let cfg = ScenarioConfig::from_toml("e = 3\np = 3\n[expect]\n\"shift/bk/shift on psi\" = \"pass\"\n").unwrap();
        assert_eq!(cfg.resolve(None).unwrap().expect.get(BK_PSI_SHIFT), Some(&Expect::Pass));
    }
}
