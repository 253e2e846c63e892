use serde::{Deserialize, Serialize};
use serde_json::Value;
use xorgap::gpt::{CompositionRule, Gpt, XorGame};
use xorgap::montecarlo::McReport;
use xorgap::spaces::SpaceDescriptor;
use xorgap::tensornorms::{Certificate, NormValue, Tensor};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Norm(NormReport),
    Tensor(TensorReport),
    RhoSearch(RhoReport),
    Game(GameReport),
    Witness(WitnessReport),
    Mc(McReports),
    Verify(VerifyReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gpt: Option<Gpt>,
    pub vector: Vec<f64>,
    pub value: f64,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorReport {
    pub op: String,
    pub tensor: Tensor,
    pub value: NormValue,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoReport {
    pub x_space: SpaceDescriptor,
    pub y_space: SpaceDescriptor,
    pub seed: u64,
    pub iterations: usize,
    pub found_at: usize,
    pub ratio: f64,
    pub tensor: Tensor,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameReport {
    pub game: XorGame,
    pub rule: CompositionRule,
    pub local: f64,
    pub global: f64,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub witness: String,
    pub value: f64,
    pub certificate: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReports {
    pub op: String,
    pub reports: Vec<McReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub target: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Twelve significant digits, shortest form.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r != 0.0 && !(1e-4..1e15).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn interval(v: &NormValue) -> String {
    match v {
        NormValue::Exact(x) => num(*x),
        NormValue::Interval(i) => format!("[{}, {}]", num(i.lower), num(i.upper)),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.text(),
            Format::Csv => self.csv(),
        }
    }

    /// Scalar fields as `(key, value)` pairs.
    fn pairs(&self) -> Vec<(String, String)> {
        let p = |k: &str, v: String| (k.to_string(), v);
        match self {
            Report::Norm(r) => vec![
                p("op", r.op.clone()),
                p("value", num(r.value)),
                p("certificate", r.certificate.tag.clone()),
            ],
            Report::Tensor(r) => {
                let mut out = vec![p("op", r.op.clone()), p("value", interval(&r.value))];
                match &r.value {
                    NormValue::Exact(_) => out.push(p("certificate", r.certificate.tag.clone())),
                    NormValue::Interval(i) => {
                        out.push(p("lower_certificate", i.lower_certificate.tag.clone()));
                        out.push(p("upper_certificate", i.upper_certificate.tag.clone()));
                    }
                }
                out
            }
            Report::RhoSearch(r) => vec![
                p("x_space", r.x_space.label()),
                p("y_space", r.y_space.label()),
                p("ratio", num(r.ratio)),
                p("found_at", r.found_at.to_string()),
                p("iterations", r.iterations.to_string()),
                p("seed", r.seed.to_string()),
                p("certificate", r.certificate.tag.clone()),
            ],
            Report::Game(r) => vec![
                p("rule", r.rule.to_string()),
                p("local", num(r.local)),
                p("global", num(r.global)),
                p("certificate", r.certificate.tag.clone()),
            ],
            Report::Witness(r) => vec![p("witness", r.witness.clone()), p("value", num(r.value))],
            Report::Mc(_) | Report::Verify(_) => vec![],
        }
    }

    fn text(&self) -> String {
        match self {
            Report::Mc(r) => {
                let mut s = String::new();
                for m in &r.reports {
                    let size = match m.m {
                        Some(mm) => format!("{}x{}", m.k, mm),
                        None => m.k.to_string(),
                    };
                    s += &format!(
                        "{} k={} samples={} estimate={} stderr={} target={} bound={} pass={}\n",
                        m.quantity,
                        size,
                        m.samples,
                        num(m.estimate),
                        num(m.stderr),
                        opt(m.target),
                        opt(m.bound),
                        m.pass.map(|b| b.to_string()).unwrap_or_default(),
                    );
                }
                s
            }
            Report::Verify(r) => {
                let mut s = String::new();
                for c in &r.checks {
                    let tag = if c.pass { "PASS" } else { "FAIL" };
                    s += &format!("{tag} {} value={} target={}\n", c.name, num(c.value), num(c.target));
                }
                s += &format!("{} {}\n", r.suite, if r.pass { "PASS" } else { "FAIL" });
                s
            }
            _ => self.pairs().iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Report::Mc(r) => {
                let mut s = String::from("quantity,k,samples,seed,estimate,stderr,target,pass\n");
                for m in &r.reports {
                    s += &format!(
                        "{},{},{},{},{},{},{},{}\n",
                        csv_field(&m.quantity),
                        m.k,
                        m.samples,
                        m.seed,
                        num(m.estimate),
                        num(m.stderr),
                        opt(m.target),
                        m.pass.map(|b| b.to_string()).unwrap_or_default(),
                    );
                }
                s
            }
            Report::Verify(r) => {
                let mut s = String::from("name,value,target,pass\n");
                for c in &r.checks {
                    s += &format!("{},{},{},{}\n", csv_field(&c.name), num(c.value), num(c.target), c.pass);
                }
                s
            }
            _ => {
                let mut s = String::from("key,value\n");
                for (k, v) in self.pairs() {
                    s += &format!("{},{}\n", csv_field(&k), csv_field(&v));
                }
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(num(2f64.sqrt()), "1.41421356237");
        assert_eq!(num(2.0), "2");
        assert_eq!(num(-0.5), "-0.5");
        assert_eq!(num(1.0 / 3.0 * 1e-7), "3.33333333333e-8");
        assert_eq!(num(1e20), "1e20");
        assert_eq!(num(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
