//! Report JSON and CSV rendering.

use std::collections::BTreeMap;

use mnc_core::checks::InvariantCheck;
use mnc_core::digest::sha256_json;
use mnc_core::examples::ReproRow;
use mnc_core::measures::BoundKind;
use mnc_core::{BudgetedValue, Caps, Mode};
use serde::{Deserialize, Serialize};

/// One computed value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
    pub quantity: String,
    pub budgets: String,
    pub value: f64,
    pub kind: BoundKind,
    pub witness: String,
}

impl Row {
    pub fn new(quantity: String, budgets: String, v: &BudgetedValue) -> Self {
        Row {
            scale: None,
            quantity,
            budgets,
            value: v.value,
            kind: v.kind,
            witness: v.witness_digest(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub total: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub seed: u64,
    pub mode: Mode,
    pub caps: Caps,
    pub tolerance: f64,
    pub version: String,
    /// Seconds since the Unix epoch; excluded from the determinism hash.
    pub timestamp: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub subject: String,
    pub inputs_digest: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<InvariantCheck>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub summary: BTreeMap<String, Tally>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<InvariantCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reproduction: Vec<ReproRow>,
    pub environment: Environment,
    pub determinism_hash: String,
}

impl Report {
    pub fn new(command: &str, subject: String, inputs_digest: String, environment: Environment) -> Self {
        Report {
            command: command.into(),
            subject,
            inputs_digest,
            pass: true,
            rows: Vec::new(),
            checks: Vec::new(),
            summary: BTreeMap::new(),
            failures: Vec::new(),
            reproduction: Vec::new(),
            environment,
            determinism_hash: String::new(),
        }
    }

    /// Hash of the report with the timestamp zeroed.
    pub fn compute_hash(&self) -> String {
        let mut c = self.clone();
        c.environment.timestamp = 0;
        c.determinism_hash.clear();
        sha256_json(&c)
    }

    pub fn seal(mut self) -> Self {
        self.determinism_hash = self.compute_hash();
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable report");
        s.push('\n');
        s
    }

    /// Rows, checks and reproduction lines as CSV, in that order.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut write = |r: &[String]| w.write_record(r).expect("in-memory write");
        if !self.rows.is_empty() {
            write(&["scale", "budget", "quantity", "value", "kind"].map(String::from));
            for r in &self.rows {
                write(&[
                    r.scale.clone().unwrap_or_default(),
                    r.budgets.clone(),
                    r.quantity.clone(),
                    r.value.to_string(),
                    r.kind.to_string(),
                ]);
            }
        }
        let checks: Vec<&InvariantCheck> = if self.checks.is_empty() { self.failures.iter().collect() } else { self.checks.iter().collect() };
        if !checks.is_empty() {
            write(&["check", "budget", "lhs", "rhs", "pass", "detail"].map(String::from));
            for c in checks {
                write(&[
                    c.name.clone(),
                    c.budget.clone(),
                    c.lhs.to_string(),
                    c.rhs.to_string(),
                    c.pass.to_string(),
                    c.detail.clone().unwrap_or_default(),
                ]);
            }
        }
        if !self.reproduction.is_empty() {
            write(&["row", "expected", "computed", "kind", "check", "basis", "pass"].map(String::from));
            for r in &self.reproduction {
                let computed: Vec<String> = r.computed.iter().map(|v| v.to_string()).collect();
                write(&[
                    r.label.clone(),
                    r.expected.to_string(),
                    computed.join(";"),
                    r.kind.to_string(),
                    serde_json::to_value(r.check).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                    serde_json::to_value(r.basis).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                    r.pass.to_string(),
                ]);
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mnc_core::measures::Witness;

    fn env(ts: u64) -> Environment {
        Environment {
            seed: 1,
            mode: Mode::Exact,
            caps: Caps::default(),
            tolerance: 1e-9,
            version: "0".into(),
            timestamp: ts,
        }
    }

    #[test]
    fn hash_ignores_timestamp_only() {
        let mut a = Report::new("measure", "x".into(), "d".into(), env(1));
        a.rows.push(Row::new("alpha".into(), "k=1".into(), &BudgetedValue::exact(1.0, Witness::None)));
        let b = Report { environment: env(99), ..a.clone() };
        assert_eq!(a.clone().seal().determinism_hash, b.seal().determinism_hash);
        let mut c = a.clone();
        c.rows[0].value = 0.5;
        assert_ne!(a.seal().determinism_hash, c.seal().determinism_hash);
    }

    #[test]
    fn csv_has_sweep_columns() {
        let mut a = Report::new("sweep", "x".into(), "d".into(), env(1));
        let mut r = Row::new("alpha".into(), "k=1".into(), &BudgetedValue::exact(1.0, Witness::None));
        r.scale = Some("K=3".into());
        a.rows.push(r);
        assert_eq!(a.to_csv(), "scale,budget,quantity,value,kind\nK=3,k=1,alpha,1,exact\n");
    }
}
