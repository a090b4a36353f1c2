//! Machine-readable certificates: computed values plus named targets with
//! pass/fail flags. Integers are always emitted as decimal strings.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One checked claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    pub name: String,
    /// Where the claimed value comes from, in words.
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub values: BTreeMap<String, Value>,
    pub targets: Vec<Target>,
    pub wall_time_ms: u64,
}

/// Decimal-string rendering for a list of integers.
pub fn strings<T: Display>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(items.into_iter().map(|x| Value::String(x.to_string())).collect())
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            values: BTreeMap::new(),
            targets: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn input(&mut self, key: impl Into<String>, v: impl Display) -> &mut Self {
        self.inputs.insert(key.into(), Value::String(v.to_string()));
        self
    }

    pub fn input_json(&mut self, key: impl Into<String>, v: Value) -> &mut Self {
        self.inputs.insert(key.into(), v);
        self
    }

    pub fn value(&mut self, key: impl Into<String>, v: impl Display) -> &mut Self {
        self.values.insert(key.into(), Value::String(v.to_string()));
        self
    }

    pub fn value_json(&mut self, key: impl Into<String>, v: Value) -> &mut Self {
        self.values.insert(key.into(), v);
        self
    }

    /// Records a target passing when the two renderings agree.
    pub fn target(
        &mut self,
        name: impl Into<String>,
        anchor: impl Into<String>,
        expected: impl Display,
        computed: impl Display,
    ) -> bool {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let pass = expected == computed;
        self.check(name, anchor, expected, computed, pass)
    }

    /// Records a target whose pass flag is decided by the caller.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        anchor: impl Into<String>,
        expected: impl Display,
        computed: impl Display,
        pass: bool,
    ) -> bool {
        self.targets.push(Target {
            name: name.into(),
            anchor: anchor.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
        });
        pass
    }

    pub fn passed(&self) -> bool {
        self.targets.iter().all(|t| t.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Target> {
        self.targets.iter().filter(|t| !t.pass)
    }

    /// Folds another report in, prefixing its keys and target names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for (k, v) in other.values {
            self.values.insert(format!("{prefix}.{k}"), v);
        }
        for (k, v) in other.inputs {
            self.inputs.insert(format!("{prefix}.{k}"), v);
        }
        for mut t in other.targets {
            t.name = format!("{prefix}.{}", t.name);
            self.targets.push(t);
        }
    }

    pub fn stamp(&mut self, started: Instant) {
        self.wall_time_ms = started.elapsed().as_millis() as u64;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        if !self.inputs.is_empty() {
            let _ = writeln!(s, "inputs:");
            for (k, v) in &self.inputs {
                let _ = writeln!(s, "  {k} = {}", render(v));
            }
        }
        if !self.values.is_empty() {
            let _ = writeln!(s, "values:");
            for (k, v) in &self.values {
                let _ = writeln!(s, "  {k} = {}", render(v));
            }
        }
        if !self.targets.is_empty() {
            let _ = writeln!(s, "targets:");
            for t in &self.targets {
                let mark = if t.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "  [{mark}] {} ({})", t.name, t.anchor);
                if !t.pass {
                    let _ = writeln!(s, "         expected {} got {}", t.expected, t.computed);
                }
            }
        }
        let passed = self.targets.iter().filter(|t| t.pass).count();
        let _ = write!(
            s,
            "{passed}/{} targets passed in {} ms",
            self.targets.len(),
            self.wall_time_ms
        );
        s
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
