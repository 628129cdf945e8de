//! Pass/fail reports shared by every law checker.

use std::fmt::Write as _;

use serde::Serialize;

/// Result of one named check run over a family of samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    /// First failing sample, rendered.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            checked: 0,
            failures: 0,
            witness: None,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Records one sample; `witness` is only rendered for the first failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn record_result<T, E: std::fmt::Display>(
        &mut self,
        r: std::result::Result<T, E>,
        ok: impl FnOnce(&T) -> bool,
        witness: impl FnOnce() -> String,
    ) {
        match r {
            Ok(v) => {
                let passed = ok(&v);
                self.record(passed, witness);
            }
            Err(e) => self.record(false, || format!("{}: {e}", witness())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub group: String,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn new(suite: impl Into<String>, group: impl Into<String>, seed: u64) -> Self {
        Report {
            suite: suite.into(),
            group: group.into(),
            seed,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: CheckOutcome) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = CheckOutcome>) {
        self.checks.extend(cs);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "suite {} over {} (seed {}): {}",
            self.suite,
            self.group,
            self.seed,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let _ = writeln!(
                s,
                "  [{}] {:width$}  {}/{} ok",
                if c.passed() { "pass" } else { "FAIL" },
                c.name,
                c.checked - c.failures,
                c.checked,
            );
            if let Some(w) = &c.witness {
                let _ = writeln!(s, "         witness: {w}");
            }
            if let Some(n) = &c.note {
                let _ = writeln!(s, "         note: {n}");
            }
        }
        s
    }
}
