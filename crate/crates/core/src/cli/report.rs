use std::fmt::Write as _;

/// One toleranced measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Named checks plus free-form context lines.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub title: String,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            ..Self::default()
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Records `value <= tolerance`. NaN fails.
    pub fn check_le(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.checks.push(Check {
            name: name.into(),
            value,
            tolerance,
            pass: value <= tolerance,
        });
    }

    /// Records `value >= tolerance`.
    pub fn check_ge(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.checks.push(Check {
            name: name.into(),
            value,
            tolerance,
            pass: value >= tolerance,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Human-readable block followed by `key=value` lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.title);
        for n in &self.notes {
            let _ = writeln!(out, "#   {n}");
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "# [{}] {:width$}  {:.3e}  (tolerance {:.3e})",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.value,
                c.tolerance,
            );
        }
        for c in &self.checks {
            let _ = writeln!(out, "check.{}.value={:e}", c.name, c.value);
            let _ = writeln!(out, "check.{}.tolerance={:e}", c.name, c.tolerance);
            let _ = writeln!(out, "check.{}.pass={}", c.name, c.pass);
        }
        let _ = writeln!(out, "status={}", if self.passed() { "pass" } else { "fail" });
        out
    }
}
