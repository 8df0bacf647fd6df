use serde::Serialize;
use serde_json::json;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Output of one subcommand. Serialization is deterministic: JSON objects
/// have sorted keys and nothing depends on timing.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub lines: Vec<String>,
    pub data: serde_json::Value,
    /// Tabular form when the command has one.
    pub csv: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            checks: Vec::new(),
            lines: Vec::new(),
            data: serde_json::Value::Null,
            csv: None,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for l in &self.lines {
            out.push_str(&format!("  {l}\n"));
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() || c.passed {
                out.push_str(&format!("[{mark}] {}\n", c.name));
            } else {
                out.push_str(&format!("[{mark}] {}: {}\n", c.name, c.detail));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let value = json!({
            "report_version": REPORT_VERSION,
            "command": self.command,
            "passed": self.passed(),
            "checks": self.checks,
            "result": self.data,
        });
        serde_json::to_string_pretty(&value).expect("serializable") + "\n"
    }

    pub fn to_csv(&self) -> String {
        match &self.csv {
            Some(c) => c.clone(),
            None => {
                let mut out = String::from("check,passed\n");
                for c in &self.checks {
                    out.push_str(&format!("\"{}\",{}\n", c.name.replace('"', "\"\""), c.passed));
                }
                out
            }
        }
    }
}
