use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(default)]
    pub detail: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.status, self.id, self.summary)?;
        if self.status != Status::Pass {
            if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
                write!(f, " [computed {l}, expected {r}]")?;
            }
            if !self.detail.is_empty() {
                write!(f, " ({})", self.detail)?;
            }
        }
        Ok(())
    }
}

/// Ordered list of check outcomes; serializes as a JSON array.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CheckReport {
    checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn pass(&mut self, id: impl Into<String>, summary: impl Into<String>, detail: impl Into<String>) {
        self.push(Check {
            id: id.into(),
            status: Status::Pass,
            summary: summary.into(),
            lhs: None,
            rhs: None,
            detail: detail.into(),
        });
    }

    pub fn error(&mut self, id: impl Into<String>, summary: impl Into<String>, detail: impl Into<String>) {
        self.push(Check {
            id: id.into(),
            status: Status::Error,
            summary: summary.into(),
            lhs: None,
            rhs: None,
            detail: detail.into(),
        });
    }

    /// Records a comparison; both sides are kept on failure.
    pub fn compare(&mut self, id: impl Into<String>, summary: impl Into<String>, lhs: String, rhs: String, equal: bool) {
        let (status, lhs, rhs) = if equal { (Status::Pass, None, None) } else { (Status::Fail, Some(lhs), Some(rhs)) };
        self.push(Check { id: id.into(), status, summary: summary.into(), lhs, rhs, detail: String::new() });
    }

    /// Pass when `ok`, fail with `detail` otherwise.
    pub fn check(&mut self, id: impl Into<String>, summary: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(Check {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            summary: summary.into(),
            lhs: None,
            rhs: None,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = CheckReport::new();
        r.pass("a.b", "x = y", "");
        r.compare("a.c", "1 = 2", "1".into(), "2".into(), false);
        assert!(!r.all_pass());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v[0]["status"], "pass");
        assert_eq!(v[1]["lhs"], "1");
        assert!(v[0].get("lhs").is_none());
        assert_eq!(r.checks()[1].to_string(), "FAIL a.c 1 = 2 [computed 1, expected 2]");
        let back: CheckReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
