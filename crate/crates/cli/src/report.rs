use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub label: String,
    pub status: Status,
    pub detail: String,
    /// Residual diagnostics or other per-item values.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl Item {
    pub fn new(label: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Item {
            label: label.into(),
            status,
            detail: detail.into(),
            data: None,
        }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub items: Vec<Item>,
    pub summary: Summary,
    /// Extra text printed before the verdict lines in human output.
    #[serde(skip)]
    pub preamble: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    pub duration_ms: u128,
}

impl RunReport {
    pub fn new(command: String) -> Self {
        RunReport {
            command,
            items: Vec::new(),
            summary: Summary::default(),
            preamble: Vec::new(),
            data: None,
            duration_ms: 0,
        }
    }

    pub fn push(&mut self, item: Item) {
        match item.status {
            Status::Pass => self.summary.pass += 1,
            Status::Fail => self.summary.fail += 1,
            Status::Error => self.summary.error += 1,
        }
        self.items.push(item);
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.preamble {
            out.push_str(line);
            out.push('\n');
        }
        for item in &self.items {
            out.push_str(&format!("{:<5} {}", item.status.label(), item.label));
            if !item.detail.is_empty() {
                out.push_str(&format!("  {}", item.detail));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} errors ({} ms)\n",
            self.summary.pass, self.summary.fail, self.summary.error, self.duration_ms
        ));
        out
    }
}
