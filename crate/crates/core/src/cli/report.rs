use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Machine-readable outcome of one invocation. Wall time is printed to
/// stderr, never stored here, so that reports are byte-identical across runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// SHA-256 of the command line and the contents of every input file.
    pub input_digest: String,
    pub results: Vec<Value>,
    pub failures: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs: &[&[u8]]) -> Self {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        for input in inputs {
            h.update([0u8]);
            h.update(input);
        }
        RunReport {
            tool: "domdimlab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input_digest: format!("{:x}", h.finalize()),
            results: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn push(&mut self, value: impl Serialize) {
        self.results
            .push(serde_json::to_value(value).expect("report values serialize"));
    }

    pub fn fail(&mut self, message: impl Into<String>) {
        self.failures.push(message.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One CSV row per result object. Columns are the union of top-level
    /// keys in first-seen order; nested values are written as JSON.
    pub fn to_csv(&self) -> String {
        let mut columns: Vec<String> = Vec::new();
        for r in &self.results {
            if let Value::Object(map) = r {
                for k in map.keys() {
                    if !columns.contains(k) {
                        columns.push(k.clone());
                    }
                }
            }
        }
        if columns.is_empty() {
            columns.push("value".into());
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&columns).expect("in-memory write");
        for r in &self.results {
            let row: Vec<String> = columns
                .iter()
                .map(|c| {
                    let v = match r {
                        Value::Object(map) => map.get(c).cloned().unwrap_or(Value::Null),
                        other if c == "value" => other.clone(),
                        _ => Value::Null,
                    };
                    match v {
                        Value::Null => String::new(),
                        Value::String(s) => s,
                        other => other.to_string(),
                    }
                })
                .collect();
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_is_deterministic() {
        let a = RunReport::new("nakayama info", &[b"x"]);
        let b = RunReport::new("nakayama info", &[b"x"]);
        assert_eq!(a.to_json(), b.to_json());
        assert_ne!(
            a.input_digest,
            RunReport::new("nakayama info", &[b"y"]).input_digest
        );
    }

    #[test]
    fn csv_flattening() {
        let mut r = RunReport::new("t", &[]);
        r.push(json!({"a": 1, "b": [1, 2]}));
        r.push(json!({"a": 2, "c": "x"}));
        assert_eq!(r.to_csv(), "a,b,c\n1,\"[1,2]\",\n2,,x\n");
    }
}
