use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "ha/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A flat JSON object; `serde_json::Map` keeps keys sorted.
#[derive(Debug, Clone)]
pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    fields: Map<String, Value>,
    passed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            fields: Map::new(),
            passed: true,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn field(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), v.into());
        self
    }

    /// Records a check; any failed check fails the report.
    pub fn check(&mut self, ok: bool) -> &mut Self {
        self.passed &= ok;
        self
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }

    pub fn to_value(&self) -> Value {
        let mut m = self.fields.clone();
        m.insert("command".into(), self.command.clone().into());
        m.insert("inputs".into(), Value::Object(self.inputs.clone()));
        m.insert("passed".into(), self.passed.into());
        m.insert("schema".into(), SCHEMA.into());
        m.insert("version".into(), VERSION.into());
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("reports serialize")
    }
}

/// A JSON number when it fits in `i64`, otherwise a decimal string.
pub fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => v.into(),
        None => n.to_string().into(),
    }
}
