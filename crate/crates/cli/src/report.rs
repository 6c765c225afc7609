//! Ordered report values with JSON and text renderings. Every number is a string.

use birflow::exact_algebra::{Matrix, Scalar};
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Val {
    Str(String),
    Bool(bool),
    List(Vec<Val>),
    Obj(Vec<(String, Val)>),
    Null,
}

impl Val {
    pub fn s(v: impl ToString) -> Val {
        Val::Str(v.to_string())
    }

    pub fn list<T: ToString>(items: impl IntoIterator<Item = T>) -> Val {
        Val::List(items.into_iter().map(Val::s).collect())
    }

    pub fn scalars(v: &[Scalar]) -> Val {
        Val::list(v)
    }

    pub fn matrix(m: &Matrix) -> Val {
        Val::List(m.to_rows().iter().map(|r| Val::scalars(r)).collect())
    }

    pub fn opt<T: ToString>(v: Option<T>) -> Val {
        v.map_or(Val::Null, Val::s)
    }

    pub fn to_json(&self) -> Value {
        match self {
            Val::Str(s) => Value::String(s.clone()),
            Val::Bool(b) => Value::Bool(*b),
            Val::List(v) => Value::Array(v.iter().map(Val::to_json).collect()),
            Val::Obj(kv) => {
                let mut m = Map::new();
                for (k, v) in kv {
                    m.insert(k.clone(), v.to_json());
                }
                Value::Object(m)
            }
            Val::Null => Value::Null,
        }
    }

    fn inline(&self) -> String {
        match self {
            Val::Str(s) => s.clone(),
            Val::Bool(b) => b.to_string(),
            Val::Null => "-".into(),
            Val::List(v) => format!("[{}]", v.iter().map(Val::inline).collect::<Vec<_>>().join(", ")),
            Val::Obj(kv) => {
                format!("{{{}}}", kv.iter().map(|(k, v)| format!("{}: {}", k, v.inline())).collect::<Vec<_>>().join(", "))
            }
        }
    }
}

/// One command's answer: inputs in canonical text, a verdict and named details.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub verdict: String,
    pub details: Vec<(String, Val)>,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>, verdict: impl ToString) -> Self {
        Report { command: command.to_string(), inputs, verdict: verdict.to_string(), details: Vec::new() }
    }

    pub fn with(mut self, key: &str, v: Val) -> Self {
        self.details.push((key.to_string(), v));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Val> {
        self.details.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("inputs".into(), Value::Array(self.inputs.iter().cloned().map(Value::String).collect()));
        m.insert("verdict".into(), Value::String(self.verdict.clone()));
        for (k, v) in &self.details {
            m.insert(k.clone(), v.to_json());
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, i) in self.inputs.iter().enumerate() {
            out.push_str(&format!("input[{}]: {}\n", k, i));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        for (k, v) in &self.details {
            match v {
                Val::List(items) if items.iter().any(|x| matches!(x, Val::Obj(_) | Val::List(_))) => {
                    out.push_str(&format!("{}:\n", k));
                    for x in items {
                        out.push_str(&format!("  {}\n", x.inline()));
                    }
                }
                _ => out.push_str(&format!("{}: {}\n", k, v.inline())),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_strings() {
        let r = Report::new("demo", vec!["x d/dy".into()], "ok")
            .with("dims", Val::list([3, 0]))
            .with("scale", Val::s(Scalar::from_ratio(-1, 2)));
        let j = r.to_json();
        assert_eq!(j["dims"], serde_json::json!(["3", "0"]));
        assert_eq!(j["scale"], serde_json::json!("-1/2"));
        assert!(r.to_text().contains("dims: [3, 0]"));
    }
}
