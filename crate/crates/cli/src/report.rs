use serde_json::Value;

/// Command result: the JSON object and the text rendering of the same data.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub warnings: Vec<String>,
    /// The checked object failed an axiom; exits with status 3.
    pub failed: bool,
}

impl Report {
    pub fn new(json: Value, text: impl Into<String>) -> Self {
        let mut text = text.into();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        Report {
            json,
            text,
            warnings: Vec::new(),
            failed: false,
        }
    }

    pub fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}
