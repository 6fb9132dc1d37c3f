use std::io::Write;

use serde_json::Value;

use crate::OutputFormat;

/// What a command produced. `passed: None` marks plain data output.
pub struct Report {
    pub passed: Option<bool>,
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn data(json: Value, text: String) -> Self {
        Self {
            passed: None,
            json,
            text,
        }
    }

    pub fn verdict(passed: bool, json: Value, text: String) -> Self {
        Self {
            passed: Some(passed),
            json,
            text,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.passed {
            Some(false) => 1,
            _ => 0,
        }
    }

    /// Write errors (a closed pipe, say) are ignored.
    pub fn print(&self, format: OutputFormat) {
        let mut out = std::io::stdout().lock();
        let _ = match format {
            OutputFormat::Json => {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&self.json).expect("serializable")
                )
            }
            OutputFormat::Text => {
                let head = match self.passed {
                    Some(true) => "PASS\n",
                    Some(false) => "FAIL\n",
                    None => "",
                };
                let body = self.text.trim_end();
                write!(
                    out,
                    "{head}{body}{}",
                    if body.is_empty() { "" } else { "\n" }
                )
            }
        };
    }
}
