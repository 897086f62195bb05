use std::fs;
use std::io::Write;
use std::path::PathBuf;

use crate::CliError;

/// Where reports go: JSON to `--out` or stdout; the human summary goes to stdout
/// when the report is in a file, otherwise to stderr.
pub struct Sink {
    out: Option<PathBuf>,
}

impl Sink {
    pub fn new(out: Option<PathBuf>) -> Self {
        Self { out }
    }

    pub fn json(&self, value: &serde_json::Value, summary: &str) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(value).expect("report serializes") + "\n";
        self.text(&text, summary)
    }

    pub fn text(&self, body: &str, summary: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => {
                fs::write(path, body)?;
                print!("{summary}");
            }
            None => {
                std::io::stdout().lock().write_all(body.as_bytes())?;
                eprint!("{summary}");
            }
        }
        Ok(())
    }
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
