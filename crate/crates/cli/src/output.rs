use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use num_rational::BigRational;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// Collects output and writes it to the chosen sink in one go.
pub struct Sink {
    path: Option<PathBuf>,
    buf: String,
}

impl Sink {
    pub fn new(path: Option<PathBuf>) -> Self {
        Self {
            path,
            buf: String::new(),
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }

    pub fn json(&mut self, v: &serde_json::Value) {
        self.line(serde_json::to_string_pretty(v).expect("json values serialize"));
    }

    pub fn finish(self) -> io::Result<()> {
        match self.path {
            Some(p) => fs::write(p, self.buf),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(self.buf.as_bytes())?;
                out.flush()
            }
        }
    }
}

pub fn rat(r: &BigRational) -> String {
    crs_core::crs::rational_to_string(r)
}

/// Decimal approximation for human-readable tables.
pub fn approx(r: &BigRational) -> String {
    format!("{:.6}", r.to_f64().unwrap_or(f64::NAN))
}
