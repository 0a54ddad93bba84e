use std::env;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::CliError;

pub const OUT_DIR_VAR: &str = "ENTROPIC_OUT_DIR";

/// Scientific notation with `digits` significant digits. Negative zero prints as zero.
pub fn number(value: f64, digits: u8) -> String {
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{:.*e}", usize::from(digits.max(1) - 1), value)
}

/// CSV body: header, records, then `#` summary rows.
pub struct Table {
    writer: csv::Writer<Vec<u8>>,
    comments: Vec<String>,
    digits: u8,
}

impl Table {
    pub fn new(header: &[&str], digits: u8) -> Self {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(header).expect("writing to memory");
        Self {
            writer,
            comments: Vec::new(),
            digits,
        }
    }

    pub fn num(&self, value: f64) -> String {
        number(value, self.digits)
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).expect("writing to memory");
    }

    /// Appends `# key=value,key=value`.
    pub fn summary(&mut self, pairs: &[(&str, String)]) {
        let body: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        self.comments.push(format!("# {}", body.join(",")));
    }

    pub fn finish(self) -> String {
        let bytes = self.writer.into_inner().expect("writing to memory");
        let mut out = String::from_utf8(bytes).expect("csv output is utf-8");
        for line in self.comments {
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

/// Where the finished output goes.
#[derive(Debug, PartialEq, Eq)]
pub enum Sink {
    Stdout,
    File(PathBuf),
}

impl Sink {
    /// Picks the destination and checks it is writable before any work starts.
    ///
    /// `--out` wins; relative paths sit under `$ENTROPIC_OUT_DIR` when set.
    /// Without `--out`, a set `$ENTROPIC_OUT_DIR` receives `<command>.csv`.
    pub fn resolve(out: Option<&Path>, command: &str) -> Result<Self, CliError> {
        let dir = env::var_os(OUT_DIR_VAR)
            .filter(|d| !d.is_empty())
            .map(PathBuf::from);
        let path = match (out, dir) {
            (Some(p), Some(dir)) if p.is_relative() => dir.join(p),
            (Some(p), _) => p.to_path_buf(),
            (None, Some(dir)) => dir.join(format!("{command}.csv")),
            (None, None) => return Ok(Sink::Stdout),
        };
        if path.is_dir() {
            return Err(CliError::Usage(format!(
                "{} is a directory",
                path.display()
            )));
        }
        let parent = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        if !parent.is_dir() {
            return Err(CliError::Usage(format!(
                "output directory {} does not exist",
                parent.display()
            )));
        }
        Ok(Sink::File(path))
    }

    /// Writes through a temporary file in the target directory, so a failed
    /// write never leaves a truncated file behind.
    pub fn write(&self, body: &str) -> Result<(), CliError> {
        match self {
            Sink::Stdout => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(body.as_bytes())?;
                stdout.flush()?;
            }
            Sink::File(path) => {
                let parent = match path.parent() {
                    Some(p) if !p.as_os_str().is_empty() => p,
                    _ => Path::new("."),
                };
                let mut tmp = tempfile::NamedTempFile::new_in(parent)?;
                tmp.write_all(body.as_bytes())?;
                tmp.flush()?;
                tmp.persist(path).map_err(|e| e.error)?;
            }
        }
        Ok(())
    }
}
