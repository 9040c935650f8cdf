use crate::{Failure, Format};
use serde::Serialize;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

/// Where and how results are written.
pub struct Sink {
    path: Option<PathBuf>,
    pub format: Format,
}

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

impl Sink {
    pub fn new(path: Option<&Path>, format: Format) -> Self {
        Sink { path: path.map(Path::to_path_buf), format }
    }

    fn writer(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.path {
            Some(p) => Box::new(File::create(p).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?),
            None => Box::new(io::stdout().lock()),
        })
    }

    pub fn json<T: Serialize>(&self, value: &T) -> Result<(), Failure> {
        let mut w = self.writer()?;
        serde_json::to_writer_pretty(&mut w, value).map_err(|e| Failure::Runtime(e.to_string()))?;
        writeln!(w)?;
        w.flush()?;
        Ok(())
    }

    pub fn csv(&self, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
        let mut w = csv::Writer::from_writer(self.writer()?);
        let err = |e: csv::Error| Failure::Runtime(e.to_string());
        w.write_record(header).map_err(err)?;
        for r in rows {
            w.write_record(r).map_err(err)?;
        }
        w.flush()?;
        Ok(())
    }

    /// A flat serializable struct as one header line and one row.
    pub fn single_row<T: Serialize>(&self, value: &T) -> Result<(), Failure> {
        let v = serde_json::to_value(value).map_err(|e| Failure::Runtime(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| Failure::Runtime("expected a flat record".into()))?;
        let header: Vec<&str> = obj.keys().map(String::as_str).collect();
        let row = obj
            .values()
            .map(|x| match x {
                serde_json::Value::Number(n) if !n.is_i64() && !n.is_u64() => num(n.as_f64().unwrap_or(f64::NAN)),
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        self.csv(&header, &[row])
    }
}
