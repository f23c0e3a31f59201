use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

/// Writes `bytes` to `dir/name` through a temporary sibling and a rename, so
/// readers never see a partial file.
pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.join(name).display()));
    fs::create_dir_all(dir).map_err(io)?;
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    f.sync_all().map_err(io)?;
    drop(f);
    fs::rename(&tmp, &target).map_err(io)?;
    Ok(target)
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Two-column summary table.
#[derive(Default)]
pub struct Summary {
    rows: Vec<(String, String)>,
}

impl Summary {
    pub fn row(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.rows.push((key.into(), value.into()));
        self
    }

    pub fn render(&self) -> String {
        let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        self.rows
            .iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_leaves_no_temp_file() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("nested");
        write_atomic(&out, "a.csv", b"x\n").unwrap();
        write_atomic(&out, "a.csv", b"y\n").unwrap();
        assert_eq!(fs::read_to_string(out.join("a.csv")).unwrap(), "y\n");
        assert_eq!(fs::read_dir(&out).unwrap().count(), 1);
    }

    #[test]
    fn summary_aligns_keys() {
        let mut s = Summary::default();
        s.row("a", "1").row("long", "2");
        assert_eq!(s.render(), "a     1\nlong  2\n");
    }
}
