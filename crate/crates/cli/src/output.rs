use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use tempfile::NamedTempFile;

/// Where command results go: files in a directory, or stdout.
#[derive(Debug, Clone)]
pub struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn to_files(&self) -> bool {
        self.dir.is_some()
    }

    /// Writes `name` atomically inside the output directory, or prints the
    /// contents when there is none.
    pub fn emit(&self, name: &str, contents: &str) -> Result<()> {
        match &self.dir {
            Some(dir) => write_atomic(&dir.join(name), contents),
            None => {
                print!("{contents}");
                if !contents.ends_with('\n') {
                    println!();
                }
                Ok(())
            }
        }
    }
}

pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = NamedTempFile::new_in(dir).with_context(|| format!("temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
