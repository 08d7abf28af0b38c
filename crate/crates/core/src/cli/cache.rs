//! On-disk operator cache: one text file per variety in the operator
//! format, guarded by its checksum line.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::gpqh::QHOperator;

use super::spec::VarietySpec;

pub const CACHE_ENV: &str = "APERY_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Built,
    /// A file was present but unusable; the reason is kept for reporting.
    Rebuilt(String),
    Disabled,
}

#[derive(Clone, Debug)]
pub struct OperatorCache {
    dir: Option<PathBuf>,
}

fn file_name(spec: &VarietySpec) -> String {
    let key: String = spec
        .canonical()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    format!("{key}.op")
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().ok_or_else(|| Error::Config(format!("{} has no parent", path.display())))?;
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("op"),
        std::process::id()
    ));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
}

impl OperatorCache {
    pub fn new(dir: impl Into<PathBuf>) -> OperatorCache {
        OperatorCache { dir: Some(dir.into()) }
    }

    pub fn disabled() -> OperatorCache {
        OperatorCache { dir: None }
    }

    /// `explicit`, else `$APERY_CACHE_DIR`, else no caching.
    pub fn from_env(explicit: Option<PathBuf>) -> OperatorCache {
        match explicit.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)) {
            Some(d) => OperatorCache::new(d),
            None => OperatorCache::disabled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, spec: &VarietySpec) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(file_name(spec)))
    }

    /// Reads a cached operator. `Ok(None)` if there is no file; errors for
    /// unreadable, corrupted, stale or mismatched files.
    pub fn read(&self, spec: &VarietySpec) -> Result<Option<QHOperator>> {
        let Some(path) = self.path_for(spec) else { return Ok(None) };
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let op = QHOperator::from_text(&text)?;
        let expected = spec.build_kind()?;
        if op.kind != expected {
            return Err(Error::Parse(format!("{} holds a different variety", path.display())));
        }
        Ok(Some(op))
    }

    pub fn write(&self, spec: &VarietySpec, op: &QHOperator) -> Result<()> {
        if let Some(path) = self.path_for(spec) {
            write_atomic(&path, &op.to_text())?;
        }
        Ok(())
    }

    /// Cached operator if valid, else a fresh build that replaces the file.
    pub fn load_or_build(&self, spec: &VarietySpec) -> Result<(QHOperator, CacheStatus)> {
        if self.dir.is_none() {
            return Ok((spec.build()?, CacheStatus::Disabled));
        }
        let status = match self.read(spec) {
            Ok(Some(op)) => match op.check_invariants() {
                Ok(()) => return Ok((op, CacheStatus::Hit)),
                Err(e) => CacheStatus::Rebuilt(e.to_string()),
            },
            Ok(None) => CacheStatus::Built,
            Err(e @ (Error::Version { .. } | Error::Checksum | Error::Parse(_))) => CacheStatus::Rebuilt(e.to_string()),
            Err(e) => return Err(e),
        };
        let op = spec.build()?;
        self.write(spec, &op)?;
        Ok((op, status))
    }

    /// Cached operator files, sorted.
    pub fn entries(&self) -> Result<Vec<PathBuf>> {
        let Some(dir) = &self.dir else { return Ok(Vec::new()) };
        if !dir.exists() {
            return Ok(Vec::new());
        }
        let mut out: Vec<PathBuf> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "op"))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Removes every cached operator; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let files = self.entries()?;
        for f in &files {
            fs::remove_file(f)?;
        }
        Ok(files.len())
    }
}

impl VarietySpec {
    fn build_kind(&self) -> Result<crate::gpqh::OperatorKind> {
        use crate::gpqh::OperatorKind;
        Ok(match self {
            VarietySpec::Homogeneous { family, rank, node } => {
                OperatorKind::Homogeneous { family: *family, rank: *rank, node: *node }
            }
            VarietySpec::Product { .. } => {
                let p = self.product_spec()?;
                OperatorKind::Product { dims: p.dims, weights: p.weights }
            }
        })
    }
}

/// Writes `op` into `dir`, reads it back and compares hashes.
pub fn cache_roundtrip(op: &QHOperator, dir: &Path) -> Result<bool> {
    let path = dir.join(format!("roundtrip-{}.op", &op.hash()[..16]));
    write_atomic(&path, &op.to_text())?;
    let back = QHOperator::from_text(&fs::read_to_string(&path)?)?;
    fs::remove_file(&path)?;
    Ok(back.hash() == op.hash() && &back == op)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_names_are_tame() {
        let s = VarietySpec::parse("(P^2×P^3, O(1,1))").unwrap();
        assert_eq!(file_name(&s), "P2xP3_O_1_1_.op");
        assert_eq!(file_name(&VarietySpec::parse("Gr(2,5)").unwrap()), "A_4_2_.op");
    }
}
