//! On-disk convergent tables.
//!
//! Each number gets a manifest `<key>.json` and a body `<key>.jsonl` with one
//! record per index. Both files are written to a temporary file in the cache
//! directory and renamed into place.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use super::{expand_with_cap, ContinuedFractionExpansion, PrecisionStep};
use crate::algebraic::AlgebraicReal;
use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::poly::IntPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheManifest {
    pub minpoly: IntPolynomial,
    pub isolator: RationalInterval,
    pub terms: usize,
    pub trusted_irreducible: bool,
    #[serde(default)]
    pub precision_log: Vec<PrecisionStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CacheRecord {
    k: usize,
    #[serde(with = "crate::numeric::bigint_string")]
    a: BigInt,
    #[serde(with = "crate::numeric::bigint_string")]
    p: BigInt,
    #[serde(with = "crate::numeric::bigint_string")]
    q: BigInt,
}

/// Directory of cached expansions.
#[derive(Clone, Debug)]
pub struct ConvergentCache {
    dir: PathBuf,
}

impl ConvergentCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ConvergentCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hex SHA-256 of the minimal polynomial and isolator in their JSON form.
    pub fn key(x: &AlgebraicReal) -> String {
        let text = format!(
            "{}|{}",
            serde_json::to_string(x.minpoly()).expect("serializable"),
            serde_json::to_string(x.isolator()).expect("serializable")
        );
        Sha256::digest(text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    fn paths(&self, x: &AlgebraicReal) -> (PathBuf, PathBuf) {
        let key = Self::key(x);
        (
            self.dir.join(format!("{key}.json")),
            self.dir.join(format!("{key}.jsonl")),
        )
    }

    /// Cached expansion of `x`, if present and consistent.
    pub fn load(&self, x: &AlgebraicReal) -> Result<Option<ContinuedFractionExpansion>> {
        let (manifest_path, body_path) = self.paths(x);
        if !manifest_path.exists() || !body_path.exists() {
            return Ok(None);
        }
        let manifest: CacheManifest = serde_json::from_slice(&fs::read(&manifest_path)?)?;
        if &manifest.minpoly != x.minpoly() || &manifest.isolator != x.isolator() {
            return Ok(None);
        }
        let reader = BufReader::new(fs::File::open(&body_path)?);
        let mut a = Vec::with_capacity(manifest.terms + 1);
        let mut records = Vec::with_capacity(manifest.terms + 1);
        for (i, line) in reader.lines().enumerate() {
            let rec: CacheRecord = serde_json::from_str(&line?)?;
            if rec.k != i {
                return Err(Error::Format(format!("cache record {i} has k = {}", rec.k)));
            }
            a.push(rec.a.clone());
            records.push(rec);
        }
        if a.len() != manifest.terms + 1 {
            return Err(Error::Format(format!(
                "cache body has {} records, manifest says {}",
                a.len(),
                manifest.terms + 1
            )));
        }
        let cfe = ContinuedFractionExpansion::from_partial_quotients(a)?;
        for rec in &records {
            if cfe.p()[rec.k] != rec.p || cfe.q()[rec.k] != rec.q {
                return Err(Error::Format(format!("cache convergent {} is inconsistent", rec.k)));
            }
        }
        let mut cfe = cfe;
        cfe.source = Some(x.clone());
        cfe.precision_log = manifest.precision_log;
        Ok(Some(cfe))
    }

    /// Writes an expansion, replacing any previous entry.
    pub fn store(&self, x: &AlgebraicReal, cfe: &ContinuedFractionExpansion) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let (manifest_path, body_path) = self.paths(x);
        let mut body = tempfile::NamedTempFile::new_in(&self.dir)?;
        {
            let mut w = std::io::BufWriter::new(body.as_file_mut());
            for k in 0..cfe.len() {
                let rec = CacheRecord {
                    k,
                    a: cfe.a()[k].clone(),
                    p: cfe.p()[k].clone(),
                    q: cfe.q()[k].clone(),
                };
                serde_json::to_writer(&mut w, &rec)?;
                w.write_all(b"\n")?;
            }
            w.flush()?;
        }
        body.persist(&body_path).map_err(|e| Error::Io(e.to_string()))?;
        let manifest = CacheManifest {
            minpoly: x.minpoly().clone(),
            isolator: x.isolator().clone(),
            terms: cfe.last_index(),
            trusted_irreducible: x.trusted_irreducible(),
            precision_log: cfe.precision_log().to_vec(),
        };
        let mut m = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer_pretty(m.as_file_mut(), &manifest)?;
        m.as_file_mut().write_all(b"\n")?;
        m.persist(&manifest_path).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }

    /// Returns at least `terms + 1` quotients, expanding and storing when the
    /// cache is short. A corrupt entry is recomputed.
    pub fn get_or_expand(
        &self,
        x: &AlgebraicReal,
        terms: usize,
        cap_bits: u64,
    ) -> Result<ContinuedFractionExpansion> {
        if let Ok(Some(cfe)) = self.load(x) {
            if cfe.last_index() >= terms {
                return Ok(cfe.truncated(terms));
            }
        }
        let cfe = expand_with_cap(x, terms, cap_bits)?;
        self.store(x, &cfe)?;
        Ok(cfe)
    }
}
