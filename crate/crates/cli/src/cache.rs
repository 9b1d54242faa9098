use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use kr_core::admissible::{admissible_set, AdmissibleEntry, AdmissibleTable};
use kr_core::local_model::{Signature, SignatureIndex, StandardChainContext};
use kr_core::weyl::Element;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "kr-cache/1";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: String,
    g: usize,
    table: Vec<AdmissibleEntry>,
    signatures: Option<Vec<SignatureEntry>>,
}

#[derive(Serialize, Deserialize)]
struct SignatureEntry {
    element: Element,
    dims: Vec<Vec<usize>>,
}

/// Admissible tables and monomial signatures, optionally persisted as JSON.
///
/// Monomial signatures are defined over the integers, so one stored index
/// serves every residue field.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn open(dir: Option<PathBuf>) -> Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).with_context(|| format!("cache directory {} is not writable", d.display()))?;
            let probe = d.join(".kr-write-probe");
            fs::write(&probe, b"").with_context(|| format!("cache directory {} is not writable", d.display()))?;
            let _ = fs::remove_file(probe);
        }
        Ok(Cache { dir })
    }

    fn path(&self, g: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("adm-g{g}.json")))
    }

    fn load(&self, g: usize) -> Option<CacheFile> {
        let text = fs::read_to_string(self.path(g)?).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        (file.schema == SCHEMA && file.g == g).then_some(file)
    }

    fn store(&self, file: &CacheFile) -> Result<()> {
        if let Some(path) = self.path(file.g) {
            write_atomic(&path, &serde_json::to_string(file)?)?;
        }
        Ok(())
    }

    pub fn table(&self, g: usize) -> Result<AdmissibleTable> {
        if let Some(file) = self.load(g) {
            if let Ok(table) = table_from_entries(g, &file.table) {
                return Ok(table);
            }
        }
        let table = admissible_set(g)?;
        self.store(&CacheFile { schema: SCHEMA.into(), g, table: table.entries().to_vec(), signatures: None })?;
        Ok(table)
    }

    pub fn index(&self, g: usize, ctx: &StandardChainContext) -> Result<(AdmissibleTable, SignatureIndex)> {
        if let Some(file) = self.load(g) {
            if let (Ok(table), Some(sigs)) = (table_from_entries(g, &file.table), file.signatures) {
                let entries: Vec<(Element, Signature)> =
                    sigs.into_iter().map(|s| (s.element, Signature { dims: s.dims })).collect();
                if entries.len() == table.len() && entries.iter().all(|(x, _)| table.contains(x)) {
                    if let Ok(index) = SignatureIndex::from_entries(ctx, entries) {
                        return Ok((table, index));
                    }
                }
            }
        }
        let table = self.table(g)?;
        let index = SignatureIndex::new(&table, ctx)?;
        let signatures = index
            .entries()
            .into_iter()
            .map(|(element, sig)| SignatureEntry { element, dims: sig.dims })
            .collect();
        self.store(&CacheFile {
            schema: SCHEMA.into(),
            g,
            table: table.entries().to_vec(),
            signatures: Some(signatures),
        })?;
        Ok((table, index))
    }
}

fn table_from_entries(g: usize, entries: &[AdmissibleEntry]) -> Result<AdmissibleTable> {
    let table = AdmissibleTable::from_json(&serde_json::to_string(entries)?)?;
    anyhow::ensure!(table.g() == g, "cached table has rank {}", table.g());
    Ok(table)
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
