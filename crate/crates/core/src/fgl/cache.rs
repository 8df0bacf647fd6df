//! On-disk cache of the universal law coefficients and Lazard lattices (`fgl.json`).

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exactalg::{lazard_generators, GradedPoly, Int, IntMatrix, JsonTerm, Monomial, Ring};

use super::{universal_fgl, FglError, LazardDegree, LazardLattice};

/// Parametrization of the universal law stored in the cache: coefficients of the logarithm.
pub const CONVENTION: &str = "log";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedDegree {
    pub k: u32,
    pub monomials: Vec<Vec<u32>>,
    pub denominator: String,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub convention: String,
    pub cutoff: u32,
    pub generators: Vec<String>,
    /// `"i,j"` to the terms of `α_ij`.
    pub alpha: BTreeMap<String, Vec<JsonTerm>>,
    /// `k` to the basis of `L_{2k}`.
    pub lattices: BTreeMap<u32, CachedDegree>,
}

impl CacheFile {
    pub fn build(max_k: u32) -> Result<Self, FglError> {
        let univ = universal_fgl(max_k + 1)?;
        let lattice = LazardLattice::build(&univ, max_k)?;
        let alpha = univ
            .alpha_table()
            .into_iter()
            .map(|((i, j), c)| (format!("{i},{j}"), c.to_json_terms()))
            .collect();
        Ok(CacheFile {
            convention: CONVENTION.into(),
            cutoff: max_k,
            generators: lattice.generators().iter().map(|g| g.name.clone()).collect(),
            alpha,
            lattices: lattice.degrees().iter().map(|d| (d.k, to_cached(d))).collect(),
        })
    }

    pub fn lattice(&self) -> Result<LazardLattice, FglError> {
        let gens = lazard_generators(self.cutoff as usize);
        let degrees = self
            .lattices
            .values()
            .map(from_cached)
            .collect::<Result<Vec<_>, _>>()?;
        if degrees.len() != self.cutoff as usize {
            return Err(FglError::Cache("lattice count does not match cutoff".into()));
        }
        Ok(LazardLattice::from_parts(gens, degrees))
    }

    pub fn alpha(&self, i: u32, j: u32) -> Result<GradedPoly, FglError> {
        let gens = lazard_generators(self.cutoff as usize);
        match self.alpha.get(&format!("{i},{j}")) {
            Some(terms) => Ok(GradedPoly::from_json_terms(Some(gens), terms)?),
            None => Ok(GradedPoly::zero()),
        }
    }
}

fn to_cached(d: &LazardDegree) -> CachedDegree {
    CachedDegree {
        k: d.k,
        monomials: d
            .monomials
            .iter()
            .map(|m| {
                let mut e = m.exponents().to_vec();
                e.resize(d.k as usize, 0);
                e
            })
            .collect(),
        denominator: d.denominator.to_string(),
        basis: d
            .basis
            .rows_iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect(),
    }
}

fn parse_int(s: &str) -> Result<Int, FglError> {
    s.parse()
        .map_err(|_| FglError::Cache(format!("bad integer {s:?}")))
}

fn from_cached(c: &CachedDegree) -> Result<LazardDegree, FglError> {
    let rows = c
        .basis
        .iter()
        .map(|r| r.iter().map(|s| parse_int(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.iter().any(|r| r.len() != c.monomials.len()) {
        return Err(FglError::Cache(format!("ragged basis in degree {}", c.k)));
    }
    Ok(LazardDegree {
        k: c.k,
        monomials: c.monomials.iter().map(|e| Monomial::new(e.clone())).collect(),
        denominator: parse_int(&c.denominator)?,
        basis: IntMatrix::from_rows(&rows),
    })
}

pub fn save_cache(path: &Path, cache: &CacheFile) -> Result<(), FglError> {
    let text = serde_json::to_string_pretty(cache).map_err(|e| FglError::Cache(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| FglError::Cache(format!("{}: {e}", path.display())))
}

/// The cache at `path` if it exists and was built with the same convention and cutoff.
pub fn load_cache(path: &Path, max_k: u32) -> Result<Option<CacheFile>, FglError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(FglError::Cache(format!("{}: {e}", path.display()))),
    };
    let cache: CacheFile = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(_) => return Ok(None),
    };
    if cache.convention != CONVENTION || cache.cutoff != max_k {
        return Ok(None);
    }
    Ok(Some(cache))
}

/// Loads a matching cache or rebuilds and overwrites it. The flag reports a cache hit.
pub fn load_or_build(path: &Path, max_k: u32) -> Result<(LazardLattice, bool), FglError> {
    if let Some(cache) = load_cache(path, max_k)? {
        return Ok((cache.lattice()?, true));
    }
    let cache = CacheFile::build(max_k)?;
    save_cache(path, &cache)?;
    Ok((cache.lattice()?, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::lazard_basis;

    #[test]
    fn roundtrip_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fgl.json");
        let (built, hit) = load_or_build(&path, 4).unwrap();
        assert!(!hit);
        let (loaded, hit) = load_or_build(&path, 4).unwrap();
        assert!(hit);
        assert_eq!(built, loaded);
        assert_eq!(loaded, lazard_basis(4).unwrap());
        let cache = load_cache(&path, 4).unwrap().unwrap();
        assert_eq!(cache.alpha(1, 1).unwrap().to_string(), "-2*m1");
        // different cutoff invalidates
        assert!(load_cache(&path, 3).unwrap().is_none());
        let (_, hit) = load_or_build(&path, 3).unwrap();
        assert!(!hit);
    }
}
