//! Lazily computed pipeline stages shared by every report.

use std::sync::OnceLock;

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::cache::{Cache, CacheKey};
use crate::error::{internal, Result};
use crate::fermat::{
    aut_x48_generators, aut_x48_group, build_neron_severi, galois_permutation, line_permutation, pair_orbits,
    period_data, stabilizer_h48, AutGroup, FermatModel, PairOrbits, PeriodData, Perm,
};
use crate::groebner::reduction::{
    dual_line_candidates, reduction_smoothness, smoothness_orderings, DualCandidates, SmoothnessCertificate,
    DEFAULT_SMOOTHNESS_RUNS,
};
use crate::lattice::Isometry;
use crate::polarization::{census_hd, find_x56_configurations, Census, X56Config, H56};
use crate::quartic::{aut_x56_group, derive_psi, lines_on_x56, reference_cubics, AutX56, PsiDerivation, X56Model};

fn lazy<T>(cell: &OnceLock<T>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v))
}

#[derive(Default)]
pub struct Session {
    cache: Option<Cache>,
    model: OnceLock<FermatModel>,
    gram_hash: OnceLock<String>,
    aut48: OnceLock<AutGroup>,
    g48_gens: OnceLock<Vec<Perm>>,
    stabilizer48: OnceLock<Vec<Isometry>>,
    period: OnceLock<PeriodData>,
    pairs: OnceLock<PairOrbits>,
    census: [OnceLock<Census>; 6],
    configs: OnceLock<Vec<X56Config>>,
    derivation: OnceLock<PsiDerivation>,
    x56: OnceLock<X56Model>,
    aut56: OnceLock<AutX56>,
    dual: OnceLock<DualCandidates>,
    smoothness: [OnceLock<SmoothnessCertificate>; 2],
}

impl Session {
    pub fn new(cache: Option<Cache>) -> Self {
        Session { cache, ..Default::default() }
    }

    fn cached<T: Serialize + DeserializeOwned>(
        &self,
        stage: &str,
        params: &str,
        ordering: &str,
        f: impl FnOnce() -> Result<T>,
    ) -> Result<T> {
        let Some(cache) = &self.cache else { return f() };
        let key = CacheKey::new(stage, params, self.gram_hash()?, ordering);
        if let Some(v) = cache.load(&key) {
            return Ok(v);
        }
        let v = f()?;
        cache.store(&key, &v)?;
        Ok(v)
    }

    pub fn model(&self) -> Result<&FermatModel> {
        lazy(&self.model, build_neron_severi)
    }

    /// SHA-256 of the Gram matrix as JSON.
    pub fn gram_hash(&self) -> Result<&str> {
        lazy(&self.gram_hash, || {
            let gram = self.model()?.lattice.int_gram().ok_or_else(|| internal!("Gram matrix is not integral"))?;
            Ok(hex::encode(Sha256::digest(serde_json::to_vec(gram)?)))
        })
        .map(String::as_str)
    }

    pub fn aut48(&self) -> Result<&AutGroup> {
        lazy(&self.aut48, || aut_x48_group(self.model()?))
    }

    /// Line permutations of the generators of the automorphism group.
    pub fn g48_generators(&self) -> Result<&[Perm]> {
        lazy(&self.g48_gens, || {
            let m = self.model()?;
            aut_x48_generators().iter().map(|g| line_permutation(m, g)).collect()
        })
        .map(Vec::as_slice)
    }

    /// Generators of the automorphism group together with the Galois actions `ζ ↦ ζᵏ`.
    pub fn g48_tilde_generators(&self, ks: &[i64]) -> Result<Vec<Perm>> {
        let m = self.model()?;
        let mut gens = self.g48_generators()?.to_vec();
        for &k in ks {
            gens.push(galois_permutation(m, k)?);
        }
        Ok(gens)
    }

    /// Stabilizer of `h₄₈` in `O(S_X)`, by backtracking.
    pub fn stabilizer48(&self) -> Result<&[Isometry]> {
        lazy(&self.stabilizer48, || stabilizer_h48(self.model()?)).map(Vec::as_slice)
    }

    pub fn period(&self) -> Result<&PeriodData> {
        lazy(&self.period, || period_data(self.model()?))
    }

    pub fn pair_orbits(&self) -> Result<&PairOrbits> {
        lazy(&self.pairs, || pair_orbits(self.model()?, self.aut48()?))
    }

    /// `H_d` with orbits and classification; degree 6 goes through the cache.
    pub fn census(&self, d: i64) -> Result<&Census> {
        let slot = usize::try_from(d - 1)
            .ok()
            .and_then(|i| self.census.get(i))
            .ok_or_else(|| crate::Error::Input(format!("relative degree {d} outside 1..=6")))?;
        lazy(slot, || {
            self.cached("census", &format!("d={d}"), "none", || census_hd(self.model()?, self.g48_generators()?, d))
        })
    }

    pub fn configurations(&self) -> Result<&[X56Config]> {
        lazy(&self.configs, || {
            self.cached("configurations", "", "none", || Ok(find_x56_configurations(self.pair_orbits()?)))
        })
        .map(Vec::as_slice)
    }

    pub fn derivation(&self) -> Result<&PsiDerivation> {
        lazy(&self.derivation, || derive_psi(&reference_cubics()))
    }

    /// The surface built from the derived `Ψ` and the seed polarization.
    pub fn x56(&self) -> Result<&X56Model> {
        lazy(&self.x56, || {
            let psi = &self.derivation()?.psi;
            lines_on_x56(self.model()?, &reference_cubics(), psi, &H56)
        })
    }

    pub fn aut56(&self) -> Result<&AutX56> {
        lazy(&self.aut56, || aut_x56_group(self.model()?, self.period()?, self.x56()?))
    }

    pub fn dual(&self) -> Result<&DualCandidates> {
        lazy(&self.dual, || dual_line_candidates(self.model()?, self.x56()?))
    }

    /// Smoothness certificate from the leading orderings, or from all of them.
    pub fn smoothness(&self, all_orderings: bool) -> Result<&SmoothnessCertificate> {
        let orders = smoothness_orderings();
        let orders = if all_orderings { &orders[..] } else { &orders[..DEFAULT_SMOOTHNESS_RUNS] };
        lazy(&self.smoothness[all_orderings as usize], || reduction_smoothness(&self.x56()?.psi, orders))
    }
}
