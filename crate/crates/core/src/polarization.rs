//! Degree-4 polarizations on the Fermat quartic: the very-ampleness test,
//! the census of `H_d = {v : ⟨v, h₄₈⟩ = d, ⟨v, v⟩ = 4}`, and the
//! seven-line configurations producing 56-line models.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::rational::rat_int;
use crate::error::{Error, Result};
use crate::fermat::{FermatModel, LineTag, PairOrbits, Perm};
use crate::lattice::{
    enumerate_fixed_pairing, enumerate_fixed_pairings, enumerate_separating, IntVec, LatVec, NormBound,
};

/// `h₅₆` in the coordinates of the 20 basis lines.
pub const H56: [i64; 20] = [1, 2, 1, 2, 0, 0, 0, 0, 0, -1, -1, 0, 0, 0, -1, 0, 1, 1, 1, 0];

/// The configuration `(ℓ₁, ℓ₂, m₁, m₂, m₃, m₄, n)` used to build `h₅₆`.
pub const SEED_CONFIG: [(u8, u8, u8); 7] =
    [(2, 1, 1), (2, 5, 5), (2, 1, 5), (3, 1, 1), (3, 3, 3), (4, 1, 7), (3, 1, 3)];

/// Outcome of the very-ampleness test; the first failing condition wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarizationStatus {
    NotNef,
    HasFixedComponent,
    Hyperelliptic,
    SingularImage,
    VeryAmple,
}

impl fmt::Display for PolarizationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::NotNef => "not_nef",
            Self::HasFixedComponent => "has_fixed_component",
            Self::Hyperelliptic => "hyperelliptic",
            Self::SingularImage => "singular_image",
            Self::VeryAmple => "very_ample",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationVerdict {
    pub class: IntVec,
    pub status: PolarizationStatus,
    /// Classes `r` with `⟨r,r⟩ = −2`, `⟨r,h⟩ = 1`; filled only when very ample.
    pub line_classes: Vec<IntVec>,
}

fn ints(v: &[i64]) -> LatVec {
    LatVec::from_ints(v)
}

fn any_fixed_pairing(model: &FermatModel, h: &[i64], a: i64, b: i64) -> Result<bool> {
    Ok(!enumerate_fixed_pairing(&model.lattice, &ints(h), &rat_int(a), &rat_int(b))?.is_empty())
}

/// Very-ampleness test for a class of square 4, relative to the ample `h₄₈`.
pub fn classify_degree4(model: &FermatModel, h: &[i64]) -> Result<PolarizationVerdict> {
    let l = &model.lattice;
    if h.len() != l.rank() {
        return Err(Error::Dimension { what: "polarization class".into(), expected: l.rank(), found: h.len() });
    }
    if l.pair_int(h, h) != 4 {
        return Err(Error::Input("class must have square 4".into()));
    }
    let verdict = |status, line_classes| PolarizationVerdict { class: h.to_vec(), status, line_classes };
    // (a) positive cone containing h₄₈
    if l.pair_int(h, &model.h48) <= 0 {
        return Ok(verdict(PolarizationStatus::NotNef, vec![]));
    }
    // (b) no (−2)-vector separates h from h₄₈
    if !enumerate_separating(l, &ints(&model.h48), &ints(h), &rat_int(-2))?.is_empty() {
        return Ok(verdict(PolarizationStatus::NotNef, vec![]));
    }
    // (c) no isotropic e with ⟨e,h⟩ = 1
    if any_fixed_pairing(model, h, 1, 0)? {
        return Ok(verdict(PolarizationStatus::HasFixedComponent, vec![]));
    }
    // (d) no isotropic e with ⟨e,h⟩ = 2
    if any_fixed_pairing(model, h, 2, 0)? {
        return Ok(verdict(PolarizationStatus::Hyperelliptic, vec![]));
    }
    // (e) no (−2)-vector orthogonal to h
    if any_fixed_pairing(model, h, 0, -2)? {
        return Ok(verdict(PolarizationStatus::SingularImage, vec![]));
    }
    let lines = enumerate_fixed_pairing(l, &ints(h), &rat_int(1), &rat_int(-2))?
        .iter()
        .map(|v| v.to_ints().expect("integral enumeration output"))
        .collect();
    Ok(verdict(PolarizationStatus::VeryAmple, lines))
}

/// `H_d` sorted lexicographically.
pub fn relative_degree_vectors(model: &FermatModel, d: i64) -> Result<Vec<IntVec>> {
    let h: Vec<_> = model.h48.iter().map(|&x| rat_int(x)).collect();
    enumerate_fixed_pairings(&model.lattice, &[(h, rat_int(d))], &NormBound::Equal(rat_int(4)))
}

/// Action of line permutations on classes through their pairings with the
/// 48 lines, which determine a class.
pub struct LineSignatures {
    /// `dual_classes[i] = ℓᵢ·G`
    dual_classes: Vec<IntVec>,
}

impl LineSignatures {
    pub fn new(model: &FermatModel) -> Self {
        let g = model.lattice.int_gram().expect("integral lattice");
        let dual_classes = model
            .classes
            .iter()
            .map(|c| (0..c.len()).map(|j| c.iter().zip(g).map(|(a, row)| a * row[j]).sum()).collect())
            .collect();
        LineSignatures { dual_classes }
    }

    pub fn signature(&self, v: &[i64]) -> IntVec {
        self.dual_classes.iter().map(|c| c.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Signature of the image of the class under the permutation.
    pub fn permute(sig: &[i64], perm: &Perm) -> IntVec {
        let mut out = vec![0; sig.len()];
        for (i, &s) in sig.iter().enumerate() {
            out[perm[i]] = s;
        }
        out
    }
}

/// Orbits of a finite class set under the group generated by line
/// permutations. Returns the orbit index of each vector; orbits are numbered
/// by their lexicographically minimal member in `vectors` order.
pub fn orbits_under(model: &FermatModel, vectors: &[IntVec], gens: &[Perm]) -> Result<Vec<usize>> {
    let ls = LineSignatures::new(model);
    let sigs: Vec<IntVec> = vectors.par_iter().map(|v| ls.signature(v)).collect();
    let index: HashMap<&IntVec, usize> = sigs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut orbit = vec![usize::MAX; vectors.len()];
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by(|&a, &b| vectors[a].cmp(&vectors[b]));
    let mut next = 0;
    for &start in &order {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let img = LineSignatures::permute(&sigs[i], g);
                let j = *index
                    .get(&img)
                    .ok_or_else(|| Error::Precondition("vector set is not invariant under the group".into()))?;
                if orbit[j] == usize::MAX {
                    orbit[j] = next;
                    queue.push_back(j);
                }
            }
        }
        next += 1;
    }
    Ok(orbit)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusOrbit {
    /// Lexicographically minimal member.
    pub representative: IntVec,
    pub size: usize,
    pub status: PolarizationStatus,
    /// Number of line classes, for very ample orbits.
    pub line_count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCount {
    pub vectors: usize,
    pub orbits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub relative_degree: i64,
    pub vectors: Vec<IntVec>,
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<CensusOrbit>,
    pub counts: BTreeMap<PolarizationStatus, StatusCount>,
}

impl Census {
    pub fn status_of(&self, i: usize) -> PolarizationStatus {
        self.orbits[self.orbit_of[i]].status
    }

    pub fn with_status(&self, s: PolarizationStatus) -> Vec<IntVec> {
        (0..self.vectors.len()).filter(|&i| self.status_of(i) == s).map(|i| self.vectors[i].clone()).collect()
    }
}

/// Enumerates `H_d`, splits it into orbits under `gens` and classifies one
/// representative per orbit. The verdict is invariant because the group
/// preserves the lattice and fixes `h₄₈`.
pub fn census_hd(model: &FermatModel, gens: &[Perm], d: i64) -> Result<Census> {
    if !(1..=6).contains(&d) {
        return Err(Error::Input(format!("relative degree {d} outside 1..=6")));
    }
    let vectors = relative_degree_vectors(model, d)?;
    let orbit_of = orbits_under(model, &vectors, gens)?;
    let n_orbits = orbit_of.iter().max().map_or(0, |m| m + 1);
    let mut reps = vec![usize::MAX; n_orbits];
    let mut sizes = vec![0usize; n_orbits];
    for (i, &o) in orbit_of.iter().enumerate() {
        sizes[o] += 1;
        if reps[o] == usize::MAX {
            reps[o] = i;
        }
    }
    let verdicts: Vec<PolarizationVerdict> =
        reps.par_iter().map(|&i| classify_degree4(model, &vectors[i])).collect::<Result<_>>()?;
    let orbits: Vec<CensusOrbit> = verdicts
        .into_iter()
        .zip(sizes)
        .map(|(v, size)| CensusOrbit {
            line_count: (v.status == PolarizationStatus::VeryAmple).then_some(v.line_classes.len()),
            representative: v.class,
            size,
            status: v.status,
        })
        .collect();
    let mut counts: BTreeMap<PolarizationStatus, StatusCount> = BTreeMap::new();
    for o in &orbits {
        let c = counts.entry(o.status).or_insert(StatusCount { vectors: 0, orbits: 0 });
        c.vectors += o.size;
        c.orbits += 1;
    }
    Ok(Census { relative_degree: d, vectors, orbit_of, orbits, counts })
}

/// An ordered seven-tuple `(ℓ₁, ℓ₂, m₁, m₂, m₃, m₄, n)` of line indices.
pub type X56Config = [usize; 7];

// Required pair orbits (0-based labels) between positions of the tuple.
const CONFIG_RULES: [(usize, usize, usize); 21] = [
    (0, 1, 3),
    (0, 2, 0), (1, 2, 0),
    (0, 3, 2), (1, 3, 2), (0, 4, 2), (1, 4, 2), (0, 5, 2), (1, 5, 2),
    (2, 3, 6), (2, 4, 6), (2, 5, 6),
    (3, 4, 4), (3, 5, 7), (4, 5, 7),
    (0, 6, 7), (1, 6, 7), (2, 6, 7), (3, 6, 1), (4, 6, 1), (5, 6, 6),
];

pub fn is_x56_configuration(orbits: &PairOrbits, c: &X56Config) -> bool {
    CONFIG_RULES.iter().all(|&(a, b, o)| c[a] != c[b] && orbits.orbit_of(c[a], c[b]) == Some(o))
}

/// All configurations, by extending partial tuples position by position.
pub fn find_x56_configurations(orbits: &PairOrbits) -> Vec<X56Config> {
    let n = orbits.label.len();
    let mut out: Vec<X56Config> = (0..n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut cur = [first; 7];
            extend(orbits, &CONFIG_RULES, n, &mut cur, 1, &mut found);
            found
        })
        .collect();
    out.sort();
    out
}

fn extend(
    orbits: &PairOrbits,
    rules: &[(usize, usize, usize)],
    n: usize,
    cur: &mut X56Config,
    pos: usize,
    found: &mut Vec<X56Config>,
) {
    if pos == 7 {
        found.push(*cur);
        return;
    }
    for cand in 0..n {
        let ok = rules
            .iter()
            .filter(|&&(_, b, _)| b == pos)
            .all(|&(a, _, o)| cur[a] != cand && orbits.orbit_of(cur[a], cand) == Some(o));
        if ok {
            cur[pos] = cand;
            extend(orbits, rules, n, cur, pos + 1, found);
        }
    }
}

/// `3h₄₈ − ([ℓ₁] + [ℓ₂] + [m₁] + ⋯ + [m₄])`.
pub fn polarization_from_config(model: &FermatModel, orbits: &PairOrbits, c: &X56Config) -> Result<IntVec> {
    if !is_x56_configuration(orbits, c) {
        return Err(Error::Input("not an X56-configuration".into()));
    }
    let mut h: IntVec = model.h48.iter().map(|x| 3 * x).collect();
    for &i in &c[..6] {
        for (a, b) in h.iter_mut().zip(&model.classes[i]) {
            *a -= b;
        }
    }
    Ok(h)
}

pub fn seed_config() -> Result<X56Config> {
    let mut c = [0; 7];
    for (slot, &(i, mu, nu)) in c.iter_mut().zip(&SEED_CONFIG) {
        *slot = LineTag::new(i, mu, nu)?.index();
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::{aut_x48_group, aut_x48_generators, build_neron_severi, line_permutation, pair_orbits, AutGroup};

    fn generator_perms(m: &FermatModel) -> Vec<Perm> {
        aut_x48_generators().iter().map(|g| line_permutation(m, g).unwrap()).collect()
    }
    use std::sync::OnceLock;

    fn setup() -> &'static (FermatModel, AutGroup, PairOrbits) {
        static S: OnceLock<(FermatModel, AutGroup, PairOrbits)> = OnceLock::new();
        S.get_or_init(|| {
            let m = build_neron_severi().unwrap();
            let a = aut_x48_group(&m).unwrap();
            let p = pair_orbits(&m, &a).unwrap();
            (m, a, p)
        })
    }

    #[test]
    fn fermat_class_is_very_ample_with_48_lines() {
        let (m, _, _) = setup();
        let v = classify_degree4(m, &m.h48).unwrap();
        assert_eq!(v.status, PolarizationStatus::VeryAmple);
        assert_eq!(v.line_classes.len(), 48);
        assert!(classify_degree4(m, &m.classes[0]).is_err());
    }

    #[test]
    fn seed_configuration_gives_h56() {
        let (m, _, po) = setup();
        let c = seed_config().unwrap();
        assert!(is_x56_configuration(po, &c));
        let h = polarization_from_config(m, po, &c).unwrap();
        assert_eq!(h, H56.to_vec());
        assert_eq!(m.pair(&h, &h), 4);
        assert_eq!(m.pair(&h, &m.h48), 6);
        let v = classify_degree4(m, &h).unwrap();
        assert_eq!(v.status, PolarizationStatus::VeryAmple);
        assert_eq!(v.line_classes.len(), 56);
        let mut bad = c;
        bad.swap(2, 3);
        assert!(polarization_from_config(m, po, &bad).is_err());
    }

    #[test]
    fn low_relative_degrees() {
        let (m, _, _) = setup();
        for d in 1..4 {
            assert!(relative_degree_vectors(m, d).unwrap().is_empty());
        }
        assert_eq!(relative_degree_vectors(m, 4).unwrap(), vec![m.h48.clone()]);
        let c5 = census_hd(m, &generator_perms(m), 5).unwrap();
        assert_eq!(c5.vectors.len(), 48);
        assert_eq!(c5.orbits.len(), 1);
        assert_eq!(c5.orbits[0].status, PolarizationStatus::NotNef);
    }
}
