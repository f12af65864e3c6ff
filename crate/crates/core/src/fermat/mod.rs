//! The Fermat quartic `x₁⁴ + x₂⁴ + x₃⁴ + x₄⁴ = 0`: its 48 lines, the
//! Néron–Severi lattice they span, projective automorphisms, the Galois
//! action, the period condition, and orbits of line pairs.

pub mod data;
mod line;
mod tags;

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

pub use line::{
    line_intersection_number, normalize_point, pluecker_of_points, pluecker_pairing, pluecker_quadric, ProjLine,
    PLUECKER_PAIRS,
};
pub use tags::{line_from_tag, LineTag};

use crate::arith::linalg::{self, Matrix};
use crate::arith::rational::{rat, rat_int};
use crate::arith::{CycField, CycNum, Field, QField, Rational};
use crate::error::{internal, Error, Result};
use crate::lattice::{
    backtrack_stabilizer, discriminant_form_with_generators, enumerate_fixed_pairings,
    induced_disc_action, orthogonal_group_mod, BacktrackInput, DiscForm, DiscMatrix, IntVec,
    Isometry, Lattice, NormBound,
};

/// Permutation of the 48 line indices: `perm[i]` is the image of line `i`.
pub type Perm = Vec<usize>;

/// The 48 lines with their classes in the lattice spanned by the 20 basis lines.
#[derive(Clone, Debug)]
pub struct FermatModel {
    pub tags: Vec<LineTag>,
    pub lines: Vec<ProjLine<CycNum>>,
    /// Indices of the basis lines `l₁, …, l₂₀`.
    pub basis: Vec<usize>,
    pub lattice: Lattice,
    pub classes: Vec<IntVec>,
    pub h48: IntVec,
    /// Geometric intersection numbers of all pairs of lines.
    pub intersections: Vec<Vec<i64>>,
    index: HashMap<ProjLine<CycNum>, usize>,
}

impl FermatModel {
    pub fn line_index(&self, l: &ProjLine<CycNum>) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn tag_index(&self, t: LineTag) -> usize {
        t.index()
    }

    pub fn class_index(&self, c: &[i64]) -> Option<usize> {
        self.classes.iter().position(|x| x == c)
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        self.lattice.pair_int(x, y)
    }
}

/// Builds the lattice from the geometric intersection numbers of the lines.
pub fn build_neron_severi() -> Result<FermatModel> {
    let f = CycField;
    let tags = LineTag::all();
    let lines: Vec<ProjLine<CycNum>> = tags.par_iter().map(|&t| line_from_tag(t)).collect();
    let n = lines.len();
    let intersections: Vec<Vec<i64>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| line_intersection_number(&f, &lines[i], &lines[j])).collect())
        .collect();
    let basis: Vec<usize> = data::BASIS_TAGS
        .iter()
        .map(|&(i, mu, nu)| LineTag::new(i, mu, nu).map(|t| t.index()))
        .collect::<Result<_>>()?;
    let gram: Vec<Vec<i64>> = basis.iter().map(|&a| basis.iter().map(|&b| intersections[a][b]).collect()).collect();
    let lattice = Lattice::from_int_gram(&gram)?;
    let g_inv = lattice.gram_inverse();
    // class·G = (⟨ℓ, l_j⟩)_j
    let classes: Vec<IntVec> = (0..n)
        .map(|i| {
            let v: Vec<Rational> = basis.iter().map(|&b| rat_int(intersections[i][b])).collect();
            let c = linalg::mat_vec(&QField, &linalg::transpose(&g_inv), &v);
            c.iter()
                .map(|x| {
                    x.is_integer()
                        .then(|| i64::try_from(x.to_integer()).ok())
                        .flatten()
                        .ok_or_else(|| internal!("line class is not integral"))
                })
                .collect::<Result<IntVec>>()
        })
        .collect::<Result<_>>()?;
    // h₄₈ is the sum of the four lines in the plane x₁ + ζx₂ = 0.
    let plane: Vec<usize> = (0..n).filter(|&i| tags[i].i == 2 && tags[i].mu == 1).collect();
    let mut h48 = vec![0i64; 20];
    for &i in &plane {
        for (h, c) in h48.iter_mut().zip(&classes[i]) {
            *h += c;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if lattice.pair_int(&classes[i], &classes[j]) != intersections[i][j] {
                return Err(internal!("class pairing differs from geometry for lines {i}, {j}"));
            }
        }
    }
    let index = lines.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    Ok(FermatModel { tags, lines, basis, lattice, classes, h48, intersections, index })
}

/// The classes `r` with `⟨r, r⟩ = −2`, `⟨r, h₄₈⟩ = 1`, by lattice enumeration.
pub fn enumerate_line_classes(model: &FermatModel) -> Result<Vec<IntVec>> {
    let h: Vec<Rational> = model.h48.iter().map(|&x| rat_int(x)).collect();
    enumerate_fixed_pairings(&model.lattice, &[(h, rat_int(1))], &NormBound::Equal(rat_int(-2)))
}

/// A point where at least three lines meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauPoint {
    pub point: Vec<CycNum>,
    pub lines: Vec<usize>,
}

pub fn tau_points(model: &FermatModel) -> Vec<TauPoint> {
    let f = CycField;
    let n = model.lines.len();
    let mut by_point: HashMap<Vec<CycNum>, HashSet<usize>> = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            if model.intersections[i][j] != 1 {
                continue;
            }
            let p = model.lines[i].meet_point(&f, &model.lines[j]).expect("coplanar lines meet");
            let e = by_point.entry(p).or_default();
            e.insert(i);
            e.insert(j);
        }
    }
    let mut out: Vec<TauPoint> = by_point
        .into_iter()
        .filter(|(_, ls)| ls.len() >= 3)
        .map(|(point, ls)| {
            let mut lines: Vec<usize> = ls.into_iter().collect();
            lines.sort();
            TauPoint { point, lines }
        })
        .collect();
    out.sort_by(|a, b| a.lines.cmp(&b.lines));
    out
}

/// Normalize a projective matrix so its first nonzero entry is 1.
pub fn normalize_matrix(m: &Matrix<CycNum>) -> Matrix<CycNum> {
    let f = CycField;
    let lead = m.iter().flatten().find(|x| !x.is_zero()).expect("nonzero matrix");
    let inv = f.inv(lead).unwrap();
    m.iter().map(|r| r.iter().map(|x| f.mul(x, &inv)).collect()).collect()
}

/// Permutation of the lines induced by a projective transformation.
pub fn line_permutation(model: &FermatModel, m: &Matrix<CycNum>) -> Result<Perm> {
    let f = CycField;
    model
        .lines
        .iter()
        .map(|l| {
            let img = l.transform(&f, m)?;
            model
                .line_index(&img)
                .ok_or_else(|| Error::Precondition("transformation does not preserve the 48 lines".into()))
        })
        .collect()
}

/// Isometry sending each basis class to the class of its image line.
pub fn perm_to_isometry(model: &FermatModel, perm: &[usize]) -> Isometry {
    Isometry { matrix: model.basis.iter().map(|&b| model.classes[perm[b]].clone()).collect() }
}

/// Permutation of the lines induced by an isometry preserving the line classes.
pub fn isometry_to_perm(model: &FermatModel, g: &Isometry) -> Option<Perm> {
    model.classes.iter().map(|c| model.class_index(&g.apply(c))).collect()
}

/// Composition: apply `a`, then `b`.
pub fn compose_perm(a: &[usize], b: &[usize]) -> Perm {
    a.iter().map(|&i| b[i]).collect()
}

/// The projective automorphism group of the Fermat quartic with its
/// permutation action and isometries.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub matrices: Vec<Matrix<CycNum>>,
    pub perms: Vec<Perm>,
    pub isometries: Vec<Isometry>,
}

fn permutation_matrix(a: usize, b: usize) -> Matrix<CycNum> {
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let src = if i == a { b } else if i == b { a } else { i };
                    if src == j { CycNum::one() } else { CycNum::zero() }
                })
                .collect()
        })
        .collect()
}

fn scaling_matrix(k: usize, s: CycNum) -> Matrix<CycNum> {
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| match (i == j, i == k) {
                    (true, true) => s.clone(),
                    (true, false) => CycNum::one(),
                    _ => CycNum::zero(),
                })
                .collect()
        })
        .collect()
}

/// Generators: coordinate transpositions and scaling `x₁` by `ζ²`.
pub fn aut_x48_generators() -> Vec<Matrix<CycNum>> {
    vec![
        permutation_matrix(0, 1),
        permutation_matrix(1, 2),
        permutation_matrix(2, 3),
        scaling_matrix(0, CycNum::zeta_pow(2)),
    ]
}

pub fn aut_x48_group(model: &FermatModel) -> Result<AutGroup> {
    let f = CycField;
    let gens: Vec<(Matrix<CycNum>, Perm)> = aut_x48_generators()
        .into_iter()
        .map(|m| line_permutation(model, &m).map(|p| (m, p)))
        .collect::<Result<_>>()?;
    let n = model.lines.len();
    let id: Perm = (0..n).collect();
    let mut seen: HashMap<Perm, Matrix<CycNum>> = HashMap::new();
    seen.insert(id.clone(), linalg::identity(&f, 4));
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        let m = seen[&p].clone();
        for (gm, gp) in &gens {
            let q = compose_perm(&p, gp);
            if !seen.contains_key(&q) {
                let prod = normalize_matrix(&linalg::mat_mul(&f, gm, &m));
                seen.insert(q.clone(), prod);
                queue.push_back(q);
            }
        }
    }
    let mut items: Vec<(Perm, Matrix<CycNum>)> = seen.into_iter().collect();
    items.sort_by(|a, b| a.0.cmp(&b.0));
    let isometries = items.iter().map(|(p, _)| perm_to_isometry(model, p)).collect();
    let (perms, matrices) = items.into_iter().unzip();
    Ok(AutGroup { matrices, perms, isometries })
}

/// Permutation of the lines under `ζ ↦ ζᵏ`, computed from the defining
/// equations; it agrees with the tag rule `[i,[μ,ν]] ↦ [i,[kμ,kν]]`.
pub fn galois_permutation(model: &FermatModel, k: i64) -> Result<Perm> {
    let f = CycField;
    model
        .lines
        .iter()
        .map(|l| {
            let img = l.map_equations(&f, |x| x.galois(k))?;
            model.line_index(&img).ok_or_else(|| internal!("Galois image is not a line of the surface"))
        })
        .collect()
}

/// Closure of a set of permutations.
pub fn close_perms(gens: &[Perm]) -> Vec<Perm> {
    let Some(first) = gens.first() else { return vec![] };
    let id: Perm = (0..first.len()).collect();
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = compose_perm(&p, g);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    out
}

/// Stabilizer of `h₄₈` in `O(S_X)` by backtracking over the line classes.
pub fn stabilizer_h48(model: &FermatModel) -> Result<Vec<Isometry>> {
    backtrack_stabilizer(&BacktrackInput {
        lattice: &model.lattice,
        classes: &model.classes,
        base: &model.basis,
        fixed: std::slice::from_ref(&model.h48),
    })
}

/// Discriminant-form data and the period-preserving subgroup `Γ`.
#[derive(Clone, Debug)]
pub struct PeriodData {
    pub disc: DiscForm,
    pub t_lattice: Lattice,
    pub t_disc: DiscForm,
    pub o_t: Vec<Isometry>,
    pub eta_t: Vec<DiscMatrix>,
    pub o_qt: Vec<DiscMatrix>,
    /// Elements of `O(T)` preserving the isotropic line `ℂ·(1, ζ²)`.
    pub gamma_t: Vec<Isometry>,
    pub o_qs: Vec<DiscMatrix>,
    /// All isomorphisms `q_S → −q_T`.
    pub isomorphisms: Vec<DiscMatrix>,
    /// `Γ` computed from each isomorphism.
    pub gamma_per_iso: Vec<Vec<DiscMatrix>>,
    pub gamma: Vec<DiscMatrix>,
}

const DISC_EXPONENT: i64 = 8;

pub fn discriminant_generators(model: &FermatModel) -> Vec<Vec<Rational>> {
    let g_inv = model.lattice.gram_inverse();
    data::DISC_GENERATORS_DUAL
        .iter()
        .map(|s| {
            let s: Vec<Rational> = s.iter().map(|&x| rat_int(x)).collect();
            crate::arith::linalg::mat_vec(&QField, &linalg::transpose(&g_inv), &s)
        })
        .collect()
}

fn orthogonal_group_definite(t: &Lattice) -> Result<Vec<Isometry>> {
    let g = t.int_gram().ok_or_else(|| Error::Precondition("integral lattice expected".into()))?;
    let neg: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let neg = Lattice::from_int_gram(&neg)?;
    let n = t.rank();
    let max = (0..n).map(|i| g[i][i]).max().unwrap_or(0);
    let vecs = enumerate_fixed_pairings(&neg, &[], &NormBound::AtLeast(rat_int(-max)))?;
    let mut classes: Vec<IntVec> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for v in vecs {
        if !classes.contains(&v) && (0..n).any(|i| t.pair_int(&v, &v) == g[i][i]) {
            classes.push(v);
        }
    }
    let base: Vec<usize> = (0..n).collect();
    backtrack_stabilizer(&BacktrackInput { lattice: t, classes: &classes, base: &base, fixed: &[] })
}

pub fn period_data(model: &FermatModel) -> Result<PeriodData> {
    let f = CycField;
    let disc = discriminant_form_with_generators(&model.lattice, &discriminant_generators(model))?;
    let t_lattice = Lattice::from_int_gram(&[vec![8, 0], vec![0, 8]])?;
    let t_gens = vec![vec![rat(1, 8), rat_int(0)], vec![rat_int(0), rat(1, 8)]];
    let t_disc = discriminant_form_with_generators(&t_lattice, &t_gens)?;
    let o_t = orthogonal_group_definite(&t_lattice)?;
    let eta_t: Vec<DiscMatrix> =
        o_t.iter().map(|g| induced_disc_action(&t_lattice, &t_disc, g)).collect::<Result<_>>()?;
    let o_qt = orthogonal_group_mod(&t_disc.value_matrix, DISC_EXPONENT);
    let omega = [CycNum::one(), CycNum::zeta_pow(2)];
    let gamma_t: Vec<Isometry> = o_t
        .iter()
        .filter(|g| {
            let img: Vec<CycNum> = (0..2)
                .map(|j| {
                    let a = f.mul(&omega[0], &CycNum::from_int(g.matrix[0][j]));
                    let b = f.mul(&omega[1], &CycNum::from_int(g.matrix[1][j]));
                    f.add(&a, &b)
                })
                .collect();
            f.mul(&img[0], &omega[1]) == f.mul(&img[1], &omega[0])
        })
        .cloned()
        .collect();
    let eta_gamma_t: HashSet<DiscMatrix> = gamma_t
        .iter()
        .map(|g| induced_disc_action(&t_lattice, &t_disc, g))
        .collect::<Result<_>>()?;
    let o_qs = orthogonal_group_mod(&disc.value_matrix, DISC_EXPONENT);
    let neg_qt = crate::lattice::negate_form(&t_disc.value_matrix);
    let isomorphisms = crate::lattice::isomorphisms_mod(&disc.value_matrix, &neg_qt, DISC_EXPONENT);
    let gamma_per_iso: Vec<Vec<DiscMatrix>> = isomorphisms
        .iter()
        .map(|phi| {
            let phi_inv = crate::lattice::inverse_mod(phi, DISC_EXPONENT).expect("isomorphism is invertible");
            o_qs.iter()
                .filter(|g| {
                    let conj = crate::lattice::disc_mat_mul(
                        &crate::lattice::disc_mat_mul(&phi_inv, g, DISC_EXPONENT),
                        phi,
                        DISC_EXPONENT,
                    );
                    eta_gamma_t.contains(&conj)
                })
                .cloned()
                .collect()
        })
        .collect();
    let gamma = gamma_per_iso.first().cloned().unwrap_or_default();
    Ok(PeriodData { disc, t_lattice, t_disc, o_t, eta_t, o_qt, gamma_t, o_qs, isomorphisms, gamma_per_iso, gamma })
}

impl PeriodData {
    pub fn gamma_is_independent_of_isomorphism(&self) -> bool {
        self.gamma_per_iso.iter().all(|g| *g == self.gamma)
    }

    pub fn eta(&self, model: &FermatModel, g: &Isometry) -> Result<DiscMatrix> {
        induced_disc_action(&model.lattice, &self.disc, g)
    }

    /// Whether `g` extends to a Hodge isometry: `η(g) ∈ Γ`.
    pub fn hodge_test(&self, model: &FermatModel, g: &Isometry) -> Result<bool> {
        let e = self.eta(model, g)?;
        Ok(self.gamma.contains(&e))
    }
}

/// `η(g)` from the fixed projection matrix: `[s₁; s₂]·G⁻¹·R·G·P mod 8`.
pub fn eta_via_projection(model: &FermatModel, g: &Isometry) -> DiscMatrix {
    let gram = model.lattice.int_gram().expect("integral");
    let gens = discriminant_generators(model);
    gens.iter()
        .map(|s| {
            let img: Vec<Rational> = (0..20)
                .map(|j| s.iter().zip(&g.matrix).map(|(a, row)| a * rat_int(row[j])).sum())
                .collect();
            let dual: Vec<Rational> =
                (0..20).map(|j| img.iter().zip(gram).map(|(a, row)| a * rat_int(row[j])).sum()).collect();
            (0..2)
                .map(|c| {
                    let v: Rational = dual.iter().zip(&data::DISC_PROJECTION_T[c]).map(|(a, &p)| a * rat_int(p)).sum();
                    let v = v.to_integer();
                    i64::try_from(v).unwrap().rem_euclid(DISC_EXPONENT)
                })
                .collect()
        })
        .collect()
}

/// Orbits of unordered line pairs under the automorphism group.
#[derive(Clone, Debug, Serialize)]
pub struct PairOrbit {
    pub label: String,
    pub intersecting: bool,
    pub size: usize,
    pub representative: (LineTag, LineTag),
    /// `a[j][k]` = number of lines `ℓ″` with `{ℓ,ℓ″} ∈ o_j` and `{ℓ′,ℓ″} ∈ o_k`.
    pub matrix: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct PairOrbits {
    pub orbits: Vec<PairOrbit>,
    /// Orbit index of each pair of distinct lines.
    pub label: Vec<Vec<Option<usize>>>,
}

impl PairOrbits {
    pub fn orbit_of(&self, a: usize, b: usize) -> Option<usize> {
        self.label[a][b]
    }
}

pub fn pair_orbits(model: &FermatModel, aut: &AutGroup) -> Result<PairOrbits> {
    let n = model.lines.len();
    let mut raw: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    let mut members: Vec<Vec<(usize, usize)>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if raw[a][b].is_some() {
                continue;
            }
            let id = members.len();
            let mut orbit = HashSet::new();
            for p in &aut.perms {
                let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                orbit.insert((x, y));
            }
            for &(x, y) in &orbit {
                raw[x][y] = Some(id);
                raw[y][x] = Some(id);
            }
            members.push(orbit.into_iter().collect());
        }
    }
    // Name orbits o₁…o₈ by their listed representatives.
    let mut rename = vec![usize::MAX; members.len()];
    let mut reps = Vec::new();
    for (k, &((i1, m1, n1), (i2, m2, n2), _)) in data::PAIR_ORBIT_TABLE.iter().enumerate() {
        let a = LineTag::new(i1, m1, n1)?;
        let b = LineTag::new(i2, m2, n2)?;
        let id = raw[a.index()][b.index()].ok_or_else(|| internal!("representative pair missing"))?;
        if rename[id] != usize::MAX {
            return Err(internal!("two representatives share an orbit"));
        }
        rename[id] = k;
        reps.push((a, b));
    }
    if members.len() != reps.len() || rename.contains(&usize::MAX) {
        return Err(internal!("found {} pair orbits, expected {}", members.len(), reps.len()));
    }
    let label: Vec<Vec<Option<usize>>> =
        raw.iter().map(|r| r.iter().map(|x| x.map(|id| rename[id])).collect()).collect();
    let k = reps.len();
    let orbits = reps
        .iter()
        .enumerate()
        .map(|(idx, &(a, b))| {
            let (ai, bi) = (a.index(), b.index());
            let mut m = vec![vec![0usize; k]; k];
            for c in 0..n {
                if c == ai || c == bi {
                    continue;
                }
                let j = label[ai][c].unwrap();
                let l = label[bi][c].unwrap();
                m[j][l] += 1;
            }
            let id = rename.iter().position(|&r| r == idx).unwrap();
            PairOrbit {
                label: format!("o{}", idx + 1),
                intersecting: model.intersections[ai][bi] == 1,
                size: members[id].len(),
                representative: (a, b),
                matrix: m,
            }
        })
        .collect();
    Ok(PairOrbits { orbits, label })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn model() -> &'static FermatModel {
        static M: OnceLock<FermatModel> = OnceLock::new();
        M.get_or_init(|| build_neron_severi().unwrap())
    }

    #[test]
    fn gram_matches_reference_table() {
        let m = model();
        let g = m.lattice.int_gram().unwrap();
        for i in 0..20 {
            assert_eq!(g[i], data::REFERENCE_GRAM[i].to_vec());
        }
        assert_eq!(m.lattice.det(), rat_int(-64));
        assert_eq!(m.h48, vec![1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(m.pair(&m.h48, &m.h48), 4);
        assert!(m.lattice.is_hyperbolic());
    }

    #[test]
    fn first_basis_pairs() {
        let m = model();
        let f = CycField;
        let l1 = line_from_tag(LineTag::new(2, 1, 1).unwrap());
        let l2 = line_from_tag(LineTag::new(2, 1, 3).unwrap());
        assert_eq!(line_intersection_number(&f, &l1, &l1), -2);
        assert_eq!(line_intersection_number(&f, &l1, &l2), 1);
        // Class vectors recover pairings with every line.
        for i in 0..48 {
            for (k, &b) in m.basis.iter().enumerate() {
                let mut e = vec![0i64; 20];
                e[k] = 1;
                assert_eq!(m.pair(&m.classes[i], &e), m.intersections[i][b]);
            }
        }
    }

    #[test]
    fn line_classes_by_enumeration() {
        let m = model();
        let mut geo = m.classes.clone();
        geo.sort();
        assert_eq!(enumerate_line_classes(m).unwrap(), geo);
    }

    #[test]
    fn tau_point_structure() {
        let m = model();
        let taus = tau_points(m);
        assert_eq!(taus.len(), data::TAU_POINT_COUNT);
        assert!(taus.iter().all(|t| t.lines.len() == 4));
        for i in 0..48 {
            assert_eq!(taus.iter().filter(|t| t.lines.contains(&i)).count(), 2);
        }
    }

    #[test]
    fn galois_action_follows_tag_rule() {
        let m = model();
        for k in [1, 3, 5, 7] {
            let p = galois_permutation(m, k).unwrap();
            for (i, t) in m.tags.iter().enumerate() {
                assert_eq!(m.tags[p[i]], t.galois(k as u8));
            }
        }
    }

    fn aut() -> &'static AutGroup {
        static A: OnceLock<AutGroup> = OnceLock::new();
        A.get_or_init(|| aut_x48_group(model()).unwrap())
    }

    #[test]
    fn automorphisms_and_stabilizer() {
        let m = model();
        let a = aut();
        assert_eq!(a.perms.len(), data::AUT_ORDER);
        assert!(a.isometries.iter().all(|g| m.lattice.is_isometry(g)));
        let galois: Vec<Perm> = [3, 5, 7].iter().map(|&k| galois_permutation(m, k).unwrap()).collect();
        let mut gens: Vec<Perm> = aut_x48_generators().iter().map(|g| line_permutation(m, g).unwrap()).collect();
        gens.extend(galois);
        let closed = close_perms(&gens);
        assert_eq!(closed.len(), data::STABILIZER_ORDER);
        let mut via_closure: Vec<Isometry> = closed.iter().map(|p| perm_to_isometry(m, p)).collect();
        via_closure.sort();
        let via_backtrack = stabilizer_h48(m).unwrap();
        assert_eq!(via_backtrack, via_closure);
    }

    #[test]
    fn period_condition() {
        let m = model();
        let pd = period_data(m).unwrap();
        assert_eq!(pd.disc.group_orders, vec![8, 8]);
        let want: Vec<Vec<Rational>> =
            data::DISC_VALUES_TIMES_8.iter().map(|r| r.iter().map(|&x| rat(x, 8)).collect()).collect();
        assert_eq!(pd.disc.value_matrix, want);
        assert_eq!(pd.o_t.len(), 8);
        assert_eq!(pd.o_qt.len(), 16);
        let distinct: HashSet<&DiscMatrix> = pd.eta_t.iter().collect();
        assert_eq!(distinct.len(), 8);
        assert_eq!(pd.gamma_t.len(), 4);
        assert_eq!(pd.isomorphisms.len(), 16);
        assert!(pd.gamma_is_independent_of_isomorphism());
        let mut want: Vec<DiscMatrix> =
            data::PERIOD_GROUP.iter().map(|g| g.iter().map(|r| r.to_vec()).collect()).collect();
        want.sort();
        let mut got = pd.gamma.clone();
        got.sort();
        assert_eq!(got, want);
        for g in aut().isometries.iter().step_by(37) {
            assert_eq!(pd.eta(m, g).unwrap(), eta_via_projection(m, g));
            assert!(pd.hodge_test(m, g).unwrap());
        }
    }

    #[test]
    fn line_pair_orbits() {
        let m = model();
        let po = pair_orbits(m, aut()).unwrap();
        for (o, &(_, _, size)) in po.orbits.iter().zip(&data::PAIR_ORBIT_TABLE) {
            assert_eq!(o.size, size);
        }
        for (o, block) in po.orbits.iter().zip(&data::PAIR_ORBIT_BLOCKS) {
            for j in 0..3 {
                assert_eq!(o.matrix[j][..3], block[j][..], "{}", o.label);
            }
            let total: usize = o.matrix.iter().flatten().sum();
            assert_eq!(total, 46);
        }
        assert_eq!(po.orbits.iter().map(|o| o.size).sum::<usize>(), 48 * 47 / 2);
    }
}
