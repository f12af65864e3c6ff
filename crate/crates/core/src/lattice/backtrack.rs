//! Isometries determined by the images of a spanning list of classes.

use std::collections::{HashSet, VecDeque};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{ints_to_rats, IntVec, Isometry, Lattice};
use crate::arith::linalg::{self, Matrix};
use crate::arith::{QField, Rational};
use crate::error::{Error, Result};

/// Search data for [`backtrack_stabilizer`].
pub struct BacktrackInput<'a> {
    pub lattice: &'a Lattice,
    /// The finite set of classes the isometries must permute.
    pub classes: &'a [IntVec],
    /// Indices into `classes` of a list spanning `L ⊗ ℚ`.
    pub base: &'a [usize],
    /// Vectors each isometry must fix.
    pub fixed: &'a [IntVec],
}

/// All isometries `g` fixing `fixed` and permuting `classes`, found as the
/// lists of images of the base classes with identical pairings.
pub fn backtrack_stabilizer(input: &BacktrackInput<'_>) -> Result<Vec<Isometry>> {
    let l = input.lattice;
    let n = l.rank();
    let classes = input.classes;
    let base_vecs: Matrix<Rational> = input.base.iter().map(|&i| ints_to_rats(&classes[i])).collect();
    if linalg::rank(&QField, &base_vecs) != n || input.base.len() != n {
        return Err(Error::Precondition("base classes do not form a basis of L ⊗ ℚ".into()));
    }
    let b_inv = linalg::inverse(&QField, &base_vecs).expect("full rank");

    let m = classes.len();
    let table: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| l.pair_int(&classes[i], &classes[j])).collect())
        .collect();
    let fixed_pair: Vec<Vec<i64>> = input
        .fixed
        .iter()
        .map(|f| classes.iter().map(|c| l.pair_int(f, c)).collect())
        .collect();

    // Base order: greedily maximize nonzero pairings with earlier base points.
    let order = base_order(input.base, &table);
    let base: Vec<usize> = order.iter().map(|&k| input.base[k]).collect();

    let consistent = |depth: usize, cand: usize, images: &[usize]| -> bool {
        let src = base[depth];
        if table[cand][cand] != table[src][src] {
            return false;
        }
        if fixed_pair.iter().any(|fp| fp[cand] != fp[src]) {
            return false;
        }
        (0..depth).all(|j| table[cand][images[j]] == table[src][base[j]])
    };

    let class_set: HashSet<&IntVec> = classes.iter().collect();
    let finish = |images: &[usize]| -> Option<Isometry> {
        // R = B⁻¹·B′ with rows in the original base order.
        let mut target = vec![Vec::new(); n];
        for (k, &pos) in order.iter().enumerate() {
            target[pos] = ints_to_rats(&classes[images[k]]);
        }
        let r = linalg::mat_mul(&QField, &b_inv, &target);
        let matrix = r
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.is_integer().then(|| x.to_integer().to_i64()).flatten())
                    .collect::<Option<Vec<i64>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        let g = Isometry { matrix };
        if input.fixed.iter().any(|f| g.apply(f) != *f) {
            return None;
        }
        if classes.iter().any(|c| !class_set.contains(&g.apply(c))) {
            return None;
        }
        Some(g)
    };

    fn rec(
        depth: usize,
        n: usize,
        m: usize,
        images: &mut Vec<usize>,
        consistent: &(dyn Fn(usize, usize, &[usize]) -> bool + Sync),
        finish: &(dyn Fn(&[usize]) -> Option<Isometry> + Sync),
        out: &mut Vec<Isometry>,
    ) {
        if depth == n {
            if let Some(g) = finish(images) {
                out.push(g);
            }
            return;
        }
        for c in 0..m {
            if images.contains(&c) || !consistent(depth, c, images) {
                continue;
            }
            images.push(c);
            rec(depth + 1, n, m, images, consistent, finish, out);
            images.pop();
        }
    }

    let firsts: Vec<usize> = (0..m).filter(|&c| consistent(0, c, &[])).collect();
    let mut out: Vec<Isometry> = firsts
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut images = vec![c];
            let mut out = Vec::new();
            rec(1, n, m, &mut images, &consistent, &finish, &mut out);
            out
        })
        .collect();
    out.sort();
    Ok(out)
}

fn base_order(base: &[usize], table: &[Vec<i64>]) -> Vec<usize> {
    let k = base.len();
    let nz = |a: usize, b: usize| table[base[a]][base[b]] != 0;
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut left: Vec<usize> = (0..k).collect();
    while !left.is_empty() {
        let score = |c: usize| -> (usize, usize) {
            let with_chosen = order.iter().filter(|&&o| nz(c, o)).count();
            let total = (0..k).filter(|&o| o != c && nz(c, o)).count();
            (with_chosen, total)
        };
        let (pos, _) = left
            .iter()
            .enumerate()
            .max_by(|(_, &a), (_, &b)| score(a).cmp(&score(b)).then(b.cmp(&a)))
            .unwrap();
        order.push(left.remove(pos));
    }
    order
}

/// Closure of a set of isometries under composition (the generated group).
pub fn close_group(gens: &[Isometry]) -> Vec<Isometry> {
    let Some(first) = gens.first() else {
        return vec![];
    };
    let id = Isometry::identity(first.rank());
    let mut seen: HashSet<Isometry> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.then(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    let mut out: Vec<Isometry> = seen.into_iter().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_pair_in_toy_lattice() {
        // U ⊕ A₁ with the two (−2)-vectors ±e₃ and ±(e₁ − e₂), which are orthogonal.
        let l = Lattice::from_int_gram(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -2]]).unwrap();
        let classes: Vec<IntVec> = vec![
            vec![1, 1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
            vec![1, -1, 0],
            vec![-1, 1, 0],
        ];
        let fixed = vec![vec![1, 1, 0]];
        let out = backtrack_stabilizer(&BacktrackInput {
            lattice: &l,
            classes: &classes,
            base: &[0, 1, 3],
            fixed: &fixed,
        })
        .unwrap();
        // Swapping e₃ with e₁ − e₂ is not integral; the four sign changes remain.
        assert_eq!(out.len(), 4);
        for g in &out {
            assert!(l.is_isometry(g));
        }
        let closed = close_group(&out);
        assert_eq!(closed, out);
    }

    #[test]
    fn non_spanning_base_is_rejected() {
        let l = Lattice::from_int_gram(&[vec![2, 0], vec![0, -2]]).unwrap();
        let classes = vec![vec![1, 0], vec![2, 0]];
        let r = backtrack_stabilizer(&BacktrackInput { lattice: &l, classes: &classes, base: &[0, 1], fixed: &[] });
        assert!(r.is_err());
    }
}
