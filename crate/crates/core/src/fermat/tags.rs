use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::line::ProjLine;
use crate::arith::{CycField, CycNum, Field};
use crate::error::{Error, Result};

/// Label `[i, [μ, ν]]` of the line `x₁ + ζ^μ·xᵢ = 0, xⱼ + ζ^ν·xₖ = 0`, where
/// `j < k` and `{1, i, j, k} = {1, 2, 3, 4}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineTag {
    pub i: u8,
    pub mu: u8,
    pub nu: u8,
}

impl LineTag {
    pub fn new(i: u8, mu: u8, nu: u8) -> Result<Self> {
        if !(2..=4).contains(&i) || mu % 2 == 0 || nu % 2 == 0 || mu > 7 || nu > 7 {
            return Err(Error::Input(format!("invalid line tag [{i},[{mu},{nu}]]")));
        }
        Ok(LineTag { i, mu, nu })
    }

    /// All 48 tags, ordered by `(i, μ, ν)`.
    pub fn all() -> Vec<LineTag> {
        let mut out = Vec::with_capacity(48);
        for i in 2..=4 {
            for mu in [1, 3, 5, 7] {
                for nu in [1, 3, 5, 7] {
                    out.push(LineTag { i, mu, nu });
                }
            }
        }
        out
    }

    /// Position in [`LineTag::all`].
    pub fn index(&self) -> usize {
        (self.i as usize - 2) * 16 + (self.mu as usize / 2) * 4 + self.nu as usize / 2
    }

    /// Image under the field automorphism `ζ ↦ ζᵏ` (k odd).
    pub fn galois(&self, k: u8) -> LineTag {
        LineTag { i: self.i, mu: (self.mu * k) % 8, nu: (self.nu * k) % 8 }
    }

    /// The indices `(j, k)` complementary to `1, i`, 1-based.
    pub fn complement(&self) -> (usize, usize) {
        match self.i {
            2 => (3, 4),
            3 => (2, 4),
            _ => (2, 3),
        }
    }
}

impl fmt::Display for LineTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},[{},{}]]", self.i, self.mu, self.nu)
    }
}

impl FromStr for LineTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u8>().map_err(|_| Error::Input(format!("bad tag {s:?}"))))
            .collect::<Result<_>>()?;
        match digits.as_slice() {
            [i, mu, nu] => LineTag::new(*i, *mu, *nu),
            _ => Err(Error::Input(format!("bad tag {s:?}"))),
        }
    }
}

/// The line labelled by `t`, over ℚ(ζ).
pub fn line_from_tag(t: LineTag) -> ProjLine<CycNum> {
    let f = CycField;
    let (j, k) = t.complement();
    let mut r1 = vec![f.zero(); 4];
    r1[0] = CycNum::one();
    r1[t.i as usize - 1] = CycNum::zeta_pow(t.mu as i64);
    let mut r2 = vec![f.zero(); 4];
    r2[j - 1] = CycNum::one();
    r2[k - 1] = CycNum::zeta_pow(t.nu as i64);
    ProjLine::from_equations(&f, &vec![r1, r2]).expect("tag equations are independent")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tag_lines_match_their_equations() {
        let f = CycField;
        let z = CycNum::zeta();
        let l = line_from_tag("[2,[1,1]]".parse().unwrap());
        let want = vec![
            vec![CycNum::one(), z.clone(), CycNum::zero(), CycNum::zero()],
            vec![CycNum::zero(), CycNum::zero(), CycNum::one(), z.clone()],
        ];
        assert_eq!(l, ProjLine::from_equations(&f, &want).unwrap());

        let l = line_from_tag(LineTag::new(3, 1, 1).unwrap());
        let want = vec![
            vec![CycNum::one(), CycNum::zero(), z.clone(), CycNum::zero()],
            vec![CycNum::zero(), CycNum::one(), CycNum::zero(), z.clone()],
        ];
        assert_eq!(l, ProjLine::from_equations(&f, &want).unwrap());

        let z7 = CycNum::zeta_pow(7);
        let l = line_from_tag(LineTag::new(4, 7, 7).unwrap());
        let want = vec![
            vec![CycNum::one(), CycNum::zero(), CycNum::zero(), z7.clone()],
            vec![CycNum::zero(), CycNum::one(), z7, CycNum::zero()],
        ];
        assert_eq!(l, ProjLine::from_equations(&f, &want).unwrap());
    }

    #[test]
    fn tags_enumerate_and_parse() {
        let all = LineTag::all();
        assert_eq!(all.len(), 48);
        for (k, t) in all.iter().enumerate() {
            assert_eq!(t.index(), k);
            assert_eq!(t.to_string().parse::<LineTag>().unwrap(), *t);
        }
        assert!("[1,[1,1]]".parse::<LineTag>().is_err());
        assert!("[2,[2,1]]".parse::<LineTag>().is_err());
    }
}
