//! Weight-lattice points and finitely supported formal sums over them.
//!
//! Coordinates are stored doubled so that the half-integer weights of the
//! B, D and F4 realizations stay in integer arithmetic. A [`FormalCharacter`]
//! is an unordered map from weights to nonzero integer coefficients; a
//! canonical order (lexicographic on the doubled coordinates) is only imposed
//! when a character is listed or serialized.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest coordinate count of any supported lattice.
pub const MAX_RANK: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("rank {0} is outside 1..={MAX_RANK}")]
    BadRank(usize),
    #[error("image of {0} is not a lattice point")]
    NotIntegral(WeightVector),
    #[error("lattice map is not invertible")]
    Singular,
    #[error("malformed character data: {0}")]
    Malformed(String),
}

/// A point of a rank-`r` weight lattice, stored as twice its coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    rank: u8,
    w2: [i32; MAX_RANK],
}

impl WeightVector {
    pub fn zero(rank: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&rank), "rank {rank} out of range");
        WeightVector {
            rank: rank as u8,
            w2: [0; MAX_RANK],
        }
    }

    /// Builds a weight from doubled coordinates.
    pub fn from_doubled(w2: &[i32]) -> Self {
        let mut v = Self::zero(w2.len());
        v.w2[..w2.len()].copy_from_slice(w2);
        v
    }

    /// Builds a weight from integer coordinates.
    pub fn from_ints(coords: &[i32]) -> Self {
        let mut v = Self::zero(coords.len());
        for (slot, c) in v.w2.iter_mut().zip(coords) {
            *slot = 2 * c;
        }
        v
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn doubled(&self) -> &[i32] {
        &self.w2[..self.rank as usize]
    }

    pub fn coord(&self, i: usize) -> Ratio<i64> {
        Ratio::new(self.doubled()[i] as i64, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.doubled().iter().all(|&c| c == 0)
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.doubled().iter().all(|c| c % 2 == 0)
    }

    pub fn scaled(&self, k: i32) -> Self {
        let mut out = *self;
        for c in out.w2.iter_mut() {
            *c *= k;
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LatticeError> {
        self.same_rank(other)?;
        Ok(self.plus(other))
    }

    pub(crate) fn plus(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.w2.iter_mut().zip(other.w2) {
            *a += b;
        }
        out
    }

    pub(crate) fn minus(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.w2.iter_mut().zip(other.w2) {
            *a -= b;
        }
        out
    }

    fn same_rank(&self, other: &Self) -> Result<(), LatticeError> {
        if self.rank != other.rank {
            return Err(LatticeError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }
}

impl std::ops::Neg for WeightVector {
    type Output = WeightVector;
    fn neg(self) -> Self {
        self.scaled(-1)
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.doubled().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if c % 2 == 0 {
                write!(f, "{}", c / 2)?;
            } else {
                write!(f, "{c}/2")?;
            }
        }
        write!(f, ")")
    }
}

/// A finitely supported integer-valued function on a weight lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCharacter {
    rank: usize,
    terms: FxHashMap<WeightVector, i64>,
}

impl FormalCharacter {
    pub fn new(rank: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&rank), "rank {rank} out of range");
        FormalCharacter {
            rank,
            terms: FxHashMap::default(),
        }
    }

    pub fn monomial(w: WeightVector, c: i64) -> Self {
        let mut out = Self::new(w.rank());
        out.add_term(w, c);
        out
    }

    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = (WeightVector, i64)>,
    {
        let mut out = Self::new(rank);
        for (w, c) in terms {
            if w.rank() != rank {
                return Err(LatticeError::RankMismatch {
                    left: rank,
                    right: w.rank(),
                });
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, w: &WeightVector) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeightVector, &i64)> {
        self.terms.iter()
    }

    /// Sum of all coefficients; the dimension of a genuine character.
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Adds `c` to the coefficient at `w`, pruning a resulting zero.
    ///
    /// Panics on a rank mismatch; use [`char_add`] for checked sums.
    pub fn add_term(&mut self, w: WeightVector, c: i64) {
        assert_eq!(w.rank(), self.rank, "rank mismatch in add_term");
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(w).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&w);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &FormalCharacter, factor: i64) -> Result<(), LatticeError> {
        if other.rank != self.rank {
            return Err(LatticeError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        for (w, c) in other.iter() {
            self.add_term(*w, factor * c);
        }
        Ok(())
    }

    pub fn scaled(&self, factor: i64) -> FormalCharacter {
        let mut out = FormalCharacter::new(self.rank);
        if factor != 0 {
            for (w, c) in self.iter() {
                out.terms.insert(*w, c * factor);
            }
        }
        out
    }

    /// Terms in canonical order: lexicographic on doubled coordinates.
    pub fn sorted_terms(&self) -> Vec<(WeightVector, i64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(w, c)| (*w, *c)).collect();
        v.sort_unstable_by_key(|t| t.0);
        v
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            rank: self.rank,
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(w, c)| TermJson {
                    w2: w.doubled().to_vec(),
                    c,
                })
                .collect(),
        }
    }

    pub fn from_json(json: &CharacterJson) -> Result<Self, LatticeError> {
        if !(1..=MAX_RANK).contains(&json.rank) {
            return Err(LatticeError::BadRank(json.rank));
        }
        let mut out = FormalCharacter::new(json.rank);
        for t in &json.terms {
            if t.w2.len() != json.rank {
                return Err(LatticeError::Malformed(format!(
                    "term of length {} in rank-{} character",
                    t.w2.len(),
                    json.rank
                )));
            }
            if t.c == 0 {
                return Err(LatticeError::Malformed("zero coefficient".into()));
            }
            out.add_term(WeightVector::from_doubled(&t.w2), t.c);
        }
        Ok(out)
    }
}

/// Serialized form: `{"rank": r, "terms": [{"w2": [...], "c": n}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub rank: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub w2: Vec<i32>,
    pub c: i64,
}

/// Pointwise sum of two characters.
pub fn char_add(a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter, LatticeError> {
    let mut out = a.clone();
    out.add_scaled(b, 1)?;
    Ok(out)
}

/// Convolution product: `(a*b)[mu] = sum_nu a[nu] b[mu - nu]`.
pub fn char_mul(a: &FormalCharacter, b: &FormalCharacter) -> Result<FormalCharacter, LatticeError> {
    if a.rank != b.rank {
        return Err(LatticeError::RankMismatch {
            left: a.rank,
            right: b.rank,
        });
    }
    // iterate over the smaller factor in the outer loop
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = FormalCharacter::new(a.rank);
    out.terms.reserve(large.len() + small.len());
    for (u, cu) in small.iter() {
        for (v, cv) in large.iter() {
            *out.terms.entry(u.plus(v)).or_insert(0) += cu * cv;
        }
    }
    out.terms.retain(|_, c| *c != 0);
    Ok(out)
}

/// A linear map between weight lattices with exact rational entries.
///
/// Acts on actual (not doubled) coordinates; since it is linear the same
/// matrix acts on doubled coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    rows: usize,
    cols: usize,
    num: Vec<i64>,
    den: i64,
    source: String,
    target: String,
}

impl LatticeMap {
    pub fn new(
        entries: &[Vec<Ratio<i64>>],
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Result<Self, LatticeError> {
        let rows = entries.len();
        if !(1..=MAX_RANK).contains(&rows) {
            return Err(LatticeError::BadRank(rows));
        }
        let cols = entries[0].len();
        if !(1..=MAX_RANK).contains(&cols) {
            return Err(LatticeError::BadRank(cols));
        }
        if let Some(bad) = entries.iter().find(|r| r.len() != cols) {
            return Err(LatticeError::RankMismatch {
                left: cols,
                right: bad.len(),
            });
        }
        let den = entries
            .iter()
            .flatten()
            .fold(1i64, |acc, x| acc.lcm(x.denom()));
        let num = entries
            .iter()
            .flatten()
            .map(|x| x.numer() * (den / x.denom()))
            .collect();
        Ok(LatticeMap {
            rows,
            cols,
            num,
            den,
            source: source.into(),
            target: target.into(),
        })
    }

    pub fn from_integers(
        rows: &[Vec<i64>],
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Result<Self, LatticeError> {
        let entries: Vec<Vec<Ratio<i64>>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
            .collect();
        Self::new(&entries, source, target)
    }

    pub fn identity(rank: usize, source: impl Into<String>, target: impl Into<String>) -> Self {
        let rows: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::from_integers(&rows, source, target).expect("identity is well formed")
    }

    pub fn rank_in(&self) -> usize {
        self.cols
    }

    pub fn rank_out(&self) -> usize {
        self.rows
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> Ratio<i64> {
        Ratio::new(self.num[i * self.cols + j], self.den)
    }

    pub fn entries(&self) -> Vec<Vec<Ratio<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn apply(&self, w: &WeightVector) -> Result<WeightVector, LatticeError> {
        if w.rank() != self.cols {
            return Err(LatticeError::RankMismatch {
                left: self.cols,
                right: w.rank(),
            });
        }
        let x = w.doubled();
        let mut out = WeightVector::zero(self.rows);
        for i in 0..self.rows {
            let row = &self.num[i * self.cols..(i + 1) * self.cols];
            let s: i64 = row.iter().zip(x).map(|(a, &b)| a * b as i64).sum();
            if s % self.den != 0 {
                return Err(LatticeError::NotIntegral(*w));
            }
            out.w2[i] = (s / self.den) as i32;
        }
        Ok(out)
    }

    /// Pushes a character forward; coefficients of coinciding images add.
    pub fn apply_character(&self, c: &FormalCharacter) -> Result<FormalCharacter, LatticeError> {
        if c.rank() != self.cols {
            return Err(LatticeError::RankMismatch {
                left: self.cols,
                right: c.rank(),
            });
        }
        let mut out = FormalCharacter::new(self.rows);
        for (w, k) in c.iter() {
            out.add_term(self.apply(w)?, *k);
        }
        Ok(out)
    }

    pub fn compose(&self, first: &LatticeMap) -> Result<LatticeMap, LatticeError> {
        if first.rows != self.cols {
            return Err(LatticeError::RankMismatch {
                left: self.cols,
                right: first.rows,
            });
        }
        let entries: Vec<Vec<Ratio<i64>>> = (0..self.rows)
            .map(|i| {
                (0..first.cols)
                    .map(|j| {
                        (0..self.cols).fold(Ratio::zero(), |acc, k| {
                            acc + self.entry(i, k) * first.entry(k, j)
                        })
                    })
                    .collect()
            })
            .collect();
        LatticeMap::new(&entries, first.source.clone(), self.target.clone())
    }

    pub fn inverse(&self) -> Result<LatticeMap, LatticeError> {
        if self.rows != self.cols {
            return Err(LatticeError::Singular);
        }
        let inv = invert(&self.entries()).ok_or(LatticeError::Singular)?;
        LatticeMap::new(&inv, self.target.clone(), self.source.clone())
    }
}

/// Applies a map to a character; errors if the ranks disagree.
pub fn apply_map(m: &LatticeMap, c: &FormalCharacter) -> Result<FormalCharacter, LatticeError> {
    m.apply_character(c)
}

/// Gauss-Jordan inverse of a square rational matrix.
pub(crate) fn invert(m: &[Vec<Ratio<i64>>]) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i32]) -> WeightVector {
        WeightVector::from_ints(c)
    }

    #[test]
    fn cancellation_prunes_to_empty() {
        let a = FormalCharacter::monomial(w(&[1, 0]), 1);
        let b = FormalCharacter::monomial(w(&[1, 0]), -1);
        assert!(char_add(&a, &b).unwrap().is_empty());
    }

    #[test]
    fn disjoint_sum_keeps_both_terms() {
        let a = FormalCharacter::monomial(w(&[1, 0]), 2);
        let b = FormalCharacter::monomial(w(&[0, 1]), 3);
        let s = char_add(&a, &b).unwrap();
        assert_eq!(s.sorted_terms(), vec![(w(&[0, 1]), 3), (w(&[1, 0]), 2)]);
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let a = FormalCharacter::monomial(w(&[1, 0]), 1);
        let b = FormalCharacter::monomial(w(&[1]), 1);
        assert_eq!(
            char_add(&a, &b),
            Err(LatticeError::RankMismatch { left: 2, right: 1 })
        );
        assert!(char_mul(&a, &b).is_err());
    }

    #[test]
    fn unit_is_neutral_for_convolution() {
        let one = FormalCharacter::monomial(WeightVector::zero(2), 1);
        let c = FormalCharacter::from_terms(2, [(w(&[1, 2]), 4), (w(&[-1, 0]), -2)]).unwrap();
        assert_eq!(char_mul(&one, &c).unwrap(), c);
    }

    #[test]
    fn binomial_square() {
        let mu = WeightVector::from_doubled(&[1, 3]);
        let d = FormalCharacter::from_terms(2, [(mu, 1), (-mu, -1)]).unwrap();
        let sq = char_mul(&d, &d).unwrap();
        let expected = FormalCharacter::from_terms(
            2,
            [
                (mu.scaled(2), 1),
                (WeightVector::zero(2), -2),
                (mu.scaled(-2), 1),
            ],
        )
        .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn collapse_map_conserves_mass() {
        let c =
            FormalCharacter::from_terms(2, [(w(&[1, 2]), 4), (w(&[-1, 0]), 3), (w(&[0, 0]), 2)])
                .unwrap();
        let zero = LatticeMap::from_integers(&[vec![0, 0]], "X", "pt").unwrap();
        let out = apply_map(&zero, &c).unwrap();
        assert_eq!(out.sorted_terms(), vec![(WeightVector::zero(1), 9)]);
    }

    #[test]
    fn half_integral_map_rejects_odd_image() {
        let half = LatticeMap::new(&[vec![Ratio::new(1, 2)]], "a", "b").unwrap();
        assert_eq!(half.apply(&w(&[2])).unwrap(), w(&[1]));
        assert!(matches!(
            half.apply(&WeightVector::from_doubled(&[1])),
            Err(LatticeError::NotIntegral(_))
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let m = LatticeMap::from_integers(&[vec![1, 1], vec![1, -1]], "a", "b").unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv.entry(0, 0), Ratio::new(1, 2));
        let id = inv.compose(&m).unwrap();
        assert_eq!(id, LatticeMap::identity(2, "a", "a"));
        let singular = LatticeMap::from_integers(&[vec![1, 2], vec![2, 4]], "a", "b").unwrap();
        assert_eq!(singular.inverse(), Err(LatticeError::Singular));
    }

    #[test]
    fn json_is_sorted_and_round_trips() {
        let c = FormalCharacter::from_terms(
            2,
            [
                (WeightVector::from_doubled(&[1, -1]), 2),
                (WeightVector::from_doubled(&[-3, 1]), -1),
            ],
        )
        .unwrap();
        let json = serde_json::to_string(&c.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"rank":2,"terms":[{"w2":[-3,1],"c":-1},{"w2":[1,-1],"c":2}]}"#
        );
        let back: CharacterJson = serde_json::from_str(&json).unwrap();
        assert_eq!(FormalCharacter::from_json(&back).unwrap(), c);
    }

    #[test]
    fn display_shows_halves() {
        assert_eq!(
            WeightVector::from_doubled(&[3, -2]).to_string(),
            "(3/2, -1)"
        );
    }
}
