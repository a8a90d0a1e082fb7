//! Equal-rank splint embeddings and the character-restriction oracle.

use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::Serialize;
use thiserror::Error;

use crate::chars::{dim_weyl, freudenthal_character, CharsError};
use crate::rootsys::{system, DominantWeight, Label, RootSystem, RootSystemError};
use crate::weightlat::{FormalCharacter, LatticeError, LatticeMap, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchError {
    #[error("unsupported splint case `{0}`")]
    UnsupportedCase(String),
    #[error("leading weight {0} is not dominant")]
    NondominantLeadingTerm(WeightVector),
    #[error("negative multiplicity {m} at leading weight {weight}")]
    NegativeMultiplicity { weight: WeightVector, m: i64 },
    #[error("dimension overflow")]
    Overflow,
    #[error(transparent)]
    Chars(#[from] CharsError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Rows of the splint table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// `A_r -> A_{r-1}`, rank dropping.
    I(u8),
    /// `B_r -> D_r`.
    II(u8),
    /// `C3 -> (A1)^3`.
    III,
    /// `G2 -> A2`.
    IV,
    VF4B4,
    VB4D4,
    VF4D4,
}

impl CaseTag {
    pub fn ambient(&self) -> Label {
        match *self {
            CaseTag::I(r) => Label::A(r),
            CaseTag::II(r) => Label::B(r),
            CaseTag::III => Label::C(3),
            CaseTag::IV => Label::G2,
            CaseTag::VF4B4 | CaseTag::VF4D4 => Label::F4,
            CaseTag::VB4D4 => Label::B(4),
        }
    }

    pub fn sub(&self) -> Label {
        match *self {
            CaseTag::I(r) => Label::A(r - 1),
            CaseTag::II(r) => Label::D(r),
            CaseTag::III => Label::A1Pow(3),
            CaseTag::IV => Label::A(2),
            CaseTag::VF4B4 => Label::B(4),
            CaseTag::VB4D4 | CaseTag::VF4D4 => Label::D(4),
        }
    }

    fn is_supported(&self) -> bool {
        match *self {
            CaseTag::I(r) => (2..=4).contains(&r),
            CaseTag::II(r) => (2..=4).contains(&r),
            _ => true,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::I(r) => write!(f, "I({r})"),
            CaseTag::II(r) => write!(f, "II({r})"),
            CaseTag::III => write!(f, "III"),
            CaseTag::IV => write!(f, "IV"),
            CaseTag::VF4B4 => write!(f, "V_F4_B4"),
            CaseTag::VB4D4 => write!(f, "V_B4_D4"),
            CaseTag::VF4D4 => write!(f, "V_F4_D4"),
        }
    }
}

impl FromStr for CaseTag {
    type Err = BranchError;

    /// Accepts `I(3)`, `I3`, `II(2)`, `II2`, `III`, `IV`, `V_F4_B4`, `V_B4_D4`, `V_F4_D4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BranchError::UnsupportedCase(s.to_string());
        let t = s.trim();
        let tag = match t {
            "III" => CaseTag::III,
            "IV" => CaseTag::IV,
            "V_F4_B4" => CaseTag::VF4B4,
            "V_B4_D4" => CaseTag::VB4D4,
            "V_F4_D4" => CaseTag::VF4D4,
            _ => {
                let (head, rank) = if let Some(rest) = t.strip_prefix("II") {
                    ("II", rest)
                } else if let Some(rest) = t.strip_prefix('I') {
                    ("I", rest)
                } else {
                    return Err(bad());
                };
                let rank = rank.trim_start_matches('(').trim_end_matches(')');
                let r: u8 = rank.parse().map_err(|_| bad())?;
                if head == "II" {
                    CaseTag::II(r)
                } else {
                    CaseTag::I(r)
                }
            }
        };
        if tag.is_supported() {
            Ok(tag)
        } else {
            Err(bad())
        }
    }
}

/// A splint pair together with its torus identification.
#[derive(Debug, Clone)]
pub struct SplintCase {
    pub tag: CaseTag,
    pub ambient: Label,
    pub sub: Label,
    pub embedding: LatticeMap,
}

impl SplintCase {
    pub fn new(tag: CaseTag) -> Result<Self, BranchError> {
        Ok(SplintCase {
            tag,
            ambient: tag.ambient(),
            sub: tag.sub(),
            embedding: embedding_map(tag)?,
        })
    }
}

/// Ambient coordinates to subalgebra coordinates.
///
/// Equal-rank cases share one coordinate space, so the map is the identity.
/// Type I restricts `(x_1, ..., x_r)` to `(x_i - x_r)_{i<r}`.
pub fn embedding_map(tag: CaseTag) -> Result<LatticeMap, BranchError> {
    if !tag.is_supported() {
        return Err(BranchError::UnsupportedCase(tag.to_string()));
    }
    let (a, s) = (tag.ambient(), tag.sub());
    match tag {
        CaseTag::I(r) => {
            let r = r as usize;
            let rows: Vec<Vec<i64>> = (0..r - 1)
                .map(|i| {
                    let mut row = vec![0; r];
                    row[i] = 1;
                    row[r - 1] = -1;
                    row
                })
                .collect();
            Ok(LatticeMap::from_integers(
                &rows,
                a.to_string(),
                s.to_string(),
            )?)
        }
        _ => Ok(LatticeMap::identity(a.rank(), a.to_string(), s.to_string())),
    }
}

/// Multiplicities of subalgebra irreducibles in a restriction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingResult {
    pub case: CaseTag,
    pub lambda: DominantWeight,
    pub summands: BTreeMap<DominantWeight, u64>,
}

impl BranchingResult {
    pub fn ambient(&self) -> Label {
        self.case.ambient()
    }

    pub fn sub(&self) -> Label {
        self.case.sub()
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.summands.values().sum()
    }

    /// `sum m * dim(nu)` over the summands.
    pub fn dimension_sum(&self) -> Result<u128, BranchError> {
        let rs = system(self.sub())?;
        let mut total: u128 = 0;
        for (nu, &m) in &self.summands {
            let d = dim_weyl(&rs, nu)?;
            total = d
                .checked_mul(m as u128)
                .and_then(|x| x.checked_add(total))
                .ok_or(BranchError::Overflow)?;
        }
        Ok(total)
    }

    pub fn dim_check(&self) -> Result<bool, BranchError> {
        let rs = system(self.ambient())?;
        Ok(self.dimension_sum()? == dim_weyl(&rs, &self.lambda)?)
    }

    pub fn to_json(&self) -> Result<BranchingJson, BranchError> {
        Ok(BranchingJson {
            case: self.case.to_string(),
            ambient: self.ambient().to_string(),
            lambda: self.lambda.coeffs.clone(),
            summands: summand_json(&self.summands),
            coefficient_sum: self.coefficient_sum(),
            dim_check: self.dim_check()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandJson {
    pub nu: Vec<u32>,
    pub m: u64,
}

pub(crate) fn summand_json(s: &BTreeMap<DominantWeight, u64>) -> Vec<SummandJson> {
    s.iter()
        .map(|(nu, &m)| SummandJson {
            nu: nu.coeffs.clone(),
            m,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchingJson {
    pub case: String,
    pub ambient: String,
    pub lambda: Vec<u32>,
    pub summands: Vec<SummandJson>,
    pub coefficient_sum: u64,
    pub dim_check: bool,
}

fn peel(
    c: &FormalCharacter,
    sub: &RootSystem,
    allow_negative: bool,
) -> Result<BTreeMap<DominantWeight, i64>, BranchError> {
    let rho = sub.rho();
    let key = |w: &WeightVector| (sub.inner_scaled(w, &rho), *w);
    let mut work: FxHashMap<WeightVector, i64> = c.iter().map(|(w, &k)| (*w, k)).collect();
    let mut heap: BinaryHeap<(i64, WeightVector)> = work.keys().map(key).collect();
    let mut out = BTreeMap::new();
    while let Some((_, top)) = heap.pop() {
        let m = work.get(&top).copied().unwrap_or(0);
        if m == 0 {
            continue;
        }
        let nu = sub
            .from_lattice(&top)
            .map_err(|_| BranchError::NondominantLeadingTerm(top))?;
        if m < 0 && !allow_negative {
            return Err(BranchError::NegativeMultiplicity { weight: top, m });
        }
        let chi = freudenthal_character(sub, &nu)?;
        for (w, &k) in chi.character.iter() {
            let slot = work.entry(*w).or_insert(0);
            let was_zero = *slot == 0;
            *slot -= m * k;
            if was_zero && *slot != 0 {
                heap.push(key(w));
            }
        }
        out.insert(nu, m);
    }
    Ok(out)
}

/// Greedy highest-weight peeling of a genuine character.
pub fn decompose(
    c: &FormalCharacter,
    sub: &RootSystem,
) -> Result<BTreeMap<DominantWeight, u64>, BranchError> {
    Ok(peel(c, sub, false)?
        .into_iter()
        .map(|(nu, m)| (nu, m as u64))
        .collect())
}

/// Peeling that tolerates negative coefficients (virtual characters).
pub fn decompose_virtual(
    c: &FormalCharacter,
    sub: &RootSystem,
) -> Result<BTreeMap<DominantWeight, i64>, BranchError> {
    peel(c, sub, true)
}

/// Restriction computed from characters alone.
pub fn branch_oracle(
    tag: CaseTag,
    lambda: &DominantWeight,
) -> Result<BranchingResult, BranchError> {
    let case = SplintCase::new(tag)?;
    let ambient = system(case.ambient)?;
    let sub = system(case.sub)?;
    let chi = freudenthal_character(&ambient, lambda)?;
    let restricted = case.embedding.apply_character(&chi.character)?;
    Ok(BranchingResult {
        case: tag,
        lambda: lambda.clone(),
        summands: decompose(&restricted, &sub)?,
    })
}

/// Coefficient sum compared with the dimension of an auxiliary module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientSumReport {
    pub coefficient_sum: u64,
    pub aux_dimension: u128,
    pub equal: bool,
}

pub fn coefficient_sum_report(
    result: &BranchingResult,
    aux: &RootSystem,
    omega: &DominantWeight,
) -> Result<CoefficientSumReport, BranchError> {
    let coefficient_sum = result.coefficient_sum();
    let aux_dimension = dim_weyl(aux, omega)?;
    Ok(CoefficientSumReport {
        coefficient_sum,
        aux_dimension,
        equal: coefficient_sum as u128 == aux_dimension,
    })
}

/// Partition `(l_1, ..., l_r)` (with `l_{r+1} = 0`) of an `A_r` label.
///
/// Labels are listed in reverse Bourbaki order, so for `A2` the label
/// `(a, b)` is the partition `(a + b, a)`.
pub fn a_partition(labels: &[u32]) -> Vec<u32> {
    let r = labels.len();
    (1..=r)
        .map(|j| (j..=r).map(|t| labels[r - t]).sum())
        .collect()
}

/// Inverse of [`a_partition`]; `None` unless the parts are weakly decreasing
/// and nonnegative.
pub fn a_labels(partition: &[i64]) -> Option<Vec<u32>> {
    let r = partition.len();
    let p = partition;
    let part = |j: usize| if j <= r { p[j - 1] } else { 0 };
    (0..r)
        .map(|i| {
            let j = r - i;
            u32::try_from(part(j) - part(j + 1)).ok()
        })
        .collect()
}

/// `B_r` labels from a doubled GT row `2f`.
pub fn b_labels_from_f(f2: &[i64]) -> Option<Vec<u32>> {
    let r = f2.len();
    let mut out = Vec::with_capacity(r);
    for i in 0..r - 1 {
        let d = f2[i] - f2[i + 1];
        if d % 2 != 0 {
            return None;
        }
        out.push(u32::try_from(d / 2).ok()?);
    }
    out.push(u32::try_from(f2[r - 1]).ok()?);
    Some(out)
}

/// Doubled GT row `2f` of a `B_r` label.
pub fn f_from_b_labels(labels: &[u32]) -> Vec<i64> {
    let r = labels.len();
    (0..r)
        .map(|i| {
            let whole: i64 = labels[i..r - 1].iter().map(|&x| 2 * x as i64).sum();
            whole + labels[r - 1] as i64
        })
        .collect()
}

/// `D_r` labels from a doubled GT row `2g`.
pub fn d_labels_from_g(g2: &[i64]) -> Option<Vec<u32>> {
    let r = g2.len();
    let mut out = Vec::with_capacity(r);
    for i in 0..r - 1 {
        let d = g2[i] - g2[i + 1];
        if d % 2 != 0 {
            return None;
        }
        out.push(u32::try_from(d / 2).ok()?);
    }
    let s = g2[r - 2] + g2[r - 1];
    if s % 2 != 0 {
        return None;
    }
    out.push(u32::try_from(s / 2).ok()?);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: Label, c: &[u32]) -> DominantWeight {
        DominantWeight::new(l, c).unwrap()
    }

    #[test]
    fn case_names_round_trip() {
        for t in [
            CaseTag::I(2),
            CaseTag::I(3),
            CaseTag::II(2),
            CaseTag::II(3),
            CaseTag::III,
            CaseTag::IV,
            CaseTag::VF4B4,
            CaseTag::VB4D4,
            CaseTag::VF4D4,
        ] {
            assert_eq!(t.to_string().parse::<CaseTag>().unwrap(), t);
        }
        assert_eq!("II3".parse::<CaseTag>().unwrap(), CaseTag::II(3));
        assert!("I1".parse::<CaseTag>().is_err());
        assert!("VI".parse::<CaseTag>().is_err());
    }

    #[test]
    fn g2_adjoint_restriction() {
        let res = branch_oracle(CaseTag::IV, &w(Label::G2, &[0, 1])).unwrap();
        let got: Vec<(Vec<u32>, u64)> = res
            .summands
            .iter()
            .map(|(k, &m)| (k.coeffs.clone(), m))
            .collect();
        assert_eq!(got, vec![(vec![0, 1], 1), (vec![1, 0], 1), (vec![1, 1], 1)]);
        assert_eq!(res.coefficient_sum(), 3);
        assert!(res.dim_check().unwrap());
    }

    #[test]
    fn b2_to_d2_small() {
        let res = branch_oracle(CaseTag::II(2), &w(Label::B(2), &[1, 1])).unwrap();
        let got: Vec<Vec<u32>> = res.summands.keys().map(|k| k.coeffs.clone()).collect();
        assert_eq!(got, vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 1]]);
        assert_eq!(res.dimension_sum().unwrap(), 16);
    }

    #[test]
    fn decompose_is_linear_and_idempotent() {
        let a2 = system(Label::A(2)).unwrap();
        let nu = w(Label::A(2), &[2, 1]);
        let chi = freudenthal_character(&a2, &nu).unwrap();
        let once = decompose(&chi.character, &a2).unwrap();
        assert_eq!(once, BTreeMap::from([(nu.clone(), 1)]));
        let thrice = decompose(&chi.character.scaled(3), &a2).unwrap();
        assert_eq!(thrice, BTreeMap::from([(nu.clone(), 3)]));
        let neg = decompose(&chi.character.scaled(-1), &a2);
        assert!(matches!(neg, Err(BranchError::NegativeMultiplicity { .. })));
        let virt = decompose_virtual(&chi.character.scaled(-2), &a2).unwrap();
        assert_eq!(virt, BTreeMap::from([(nu, -2)]));
    }

    #[test]
    fn nondominant_leading_term_is_rejected() {
        let a2 = system(Label::A(2)).unwrap();
        let c = FormalCharacter::monomial(WeightVector::from_ints(&[1, -1]), 1);
        assert!(matches!(
            decompose(&c, &a2),
            Err(BranchError::NondominantLeadingTerm(_))
        ));
    }

    #[test]
    fn partition_labels_round_trip() {
        assert_eq!(a_partition(&[1, 1]), vec![2, 1]);
        assert_eq!(a_partition(&[0, 1]), vec![1, 0]);
        assert_eq!(a_partition(&[1, 2, 3]), vec![6, 3, 1]);
        assert_eq!(a_labels(&[6, 3, 1]), Some(vec![1, 2, 3]));
        assert_eq!(a_labels(&[6, 3, 0]), Some(vec![0, 3, 3]));
        assert_eq!(a_labels(&[7, 4, 1]), Some(vec![1, 3, 3]));
        assert_eq!(a_labels(&[2, 1, -1]), None);
        assert_eq!(a_labels(&[1, 2]), None);
    }

    #[test]
    fn gt_labels_match_the_lattice() {
        let b4 = system(Label::B(4)).unwrap();
        let d4 = system(Label::D(4)).unwrap();
        for labels in [[1u32, 0, 2, 1], [0, 0, 0, 3], [2, 1, 0, 0]] {
            let f2 = f_from_b_labels(&labels);
            let v = WeightVector::from_doubled(&f2.iter().map(|&x| x as i32).collect::<Vec<_>>());
            assert_eq!(b4.from_lattice(&v).unwrap().coeffs, labels);
            assert_eq!(b_labels_from_f(&f2).unwrap(), labels);
        }
        for g2 in [[3i64, 1, 1, -1], [4, 2, 0, 0], [1, 1, 1, 1]] {
            let v = WeightVector::from_doubled(&g2.iter().map(|&x| x as i32).collect::<Vec<_>>());
            assert_eq!(
                d4.from_lattice(&v).unwrap().coeffs,
                d_labels_from_g(&g2).unwrap()
            );
        }
    }

    #[test]
    fn type_one_map_drops_rank() {
        let m = embedding_map(CaseTag::I(3)).unwrap();
        assert_eq!((m.rank_in(), m.rank_out()), (3, 2));
        let v = m.apply(&WeightVector::from_ints(&[3, 2, 1])).unwrap();
        assert_eq!(v, WeightVector::from_ints(&[2, 1]));
    }

    #[test]
    fn json_shape() {
        let res = branch_oracle(CaseTag::IV, &w(Label::G2, &[0, 1])).unwrap();
        let j = serde_json::to_string(&res.to_json().unwrap()).unwrap();
        assert_eq!(
            j,
            r#"{"case":"IV","ambient":"G2","lambda":[0,1],"summands":[{"nu":[0,1],"m":1},{"nu":[1,0],"m":1},{"nu":[1,1],"m":1}],"coefficient_sum":3,"dim_check":true}"#
        );
    }
}
