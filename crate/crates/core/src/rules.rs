//! Closed-form branching rules and their comparison with the oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::branch::{
    a_labels, a_partition, b_labels_from_f, branch_oracle, d_labels_from_g, f_from_b_labels,
    summand_json, BranchError, BranchingResult, CaseTag, SummandJson,
};
use crate::rootsys::{DominantWeight, Label, RootSystemError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RulesError {
    #[error("invalid partition {0:?}")]
    InvalidPartition(Vec<i64>),
    #[error("invalid GT label {0:?}")]
    InvalidLabel(Vec<i64>),
    #[error("no closed-form rule for {case} at {lambda:?}")]
    UnsupportedPattern { case: CaseTag, lambda: Vec<u32> },
    #[error("unknown series `{0}`")]
    UnknownSeries(String),
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

fn weight(label: Label, coeffs: &[u32]) -> DominantWeight {
    DominantWeight::new(label, coeffs).expect("rule produced a label of the right length")
}

fn tally<I>(case: CaseTag, lambda: DominantWeight, labels: I) -> BranchingResult
where
    I: IntoIterator<Item = (Vec<u32>, u64)>,
{
    let sub = case.sub();
    let mut summands = BTreeMap::new();
    for (nu, m) in labels {
        if m > 0 {
            *summands.entry(weight(sub, &nu)).or_insert(0) += m;
        }
    }
    BranchingResult {
        case,
        lambda,
        summands,
    }
}

/// Interlacing rule `A_r -> A_{r-1}` on a partition `l_1 >= ... >= l_r >= 0`.
pub fn rule_gt_type_i(r: u8, partition: &[i64]) -> Result<BranchingResult, RulesError> {
    let case = CaseTag::I(r);
    let r = r as usize;
    let lambda_labels =
        a_labels(partition).ok_or_else(|| RulesError::InvalidPartition(partition.to_vec()))?;
    if partition.len() != r || !(2..=4).contains(&r) {
        return Err(RulesError::InvalidPartition(partition.to_vec()));
    }
    let mut bounds: Vec<(i64, i64)> = Vec::with_capacity(r);
    for i in 0..r {
        let lo = if i + 1 < r { partition[i + 1] } else { 0 };
        bounds.push((lo, partition[i]));
    }
    let mut out = Vec::new();
    let mut mu: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    loop {
        // A_{r-1} sees mu only up to a shift of all parts
        let last = mu[r - 1];
        let reduced: Vec<i64> = mu[..r - 1].iter().map(|x| x - last).collect();
        out.push((
            a_labels(&reduced).expect("interlacing keeps parts ordered"),
            1,
        ));
        let mut i = 0;
        while i < r {
            mu[i] += 1;
            if mu[i] <= bounds[i].1 {
                break;
            }
            mu[i] = bounds[i].0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    Ok(tally(case, weight(Label::A(r as u8), &lambda_labels), out))
}

/// Interlacing rule `B_r -> D_r` on a doubled GT row `2f`.
pub fn rule_gt_type_ii(r: u8, f2: &[i64]) -> Result<BranchingResult, RulesError> {
    let case = CaseTag::II(r);
    let r = r as usize;
    if f2.len() != r || !(2..=4).contains(&r) || f2.iter().any(|x| (x - f2[0]) % 2 != 0) {
        return Err(RulesError::InvalidLabel(f2.to_vec()));
    }
    let lambda_labels = b_labels_from_f(f2).ok_or_else(|| RulesError::InvalidLabel(f2.to_vec()))?;
    // ranges for 2g_i, all with the parity of 2f_i
    let ranges: Vec<(i64, i64)> = (0..r)
        .map(|i| {
            if i + 1 < r {
                (f2[i + 1], f2[i])
            } else {
                (-f2[r - 1], f2[r - 1])
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut g: Vec<i64> = ranges.iter().map(|x| x.0).collect();
    loop {
        let labels = d_labels_from_g(&g).ok_or_else(|| RulesError::InvalidLabel(g.clone()))?;
        out.push((labels, 1));
        let mut i = 0;
        while i < r {
            g[i] += 2;
            if g[i] <= ranges[i].1 {
                break;
            }
            g[i] = ranges[i].0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    Ok(tally(case, weight(Label::B(r as u8), &lambda_labels), out))
}

/// `B2 -> D2`: `sum_{r<=k, s<=l} pi_{r+s, r+l-s}`.
pub fn rule_b2_d2(k: u32, l: u32) -> BranchingResult {
    let labels = (0..=k).flat_map(|r| (0..=l).map(move |s| (vec![r + s, r + l - s], 1)));
    tally(CaseTag::II(2), weight(Label::B(2), &[k, l]), labels)
}

/// `B3 -> D3`: `sum_{t<=a, r<=b, s<=c} pi_{a+b-t-r, r+s, r+c-s}`.
pub fn rule_b3_d3(a: u32, b: u32, c: u32) -> BranchingResult {
    let mut labels = Vec::new();
    for t in 0..=a {
        for r in 0..=b {
            for s in 0..=c {
                labels.push((vec![a + b - t - r, r + s, r + c - s], 1));
            }
        }
    }
    tally(CaseTag::II(3), weight(Label::B(3), &[a, b, c]), labels)
}

/// The hexagon with vertices `(k+l,l), (k+l,0), (l,0), (0,l), (0,k+l), (l,k+l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HexagonSpec {
    pub k: u32,
    pub l: u32,
}

impl HexagonSpec {
    pub fn new(k: u32, l: u32) -> Self {
        HexagonSpec { k, l }
    }

    pub fn m(&self) -> u32 {
        self.k.min(self.l)
    }

    pub fn vertices(&self) -> [(u32, u32); 6] {
        let (k, l) = (self.k, self.l);
        [
            (k + l, l),
            (k + l, 0),
            (l, 0),
            (0, l),
            (0, k + l),
            (l, k + l),
        ]
    }

    /// Layer depth of `(alpha, beta)`, negative outside the hexagon.
    pub fn depth(&self, alpha: i64, beta: i64) -> i64 {
        let (k, l) = (self.k as i64, self.l as i64);
        [
            alpha,
            beta,
            k + l - alpha,
            k + l - beta,
            alpha + beta - l,
            k + 2 * l - alpha - beta,
        ]
        .into_iter()
        .min()
        .expect("six functionals")
    }
}

/// `n_{alpha,beta}`: one more than the layer depth, capped at the triangle.
pub fn hexagon_multiplicity(spec: &HexagonSpec, alpha: i64, beta: i64) -> u64 {
    let j = spec.depth(alpha, beta);
    if j < 0 {
        0
    } else {
        1 + j.min(spec.m() as i64) as u64
    }
}

/// `G2 -> A2`: `sum n_{alpha,beta} pi_{alpha,beta}`.
pub fn rule_g2_a2(k: u32, l: u32) -> BranchingResult {
    let spec = HexagonSpec::new(k, l);
    let n = k + l;
    let labels = (0..=n).flat_map(move |a| {
        (0..=n).map(move |b| (vec![a, b], hexagon_multiplicity(&spec, a as i64, b as i64)))
    });
    tally(CaseTag::IV, weight(Label::G2, &[k, l]), labels)
}

/// Triples `0 <= r, s, t <= k` with `r + s + t = 2k`.
pub fn t_set(k: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for r in 0..=k {
        for s in 0..=k {
            if let Some(t) = (2 * k).checked_sub(r + s) {
                if t <= k {
                    out.push([r, s, t]);
                }
            }
        }
    }
    out
}

/// `C3 -> (A1)^3` for the patterns `(a,0,0)`, `(0,b,0)`, `(a,b,0)`, `(0,0,c)`.
pub fn rule_c3(a: u32, b: u32, c: u32) -> Result<BranchingResult, RulesError> {
    let lambda = weight(Label::C(3), &[a, b, c]);
    let mut labels: Vec<(Vec<u32>, u64)> = Vec::new();
    match (a, b, c) {
        (_, 0, 0) => {
            for r in 0..=a {
                for s in 0..=a - r {
                    labels.push((vec![r, s, a - r - s], 1));
                }
            }
        }
        (0, _, 0) => {
            for k in 0..=b {
                for t in t_set(k) {
                    labels.push((t.to_vec(), (b - k + 1) as u64));
                }
            }
        }
        (_, _, 0) => {
            for k in 0..=b {
                let big = (a + b - k) as i64;
                let sum = (a + 2 * b - 2 * k) as i64;
                let cap = (b - k).min(a) as i64;
                for x in 0..=big {
                    for y in 0..=big {
                        let z = sum - x - y;
                        if !(0..=big).contains(&z) {
                            continue;
                        }
                        let j = [x, y, z, big - x, big - y, big - z]
                            .into_iter()
                            .min()
                            .unwrap_or(0);
                        let m = (k as i64 + 1) * (1 + j.min(cap));
                        labels.push((vec![x as u32, y as u32, z as u32], m as u64));
                    }
                }
            }
        }
        (0, 0, _) => {
            for k in 0..=c {
                for t in t_set(k) {
                    labels.push((vec![c - t[0], c - t[1], c - t[2]], 1));
                }
            }
        }
        _ => {
            return Err(RulesError::UnsupportedPattern {
                case: CaseTag::III,
                lambda: vec![a, b, c],
            })
        }
    }
    Ok(tally(CaseTag::III, lambda, labels))
}

/// The two `F4` series: first node `(k,0,0,0)` and last node `(0,0,0,k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Series {
    First,
    Last,
}

impl Series {
    pub fn weight(&self, k: u32) -> Vec<u32> {
        match self {
            Series::First => vec![k, 0, 0, 0],
            Series::Last => vec![0, 0, 0, k],
        }
    }

    /// Which series a weight belongs to; the zero weight counts as `First`.
    pub fn of(coeffs: &[u32]) -> Option<(Series, u32)> {
        match coeffs {
            [k, 0, 0, 0] => Some((Series::First, *k)),
            [0, 0, 0, k] => Some((Series::Last, *k)),
            _ => None,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::First => "first",
            Series::Last => "last",
        })
    }
}

impl FromStr for Series {
    type Err = RulesError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first" => Ok(Series::First),
            "last" => Ok(Series::Last),
            _ => Err(RulesError::UnknownSeries(s.to_string())),
        }
    }
}

/// `F4 -> B4` on one of the two series.
pub fn rule_f4(series: Series, k: u32) -> BranchingResult {
    let lambda = weight(Label::F4, &series.weight(k));
    let mut labels = Vec::new();
    match series {
        Series::First => {
            for s in 0..=k {
                labels.push((vec![0, s, 0, k - s], 1));
            }
        }
        Series::Last => {
            for s in 0..=k {
                for t in 0..=k - s {
                    labels.push((vec![s, 0, 0, t], 1));
                }
            }
        }
    }
    tally(CaseTag::VF4B4, lambda, labels)
}

/// `F4 -> D4` on one of the two series, composed through `B4`.
pub fn rule_f4_d4(series: Series, k: u32) -> BranchingResult {
    let lambda = weight(Label::F4, &series.weight(k));
    let mut labels = Vec::new();
    for s1 in 0..=k {
        for s2 in 0..=k - s1 {
            for t1 in 0..=k - s1 - s2 {
                match series {
                    Series::First => labels.push((vec![s1, s2, t1, k - s1 - s2 - t1], 1)),
                    Series::Last => {
                        // s2 plays the role of t''
                        let m = k + 1 - s1 - s2 - t1;
                        labels.push((vec![s1, 0, t1, s2], m as u64));
                    }
                }
            }
        }
    }
    tally(CaseTag::VF4D4, lambda, labels)
}

/// `B4 -> D4` for `rho_{0,s,0,t}` and `rho_{s,0,0,t}`.
pub fn rule_b4_d4(coeffs: &[u32]) -> Result<BranchingResult, RulesError> {
    let lambda = weight(Label::B(4), coeffs);
    let mut labels = Vec::new();
    match *coeffs {
        [0, s, 0, t] => {
            for s1 in 0..=s {
                for t1 in 0..=t {
                    labels.push((vec![s1, s - s1, t1, t - t1], 1));
                }
            }
        }
        [s, 0, 0, t] => {
            for s1 in 0..=s {
                for t1 in 0..=t {
                    labels.push((vec![s1, 0, t1, t - t1], 1));
                }
            }
        }
        _ => {
            return Err(RulesError::UnsupportedPattern {
                case: CaseTag::VB4D4,
                lambda: coeffs.to_vec(),
            })
        }
    }
    Ok(tally(CaseTag::VB4D4, lambda, labels))
}

/// Summands `(nu, m)` of one decomposition.
pub type Decomposition = Vec<(Vec<u32>, u64)>;

/// The four worked `F4 -> D4` decompositions, as `(lambda, summands)`.
pub fn f4_d4_examples() -> Vec<(Vec<u32>, Decomposition)> {
    let triple = |m: u64, base: [[u32; 4]; 3]| base.into_iter().map(move |v| (v.to_vec(), m));
    let mut out = Vec::new();

    let mut e: Decomposition = vec![(vec![0, 0, 0, 0], 2)];
    e.extend(triple(1, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]));
    out.push((vec![0, 0, 0, 1], e));

    let mut e = vec![(vec![0, 1, 0, 0], 1)];
    e.extend(triple(1, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]));
    out.push((vec![1, 0, 0, 0], e));

    let mut e = vec![(vec![0, 2, 0, 0], 1)];
    e.extend(triple(1, [[2, 0, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]));
    e.extend(triple(1, [[1, 1, 0, 0], [0, 1, 1, 0], [0, 1, 0, 1]]));
    e.extend(triple(1, [[1, 0, 1, 0], [1, 0, 0, 1], [0, 0, 1, 1]]));
    out.push((vec![2, 0, 0, 0], e));

    let mut e = vec![(vec![0, 1, 0, 0], 2)];
    e.extend(triple(2, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]));
    e.extend(triple(1, [[1, 0, 1, 0], [1, 0, 0, 1], [0, 0, 1, 1]]));
    e.push((vec![0, 0, 0, 0], 1));
    out.push((vec![0, 0, 1, 0], e));
    out
}

/// The worked examples as branching results.
pub fn f4_d4_example_results() -> Vec<BranchingResult> {
    f4_d4_examples()
        .into_iter()
        .map(|(lambda, terms)| tally(CaseTag::VF4D4, weight(Label::F4, &lambda), terms))
        .collect()
}

/// Multiplicities are invariant under permuting the outer `D4` labels `(a, c, d)`.
pub fn has_triality_symmetry(summands: &BTreeMap<DominantWeight, u64>) -> bool {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    summands.iter().all(|(nu, &m)| {
        let c = &nu.coeffs;
        if c.len() != 4 {
            return false;
        }
        let outer = [c[0], c[2], c[3]];
        PERMS.iter().all(|p| {
            let image = vec![outer[p[0]], c[1], outer[p[1]], outer[p[2]]];
            summands.get(&DominantWeight {
                system: nu.system,
                coeffs: image,
            }) == Some(&m)
        })
    })
}

/// Proven rules are expected to agree; conjectures are only reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Theorem,
    Conjecture,
}

impl CaseTag {
    pub fn expectation(&self) -> Expectation {
        match self {
            CaseTag::III | CaseTag::VF4B4 | CaseTag::VF4D4 => Expectation::Conjecture,
            _ => Expectation::Theorem,
        }
    }
}

/// A closed-form rule next to the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleReport {
    pub rule: &'static str,
    pub rule_result: BranchingResult,
    pub oracle_result: BranchingResult,
    pub equal: bool,
    pub expected: Expectation,
}

#[derive(Debug, Clone, Serialize)]
pub struct RuleReportJson {
    pub case: String,
    pub ambient: String,
    pub lambda: Vec<u32>,
    pub summands: Vec<SummandJson>,
    pub coefficient_sum: u64,
    pub dim_check: bool,
    pub rule: String,
    pub oracle_summands: Vec<SummandJson>,
    pub equal: bool,
    pub expected: Expectation,
}

impl RuleReport {
    pub fn to_json(&self) -> Result<RuleReportJson, RulesError> {
        let base = self.rule_result.to_json()?;
        Ok(RuleReportJson {
            case: base.case,
            ambient: base.ambient,
            lambda: base.lambda,
            summands: base.summands,
            coefficient_sum: base.coefficient_sum,
            dim_check: base.dim_check,
            rule: self.rule.to_string(),
            oracle_summands: summand_json(&self.oracle_result.summands),
            equal: self.equal,
            expected: self.expected,
        })
    }
}

/// The closed-form rule that applies to `(case, lambda)`, with its name.
pub fn apply_rule(
    case: CaseTag,
    lambda: &DominantWeight,
) -> Result<(&'static str, BranchingResult), RulesError> {
    if lambda.system != case.ambient() {
        return Err(RootSystemError::WrongSystem {
            expected: case.ambient(),
            got: lambda.system,
        }
        .into());
    }
    let c = &lambda.coeffs;
    let unsupported = || RulesError::UnsupportedPattern {
        case,
        lambda: c.clone(),
    };
    Ok(match case {
        CaseTag::I(r) => {
            let p: Vec<i64> = a_partition(c).into_iter().map(i64::from).collect();
            ("gt_type_i", rule_gt_type_i(r, &p)?)
        }
        CaseTag::II(2) => ("b2_d2", rule_b2_d2(c[0], c[1])),
        CaseTag::II(3) => ("b3_d3", rule_b3_d3(c[0], c[1], c[2])),
        CaseTag::II(r) => ("gt_type_ii", rule_gt_type_ii(r, &f_from_b_labels(c))?),
        CaseTag::III => ("c3_patterns", rule_c3(c[0], c[1], c[2])?),
        CaseTag::IV => ("g2_a2_hexagon", rule_g2_a2(c[0], c[1])),
        CaseTag::VF4B4 => {
            let (series, k) = Series::of(c).ok_or_else(unsupported)?;
            ("f4_b4_series", rule_f4(series, k))
        }
        CaseTag::VF4D4 => {
            let (series, k) = Series::of(c).ok_or_else(unsupported)?;
            ("f4_d4_series", rule_f4_d4(series, k))
        }
        CaseTag::VB4D4 => match rule_b4_d4(c) {
            Ok(res) => ("b4_d4_series", res),
            Err(RulesError::UnsupportedPattern { .. }) => (
                "gt_type_ii",
                relabel(CaseTag::VB4D4, rule_gt_type_ii(4, &f_from_b_labels(c))?),
            ),
            Err(e) => return Err(e),
        },
    })
}

fn relabel(case: CaseTag, r: BranchingResult) -> BranchingResult {
    BranchingResult { case, ..r }
}

/// Runs the closed-form rule and the oracle and compares the summands.
pub fn verify_rule(case: CaseTag, lambda: &DominantWeight) -> Result<RuleReport, RulesError> {
    let (rule, rule_result) = apply_rule(case, lambda)?;
    let oracle_result = branch_oracle(case, lambda)?;
    Ok(RuleReport {
        rule,
        equal: rule_result.summands == oracle_result.summands,
        rule_result,
        oracle_result,
        expected: case.expectation(),
    })
}
