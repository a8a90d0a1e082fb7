//! Three-variable Schur calculus modulo `x1 x2 x3 = 1`.
//!
//! Elements are integer combinations of normalized indices `s_{a,b,0}` with
//! `a >= b >= 0`; polynomials are only expanded at the bridge to `A2`
//! characters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::branch::decompose_virtual;
use crate::rootsys::{system, Label};
use crate::rules::{hexagon_multiplicity, HexagonSpec};
use crate::weightlat::{FormalCharacter, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("layer {i} is out of range for (k, l) = ({k}, {l})")]
    LayerOutOfRange { i: u32, k: u32, l: u32 },
    #[error("not an A2 virtual character: {0}")]
    NotACharacter(String),
}

/// Normalized index `s_{a,b,0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchurIndex {
    a: u32,
    b: u32,
}

impl SchurIndex {
    pub fn new(a: u32, b: u32) -> Option<Self> {
        (a >= b).then_some(SchurIndex { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }
}

impl fmt::Display for SchurIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s({},{},0)", self.a, self.b)
    }
}

/// `s_{a,b,c} = s_{a-c,b-c,0}` when `a >= b >= c >= 0`, otherwise zero.
pub fn schur_normalize(a: i64, b: i64, c: i64) -> Option<SchurIndex> {
    if a >= b && b >= c && c >= 0 {
        Some(SchurIndex {
            a: (a - c) as u32,
            b: (b - c) as u32,
        })
    } else {
        None
    }
}

/// Finite integer combination of normalized Schur indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SchurSum {
    terms: BTreeMap<SchurIndex, i64>,
}

impl SchurSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(s: SchurIndex) -> Self {
        let mut out = Self::new();
        out.add(s, 1);
        out
    }

    pub fn add(&mut self, s: SchurIndex, c: i64) {
        let slot = self.terms.entry(s).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&s);
        }
    }

    /// Adds `c * s_{a,b,cc}` after normalization; vanishing indices are dropped.
    pub fn add_raw(&mut self, a: i64, b: i64, cc: i64, c: i64) {
        if let Some(s) = schur_normalize(a, b, cc) {
            self.add(s, c);
        }
    }

    pub fn add_sum(&mut self, other: &SchurSum, factor: i64) {
        for (&s, &c) in &other.terms {
            self.add(s, factor * c);
        }
    }

    pub fn get(&self, s: &SchurIndex) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SchurIndex, &i64)> {
        self.terms.iter()
    }

    pub fn to_json(&self) -> Vec<SchurTermJson> {
        self.terms
            .iter()
            .map(|(s, &c)| SchurTermJson { a: s.a, b: s.b, c })
            .collect()
    }
}

impl fmt::Display for SchurSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (s, &c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            if c.unsigned_abs() != 1 {
                write!(f, "{} ", c.unsigned_abs())?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Serialized term `c * s_{a,b,0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurTermJson {
    pub a: u32,
    pub b: u32,
    pub c: i64,
}

/// `s_{1,0,0} * s`: one box added to one row.
pub fn pieri_e1(s: SchurIndex) -> SchurSum {
    let (a, b) = (s.a as i64, s.b as i64);
    let mut out = SchurSum::new();
    out.add_raw(a + 1, b, 0, 1);
    out.add_raw(a, b + 1, 0, 1);
    out.add_raw(a, b, 1, 1);
    out
}

/// `s_{1,1,0} * s`: two boxes added to distinct rows.
pub fn pieri_e2(s: SchurIndex) -> SchurSum {
    let (a, b) = (s.a as i64, s.b as i64);
    let mut out = SchurSum::new();
    out.add_raw(a + 1, b + 1, 0, 1);
    out.add_raw(a + 1, b, 1, 1);
    out.add_raw(a, b + 1, 1, 1);
    out
}

/// The six-term element `H_{alpha,beta}`.
pub fn h_point(alpha: u32, beta: u32) -> SchurSum {
    let (x, y) = (alpha as i64, beta as i64);
    let mut out = SchurSum::new();
    out.add_raw(x + y + 1, x + 1, 0, 1);
    out.add_raw(x + y, x + 1, 0, -1);
    out.add_raw(x + y - 1, x, 0, 1);
    out.add_raw(x + y - 1, x - 1, 0, -1);
    out.add_raw(x + y, x - 1, 0, 1);
    out.add_raw(x + y + 1, x, 0, -1);
    out
}

fn check_layer(i: u32, k: u32, l: u32) -> Result<(), SchurError> {
    if i > k.min(l) + 1 {
        return Err(SchurError::LayerOutOfRange { i, k, l });
    }
    Ok(())
}

/// The six-term element attached to layer `i`; layer `min(k,l) + 1` is empty.
pub fn h_layer(i: u32, k: u32, l: u32) -> Result<SchurSum, SchurError> {
    check_layer(i, k, l)?;
    if i == k.min(l) + 1 {
        return Ok(SchurSum::new());
    }
    let (i, k, l) = (i as i64, k as i64, l as i64);
    let mut out = SchurSum::new();
    out.add_raw(k + 2 * l - i + 1, k + l - i + 1, 0, 1);
    out.add_raw(k + l, k + l - i + 1, 0, -1);
    out.add_raw(l + i - 1, l, 0, 1);
    out.add_raw(l + i - 1, i - 1, 0, -1);
    out.add_raw(k + l, i - 1, 0, 1);
    out.add_raw(k + 2 * l - i + 1, l, 0, -1);
    Ok(out)
}

fn polygon_boundary(vertices: &[(i64, i64)]) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for (n, &(x0, y0)) in vertices.iter().enumerate() {
        let (x1, y1) = vertices[(n + 1) % vertices.len()];
        let steps = num_integer::gcd(x1 - x0, y1 - y0).max(1);
        let (dx, dy) = ((x1 - x0) / steps, (y1 - y0) / steps);
        for t in 0..=steps {
            out.insert(((x0 + t * dx) as u32, (y0 + t * dy) as u32));
        }
    }
    out
}

/// Lattice points of layer `L_i(k,l)`: hexagon boundaries for `i < min(k,l)`,
/// the closed triangle with vertices `(k,l), (l,l), (l,k)` at `i = min(k,l)`.
pub fn layer_points(i: u32, k: u32, l: u32) -> Result<BTreeSet<(u32, u32)>, SchurError> {
    check_layer(i, k, l)?;
    let m = k.min(l);
    if i == m + 1 {
        return Ok(BTreeSet::new());
    }
    let (i, k, l) = (i as i64, k as i64, l as i64);
    if i < m as i64 {
        let v = [
            (k + l - i, l),
            (k + l - i, i),
            (l, i),
            (i, l),
            (i, k + l - i),
            (l, k + l - i),
        ];
        return Ok(polygon_boundary(&v));
    }
    let (lo, hi) = (k.min(l), k.max(l));
    let mut out = BTreeSet::new();
    for a in lo..=hi {
        for b in lo..=hi {
            let inside = if k >= l {
                a + b <= k + l
            } else {
                a + b >= k + l
            };
            if inside {
                out.insert((a as u32, b as u32));
            }
        }
    }
    Ok(out)
}

fn h_sum(points: &BTreeSet<(u32, u32)>) -> SchurSum {
    let mut out = SchurSum::new();
    for &(a, b) in points {
        out.add_sum(&h_point(a, b), 1);
    }
    out
}

/// Sum of `H` over the innermost (triangular) layer equals `H_{L_m}`.
pub fn verify_lemma_triangle(k: u32, l: u32) -> bool {
    let m = k.min(l);
    match (layer_points(m, k, l), h_layer(m, k, l)) {
        (Ok(pts), Ok(h)) => h_sum(&pts) == h,
        _ => false,
    }
}

/// Sum of `H` over hexagonal layer `i` is the second difference of `H_{L_j}`.
pub fn verify_lemma_hex(i: u32, k: u32, l: u32) -> bool {
    if i >= k.min(l) {
        return false;
    }
    let (Ok(pts), Ok(h0), Ok(h1), Ok(h2)) = (
        layer_points(i, k, l),
        h_layer(i, k, l),
        h_layer(i + 1, k, l),
        h_layer(i + 2, k, l),
    ) else {
        return false;
    };
    let mut rhs = h2;
    rhs.add_sum(&h1, -2);
    rhs.add_sum(&h0, 1);
    h_sum(&pts) == rhs
}

/// `s_{k+2l+1,k+l+1,0} - s_{k+2l+1,l,0}`.
pub fn theorem_lhs(k: u32, l: u32) -> SchurSum {
    let (k, l) = (k as i64, l as i64);
    let mut out = SchurSum::new();
    out.add_raw(k + 2 * l + 1, k + l + 1, 0, 1);
    out.add_raw(k + 2 * l + 1, l, 0, -1);
    out
}

/// `sum n_{alpha,beta} H_{alpha,beta}` over the hexagon.
pub fn theorem_rhs(k: u32, l: u32) -> SchurSum {
    let spec = HexagonSpec::new(k, l);
    let mut out = SchurSum::new();
    for a in 0..=k + l {
        for b in 0..=k + l {
            let n = hexagon_multiplicity(&spec, a as i64, b as i64);
            if n > 0 {
                out.add_sum(&h_point(a, b), n as i64);
            }
        }
    }
    out
}

/// The layer-by-layer telescoping form of the right-hand side.
pub fn telescoped(k: u32, l: u32) -> Result<SchurSum, SchurError> {
    let m = k.min(l);
    let mut out = SchurSum::new();
    out.add_sum(&h_layer(m, k, l)?, m as i64 + 1);
    for i in 0..m {
        let w = i as i64 + 1;
        out.add_sum(&h_layer(i + 2, k, l)?, w);
        out.add_sum(&h_layer(i + 1, k, l)?, -2 * w);
        out.add_sum(&h_layer(i, k, l)?, w);
    }
    Ok(out)
}

/// Both routes to the identity, direct and telescoped, must give the left side.
pub fn verify_theorem(k: u32, l: u32) -> bool {
    let lhs = theorem_lhs(k, l);
    theorem_rhs(k, l) == lhs && telescoped(k, l).is_ok_and(|t| t == lhs)
}

/// Expands `s_{a,b,0}(x1, x2, x3)` over Gelfand-Tsetlin patterns and writes
/// each monomial in `L1, L2` coordinates using `x3 = 1 / (x1 x2)`.
pub fn schur_to_a2_character(s: SchurIndex) -> FormalCharacter {
    let (a, b) = (s.a as i32, s.b as i32);
    let mut out = FormalCharacter::new(2);
    for p in b..=a {
        for q in 0..=b {
            for r in q..=p {
                let e1 = r;
                let e2 = p + q - r;
                let e3 = a + b - p - q;
                out.add_term(WeightVector::from_ints(&[e1 - e3, e2 - e3]), 1);
            }
        }
    }
    out
}

/// Expansion of a whole sum.
pub fn schur_sum_to_a2_character(s: &SchurSum) -> FormalCharacter {
    let mut out = FormalCharacter::new(2);
    for (&idx, &c) in s.iter() {
        out.add_scaled(&schur_to_a2_character(idx), c)
            .expect("rank 2");
    }
    out
}

/// Writes an `A2` virtual character in the Schur basis via `pi_{alpha,beta} = s_{alpha+beta,alpha,0}`.
pub fn a2_character_to_schur(c: &FormalCharacter) -> Result<SchurSum, SchurError> {
    if c.rank() != 2 {
        return Err(SchurError::NotACharacter(format!("rank {}", c.rank())));
    }
    let a2 = system(Label::A(2)).map_err(|e| SchurError::NotACharacter(e.to_string()))?;
    let parts = decompose_virtual(c, &a2).map_err(|e| SchurError::NotACharacter(e.to_string()))?;
    let mut out = SchurSum::new();
    for (nu, m) in parts {
        let (alpha, beta) = (nu.coeffs[0], nu.coeffs[1]);
        out.add(SchurIndex::new(alpha + beta, alpha).expect("ordered"), m);
    }
    Ok(out)
}
