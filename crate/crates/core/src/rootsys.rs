//! Catalog of root systems with exact realizations.
//!
//! Every system lives in an ambient coordinate space whose dimension equals
//! its rank:
//!
//! * `A_r`: partition coordinates `(l_1 - l_{r+1}, ..., l_r - l_{r+1})`, so that
//!   for `A2` the coordinates are the coefficients of `L1, L2` once `L3 = -L1 - L2`
//!   is eliminated. Fundamental weights are listed in reverse Bourbaki order, which
//!   gives `A2` the labeling `Omega_1 = L1 + L2`, `Omega_2 = L1`.
//! * `G2`: the same `L1, L2` coordinates; short simple root `L2`, long simple
//!   root `L1 - L2`.
//! * `B_r`, `C_r`, `D_r`, `F4`: orthonormal epsilon coordinates, Bourbaki order.
//! * `(A1)^r`: direct sum of `A1` blocks; coordinates are the Dynkin labels of
//!   the factors.
//!
//! The invariant form is stored as an integer matrix together with a common
//! denominator, normalized so that long roots have squared length 2.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::weightlat::{invert, WeightVector, MAX_RANK};

/// Weights and roots in the fundamental-weight basis (unused slots are zero).
pub type Dynkin = [i32; MAX_RANK];

/// Guard on Weyl group closure generation.
pub const MAX_WEYL_ORDER: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("unsupported root system label `{0}`")]
    UnsupportedLabel(String),
    #[error("weight {0} is not dominant")]
    NotDominant(WeightVector),
    #[error("weight {0} is not in the weight lattice")]
    NotIntegral(WeightVector),
    #[error("{label} expects {expected} coordinates, got {got}")]
    WrongLength {
        label: Label,
        expected: usize,
        got: usize,
    },
    #[error("weight for {got} used with {expected}")]
    WrongSystem { expected: Label, got: Label },
    #[error("Weyl group closure exceeded {0} elements")]
    ClosureOverflow(usize),
}

/// Root-system label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    A(u8),
    B(u8),
    C(u8),
    D(u8),
    G2,
    F4,
    /// Direct sum of `r` copies of `A1`.
    A1Pow(u8),
}

impl Label {
    pub fn rank(&self) -> usize {
        match *self {
            Label::A(r) | Label::B(r) | Label::C(r) | Label::D(r) | Label::A1Pow(r) => r as usize,
            Label::G2 => 2,
            Label::F4 => 4,
        }
    }

    fn is_supported(&self) -> bool {
        match *self {
            Label::A(r) => (1..=4).contains(&r),
            Label::B(r) => (2..=4).contains(&r),
            Label::C(r) => (2..=3).contains(&r),
            Label::D(r) => (2..=4).contains(&r),
            Label::G2 | Label::F4 => true,
            Label::A1Pow(r) => (2..=4).contains(&r),
        }
    }

    /// The systems exposed on the command line.
    pub fn catalog() -> Vec<Label> {
        vec![
            Label::A(1),
            Label::A(2),
            Label::A(3),
            Label::B(2),
            Label::B(3),
            Label::B(4),
            Label::C(3),
            Label::D(2),
            Label::D(3),
            Label::D(4),
            Label::G2,
            Label::F4,
            Label::A1Pow(3),
            Label::A1Pow(4),
        ]
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::A(r) => write!(f, "A{r}"),
            Label::B(r) => write!(f, "B{r}"),
            Label::C(r) => write!(f, "C{r}"),
            Label::D(r) => write!(f, "D{r}"),
            Label::G2 => write!(f, "G2"),
            Label::F4 => write!(f, "F4"),
            Label::A1Pow(r) => write!(f, "A1^{r}"),
        }
    }
}

impl FromStr for Label {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RootSystemError::UnsupportedLabel(s.to_string());
        let t = s.trim();
        let label = if let Some(power) = t.strip_prefix("A1^") {
            Label::A1Pow(power.parse().map_err(|_| bad())?)
        } else if t == "G2" {
            Label::G2
        } else if t == "F4" {
            Label::F4
        } else {
            let mut chars = t.chars();
            let kind = chars.next().ok_or_else(bad)?;
            let r: u8 = chars.as_str().parse().map_err(|_| bad())?;
            match kind {
                'A' => Label::A(r),
                'B' => Label::B(r),
                'C' => Label::C(r),
                'D' => Label::D(r),
                _ => return Err(bad()),
            }
        };
        if label.is_supported() {
            Ok(label)
        } else {
            Err(bad())
        }
    }
}

/// A highest weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight {
    pub system: Label,
    pub coeffs: Vec<u32>,
}

impl DominantWeight {
    pub fn new(system: Label, coeffs: &[u32]) -> Result<Self, RootSystemError> {
        if coeffs.len() != system.rank() {
            return Err(RootSystemError::WrongLength {
                label: system,
                expected: system.rank(),
                got: coeffs.len(),
            });
        }
        Ok(DominantWeight {
            system,
            coeffs: coeffs.to_vec(),
        })
    }

    pub fn zero(system: Label) -> Self {
        DominantWeight {
            system,
            coeffs: vec![0; system.rank()],
        }
    }

    pub fn dynkin(&self) -> Dynkin {
        let mut d = [0; MAX_RANK];
        for (slot, &c) in d.iter_mut().zip(&self.coeffs) {
            *slot = c as i32;
        }
        d
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}({})", self.system, parts.join(","))
    }
}

/// One element of a Weyl group, acting on Dynkin labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: [[i32; MAX_RANK]; MAX_RANK],
    pub length: u32,
}

impl WeylElement {
    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn act(&self, x: &Dynkin) -> Dynkin {
        let mut out = [0; MAX_RANK];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = (0..MAX_RANK).map(|j| self.matrix[i][j] * x[j]).sum();
        }
        out
    }
}

/// The Weyl group, stored explicitly in the fundamental-weight basis.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Debug)]
pub struct RootSystem {
    label: Label,
    rank: usize,
    form: [[i64; MAX_RANK]; MAX_RANK],
    form_den: i64,
    simple_roots: Vec<WeightVector>,
    positive_roots: Vec<WeightVector>,
    fundamental_weights: Vec<WeightVector>,
    rho: WeightVector,
    cartan: [[i32; MAX_RANK]; MAX_RANK],
    coroot_num: Vec<[i64; MAX_RANK]>,
    coroot_den: Vec<i64>,
    positive_dynkin: Vec<Dynkin>,
    weight_form: [[i64; MAX_RANK]; MAX_RANK],
    // (C^T)^{-1}: Dynkin labels -> simple-root coefficients
    to_root_coeffs: Vec<Vec<Ratio<i64>>>,
    coeff_num: [[i64; MAX_RANK]; MAX_RANK],
    coeff_den: i64,
    weyl: OnceLock<WeylGroup>,
}

struct Realization {
    form: Vec<Vec<i64>>,
    form_den: i64,
    simple_doubled: Vec<Vec<i32>>,
}

fn unit2(n: usize, i: usize, scale: i32) -> Vec<i32> {
    let mut v = vec![0; n];
    v[i] = scale;
    v
}

fn realization(label: Label) -> Realization {
    let n = label.rank();
    let identity = |n: usize| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect()
    };
    // e_i - e_{i+1} in doubled epsilon coordinates
    let diff = |n: usize, i: usize| -> Vec<i32> {
        let mut v = vec![0; n];
        v[i] = 2;
        v[i + 1] = -2;
        v
    };
    match label {
        Label::A(r) => {
            let r = r as usize;
            let form = (0..r)
                .map(|i| (0..r).map(|j| if i == j { r as i64 } else { -1 }).collect())
                .collect();
            // Bourbaki alpha_j, listed from j = r down to j = 1
            let simple = (1..=r)
                .rev()
                .map(|j| {
                    if j < r {
                        diff(r, j - 1)
                    } else {
                        let mut v = vec![2; r];
                        v[r - 1] = 4;
                        v
                    }
                })
                .collect();
            Realization {
                form,
                form_den: r as i64 + 1,
                simple_doubled: simple,
            }
        }
        Label::B(_) | Label::C(_) | Label::D(_) => {
            let mut simple: Vec<Vec<i32>> = (0..n - 1).map(|i| diff(n, i)).collect();
            let last = match label {
                Label::B(_) => unit2(n, n - 1, 2),
                Label::C(_) => unit2(n, n - 1, 4),
                _ => {
                    let mut v = vec![0; n];
                    v[n - 2] = 2;
                    v[n - 1] = 2;
                    v
                }
            };
            simple.push(last);
            Realization {
                form: identity(n),
                form_den: if matches!(label, Label::C(_)) { 2 } else { 1 },
                simple_doubled: simple,
            }
        }
        Label::G2 => Realization {
            form: vec![vec![2, -1], vec![-1, 2]],
            form_den: 3,
            simple_doubled: vec![vec![0, 2], vec![2, -2]],
        },
        Label::F4 => Realization {
            form: identity(4),
            form_den: 1,
            simple_doubled: vec![
                vec![0, 2, -2, 0],
                vec![0, 0, 2, -2],
                vec![0, 0, 0, 2],
                vec![1, -1, -1, -1],
            ],
        },
        Label::A1Pow(r) => {
            let r = r as usize;
            Realization {
                form: identity(r),
                form_den: 2,
                simple_doubled: (0..r).map(|i| unit2(r, i, 4)).collect(),
            }
        }
    }
}

fn to_array<T: Copy + Default>(v: &[T]) -> [T; MAX_RANK] {
    let mut out = [T::default(); MAX_RANK];
    out[..v.len()].copy_from_slice(v);
    out
}

/// Builds a root system from the catalog, checking its structural invariants.
pub fn build(label: Label) -> Result<RootSystem, RootSystemError> {
    if !label.is_supported() {
        return Err(RootSystemError::UnsupportedLabel(label.to_string()));
    }
    let rank = label.rank();
    let real = realization(label);
    let mut form = [[0i64; MAX_RANK]; MAX_RANK];
    for i in 0..rank {
        form[i][..rank].copy_from_slice(&real.form[i]);
    }
    let simple_roots: Vec<WeightVector> = real
        .simple_doubled
        .iter()
        .map(|v| WeightVector::from_doubled(v))
        .collect();

    let bilinear = |a: &WeightVector, b: &WeightVector| -> i64 {
        let (x, y) = (a.doubled(), b.doubled());
        (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| x[i] as i64 * form[i][j] * y[j] as i64)
                    .sum::<i64>()
            })
            .sum()
    };

    let mut coroot_num = Vec::with_capacity(rank);
    let mut coroot_den = Vec::with_capacity(rank);
    for a in &simple_roots {
        let x = a.doubled();
        let mut v = [0i64; MAX_RANK];
        for (j, slot) in v.iter_mut().enumerate().take(rank) {
            *slot = 2 * (0..rank).map(|i| x[i] as i64 * form[i][j]).sum::<i64>();
        }
        coroot_num.push(v);
        coroot_den.push(bilinear(a, a));
    }

    let mut cartan = [[0i32; MAX_RANK]; MAX_RANK];
    for i in 0..rank {
        for j in 0..rank {
            let num: i64 = simple_roots[i]
                .doubled()
                .iter()
                .zip(&coroot_num[j])
                .map(|(&a, &b)| a as i64 * b)
                .sum();
            assert_eq!(
                num % coroot_den[j],
                0,
                "non-integral Cartan entry for {label}"
            );
            cartan[i][j] = (num / coroot_den[j]) as i32;
        }
    }

    let c_rat: Vec<Vec<Ratio<i64>>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| Ratio::from_integer(cartan[i][j] as i64))
                .collect()
        })
        .collect();
    let c_inv = invert(&c_rat).expect("Cartan matrix is invertible");
    let fundamental_weights: Vec<WeightVector> = (0..rank)
        .map(|i| {
            let mut w2 = vec![0i32; rank];
            for (k, slot) in w2.iter_mut().enumerate() {
                let v = (0..rank).fold(Ratio::zero(), |acc, j| {
                    acc + c_inv[i][j] * Ratio::from_integer(simple_roots[j].doubled()[k] as i64)
                });
                assert!(
                    v.is_integer(),
                    "fundamental weight off the half-lattice for {label}"
                );
                *slot = v.to_integer() as i32;
            }
            WeightVector::from_doubled(&w2)
        })
        .collect();

    let c_t: Vec<Vec<Ratio<i64>>> = (0..rank)
        .map(|i| (0..rank).map(|j| c_rat[j][i]).collect())
        .collect();
    let to_root_coeffs = invert(&c_t).expect("Cartan matrix is invertible");

    let coeff_den = to_root_coeffs
        .iter()
        .flatten()
        .fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
    let mut coeff_num = [[0i64; MAX_RANK]; MAX_RANK];
    for i in 0..rank {
        for j in 0..rank {
            coeff_num[i][j] = (to_root_coeffs[i][j] * Ratio::from_integer(coeff_den)).to_integer();
        }
    }

    let mut weight_form = [[0i64; MAX_RANK]; MAX_RANK];
    for i in 0..rank {
        for j in 0..rank {
            weight_form[i][j] = bilinear(&fundamental_weights[i], &fundamental_weights[j]);
        }
    }

    let mut rs = RootSystem {
        label,
        rank,
        form,
        form_den: real.form_den,
        simple_roots,
        positive_roots: Vec::new(),
        fundamental_weights,
        rho: WeightVector::zero(rank),
        cartan,
        coroot_num,
        coroot_den,
        positive_dynkin: Vec::new(),
        weight_form,
        to_root_coeffs,
        coeff_num,
        coeff_den,
        weyl: OnceLock::new(),
    };

    // roots are the orbit of the simple roots under simple reflections
    let mut seen: HashSet<Dynkin> = HashSet::new();
    let mut queue: VecDeque<Dynkin> = VecDeque::new();
    for i in 0..rank {
        let d = to_array(&cartan[i][..rank]);
        if seen.insert(d) {
            queue.push_back(d);
        }
    }
    while let Some(d) = queue.pop_front() {
        for i in 0..rank {
            let r = rs.simple_reflect(&d, i);
            if seen.insert(r) {
                queue.push_back(r);
            }
        }
    }
    let mut positive: Vec<(i64, Dynkin)> = seen
        .into_iter()
        .filter_map(|d| {
            let c = rs.root_coefficients(&d);
            if c.iter().all(|x| !x.is_negative()) {
                let height: Ratio<i64> = c.iter().sum();
                assert!(height.is_integer());
                Some((height.to_integer(), d))
            } else {
                assert!(
                    c.iter().all(|x| !x.is_positive()),
                    "root with mixed signs in {label}"
                );
                None
            }
        })
        .collect();
    positive.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    rs.positive_dynkin = positive.iter().map(|p| p.1).collect();
    rs.positive_roots = rs
        .positive_dynkin
        .iter()
        .map(|d| rs.from_dynkin(d))
        .collect();
    rs.rho = rs.from_dynkin(&[1; MAX_RANK]);
    Ok(rs)
}

/// Shared, lazily built instance for a catalog label.
pub fn system(label: Label) -> Result<Arc<RootSystem>, RootSystemError> {
    static CACHE: OnceLock<Mutex<HashMap<Label, Arc<RootSystem>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rs) = cache
        .lock()
        .expect("root system cache poisoned")
        .get(&label)
    {
        return Ok(rs.clone());
    }
    let rs = Arc::new(build(label)?);
    let mut guard = cache.lock().expect("root system cache poisoned");
    Ok(guard.entry(label).or_insert(rs).clone())
}

impl RootSystem {
    pub fn label(&self) -> Label {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_roots(&self) -> &[WeightVector] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[WeightVector] {
        &self.positive_roots
    }

    pub fn fundamental_weights(&self) -> &[WeightVector] {
        &self.fundamental_weights
    }

    pub fn rho(&self) -> WeightVector {
        self.rho
    }

    /// The invariant form on ambient coordinates.
    pub fn gram(&self) -> Vec<Vec<Ratio<i64>>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| Ratio::new(self.form[i][j], self.form_den))
                    .collect()
            })
            .collect()
    }

    /// Cartan matrix with entries `<alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        (0..self.rank)
            .map(|i| self.cartan[i][..self.rank].to_vec())
            .collect()
    }

    /// Four times the form's denominator times the inner product; exact integer.
    pub fn inner_scaled(&self, a: &WeightVector, b: &WeightVector) -> i64 {
        let (x, y) = (a.doubled(), b.doubled());
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += x[i] as i64 * self.form[i][j] * y[j] as i64;
            }
        }
        s
    }

    pub fn inner(&self, a: &WeightVector, b: &WeightVector) -> Ratio<i64> {
        Ratio::new(self.inner_scaled(a, b), 4 * self.form_den)
    }

    /// Pairings `<v, alpha_i^vee>` as exact rationals.
    pub fn coroot_pairings(&self, v: &WeightVector) -> Vec<Ratio<i64>> {
        (0..self.rank)
            .map(|i| {
                let num: i64 = v
                    .doubled()
                    .iter()
                    .zip(&self.coroot_num[i])
                    .map(|(&a, &b)| a as i64 * b)
                    .sum();
                Ratio::new(num, self.coroot_den[i])
            })
            .collect()
    }

    pub fn dynkin_labels(&self, v: &WeightVector) -> Result<Dynkin, RootSystemError> {
        if v.rank() != self.rank {
            return Err(RootSystemError::WrongLength {
                label: self.label,
                expected: self.rank,
                got: v.rank(),
            });
        }
        let mut out = [0; MAX_RANK];
        for (slot, p) in out.iter_mut().zip(self.coroot_pairings(v)) {
            if !p.is_integer() {
                return Err(RootSystemError::NotIntegral(*v));
            }
            *slot = p.to_integer() as i32;
        }
        // pairings alone do not see the lattice when the map is not unimodular
        if self.from_dynkin(&out) != *v {
            return Err(RootSystemError::NotIntegral(*v));
        }
        Ok(out)
    }

    pub fn from_dynkin(&self, d: &[i32]) -> WeightVector {
        let mut w2 = [0i32; MAX_RANK];
        for (i, &c) in d.iter().enumerate().take(self.rank) {
            for (slot, x) in w2.iter_mut().zip(self.fundamental_weights[i].doubled()) {
                *slot += c * x;
            }
        }
        WeightVector::from_doubled(&w2[..self.rank])
    }

    fn check_weight(&self, w: &DominantWeight) -> Result<(), RootSystemError> {
        if w.system != self.label {
            return Err(RootSystemError::WrongSystem {
                expected: self.label,
                got: w.system,
            });
        }
        if w.coeffs.len() != self.rank {
            return Err(RootSystemError::WrongLength {
                label: self.label,
                expected: self.rank,
                got: w.coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn to_lattice(&self, w: &DominantWeight) -> Result<WeightVector, RootSystemError> {
        self.check_weight(w)?;
        Ok(self.from_dynkin(&w.dynkin()))
    }

    pub fn is_dominant(&self, v: &WeightVector) -> bool {
        v.rank() == self.rank && self.coroot_pairings(v).iter().all(|p| !p.is_negative())
    }

    pub fn from_lattice(&self, v: &WeightVector) -> Result<DominantWeight, RootSystemError> {
        let d = self.dynkin_labels(v)?;
        if d[..self.rank].iter().any(|&x| x < 0) {
            return Err(RootSystemError::NotDominant(*v));
        }
        Ok(DominantWeight {
            system: self.label,
            coeffs: d[..self.rank].iter().map(|&x| x as u32).collect(),
        })
    }

    pub(crate) fn positive_dynkin(&self) -> &[Dynkin] {
        &self.positive_dynkin
    }

    /// Scaled inner product of two Dynkin-label vectors (same scale as
    /// [`inner_scaled`](Self::inner_scaled)).
    pub(crate) fn dynkin_inner(&self, a: &Dynkin, b: &Dynkin) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            let row = &self.weight_form[i];
            let mut t = 0;
            for j in 0..self.rank {
                t += row[j] * b[j] as i64;
            }
            s += a[i] as i64 * t;
        }
        s
    }

    pub(crate) fn simple_reflect(&self, d: &Dynkin, i: usize) -> Dynkin {
        let c = d[i];
        let mut out = *d;
        if c != 0 {
            for (slot, a) in out.iter_mut().zip(&self.cartan[i]) {
                *slot -= c * a;
            }
        }
        out
    }

    /// Reflects into the dominant chamber.
    pub(crate) fn dominant_rep(&self, d: &Dynkin) -> Dynkin {
        let mut x = *d;
        while let Some(i) = (0..self.rank).find(|&i| x[i] < 0) {
            x = self.simple_reflect(&x, i);
        }
        x
    }

    /// Weyl orbit of a Dynkin vector.
    pub(crate) fn orbit(&self, d: &Dynkin) -> Vec<Dynkin> {
        let start = self.dominant_rep(d);
        let mut seen: HashSet<Dynkin> = HashSet::from([start]);
        let mut out = vec![start];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for i in 0..self.rank {
                // reflecting only where the label is positive walks down the orbit
                if x[i] > 0 {
                    let y = self.simple_reflect(&x, i);
                    if seen.insert(y) {
                        out.push(y);
                    }
                }
            }
        }
        out
    }

    /// Coefficients of a Dynkin vector in the simple-root basis.
    pub(crate) fn root_coefficients(&self, d: &Dynkin) -> Vec<Ratio<i64>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank).fold(Ratio::zero(), |acc, j| {
                    acc + self.to_root_coeffs[i][j] * Ratio::from_integer(d[j] as i64)
                })
            })
            .collect()
    }

    /// Integer simple-root coefficients, or `None` off the root lattice.
    pub(crate) fn root_coefficients_int(&self, d: &Dynkin) -> Option<[i64; MAX_RANK]> {
        let mut out = [0i64; MAX_RANK];
        for (i, slot) in out.iter_mut().enumerate().take(self.rank) {
            let n: i64 = (0..self.rank)
                .map(|j| self.coeff_num[i][j] * d[j] as i64)
                .sum();
            if n % self.coeff_den != 0 {
                return None;
            }
            *slot = n / self.coeff_den;
        }
        Some(out)
    }

    /// Exact pairing `<v, alpha_i^vee>` when it is an integer.
    pub(crate) fn pairing_int(&self, v: &WeightVector, i: usize) -> Option<i64> {
        let num: i64 = v
            .doubled()
            .iter()
            .zip(&self.coroot_num[i])
            .map(|(&a, &b)| a as i64 * b)
            .sum();
        (num % self.coroot_den[i] == 0).then(|| num / self.coroot_den[i])
    }

    /// Simple reflection in ambient coordinates.
    pub(crate) fn reflect_ambient(&self, v: &WeightVector, i: usize) -> Option<WeightVector> {
        let p = self.pairing_int(v, i)?;
        Some(v.minus(&self.simple_roots[i].scaled(p as i32)))
    }

    pub fn generate_weyl_group(&self, bound: usize) -> Result<WeylGroup, RootSystemError> {
        let r = self.rank;
        let mut identity = [[0i32; MAX_RANK]; MAX_RANK];
        for (i, row) in identity.iter_mut().enumerate() {
            row[i] = 1;
        }
        let generators: Vec<[[i32; MAX_RANK]; MAX_RANK]> = (0..r)
            .map(|i| {
                let mut m = identity;
                for (j, row) in m.iter_mut().enumerate().take(r) {
                    row[i] -= self.cartan[i][j];
                }
                m
            })
            .collect();
        let mul = |a: &[[i32; MAX_RANK]; MAX_RANK], b: &[[i32; MAX_RANK]; MAX_RANK]| {
            let mut c = [[0i32; MAX_RANK]; MAX_RANK];
            for i in 0..MAX_RANK {
                for j in 0..MAX_RANK {
                    c[i][j] = (0..MAX_RANK).map(|k| a[i][k] * b[k][j]).sum();
                }
            }
            c
        };
        let mut seen = HashSet::from([identity]);
        let mut elements = vec![WeylElement {
            matrix: identity,
            length: 0,
        }];
        let mut head = 0;
        // breadth-first, so the depth of each element is its Coxeter length
        while head < elements.len() {
            let (m, len) = (elements[head].matrix, elements[head].length);
            head += 1;
            for g in &generators {
                let next = mul(g, &m);
                if seen.insert(next) {
                    if elements.len() >= bound {
                        return Err(RootSystemError::ClosureOverflow(bound));
                    }
                    elements.push(WeylElement {
                        matrix: next,
                        length: len + 1,
                    });
                }
            }
        }
        Ok(WeylGroup { elements })
    }

    pub fn weyl_group(&self) -> &WeylGroup {
        self.weyl.get_or_init(|| {
            self.generate_weyl_group(MAX_WEYL_ORDER)
                .expect("catalog Weyl groups are below the closure guard")
        })
    }

    /// Gram matrix of the fundamental weights, exact.
    pub fn weight_gram(&self) -> Vec<Vec<Ratio<i64>>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| Ratio::new(self.weight_form[i][j], 4 * self.form_den))
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> RootSystemJson {
        let vecs = |v: &[WeightVector]| v.iter().map(|w| w.doubled().to_vec()).collect();
        RootSystemJson {
            label: self.label.to_string(),
            rank: self.rank,
            simple_roots: vecs(&self.simple_roots),
            positive_roots: vecs(&self.positive_roots),
            fundamental_weights: vecs(&self.fundamental_weights),
            rho: self.rho.doubled().to_vec(),
            form: (0..self.rank)
                .map(|i| self.form[i][..self.rank].to_vec())
                .collect(),
            form_denominator: self.form_den,
        }
    }
}

/// JSON dump of a root system; vectors are doubled coordinates and the
/// invariant form is `form / form_denominator`.
#[derive(Debug, Clone, Serialize)]
pub struct RootSystemJson {
    pub label: String,
    pub rank: usize,
    pub simple_roots: Vec<Vec<i32>>,
    pub positive_roots: Vec<Vec<i32>>,
    pub fundamental_weights: Vec<Vec<i32>>,
    pub rho: Vec<i32>,
    pub form: Vec<Vec<i64>>,
    pub form_denominator: i64,
}
