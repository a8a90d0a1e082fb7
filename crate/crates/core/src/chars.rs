//! Irreducible characters, dimensions, and the Weyl character formula check.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::Ratio;
use num_traits::CheckedMul;
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::rootsys::{DominantWeight, Dynkin, Label, RootSystem, RootSystemError};
use crate::weightlat::{char_mul, FormalCharacter, LatticeError, WeightVector, MAX_RANK};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharsError {
    #[error("Weyl dimension formula gave a non-integer for {0}")]
    NonIntegerResult(DominantWeight),
    #[error("zero denominator in the Freudenthal recursion at {0}")]
    ZeroDenominator(WeightVector),
    #[error("inexact division in the Freudenthal recursion at {0}")]
    InexactDivision(WeightVector),
    #[error("integer overflow computing {0}")]
    Overflow(DominantWeight),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Character of an irreducible module together with its dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct IrrepCharacter {
    pub highest: DominantWeight,
    pub character: FormalCharacter,
    pub dimension: u128,
}

/// Persistent backing store consulted by [`freudenthal_character`].
pub trait CharacterStore: Send + Sync {
    fn load(&self, highest: &DominantWeight) -> Option<FormalCharacter>;
    fn save(&self, highest: &DominantWeight, character: &FormalCharacter);
}

type Memo = RwLock<HashMap<DominantWeight, Arc<IrrepCharacter>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn store_slot() -> &'static RwLock<Option<Arc<dyn CharacterStore>>> {
    static STORE: OnceLock<RwLock<Option<Arc<dyn CharacterStore>>>> = OnceLock::new();
    STORE.get_or_init(|| RwLock::new(None))
}

/// Installs (or removes) the persistent store used behind the in-process memo.
pub fn install_store(store: Option<Arc<dyn CharacterStore>>) {
    *store_slot().write().expect("store lock poisoned") = store;
}

/// Drops every memoized character.
pub fn clear_memo() {
    memo().write().expect("memo lock poisoned").clear();
}

fn add_dynkin(a: &Dynkin, b: &Dynkin) -> Dynkin {
    let mut out = *a;
    for (x, y) in out.iter_mut().zip(b) {
        *x += y;
    }
    out
}

fn sub_dynkin(a: &Dynkin, b: &Dynkin) -> Dynkin {
    let mut out = *a;
    for (x, y) in out.iter_mut().zip(b) {
        *x -= y;
    }
    out
}

fn rho_dynkin(rs: &RootSystem) -> Dynkin {
    let mut d = [0; MAX_RANK];
    d[..rs.rank()].iter_mut().for_each(|x| *x = 1);
    d
}

fn check(rs: &RootSystem, lambda: &DominantWeight) -> Result<(), CharsError> {
    rs.to_lattice(lambda)?;
    Ok(())
}

/// Weyl dimension formula, `prod (lambda + rho, alpha) / (rho, alpha)`.
pub fn dim_weyl(rs: &RootSystem, lambda: &DominantWeight) -> Result<u128, CharsError> {
    check(rs, lambda)?;
    let rho = rho_dynkin(rs);
    let shifted = add_dynkin(&lambda.dynkin(), &rho);
    let mut acc = Ratio::<i128>::from_integer(1);
    for alpha in rs.positive_dynkin() {
        let num = rs.dynkin_inner(&shifted, alpha) as i128;
        let den = rs.dynkin_inner(&rho, alpha) as i128;
        acc = acc
            .checked_mul(&Ratio::new(num, den))
            .ok_or_else(|| CharsError::Overflow(lambda.clone()))?;
    }
    if !acc.is_integer() {
        return Err(CharsError::NonIntegerResult(lambda.clone()));
    }
    Ok(acc.to_integer() as u128)
}

/// Dominant weights of `L(lambda)`, sorted by decreasing `(mu, rho)` and then
/// lexicographically decreasing labels.
pub(crate) fn dominant_weights(rs: &RootSystem, lambda: &Dynkin) -> Vec<Dynkin> {
    let r = rs.rank();
    let mut seen: FxHashSet<Dynkin> = FxHashSet::default();
    seen.insert(*lambda);
    let mut out = vec![*lambda];
    let mut head = 0;
    while head < out.len() {
        let mu = out[head];
        head += 1;
        for alpha in rs.positive_dynkin() {
            let nu = sub_dynkin(&mu, alpha);
            if nu[..r].iter().all(|&x| x >= 0) && seen.insert(nu) {
                out.push(nu);
            }
        }
    }
    let rho = rho_dynkin(rs);
    out.sort_by_cached_key(|mu| {
        (
            std::cmp::Reverse(rs.dynkin_inner(mu, &rho)),
            std::cmp::Reverse(*mu),
        )
    });
    out
}

/// Freudenthal multiplicities on the dominant chamber.
pub fn dominant_multiplicities(
    rs: &RootSystem,
    lambda: &DominantWeight,
) -> Result<Vec<(Dynkin, i64)>, CharsError> {
    check(rs, lambda)?;
    let top = lambda.dynkin();
    let rho = rho_dynkin(rs);
    let top_rho = add_dynkin(&top, &rho);
    let top_norm = rs.dynkin_inner(&top_rho, &top_rho);
    let order = dominant_weights(rs, &top);
    let mut mult: FxHashMap<Dynkin, i64> = FxHashMap::default();
    let mut out = Vec::with_capacity(order.len());
    for mu in order {
        let m = if mu == top {
            1
        } else {
            let mu_rho = add_dynkin(&mu, &rho);
            let gap = top_norm - rs.dynkin_inner(&mu_rho, &mu_rho);
            if gap == 0 {
                return Err(CharsError::ZeroDenominator(rs.from_dynkin(&mu)));
            }
            let mut sum: i64 = 0;
            for alpha in rs.positive_dynkin() {
                let mut nu = mu;
                loop {
                    nu = add_dynkin(&nu, alpha);
                    let Some(&m_nu) = mult.get(&rs.dominant_rep(&nu)) else {
                        break;
                    };
                    sum += rs.dynkin_inner(&nu, alpha) * m_nu;
                }
            }
            let num = 2 * sum;
            if num % gap != 0 {
                return Err(CharsError::InexactDivision(rs.from_dynkin(&mu)));
            }
            num / gap
        };
        if m > 0 {
            mult.insert(mu, m);
            out.push((mu, m));
        }
    }
    Ok(out)
}

/// Computes the character without touching the memo or the store.
pub fn compute_irrep(
    rs: &RootSystem,
    lambda: &DominantWeight,
) -> Result<IrrepCharacter, CharsError> {
    let dominant = dominant_multiplicities(rs, lambda)?;
    let dimension = dim_weyl(rs, lambda)?;
    let mut character = FormalCharacter::new(rs.rank());
    for (mu, m) in &dominant {
        for nu in rs.orbit(mu) {
            character.add_term(rs.from_dynkin(&nu), *m);
        }
    }
    Ok(IrrepCharacter {
        highest: lambda.clone(),
        character,
        dimension,
    })
}

fn plausible(rs: &RootSystem, irrep: &IrrepCharacter) -> bool {
    let Ok(top) = rs.to_lattice(&irrep.highest) else {
        return false;
    };
    irrep.character.rank() == rs.rank()
        && irrep.character.get(&top) == 1
        && irrep.character.mass() as u128 == irrep.dimension
}

/// Memoized character of `L(lambda)`.
pub fn freudenthal_character(
    rs: &RootSystem,
    lambda: &DominantWeight,
) -> Result<Arc<IrrepCharacter>, CharsError> {
    check(rs, lambda)?;
    if let Some(hit) = memo().read().expect("memo lock poisoned").get(lambda) {
        return Ok(hit.clone());
    }
    let store = store_slot().read().expect("store lock poisoned").clone();
    let stored = store
        .as_ref()
        .and_then(|s| s.load(lambda))
        .and_then(|character| {
            let dimension = dim_weyl(rs, lambda).ok()?;
            let irrep = IrrepCharacter {
                highest: lambda.clone(),
                character,
                dimension,
            };
            plausible(rs, &irrep).then_some(irrep)
        });
    let irrep = match stored {
        Some(irrep) => irrep,
        None => {
            let irrep = compute_irrep(rs, lambda)?;
            if let Some(s) = &store {
                s.save(lambda, &irrep.character);
            }
            irrep
        }
    };
    let irrep = Arc::new(irrep);
    let mut guard = memo().write().expect("memo lock poisoned");
    Ok(guard.entry(lambda.clone()).or_insert(irrep).clone())
}

/// Convenience wrapper taking a label and Dynkin labels.
pub fn character_of(label: Label, coeffs: &[u32]) -> Result<Arc<IrrepCharacter>, CharsError> {
    let rs = crate::rootsys::system(label)?;
    freudenthal_character(&rs, &DominantWeight::new(label, coeffs)?)
}

/// Weyl denominator `e^rho * prod_{alpha > 0} (1 - e^{-alpha})` expanded as a product.
pub fn weyl_denominator(rs: &RootSystem) -> FormalCharacter {
    let mut acc = FormalCharacter::monomial(rs.rho(), 1);
    for alpha in rs.positive_roots() {
        let mut factor = FormalCharacter::monomial(WeightVector::zero(rs.rank()), 1);
        factor.add_term(-*alpha, -1);
        acc = char_mul(&acc, &factor).expect("ranks agree");
    }
    acc
}

/// `sum_w sign(w) e^{w(lambda + rho)}` over the full Weyl group.
pub fn alternating_numerator(
    rs: &RootSystem,
    lambda: &DominantWeight,
) -> Result<FormalCharacter, CharsError> {
    check(rs, lambda)?;
    let shifted = add_dynkin(&lambda.dynkin(), &rho_dynkin(rs));
    let mut out = FormalCharacter::new(rs.rank());
    for w in &rs.weyl_group().elements {
        out.add_term(rs.from_dynkin(&w.act(&shifted)), w.sign());
    }
    Ok(out)
}

/// Literal check `delta * chi == numerator` by convolution.
pub fn wcf_consistency_full(
    rs: &RootSystem,
    lambda: &DominantWeight,
    chi: &FormalCharacter,
) -> Result<bool, CharsError> {
    let delta = weyl_denominator(rs);
    let numerator = alternating_numerator(rs, lambda)?;
    match dense_product_equals(rs, &delta, chi, &numerator) {
        Some(equal) => Ok(equal),
        None => Ok(char_mul(&delta, chi)? == numerator),
    }
}

/// Largest accumulator used by the dense convolution.
const DENSE_CELLS: usize = 1 << 25;

fn label_terms(rs: &RootSystem, c: &FormalCharacter) -> Option<Vec<(Dynkin, i64)>> {
    c.iter()
        .map(|(w, &m)| rs.dynkin_labels(w).ok().map(|d| (d, m)))
        .collect()
}

/// `a * b == target`, accumulated in a dense box of Dynkin labels; `None` when
/// the box is too large or a weight is off the weight lattice.
fn dense_product_equals(
    rs: &RootSystem,
    a: &FormalCharacter,
    b: &FormalCharacter,
    target: &FormalCharacter,
) -> Option<bool> {
    let r = rs.rank();
    let (a, b, t) = (
        label_terms(rs, a)?,
        label_terms(rs, b)?,
        label_terms(rs, target)?,
    );
    let bounds = |terms: &[(Dynkin, i64)]| {
        let mut lo = [i32::MAX; MAX_RANK];
        let mut hi = [i32::MIN; MAX_RANK];
        for (d, _) in terms {
            for i in 0..r {
                lo[i] = lo[i].min(d[i]);
                hi[i] = hi[i].max(d[i]);
            }
        }
        (lo, hi)
    };
    if a.is_empty() || b.is_empty() {
        return Some(t.is_empty());
    }
    let ((alo, ahi), (blo, bhi)) = (bounds(&a), bounds(&b));
    let mut stride = [0usize; MAX_RANK];
    let mut cells = 1usize;
    for i in 0..r {
        stride[i] = cells;
        cells = cells.checked_mul((ahi[i] - alo[i] + bhi[i] - blo[i] + 1) as usize)?;
        if cells > DENSE_CELLS {
            return None;
        }
    }
    let offsets = |terms: &[(Dynkin, i64)], lo: &Dynkin| -> Vec<(usize, i64)> {
        terms
            .iter()
            .map(|(d, m)| {
                (
                    (0..r).map(|i| (d[i] - lo[i]) as usize * stride[i]).sum(),
                    *m,
                )
            })
            .collect()
    };
    let (oa, ob) = (offsets(&a, &alo), offsets(&b, &blo));
    let mut acc = vec![0i64; cells];
    for &(x, m) in &oa {
        for &(y, k) in &ob {
            acc[x + y] += m * k;
        }
    }
    for (d, m) in &t {
        let mut at = 0usize;
        for i in 0..r {
            let shifted = d[i] - alo[i] - blo[i];
            if shifted < 0 || shifted > ahi[i] - alo[i] + bhi[i] - blo[i] {
                return Some(false);
            }
            at += shifted as usize * stride[i];
        }
        if acc[at] != *m {
            return Some(false);
        }
        acc[at] = 0;
    }
    Some(acc.iter().all(|&x| x == 0))
}

/// Check of the same identity that inspects only the strictly dominant
/// coefficients of `delta * chi`.
///
/// Both sides are alternating once `chi` is Weyl-invariant, so they agree iff
/// their coefficients at `mu + rho` agree for dominant `mu`. When every weight
/// of `chi` lies below `lambda` only `mu <= lambda` can contribute.
pub fn wcf_consistency_reduced(
    rs: &RootSystem,
    lambda: &DominantWeight,
    chi: &FormalCharacter,
) -> Result<bool, CharsError> {
    let r = rs.rank();
    let top = lambda.dynkin();
    if chi.rank() != r {
        return Ok(false);
    }
    for (nu, &c) in chi.iter() {
        for i in 0..r {
            match rs.reflect_ambient(nu, i) {
                Some(image) if chi.get(&image) == c => {}
                _ => return Ok(false),
            }
        }
        let Ok(d) = rs.dynkin_labels(nu) else {
            return Ok(false);
        };
        match rs.root_coefficients_int(&sub_dynkin(&top, &d)) {
            Some(coeffs) if coeffs.iter().all(|&x| x >= 0) => {}
            _ => return Ok(false),
        }
    }

    let rho = rho_dynkin(rs);
    let shifts: Vec<(WeightVector, i64)> = rs
        .weyl_group()
        .elements
        .iter()
        .map(|w| (rs.from_dynkin(&sub_dynkin(&rho, &w.act(&rho))), w.sign()))
        .collect();

    // every dominant mu <= lambda has root coefficients inside lambda's box
    let bound: Vec<i64> = rs
        .root_coefficients(&top)
        .iter()
        .map(|x| x.floor().to_integer())
        .collect();
    let cartan = rs.cartan_matrix();
    let mut c = vec![0i64; r];
    loop {
        let mut mu = top;
        for i in 0..r {
            for j in 0..r {
                mu[j] -= (c[i] * cartan[i][j] as i64) as i32;
            }
        }
        if mu[..r].iter().all(|&x| x >= 0) {
            let base = rs.from_dynkin(&mu);
            let total: i64 = shifts
                .iter()
                .map(|(s, sign)| sign * chi.get(&base.plus(s)))
                .sum();
            if total != i64::from(mu == top) {
                return Ok(false);
            }
        }
        let mut i = 0;
        while i < r {
            c[i] += 1;
            if c[i] <= bound[i] {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    Ok(true)
}

/// Largest `|W| * |chi|` for which the literal convolution is also run.
pub const FULL_WCF_BUDGET: usize = 400_000_000;

/// Verifies the Weyl character formula for `L(lambda)` exactly.
pub fn wcf_consistency(rs: &RootSystem, lambda: &DominantWeight) -> Result<bool, CharsError> {
    let irrep = compute_irrep(rs, lambda)?;
    if !wcf_consistency_reduced(rs, lambda, &irrep.character)? {
        return Ok(false);
    }
    if rs.weyl_group().order() * irrep.character.len() <= FULL_WCF_BUDGET {
        return wcf_consistency_full(rs, lambda, &irrep.character);
    }
    Ok(true)
}
