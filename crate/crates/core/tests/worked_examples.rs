//! Worked examples, checked against hand expansions in `x1, x2, x3` with `x1 x2 x3 = 1`.

use std::collections::BTreeMap;

use splint_core::branch::{branch_oracle, CaseTag};
use splint_core::chars::{character_of, dim_weyl, wcf_consistency};
use splint_core::rootsys::{system, DominantWeight, Label};
use splint_core::rules::{f4_d4_example_results, rule_g2_a2, verify_rule};
use splint_core::schur::{
    a2_character_to_schur, schur_sum_to_a2_character, theorem_lhs, SchurIndex, SchurSum,
};
use splint_core::weightlat::{char_add, char_mul, FormalCharacter, WeightVector};

/// Laurent polynomial in `x1, x2, x3`, keyed by the exponents of `x1, x2` after
/// eliminating `x3`.
type Poly = BTreeMap<(i32, i32), i64>;

fn mono(e: [i32; 3], c: i64) -> Poly {
    Poly::from([((e[0] - e[2], e[1] - e[2]), c)])
}

fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(*k).or_insert(0) += v;
    }
    out.retain(|_, v| *v != 0);
    out
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for ((a1, a2), x) in a {
        for ((b1, b2), y) in b {
            *out.entry((a1 + b1, a2 + b2)).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn binomial(p: [i32; 3], q: [i32; 3]) -> Poly {
    add(&mono(p, 1), &mono(q, -1))
}

fn from_character(c: &FormalCharacter) -> Poly {
    c.iter()
        .map(|(w, &m)| {
            let d = w.doubled();
            assert!(
                d.iter().all(|x| x % 2 == 0),
                "L-coordinates are integral here"
            );
            ((d[0] / 2, d[1] / 2), m)
        })
        .collect()
}

fn delta_a2() -> Poly {
    let x1 = [1, 0, 0];
    let x2 = [0, 1, 0];
    let x3 = [0, 0, 1];
    mul(
        &mul(&binomial(x1, x2), &binomial(x1, x3)),
        &binomial(x2, x3),
    )
}

fn delta_g2() -> Poly {
    let one = [0, 0, 0];
    let mut d = delta_a2();
    for x in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        d = mul(&d, &binomial(one, x));
    }
    d
}

/// Six-term numerator `A_{alpha,beta}` for `A2`.
fn numerator_a2(alpha: i32, beta: i32) -> Poly {
    let (p, q) = (alpha + beta + 2, alpha + 1);
    let mut out = Poly::new();
    for (e, c) in [
        ([p, q, 0], 1),
        ([q, 0, p], 1),
        ([0, p, q], 1),
        ([p, 0, q], -1),
        ([0, q, p], -1),
        ([q, p, 0], -1),
    ] {
        out = add(&out, &mono(e, c));
    }
    out
}

/// Twelve-term numerator `A_{k,l}` for `G2`.
fn numerator_g2(k: i32, l: i32) -> Poly {
    let (p, q) = (k + 2 * l + 3, k + l + 2);
    let mut out = Poly::new();
    for s in [1, -1] {
        let (p, q) = (s * p, s * q);
        for (e, c) in [
            ([p, q, 0], 1),
            ([q, 0, p], 1),
            ([0, p, q], 1),
            ([p, 0, q], -1),
            ([0, q, p], -1),
            ([q, p, 0], -1),
        ] {
            out = add(&out, &mono(e, c));
        }
    }
    out
}

fn chi(label: Label, coeffs: &[u32]) -> FormalCharacter {
    character_of(label, coeffs).unwrap().character.clone()
}

fn summands(label: Label, r: &BTreeMap<DominantWeight, u64>) -> Vec<(Vec<u32>, u64)> {
    r.iter()
        .inspect(|(nu, _)| assert_eq!(nu.system, label))
        .map(|(nu, &m)| (nu.coeffs.clone(), m))
        .collect()
}

#[test]
fn a2_numerator_is_denominator_times_character() {
    for alpha in 0..4 {
        for beta in 0..4 {
            let c = from_character(&chi(Label::A(2), &[alpha, beta]));
            assert_eq!(
                mul(&delta_a2(), &c),
                numerator_a2(alpha as i32, beta as i32),
                "({alpha},{beta})"
            );
        }
    }
}

#[test]
fn g2_numerator_is_denominator_times_character() {
    for k in 0..3 {
        for l in 0..3 {
            let c = from_character(&chi(Label::G2, &[k, l]));
            assert_eq!(
                mul(&delta_g2(), &c),
                numerator_g2(k as i32, l as i32),
                "({k},{l})"
            );
        }
    }
    assert_eq!(numerator_g2(0, 1).len(), 12);
}

#[test]
fn g2_adjoint_polynomial() {
    // x^2y + y^2z + z^2x + xy^2 + yz^2 + zx^2 + xy + yz + zx + x + y + z + 2
    let terms: [[i32; 3]; 12] = [
        [2, 1, 0],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [0, 1, 2],
        [2, 0, 1],
        [1, 1, 0],
        [0, 1, 1],
        [1, 0, 1],
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
    ];
    let mut want = mono([0, 0, 0], 2);
    for e in terms {
        want = add(&want, &mono(e, 1));
    }
    let adjoint = chi(Label::G2, &[0, 1]);
    assert_eq!(from_character(&adjoint), want);
    assert_eq!(adjoint.mass(), 14);

    let mut sum = FormalCharacter::new(2);
    for nu in [[0, 1], [1, 0], [1, 1]] {
        sum = char_add(&sum, &chi(Label::A(2), &nu)).unwrap();
    }
    assert_eq!(sum, adjoint);
    assert_eq!(sum.len(), 13);
}

#[test]
fn fundamental_weights_and_rho() {
    let g2 = system(Label::G2).unwrap();
    assert_eq!(g2.rho(), WeightVector::from_ints(&[3, 2]));
    assert_eq!(
        g2.fundamental_weights()[1],
        WeightVector::from_ints(&[2, 1])
    );
    assert_eq!(g2.positive_roots().len(), 6);
    let a2 = system(Label::A(2)).unwrap();
    assert_eq!(
        a2.fundamental_weights(),
        &[
            WeightVector::from_ints(&[1, 1]),
            WeightVector::from_ints(&[1, 0])
        ]
    );
    assert_eq!(a2.rho(), WeightVector::from_ints(&[2, 1]));
    let b2 = system(Label::B(2)).unwrap();
    // e1 = L1 + L2 and e2 = L1, so 2L1 + (3/2)L2 = (3/2)e1 + (1/2)e2
    assert_eq!(b2.rho(), WeightVector::from_doubled(&[3, 1]));
    // (alpha + beta) L1 + alpha L2
    assert_eq!(
        a2.to_lattice(&DominantWeight::new(Label::A(2), &[1, 1]).unwrap())
            .unwrap(),
        WeightVector::from_ints(&[2, 1])
    );
    assert_eq!(
        g2.from_lattice(&WeightVector::from_ints(&[2, 1]))
            .unwrap()
            .coeffs,
        vec![0, 1]
    );
    assert!(a2.from_lattice(&WeightVector::from_ints(&[1, -1])).is_err());
}

#[test]
fn weyl_group_orders() {
    for (label, order) in [(Label::A(2), 6), (Label::G2, 12), (Label::F4, 1152)] {
        assert_eq!(system(label).unwrap().weyl_group().order(), order);
    }
}

#[test]
fn dimension_examples() {
    let d = |label, c: &[u32]| {
        dim_weyl(
            &system(label).unwrap(),
            &DominantWeight::new(label, c).unwrap(),
        )
        .unwrap()
    };
    assert_eq!(d(Label::A(2), &[2, 2]), 27);
    assert_eq!(d(Label::G2, &[1, 1]), 64);
    assert_eq!(d(Label::G2, &[3, 2]), 1547);
    assert_eq!(d(Label::F4, &[0, 0, 0, 1]), 26);
    assert_eq!(chi(Label::B(2), &[1, 1]).mass(), 16);
}

#[test]
fn wcf_examples() {
    for (label, c) in [
        (Label::G2, vec![0, 1]),
        (Label::A(2), vec![0, 0]),
        (Label::F4, vec![0, 0, 0, 1]),
    ] {
        let rs = system(label).unwrap();
        assert!(wcf_consistency(&rs, &DominantWeight::new(label, &c).unwrap()).unwrap());
    }
}

#[test]
fn g2_restriction_example() {
    let lambda = DominantWeight::new(Label::G2, &[0, 1]).unwrap();
    let res = branch_oracle(CaseTag::IV, &lambda).unwrap();
    assert_eq!(
        summands(Label::A(2), &res.summands),
        vec![(vec![0, 1], 1), (vec![1, 0], 1), (vec![1, 1], 1)]
    );
    assert_eq!(res.coefficient_sum(), 3);
}

/// Independent peeling of the hexagon: each ring of the `(k,l)` hexagon adds one.
fn peeled_hexagon(k: i64, l: i64) -> BTreeMap<(i64, i64), u64> {
    let inside = |a: i64, b: i64, s: i64| {
        a >= s
            && b >= s
            && a <= k + l - s
            && b <= k + l - s
            && a + b >= l + s
            && a + b <= k + 2 * l - s
    };
    let mut out = BTreeMap::new();
    for s in 0..=k.min(l) {
        for a in 0..=k + l {
            for b in 0..=k + l {
                if inside(a, b, s) {
                    *out.entry((a, b)).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

#[test]
fn three_two_hexagon_multiset() {
    let rows: [[u64; 7]; 7] = [
        [0, 0, 1, 1, 1, 1, 0],
        [0, 1, 2, 2, 2, 1, 0],
        [1, 2, 3, 3, 2, 1, 0],
        [1, 2, 3, 2, 1, 0, 0],
        [1, 2, 2, 1, 0, 0, 0],
        [1, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
    ];
    let lambda = DominantWeight::new(Label::G2, &[3, 2]).unwrap();
    let oracle = branch_oracle(CaseTag::IV, &lambda).unwrap();
    let mut grid = [[0u64; 7]; 7];
    for (nu, &m) in &oracle.summands {
        grid[nu.coeffs[1] as usize][nu.coeffs[0] as usize] = m;
    }
    assert_eq!(grid, rows);
    assert_eq!(oracle.coefficient_sum(), 42);
    assert_eq!(oracle.dimension_sum().unwrap(), 1547);
    let rule = rule_g2_a2(3, 2);
    assert_eq!(rule.summands, oracle.summands);
    for k in 0..5 {
        for l in 0..5 {
            let peeled: BTreeMap<(i64, i64), u64> = rule_g2_a2(k, l)
                .summands
                .iter()
                .map(|(nu, &m)| ((nu.coeffs[0] as i64, nu.coeffs[1] as i64), m))
                .collect();
            assert_eq!(peeled, peeled_hexagon(k as i64, l as i64), "({k},{l})");
        }
    }
}

#[test]
fn g2_series_on_triangle() {
    for k in 0..4u32 {
        let res = rule_g2_a2(k, 0);
        let want: Vec<(Vec<u32>, u64)> = (0..=k)
            .flat_map(|a| (0..=k - a).map(move |b| (vec![a, b], 1)))
            .collect();
        let mut got = summands(Label::A(2), &res.summands);
        got.sort();
        let mut want = want;
        want.sort();
        assert_eq!(got, want);
    }
}

#[test]
fn b2_proposition_at_one_one() {
    let lambda = DominantWeight::new(Label::B(2), &[1, 1]).unwrap();
    let report = verify_rule(CaseTag::II(2), &lambda).unwrap();
    assert!(report.equal);
    assert_eq!(
        summands(Label::D(2), &report.oracle_result.summands),
        vec![
            (vec![0, 1], 1),
            (vec![1, 0], 1),
            (vec![1, 2], 1),
            (vec![2, 1], 1)
        ]
    );
    assert_eq!(report.oracle_result.dimension_sum().unwrap(), 16);
}

#[test]
fn c3_examples() {
    let check = |c: [u32; 3], want: Vec<(Vec<u32>, u64)>| {
        let lambda = DominantWeight::new(Label::C(3), &c).unwrap();
        let report = verify_rule(CaseTag::III, &lambda).unwrap();
        assert!(report.equal, "{c:?}");
        assert_eq!(
            summands(Label::A1Pow(3), &report.rule_result.summands),
            want
        );
        assert!(report.oracle_result.dim_check().unwrap());
    };
    check(
        [1, 0, 0],
        vec![(vec![0, 0, 1], 1), (vec![0, 1, 0], 1), (vec![1, 0, 0], 1)],
    );
    check(
        [0, 1, 0],
        vec![
            (vec![0, 0, 0], 2),
            (vec![0, 1, 1], 1),
            (vec![1, 0, 1], 1),
            (vec![1, 1, 0], 1),
        ],
    );
    check(
        [0, 0, 1],
        vec![
            (vec![0, 0, 1], 1),
            (vec![0, 1, 0], 1),
            (vec![1, 0, 0], 1),
            (vec![1, 1, 1], 1),
        ],
    );
}

#[test]
fn f4_examples_match_oracle() {
    for want in f4_d4_example_results() {
        let got = branch_oracle(CaseTag::VF4D4, &want.lambda).unwrap();
        assert_eq!(got.summands, want.summands, "{}", want.lambda);
        assert!(got.dim_check().unwrap());
    }
}

#[test]
fn schur_bridge_matches_characters() {
    // restriction of the G2 character times (s_110 - s_100) is the theorem's left side
    for (k, l) in [(0, 0), (1, 0), (0, 1), (2, 1), (1, 2)] {
        let restricted = chi(Label::G2, &[k, l]);
        let mut factor = SchurSum::new();
        factor.add(SchurIndex::new(1, 1).unwrap(), 1);
        factor.add(SchurIndex::new(1, 0).unwrap(), -1);
        let left = char_mul(&restricted, &schur_sum_to_a2_character(&factor)).unwrap();
        let lhs = theorem_lhs(k, l);
        assert_eq!(left, schur_sum_to_a2_character(&lhs), "({k},{l})");
        assert_eq!(a2_character_to_schur(&left).unwrap(), lhs);
    }
}
