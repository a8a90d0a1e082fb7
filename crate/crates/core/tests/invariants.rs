//! Structural invariants over the whole catalog.

use proptest::prelude::*;

use splint_core::branch::{branch_oracle, CaseTag};
use splint_core::chars::{character_of, dim_weyl};
use splint_core::rootsys::{system, DominantWeight, Label};
use splint_core::rules::{hexagon_multiplicity, rule_b2_d2, rule_b3_d3, rule_g2_a2, HexagonSpec};
use splint_core::schur::{h_point, pieri_e1, pieri_e2, verify_theorem, SchurIndex};
use splint_core::weightlat::{char_mul, FormalCharacter, LatticeMap, WeightVector};

fn character(rank: usize) -> impl Strategy<Value = FormalCharacter> {
    prop::collection::vec((prop::collection::vec(-4i32..=4, rank), -3i64..=3), 0..6).prop_map(
        move |terms| {
            let mut c = FormalCharacter::new(rank);
            for (w, m) in terms {
                c.add_term(WeightVector::from_doubled(&w), m);
            }
            c
        },
    )
}

fn catalog_weight() -> impl Strategy<Value = DominantWeight> {
    prop::sample::select(Label::catalog()).prop_flat_map(|label| {
        let cap = if label.rank() >= 4 { 1 } else { 3 };
        prop::collection::vec(0u32..=cap, label.rank())
            .prop_map(move |c| DominantWeight::new(label, &c).unwrap())
    })
}

fn dim(label: Label, c: &[u32]) -> u128 {
    dim_weyl(
        &system(label).unwrap(),
        &DominantWeight::new(label, c).unwrap(),
    )
    .unwrap()
}

#[test]
fn root_counts_and_weyl_orders() {
    let table = [
        ("A1", 1, 2),
        ("A2", 3, 6),
        ("A3", 6, 24),
        ("B2", 4, 8),
        ("B3", 9, 48),
        ("B4", 16, 384),
        ("C3", 9, 48),
        ("D2", 2, 4),
        ("D3", 6, 24),
        ("D4", 12, 192),
        ("G2", 6, 12),
        ("F4", 24, 1152),
        ("A1^3", 3, 8),
        ("A1^4", 4, 16),
    ];
    assert_eq!(table.len(), Label::catalog().len());
    for (name, roots, order) in table {
        let rs = system(name.parse().unwrap()).unwrap();
        assert_eq!(rs.positive_roots().len(), roots, "{name}");
        assert_eq!(rs.weyl_group().order(), order, "{name}");
    }
}

#[test]
fn rho_is_half_the_positive_roots() {
    for label in Label::catalog() {
        let rs = system(label).unwrap();
        let mut sum = vec![0i32; rs.rank()];
        for a in rs.positive_roots() {
            for (s, x) in sum.iter_mut().zip(a.doubled()) {
                *s += x;
            }
        }
        let half: Vec<i32> = sum.iter().map(|x| x / 2).collect();
        assert!(sum.iter().all(|x| x % 2 == 0));
        assert_eq!(rs.rho(), WeightVector::from_doubled(&half), "{label}");
    }
}

#[test]
fn weyl_group_preserves_the_form() {
    for label in Label::catalog() {
        let rs = system(label).unwrap();
        let r = rs.rank();
        let basis: Vec<[i32; 4]> = (0..r)
            .map(|i| {
                let mut d = [0; 4];
                d[i] = 1;
                d
            })
            .collect();
        let fw = |d: &[i32; 4]| rs.from_dynkin(&d[..r]);
        for w in &rs.weyl_group().elements {
            for x in &basis {
                for y in &basis {
                    assert_eq!(
                        rs.inner(&fw(&w.act(x)), &fw(&w.act(y))),
                        rs.inner(&fw(x), &fw(y))
                    );
                }
            }
        }
    }
}

#[test]
fn closed_form_dimensions() {
    for a in 0..=6u128 {
        for b in 0..=6u128 {
            let (x, y) = (a as u32, b as u32);
            assert_eq!(
                dim(Label::A(2), &[x, y]),
                (a + 1) * (b + 1) * (a + b + 2) / 2
            );
            assert_eq!(
                dim(Label::G2, &[x, y]),
                (a + 1)
                    * (a + b + 2)
                    * (2 * a + 3 * b + 5)
                    * (a + 2 * b + 3)
                    * (a + 3 * b + 4)
                    * (b + 1)
                    / 120
            );
            assert_eq!(
                dim(Label::B(2), &[x, y]),
                (a + 1) * (b + 1) * (a + b + 2) * (2 * a + b + 3) / 6
            );
        }
    }
    for a in 0..=3u128 {
        for b in 0..=3u128 {
            for c in 0..=3u128 {
                let (aa, bb, cc) = (a + 1, b + 1, c + 1);
                let want = aa
                    * bb
                    * cc
                    * (aa + bb)
                    * (bb + cc)
                    * (aa + bb + cc)
                    * (bb + 2 * cc)
                    * (aa + bb + 2 * cc)
                    * (aa + 2 * bb + 2 * cc)
                    / 720;
                let w = [a as u32, b as u32, c as u32];
                assert_eq!(dim(Label::C(3), &w), want);
                assert_eq!(dim(Label::A1Pow(3), &w), aa * bb * cc);
            }
        }
    }
}

#[test]
fn coefficient_sums() {
    for k in 0..=6u32 {
        for l in 0..=6u32 {
            let spec = HexagonSpec::new(k, l);
            let total: u64 = (0..=(k + l) as i64)
                .flat_map(|a| (0..=(k + l) as i64).map(move |b| (a, b)))
                .map(|(a, b)| hexagon_multiplicity(&spec, a, b))
                .sum();
            let (k6, l6) = (k as u64, l as u64);
            assert_eq!(total, (k6 + 1) * (l6 + 1) * (k6 + l6 + 2) / 2);
            assert_eq!(rule_g2_a2(k, l).coefficient_sum(), total);
            assert_eq!(rule_b2_d2(k, l).coefficient_sum(), (k6 + 1) * (l6 + 1));
        }
    }
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            for c in 0..=3u32 {
                let want = ((a + 1) * (b + 1) * (c + 1)) as u64;
                assert_eq!(rule_b3_d3(a, b, c).coefficient_sum(), want);
            }
        }
    }
}

#[test]
fn h_point_is_a_pieri_difference() {
    for a in 0..=6 {
        for b in 0..=6 {
            let s = SchurIndex::new(a + b, a).unwrap();
            let mut want = pieri_e2(s);
            want.add_sum(&pieri_e1(s), -1);
            assert_eq!(h_point(a, b), want, "({a},{b})");
        }
    }
}

proptest! {
    #[test]
    fn convolution_commutes(a in character(2), b in character(2)) {
        prop_assert_eq!(char_mul(&a, &b).unwrap(), char_mul(&b, &a).unwrap());
    }

    #[test]
    fn convolution_associates(a in character(2), b in character(2), c in character(2)) {
        let left = char_mul(&char_mul(&a, &b).unwrap(), &c).unwrap();
        let right = char_mul(&a, &char_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn convolution_multiplies_mass(a in character(3), b in character(3)) {
        prop_assert_eq!(char_mul(&a, &b).unwrap().mass(), a.mass() * b.mass());
    }

    #[test]
    fn invertible_maps_round_trip(
        m in prop::array::uniform4(-3i64..=3),
        c in character(2),
    ) {
        prop_assume!(m[0] * m[3] - m[1] * m[2] != 0);
        let map = LatticeMap::from_integers(&[vec![m[0], m[1]], vec![m[2], m[3]]], "x", "y").unwrap();
        let image = map.apply_character(&c).unwrap();
        prop_assert_eq!(image.mass(), c.mass());
        prop_assert_eq!(map.inverse().unwrap().apply_character(&image).unwrap(), c);
    }

    #[test]
    fn lattice_round_trip(w in catalog_weight()) {
        let rs = system(w.system).unwrap();
        let v = rs.to_lattice(&w).unwrap();
        prop_assert!(rs.is_dominant(&v));
        prop_assert_eq!(rs.from_lattice(&v).unwrap(), w);
    }

    #[test]
    fn freudenthal_mass_and_weyl_symmetry(w in catalog_weight()) {
        let rs = system(w.system).unwrap();
        let chi = character_of(w.system, &w.coeffs).unwrap();
        prop_assert_eq!(chi.character.mass() as u128, dim_weyl(&rs, &w).unwrap());
        prop_assert_eq!(chi.dimension, dim_weyl(&rs, &w).unwrap());
        prop_assert_eq!(chi.character.get(&rs.to_lattice(&w).unwrap()), 1);
        let r = rs.rank();
        for (mu, &m) in chi.character.iter() {
            let labels = rs.dynkin_labels(mu).unwrap();
            for g in rs.weyl_group().elements.iter().take(8) {
                let image = rs.from_dynkin(&g.act(&labels)[..r]);
                prop_assert_eq!(chi.character.get(&image), m);
            }
        }
    }

    #[test]
    fn restriction_conserves_dimension(k in 0u32..=3, l in 0u32..=3) {
        let res = branch_oracle(CaseTag::IV, &DominantWeight::new(Label::G2, &[k, l]).unwrap()).unwrap();
        prop_assert!(res.dim_check().unwrap());
        prop_assert_eq!(res.summands, rule_g2_a2(k, l).summands);
    }

    #[test]
    fn schur_theorem(k in 0u32..=6, l in 0u32..=6) {
        prop_assert!(verify_theorem(k, l));
    }
}
