// Matrix entries are addressed by label index throughout.
#![allow(clippy::needless_range_loop)]

mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rtinv::invariants::{self, TorusKnotSpec};
use rtinv::lie::{CartanType, RootSystem};
use rtinv::linkmodel::{
    faces, normalized_shadow_with, parse_link, ShadowMethod, DEFAULT_TERM_BUDGET,
};
use rtinv::modular::{level_data, LevelData};

fn root_system(name: &str) -> RootSystem {
    let ct: CartanType = name.parse().expect("valid Cartan type");
    RootSystem::new(ct).unwrap()
}

fn a1(k: i64) -> LevelData {
    level_data(&root_system("A1"), k).unwrap()
}

#[test]
fn a1_level_4_s_matrix_matches_closed_form() {
    let ld = a1(4);
    let half = 0.5;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let want = [[half, r, half], [r, 0.0, -r], [half, -r, half]];
    for i in 0..3 {
        for j in 0..3 {
            assert!((ld.s(i, j).re - want[i][j]).abs() < 1e-12);
            assert!((ld.s(i, j).re - common::a1_s(4, i as i64, j as i64)).abs() < 1e-12);
        }
    }
}

#[test]
fn a1_fiber_links_reproduce_clebsch_gordan() {
    for k in 3..=7 {
        let ld = a1(k);
        for a in 0..=k - 2 {
            for b in 0..=k - 2 {
                for c in 0..=k - 2 {
                    let z = invariants::z_fiber_link(&ld, 0, &[vec![a], vec![b], vec![c]]).unwrap();
                    let want = common::a1_fusion(k, a, b, c) as f64;
                    assert!((z.value.re - want).abs() < 1e-9 && z.value.im.abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn torus_bracket_with_fundamental_color_matches_lattice_sum() {
    let ld = a1(4);
    let spec = TorusKnotSpec::new(2, 3, vec![1]).unwrap();
    let b = invariants::bracket_torus_knot_s2s1(&ld, &spec)
        .unwrap()
        .value;
    assert!((b - common::a1_lattice_sum(4, 2, 3, 1)).norm() < 1e-10);
}

#[test]
fn text_round_trip_preserves_shadow_value() {
    let ld = level_data(&root_system("A2"), 5).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for genus in 0..3 {
        let mut link = common::random_forest(&mut rng, genus, 3, 2);
        for l in &mut link.loops {
            l.color = vec![1, 0];
        }
        let parsed = parse_link(&link.to_text()).unwrap();
        assert_eq!(parsed, link);
        let a = normalized_shadow_with(&ld, &link, ShadowMethod::Enumerate, DEFAULT_TERM_BUDGET)
            .unwrap();
        let b = normalized_shadow_with(&ld, &parsed, ShadowMethod::Contract, DEFAULT_TERM_BUDGET)
            .unwrap();
        assert!((a - b).norm() < 1e-8, "{a} vs {b}");
    }
}

proptest! {
    #[test]
    fn random_forests_have_consistent_faces(seed in any::<u64>(), genus in 0u32..=3) {
        let mut rng = StdRng::seed_from_u64(seed);
        let link = common::random_forest(&mut rng, genus, 12, 1);
        let fd = faces(&link).unwrap();
        prop_assert_eq!(fd.faces.len(), link.loops.len() + 1);
        prop_assert_eq!(fd.total_chi(), 2 - 2 * genus as i64);
        prop_assert_eq!(fd.total_gleam(), 0);
    }

    #[test]
    fn lattice_sum_agrees_for_random_knots(k in 4i64..=7, p in 1i64..=4, q in -5i64..=5, seed in 0i64..100) {
        prop_assume!(q == 0 || num_gcd(p, q) == 1);
        let color = seed % (k - 1);
        let ld = a1(k);
        let spec = TorusKnotSpec::new(p, q, vec![color]).unwrap();
        let b = invariants::bracket_torus_knot_s2s1(&ld, &spec).unwrap().value;
        let oracle = common::a1_lattice_sum(k, p, q, color);
        prop_assert!((b - oracle).norm() < 1e-8, "{} vs {}", b, oracle);
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}
