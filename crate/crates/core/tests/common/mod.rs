//! Independent reference implementations used by the integration tests.
//!
//! Everything here is written from closed forms for SU(2) or by direct
//! enumeration, sharing no code with the library beyond its public types.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use rtinv::linkmodel::{LoopSpec, NodeRef, SurfaceLink};

/// `S_{nm} = √(2/k) sin(π(n+1)(m+1)/k)` for SU(2) at shifted level k.
pub fn a1_s(k: i64, n: i64, m: i64) -> f64 {
    (2.0 / k as f64).sqrt() * (PI * ((n + 1) * (m + 1)) as f64 / k as f64).sin()
}

/// The SU(2) character of spin n/2 at `exp((m+1)/k)`:
/// `sin(π(n+1)(m+1)/k) / sin(π(m+1)/k)`.
pub fn a1_character(k: i64, n: i64, m: i64) -> f64 {
    let x = PI * (m + 1) as f64 / k as f64;
    ((n + 1) as f64 * x).sin() / x.sin()
}

/// Truncated Clebsch-Gordan rule: `N^c_{ab} = 1` iff
/// `|a−b| ≤ c ≤ min(a+b, 2(k−2)−a−b)` and `a+b+c` is even.
pub fn a1_fusion(k: i64, a: i64, b: i64, c: i64) -> i64 {
    let upper = (a + b).min(2 * (k - 2) - a - b);
    let ok = (a - b).abs() <= c && c <= upper && (a + b + c) % 2 == 0;
    ok as i64
}

/// Weight multiplicity of `jω` in the SU(2) irrep of highest weight `nω`.
fn a1_mult(n: i64, j: i64) -> i64 {
    (j.abs() <= n && (n - j) % 2 == 0) as i64
}

/// `Π_{α>0} 2 sin(π⟨α, b⟩)` for SU(2), with `⟨α, b⟩ = x`.
fn a1_det_half(x: f64) -> f64 {
    2.0 * (PI * x).sin()
}

fn is_integer(num: i64, den: i64) -> bool {
    num.rem_euclid(den) == 0
}

/// The unnormalized double lattice sum for the (p,q) torus knot colored nω
/// in S²×S¹:
///
/// `Σ_{α0 ∈ Λ ∩ kQ} Σ_{α1 ∈ Λ} m(α1) 1_reg(B1) 1_reg(B2) det½(B1) det½(B2)
///   exp(πiq⟨α1, B1+B2⟩)`
///
/// with `B1 = α0/k`, `B2 = (α0 − pα1)/k`, Q the half-open unit cell of the
/// coroot lattice. For SU(2), α = 2ω, ⟨ω,ω⟩ = 1/2, α0 = a·ω with
/// `a ∈ [0, 2k)` and α1 = j·ω.
fn a1_lattice_sum_raw(k: i64, p: i64, q: i64, n: i64) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for a in 0..2 * k {
        for j in -n..=n {
            let m = a1_mult(n, j);
            if m == 0 {
                continue;
            }
            // ⟨α, B1⟩ = a/k, ⟨α, B2⟩ = (a − pj)/k
            let b1 = a;
            let b2 = a - p * j;
            if is_integer(b1, k) || is_integer(b2, k) {
                continue;
            }
            let det = a1_det_half(b1 as f64 / k as f64) * a1_det_half(b2 as f64 / k as f64);
            // ⟨jω, (a + a − pj)ω/k⟩ = j(2a − pj)/(2k)
            let phase = PI * (q * j * (2 * a - p * j)) as f64 / (2 * k) as f64;
            total += Complex64::from_polar(m as f64 * det, phase);
        }
    }
    total
}

/// The lattice sum normalized by its value on the empty link.
pub fn a1_lattice_sum(k: i64, p: i64, q: i64, n: i64) -> Complex64 {
    a1_lattice_sum_raw(k, p, q, n) / a1_lattice_sum_raw(k, 1, 0, 0)
}

/// A random nesting forest of at most `max_loops` loops on Σ_g. Parents are
/// drawn among earlier loops, then the list is shuffled so that children
/// may precede their parents.
pub fn random_forest(rng: &mut StdRng, genus: u32, max_loops: usize, rank: usize) -> SurfaceLink {
    let n = rng.gen_range(0..=max_loops);
    let mut loops: Vec<LoopSpec> = (0..n)
        .map(|i| {
            let parent = if i == 0 || rng.gen_bool(0.4) {
                NodeRef::Outer
            } else {
                NodeRef::Loop(format!("l{}", rng.gen_range(0..i)))
            };
            LoopSpec {
                id: format!("l{i}"),
                parent,
                winding: rng.gen_range(-4..=4),
                color: (0..rank).map(|_| rng.gen_range(0..=2)).collect(),
                inner_is_plus: rng.gen_bool(0.5),
            }
        })
        .collect();
    loops.shuffle(rng);
    let genus_face = match rng.gen_range(0..=n) {
        0 => NodeRef::Outer,
        i => NodeRef::Loop(format!("l{}", i - 1)),
    };
    SurfaceLink {
        genus,
        loops,
        genus_face,
    }
}
