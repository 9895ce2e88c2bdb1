//! Closed-form invariants: fiber links in Σ×S¹ (generalized Verlinde sums),
//! Verlinde dimensions, torus knots in S²×S¹ (with and without a colored
//! fiber), the S³ value of torus knots and the surgery cross-check between
//! the two.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;

use crate::affine::{contributions_from, rosso_jones_support};
use crate::error::{Error, Result};
use crate::lie::{fmt_dynkin, Weight, Q};
use crate::modular::LevelData;
use crate::weights::multiplicities_dynkin;

/// Which normalization a value was computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// The S₀₀ convention, in which `Z(S²×S¹) = 1`.
    RawS00,
    /// Divided by the invariant of the empty link in the same manifold.
    Bracket,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantValue {
    pub value: Complex64,
    pub normalization: Normalization,
}

/// A torus knot with winding numbers (p, q) carrying a color λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusKnotSpec {
    p: i64,
    q: i64,
    color: Vec<i64>,
}

impl TorusKnotSpec {
    /// `p ≥ 1`, and `gcd(p, q) = 1` whenever `q ≠ 0`; `color` is dominant in
    /// Dynkin coordinates.
    pub fn new(p: i64, q: i64, color: Vec<i64>) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidKnot(format!("p = {p} must be positive")));
        }
        if q != 0 && p.gcd(&q) != 1 {
            return Err(Error::InvalidKnot(format!(
                "p = {p} and q = {q} are not coprime"
            )));
        }
        if color.iter().any(|&c| c < 0) {
            return Err(Error::NotDominantIntegral(fmt_dynkin(&color)));
        }
        Ok(TorusKnotSpec { p, q, color })
    }

    pub fn from_weight(ld: &LevelData, p: i64, q: i64, color: &Weight) -> Result<Self> {
        let a = ld
            .rs()
            .integral_dynkin(color)
            .ok_or_else(|| Error::NotDominantIntegral(color.to_string()))?;
        TorusKnotSpec::new(p, q, a)
    }

    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn color(&self) -> &[i64] {
        &self.color
    }
}

fn check_rank(ld: &LevelData, a: &[i64]) -> Result<usize> {
    if a.len() != ld.rs().rank() {
        return Err(Error::NotInLevelSet {
            weight: fmt_dynkin(a),
            k: ld.k(),
        });
    }
    ld.label_index(a)
}

/// `Σ_λ (Π_i S_{λμ_i}/S_{λ0}) S_{λ0}^{2−2g}`: colored fiber links in Σ_g×S¹.
pub fn z_fiber_link(ld: &LevelData, genus: u32, colors: &[Vec<i64>]) -> Result<InvariantValue> {
    let idx = colors
        .iter()
        .map(|c| check_rank(ld, c))
        .collect::<Result<Vec<_>>>()?;
    let chi = 2 - 2 * genus as i32;
    let mut acc = Complex64::zero();
    for l in 0..ld.len() {
        let s0 = ld.s(l, 0);
        let mut term = s0.powi(chi);
        for &m in &idx {
            term *= ld.s(l, m) / s0;
        }
        acc += term;
    }
    Ok(InvariantValue {
        value: acc,
        normalization: Normalization::RawS00,
    })
}

/// `dim V_{Σ_g} = Σ_λ S_{λ0}^{2−2g}`, rounded; the rounding residual must
/// stay below 1e−6.
pub fn verlinde_dim(ld: &LevelData, genus: u32) -> Result<i64> {
    let chi = 2 - 2 * genus as i32;
    let total: f64 = (0..ld.len()).map(|l| ld.s(l, 0).re.powi(chi)).sum();
    let rounded = total.round();
    let residual = (total - rounded).abs() / rounded.abs().max(1.0);
    if residual >= 1e-6 {
        return Err(Error::Numerical {
            what: format!("Verlinde dimension at genus {genus}"),
            residual,
            tolerance: 1e-6,
        });
    }
    Ok(rounded as i64)
}

/// Per-η2 coefficients `A(η2) = Σ_{η1,τ} m^{η1η2}_{λ,p}(τ) d_{η1} θ_{η1}^{q/p} θ_{τ∗η2}^{−q/p}`.
fn torus_coefficients(ld: &LevelData, spec: &TorusKnotSpec) -> Result<Vec<Complex64>> {
    check_rank(ld, spec.color())?;
    let table = multiplicities_dynkin(ld.rs(), spec.color())?;
    let r = Q::new(spec.q, spec.p);
    let n = ld.len();
    let parts = ld.exec().map_range(n, |e1| {
        let a1 = &ld.labels()[e1];
        let lead = ld.theta_pow_dynkin(a1, r) * ld.qdim(e1);
        let mut local: Vec<(usize, Complex64)> = Vec::new();
        for (e2, c) in contributions_from(ld.rs(), ld.k(), &table, spec.p, a1) {
            let j = ld.index_of(&e2).expect("folded regular weights are labels");
            local.push((
                j,
                lead * ld.theta_pow_dynkin(&c.tau_star_eta2, -r) * c.value as f64,
            ));
        }
        local
    });
    let mut coeff = vec![Complex64::zero(); n];
    for part in parts {
        for (j, z) in part {
            coeff[j] += z;
        }
    }
    Ok(coeff)
}

/// `⟨T(p,q)⟩` in S²×S¹:
/// `S₀₀² Σ_{η1,η2} Σ_τ m^{η1η2}_{λ,p}(τ) d_{η1} d_{η2} θ_{η1}^{q/p} θ_{τ∗η2}^{−q/p}`.
pub fn bracket_torus_knot_s2s1(ld: &LevelData, spec: &TorusKnotSpec) -> Result<InvariantValue> {
    let coeff = torus_coefficients(ld, spec)?;
    let s00 = ld.s00();
    let sum = coeff
        .iter()
        .enumerate()
        .fold(Complex64::zero(), |acc, (j, a)| acc + a * ld.qdim(j));
    Ok(InvariantValue {
        value: sum * (s00 * s00),
        normalization: Normalization::Bracket,
    })
}

fn fiber_from_coefficients(ld: &LevelData, coeff: &[Complex64], alpha: usize) -> Complex64 {
    let sum = coeff
        .iter()
        .enumerate()
        .fold(Complex64::zero(), |acc, (j, a)| acc + a * ld.s(alpha, j));
    sum * ld.s00()
}

/// The torus knot together with a fiber colored α:
/// `S₀₀ Σ m^{η1η2}_{λ,p}(τ) d_{η1} S_{αη2} θ_{η1}^{q/p} θ_{τ∗η2}^{−q/p}`.
pub fn bracket_torus_knot_with_fiber(
    ld: &LevelData,
    spec: &TorusKnotSpec,
    fiber_color: &[i64],
) -> Result<InvariantValue> {
    let alpha = check_rank(ld, fiber_color)?;
    let coeff = torus_coefficients(ld, spec)?;
    Ok(InvariantValue {
        value: fiber_from_coefficients(ld, &coeff, alpha),
        normalization: Normalization::Bracket,
    })
}

/// Nonzero `c^μ_{λ,p}`.
pub fn rosso_jones_coefficients(
    ld: &LevelData,
    spec: &TorusKnotSpec,
) -> Result<BTreeMap<Vec<i64>, i64>> {
    rosso_jones_support(ld.rs(), spec.color(), spec.p, ld.weyl_cap())
}

/// `Z(S³, T(p,q)) = S₀₀ Σ_μ c^μ_{λ,p} d_μ θ_μ^{q/p}` over the finite support of c,
/// with d_μ and θ_μ from their closed formulas for every dominant μ.
pub fn z_s3_torus_knot(ld: &LevelData, spec: &TorusKnotSpec) -> Result<InvariantValue> {
    let support = rosso_jones_coefficients(ld, spec)?;
    let r = Q::new(spec.q, spec.p);
    let mut acc = Complex64::zero();
    for (mu, c) in &support {
        acc += ld.theta_pow_dynkin(mu, r) * (ld.qdim_formula(mu) * *c as f64);
    }
    Ok(InvariantValue {
        value: acc * ld.s00(),
        normalization: Normalization::RawS00,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurgeryReport {
    /// `Σ_α S_{α0} · bracket_with_fiber(α)`.
    pub surgery: Complex64,
    /// `z_s3_torus_knot`.
    pub rosso_jones: Complex64,
    pub residual: f64,
    /// Whether the level is large enough for the two sides to agree: the
    /// support of c lies in Λ₊^k and every τ contributing at η2 = 0 is a
    /// finite Weyl group element.
    pub precondition_holds: bool,
}

/// Compares the surgery presentation of S³ against the Rosso-Jones value.
pub fn surgery_check(ld: &LevelData, spec: &TorusKnotSpec) -> Result<SurgeryReport> {
    let coeff = torus_coefficients(ld, spec)?;
    let n = ld.len();
    let fibers = ld
        .exec()
        .map_range(n, |alpha| fiber_from_coefficients(ld, &coeff, alpha));
    let surgery = fibers
        .iter()
        .enumerate()
        .fold(Complex64::zero(), |acc, (a, z)| acc + z * ld.s(a, 0));
    let rosso_jones = z_s3_torus_knot(ld, spec)?.value;

    let support = rosso_jones_coefficients(ld, spec)?;
    let support_fits = support.keys().all(|mu| ld.index_of(mu).is_some());
    let table = multiplicities_dynkin(ld.rs(), spec.color())?;
    let rho = ld.rs().rho_dynkin();
    let zero = vec![0i64; ld.rs().rank()];
    let finite_tau = ld.labels().iter().all(|a1| {
        contributions_from(ld.rs(), ld.k(), &table, spec.p, a1)
            .into_iter()
            .filter(|(e2, _)| *e2 == zero)
            .all(|(_, c)| {
                let shifted: Vec<i64> = c.tau_star_eta2.iter().map(|x| x + 1).collect();
                ld.rs().to_dominant(&shifted).0 == rho
            })
    });
    Ok(SurgeryReport {
        surgery,
        rosso_jones,
        residual: (surgery - rosso_jones).norm(),
        precondition_holds: support_fits && finite_tau,
    })
}
