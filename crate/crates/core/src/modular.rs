//! Level-k modular data: the S and C matrices, twists, quantum dimensions,
//! Verlinde numbers and fusion coefficients.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;

use crate::affine::contributions_from;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lie::{default_weyl_cap, fmt_dynkin, level_labels, weyl_group, RootSystem, Weight, Q};
use crate::weights::{multiplicities_dynkin, phase, MultiplicityTable};

/// The pair (root system, level) with its modular data.
#[derive(Debug, Clone)]
pub struct LevelData {
    rs: RootSystem,
    k: i64,
    labels: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    s: Vec<Complex64>,
    bar: Vec<usize>,
    theta: Vec<Complex64>,
    qdim: Vec<f64>,
    qdim_sine: Vec<f64>,
    weyl_cap: usize,
    exec: Exec,
}

/// Modular data at level k with the default Weyl cap and execution mode.
pub fn level_data(rs: &RootSystem, k: i64) -> Result<LevelData> {
    LevelData::new(rs, k, default_weyl_cap(), Exec::default())
}

/// `Π_{α>0} 2 sin(π<α, b>)` at `b = y / den` (Dynkin numerators over `den`),
/// the square root of `det(1 − exp(ad b))` on the complement of the Cartan.
pub fn det_half(rs: &RootSystem, y: &[i64], den: i64) -> f64 {
    let dd = (rs.gram_den() * den) as f64;
    rs.positive_roots_dynkin()
        .iter()
        .map(|alpha| 2.0 * (PI * rs.inner_dynkin_scaled(alpha, y) as f64 / dd).sin())
        .product()
}

impl LevelData {
    pub fn new(rs: &RootSystem, k: i64, weyl_cap: usize, exec: Exec) -> Result<Self> {
        let labels = level_labels(rs, k)?;
        let w = weyl_group(rs, weyl_cap)?;
        let n = labels.len();
        let index: HashMap<Vec<i64>, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        let rho = rs.rho_dynkin();
        let shifted: Vec<Vec<i64>> = labels
            .iter()
            .map(|a| a.iter().zip(&rho).map(|(x, r)| x + r).collect())
            .collect();

        // orbits w(μ+ρ) with signs, per label
        let orbits: Vec<Vec<(Vec<i64>, f64)>> = exec.map_slice(&shifted, |y| {
            w.iter()
                .map(|e| (e.apply_dynkin(y), f64::from(e.sign())))
                .collect()
        });

        let n_pos = rs.positive_roots().len();
        let i_pow = match n_pos % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let prefactor =
            i_pow / ((k as f64).powf(rs.rank() as f64 / 2.0) * (rs.lattice_index() as f64).sqrt());
        let modulus = rs.gram_den() * k;

        let rows: Vec<Vec<Complex64>> = exec.map_range(n, |i| {
            (0..n)
                .map(|j| {
                    let mut acc = Complex64::zero();
                    for (img, sg) in &orbits[j] {
                        let num = rs.inner_dynkin_scaled(&shifted[i], img);
                        acc += phase(-num, modulus) * *sg;
                    }
                    acc * prefactor
                })
                .collect()
        });
        let s: Vec<Complex64> = rows.into_iter().flatten().collect();

        let bar = labels
            .iter()
            .map(|a| {
                let neg: Vec<i64> = a.iter().map(|x| -x).collect();
                let (dom, _) = rs.to_dominant(&neg);
                index.get(&dom).copied().ok_or_else(|| {
                    Error::Inconsistent(format!(
                        "conjugate of {} left the label set",
                        fmt_dynkin(a)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut ld = LevelData {
            rs: rs.clone(),
            k,
            labels,
            index,
            s,
            bar,
            theta: Vec::new(),
            qdim: Vec::new(),
            qdim_sine: Vec::new(),
            weyl_cap,
            exec,
        };
        let s00 = ld.s(0, 0);
        if !(s00.re > 0.0 && s00.im.abs() < 1e-9) {
            return Err(Error::Numerical {
                what: "S_00 real positive".into(),
                residual: s00.im.abs().max((-s00.re).max(0.0)),
                tolerance: 1e-9,
            });
        }
        ld.theta = ld
            .labels
            .iter()
            .map(|a| ld.theta_pow_dynkin(a, Q::from_integer(1)))
            .collect();
        ld.qdim = (0..n).map(|i| (ld.s(i, 0) / s00).re).collect();
        ld.qdim_sine = ld.labels.iter().map(|a| ld.qdim_formula(a)).collect();
        Ok(ld)
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }
    pub fn k(&self) -> i64 {
        self.k
    }
    pub fn exec(&self) -> Exec {
        self.exec
    }
    /// The Weyl group cap this data was built with.
    pub fn weyl_cap(&self) -> usize {
        self.weyl_cap
    }
    /// Λ₊^k in Dynkin coordinates, graded-lex ordered; index 0 is the trivial weight.
    pub fn labels(&self) -> &[Vec<i64>] {
        &self.labels
    }
    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
    pub fn label_weights(&self) -> Vec<Weight> {
        self.labels.iter().map(|a| self.rs.from_dynkin(a)).collect()
    }
    pub fn index_of(&self, a: &[i64]) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// Index of a weight in Λ₊^k, or an error naming it.
    pub fn label_index(&self, a: &[i64]) -> Result<usize> {
        self.index_of(a).ok_or_else(|| Error::NotInLevelSet {
            weight: fmt_dynkin(a),
            k: self.k,
        })
    }

    pub fn weight_index(&self, w: &Weight) -> Result<usize> {
        let a = self
            .rs
            .integral_dynkin(w)
            .ok_or_else(|| Error::NotDominantIntegral(w.to_string()))?;
        self.label_index(&a)
    }

    pub fn s(&self, i: usize, j: usize) -> Complex64 {
        self.s[i * self.labels.len() + j]
    }
    pub fn s00(&self) -> f64 {
        self.s(0, 0).re
    }
    pub fn s_matrix(&self) -> Vec<Vec<Complex64>> {
        let n = self.len();
        (0..n)
            .map(|i| self.s[i * n..(i + 1) * n].to_vec())
            .collect()
    }
    /// `C_{λμ} = δ_{λ μ̄}`.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        i64::from(self.bar[j] == i)
    }
    pub fn c_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.c(i, j)).collect())
            .collect()
    }
    /// Index of λ̄.
    pub fn bar(&self, i: usize) -> usize {
        self.bar[i]
    }
    pub fn theta(&self, i: usize) -> Complex64 {
        self.theta[i]
    }
    /// `S_{λ0}/S_{00}`.
    pub fn qdim(&self, i: usize) -> f64 {
        self.qdim[i]
    }
    /// The Weyl-denominator sine product for d_λ.
    pub fn qdim_sine(&self, i: usize) -> f64 {
        self.qdim_sine[i]
    }

    /// `e^{r·πi<λ,λ+2ρ>/k}` for any integral λ, with the exponent reduced
    /// exactly before exponentiating.
    pub fn theta_pow_dynkin(&self, a: &[i64], r: Q) -> Complex64 {
        let two_rho_plus: Vec<i64> = a.iter().map(|x| x + 2).collect();
        let num = self.rs.inner_dynkin_scaled(a, &two_rho_plus) as i128;
        let den = 2 * self.rs.gram_den() as i128 * self.k as i128;
        // exponent / (2π) = r num / den
        let t = Ratio::<i128>::new(*r.numer() as i128 * num, *r.denom() as i128 * den);
        let (n, d) = (t.numer().rem_euclid(*t.denom()), *t.denom());
        let angle = 2.0 * PI * (n as f64) / (d as f64);
        Complex64::new(angle.cos(), angle.sin())
    }

    pub fn theta_pow(&self, lambda: &Weight, r: Q) -> Result<Complex64> {
        let a = self
            .rs
            .integral_dynkin(lambda)
            .ok_or_else(|| Error::NotDominantIntegral(lambda.to_string()))?;
        Ok(self.theta_pow_dynkin(&a, r))
    }

    /// `Π_{α>0} sin(π<λ+ρ,α>/k)/sin(π<ρ,α>/k)` for any integral λ; equals
    /// `(−1)^τ d_η` when `λ = τ∗η`.
    pub fn qdim_formula(&self, a: &[i64]) -> f64 {
        let rho = self.rs.rho_dynkin();
        let lr: Vec<i64> = a.iter().zip(&rho).map(|(x, r)| x + r).collect();
        det_half(&self.rs, &lr, self.k) / det_half(&self.rs, &rho, self.k)
    }

    /// `N_{λμν} = Σ_α S_{αλ} S_{αμ} S_{αν} / S_{α0}`.
    pub fn verlinde_number(&self, l: usize, m: usize, n: usize) -> Complex64 {
        (0..self.len())
            .map(|a| self.s(a, l) * self.s(a, m) * self.s(a, n) / self.s(a, 0))
            .fold(Complex64::zero(), |acc, z| acc + z)
    }

    /// `N^ν_{λμ} = N_{λμν̄}` from the Verlinde sum, unrounded.
    pub fn fusion_verlinde(&self, l: usize, m: usize, n: usize) -> Complex64 {
        self.verlinde_number(l, m, self.bar[n])
    }

    /// `N^μ_{λν} = Σ_{τ∈W_aff} (−1)^τ m_λ(μ − τ∗ν)` for any dominant λ.
    pub fn fusion_racah(&self, table: &MultiplicityTable, mu: usize, nu: usize) -> i64 {
        contributions_from(&self.rs, self.k, table, 1, &self.labels[mu])
            .into_iter()
            .filter(|(e, _)| *e == self.labels[nu])
            .map(|(_, c)| c.value)
            .sum()
    }

    /// [`LevelData::fusion_racah`] on ambient weights.
    pub fn fusion_racah_weights(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<i64> {
        let la = match self.rs.integral_dynkin(lambda) {
            Some(a) if RootSystem::is_dominant(&a) => a,
            _ => return Err(Error::NotDominantIntegral(lambda.to_string())),
        };
        let table = multiplicities_dynkin(&self.rs, &la)?;
        Ok(self.fusion_racah(&table, self.weight_index(mu)?, self.weight_index(nu)?))
    }

    /// The matrix `F[a][b] = N^{a}_{λ b}` over Λ₊^k.
    pub fn fusion_matrix(&self, table: &MultiplicityTable) -> Vec<Vec<i64>> {
        let n = self.len();
        self.exec.map_range(n, |a| {
            let mut row = vec![0i64; n];
            for (e2, c) in contributions_from(&self.rs, self.k, table, 1, &self.labels[a]) {
                if let Some(&b) = self.index.get(&e2) {
                    row[b] += c.value;
                }
            }
            row
        })
    }
}
