//! Weight multiplicities (Freudenthal recursion), formal characters and the
//! Adams-operation decomposition used to cross-check Rosso-Jones coefficients.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{fmt_dynkin, RootSystem, Weight, Q};

/// The weight system of one irreducible representation.
#[derive(Debug, Clone)]
pub struct MultiplicityTable {
    highest_weight: Weight,
    highest_dynkin: Vec<i64>,
    /// Full support in Dynkin coordinates, sorted by decreasing `<μ, ρ>`.
    entries: Vec<(Vec<i64>, i64)>,
    index: HashMap<Vec<i64>, usize>,
}

impl MultiplicityTable {
    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    pub fn highest_dynkin(&self) -> &[i64] {
        &self.highest_dynkin
    }

    /// `(μ, m_λ(μ))` over the support, Dynkin coordinates.
    pub fn entries(&self) -> &[(Vec<i64>, i64)] {
        &self.entries
    }

    /// The support as ambient weights.
    pub fn weights(&self, rs: &RootSystem) -> Vec<(Weight, i64)> {
        self.entries
            .iter()
            .map(|(a, m)| (rs.from_dynkin(a), *m))
            .collect()
    }

    pub fn mult_dynkin(&self, a: &[i64]) -> i64 {
        self.index.get(a).map_or(0, |&i| self.entries[i].1)
    }

    /// `m̄_λ(b)`: the multiplicity, or 0 for points outside Λ.
    pub fn mult(&self, rs: &RootSystem, b: &Weight) -> i64 {
        rs.integral_dynkin(b).map_or(0, |a| self.mult_dynkin(&a))
    }

    /// Sum of all multiplicities.
    pub fn dim(&self) -> i64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// `Σ_α m(α) e^{2πi<α,b>}` with `b = y / den` given by rational Dynkin
    /// numerators `y` over a common denominator.
    pub fn character_at(&self, rs: &RootSystem, y: &[i64], den: i64) -> Complex64 {
        let modulus = rs.gram_den() * den;
        let mut acc = Complex64::zero();
        for (a, m) in &self.entries {
            let num = rs.inner_dynkin_scaled(a, y);
            acc += phase(num, modulus) * (*m as f64);
        }
        acc
    }
}

/// `e^{2πi num/den}` with the exponent reduced exactly modulo 1.
pub fn phase(num: i64, den: i64) -> Complex64 {
    let r = num.rem_euclid(den);
    let t = std::f64::consts::TAU * (r as f64) / (den as f64);
    Complex64::new(t.cos(), t.sin())
}

fn dominant_dynkin(rs: &RootSystem, lambda: &Weight) -> Result<Vec<i64>> {
    match rs.integral_dynkin(lambda) {
        Some(a) if RootSystem::is_dominant(&a) => Ok(a),
        _ => Err(Error::NotDominantIntegral(lambda.to_string())),
    }
}

/// Multiplicities of every weight of the irreducible representation with
/// highest weight `lambda`.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<MultiplicityTable> {
    let a = dominant_dynkin(rs, lambda)?;
    multiplicities_dynkin(rs, &a)
}

/// [`weight_multiplicities`] for a highest weight given in Dynkin coordinates.
pub fn multiplicities_dynkin(rs: &RootSystem, lambda: &[i64]) -> Result<MultiplicityTable> {
    if !RootSystem::is_dominant(lambda) || lambda.len() != rs.rank() {
        return Err(Error::NotDominantIntegral(fmt_dynkin(lambda)));
    }
    let roots = rs.positive_roots_dynkin();
    let heights: Vec<i64> = rs
        .positive_roots_simple()
        .iter()
        .map(|c| c.iter().sum())
        .collect();

    // dominant weights below λ: every one is reachable from λ through dominant
    // weights by subtracting positive roots
    let mut depth: HashMap<Vec<i64>, i64> = HashMap::new();
    depth.insert(lambda.to_vec(), 0);
    let mut frontier = vec![lambda.to_vec()];
    while let Some(mu) = frontier.pop() {
        let d = depth[&mu];
        for (alpha, h) in roots.iter().zip(&heights) {
            let nu: Vec<i64> = mu.iter().zip(alpha).map(|(m, a)| m - a).collect();
            if RootSystem::is_dominant(&nu) && !depth.contains_key(&nu) {
                depth.insert(nu.clone(), d + h);
                frontier.push(nu);
            }
        }
    }
    let mut dominant: Vec<(i64, Vec<i64>)> = depth.into_iter().map(|(w, d)| (d, w)).collect();
    dominant.sort();

    let rho = rs.rho_dynkin();
    let shift = |v: &[i64]| -> Vec<i64> { v.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let lr = shift(lambda);
    let norm_lr = rs.inner_dynkin_scaled(&lr, &lr);

    let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
    for (d, mu) in &dominant {
        if *d == 0 {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mr = shift(mu);
        let denom = norm_lr - rs.inner_dynkin_scaled(&mr, &mr);
        let mut numer = 0i64;
        for alpha in roots {
            let mut cur = mu.clone();
            loop {
                for (c, a) in cur.iter_mut().zip(alpha) {
                    *c += a;
                }
                let (dom, _) = rs.to_dominant(&cur);
                let Some(&m) = mult.get(&dom) else { break };
                numer += m * rs.inner_dynkin_scaled(&cur, alpha);
            }
        }
        numer *= 2;
        if denom <= 0 || numer % denom != 0 {
            return Err(Error::Inconsistent(format!(
                "Freudenthal recursion at {} is not integral ({numer}/{denom})",
                fmt_dynkin(mu)
            )));
        }
        let m = numer / denom;
        if m > 0 {
            mult.insert(mu.clone(), m);
        }
    }

    let mut entries: Vec<(Vec<i64>, i64)> = Vec::new();
    for (_, mu) in &dominant {
        if let Some(&m) = mult.get(mu) {
            for w in rs.weyl_orbit(mu) {
                entries.push((w, m));
            }
        }
    }
    entries.sort_by(|(a, _), (b, _)| {
        let ka = rs.inner_dynkin_scaled(a, &rho);
        let kb = rs.inner_dynkin_scaled(b, &rho);
        kb.cmp(&ka).then_with(|| b.cmp(a))
    });
    let index = entries
        .iter()
        .enumerate()
        .map(|(i, (w, _))| (w.clone(), i))
        .collect();
    Ok(MultiplicityTable {
        highest_weight: rs.from_dynkin(lambda),
        highest_dynkin: lambda.to_vec(),
        entries,
        index,
    })
}

/// Weyl dimension formula `Π_{α>0} <λ+ρ,α>/<ρ,α>`, evaluated exactly.
pub fn weyl_dimension(rs: &RootSystem, lambda: &[i64]) -> i64 {
    let rho = rs.rho_dynkin();
    let lr: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut acc = Ratio::<i128>::one();
    for alpha in rs.positive_roots_dynkin() {
        acc *= Ratio::new(
            rs.inner_dynkin_scaled(&lr, alpha) as i128,
            rs.inner_dynkin_scaled(&rho, alpha) as i128,
        );
    }
    debug_assert!(acc.is_integer());
    acc.to_integer() as i64
}

/// `Tr_λ(exp(b)) = Σ_α m_λ(α) e^{2πi<α,b>}`.
pub fn character_eval(rs: &RootSystem, lambda: &Weight, b: &Weight) -> Result<Complex64> {
    let table = weight_multiplicities(rs, lambda)?;
    // write b in rational Dynkin coordinates over a common denominator
    let d: Vec<Q> = rs.dynkin_of(b);
    let den = d
        .iter()
        .fold(1i64, |acc, q| num_integer::lcm(acc, *q.denom()));
    let y: Vec<i64> = d.iter().map(|q| (q * den).to_integer()).collect();
    // components of b orthogonal to the root span pair to zero with every weight
    Ok(table.character_at(rs, &y, den))
}

/// Coefficients `c^μ` of the Adams operation `χ_λ(x^p) = Σ_μ c^μ χ_μ(x)`, keyed
/// by Dynkin coordinates of μ.
pub fn plethysm_dynkin(rs: &RootSystem, lambda: &[i64], p: i64) -> Result<BTreeMap<Vec<i64>, i64>> {
    if p < 1 {
        return Err(Error::InvalidKnot(format!(
            "Adams degree p = {p} must be positive"
        )));
    }
    let table = multiplicities_dynkin(rs, lambda)?;
    let rho = rs.rho_dynkin();
    // the residual character stays Weyl-invariant, so its dominant part
    // determines it
    let mut residual: HashMap<Vec<i64>, i64> = HashMap::new();
    for (a, m) in table.entries() {
        let pa: Vec<i64> = a.iter().map(|x| x * p).collect();
        if RootSystem::is_dominant(&pa) {
            residual.insert(pa, *m);
        }
    }
    let mut out = BTreeMap::new();
    while !residual.is_empty() {
        let leader = residual
            .keys()
            .max_by(|a, b| {
                rs.inner_dynkin_scaled(a, &rho)
                    .cmp(&rs.inner_dynkin_scaled(b, &rho))
                    .then_with(|| a.cmp(b))
            })
            .cloned()
            .expect("non-empty residual");
        let c = residual[&leader];
        let chi = multiplicities_dynkin(rs, &leader)?;
        for (w, m) in chi
            .entries()
            .iter()
            .filter(|(w, _)| RootSystem::is_dominant(w))
        {
            let e = residual.entry(w.clone()).or_insert(0);
            *e -= c * m;
            if *e == 0 {
                residual.remove(w);
            }
        }
        out.insert(leader, c);
    }
    Ok(out)
}

/// [`plethysm_dynkin`] on ambient weights.
pub fn plethysm_coeffs(rs: &RootSystem, lambda: &Weight, p: i64) -> Result<BTreeMap<Weight, i64>> {
    let a = dominant_dynkin(rs, lambda)?;
    Ok(plethysm_dynkin(rs, &a, p)?
        .into_iter()
        .map(|(mu, c)| (rs.from_dynkin(&mu), c))
        .collect())
}
