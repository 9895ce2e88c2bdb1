//! Root systems of the simple types, their Weyl groups, the level-k label sets
//! and the folding of weights into the fundamental alcove.
//!
//! Each series is realized in orthonormal ambient coordinates and the form is
//! rescaled once so that long roots have squared length 2. Everything here is
//! exact: public [`Weight`]s carry rational ambient coordinates, while the hot
//! loops work on integer Dynkin coordinates (coefficients against the
//! fundamental weights), which is where every integral weight lives anyway.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = Rational64;

/// Default cap on explicit Weyl group enumeration (|W(E6)|).
pub const DEFAULT_WEYL_CAP: usize = 51_840;

/// Weyl group cap, overridable through `RTINV_WEYL_CAP`.
pub fn default_weyl_cap() -> usize {
    std::env::var("RTINV_WEYL_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_WEYL_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn from_char(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

/// A (series, rank) pair such as `A2` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn validate(self) -> Result<Self> {
        let (s, n) = (self.series, self.rank);
        let bad = |constraint| {
            Err(Error::InvalidType {
                series: s.as_char(),
                rank: n,
                constraint,
            })
        };
        match s {
            Series::A if n < 1 => bad("A_n requires n >= 1"),
            Series::B if n < 2 => bad("B_n requires n >= 2"),
            Series::C if n < 3 => bad("C_n requires n >= 3"),
            Series::D if n < 4 => bad("D_n requires n >= 4"),
            Series::E if !(6..=8).contains(&n) => bad("E_n requires n in {6, 7, 8}"),
            Series::F if n != 4 => bad("F_n exists only for n = 4"),
            Series::G if n != 2 => bad("G_n exists only for n = 2"),
            _ => Ok(self),
        }
    }

    /// Dimension of the compact group.
    pub fn group_dimension(self) -> usize {
        let n = self.rank;
        match (self.series, n) {
            (Series::A, _) => n * (n + 2),
            (Series::B, _) | (Series::C, _) => n * (2 * n + 1),
            (Series::D, _) => n * (2 * n - 1),
            (Series::E, 6) => 78,
            (Series::E, 7) => 133,
            (Series::E, _) => 248,
            (Series::F, _) => 52,
            (Series::G, _) => 14,
        }
    }

    /// |W| from the classification.
    pub fn weyl_order(self) -> u64 {
        let n = self.rank as u64;
        let fact = |m: u64| (1..=m).product::<u64>();
        match (self.series, self.rank) {
            (Series::A, _) => fact(n + 1),
            (Series::B, _) | (Series::C, _) => (1u64 << n) * fact(n),
            (Series::D, _) => (1u64 << (n - 1)) * fact(n),
            (Series::E, 6) => 51_840,
            (Series::E, 7) => 2_903_040,
            (Series::E, _) => 696_729_600,
            (Series::F, _) => 1152,
            (Series::G, _) => 12,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.as_char(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars
            .next()
            .and_then(Series::from_char)
            .ok_or_else(|| format!("unknown series in '{s}', expected one of A-G"))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| format!("missing or invalid rank in '{s}'"))?;
        Ok(CartanType { series, rank })
    }
}

/// A point of the weight space in exact rational ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Weight(vec![Q::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| Q::from_integer(c)).collect())
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, r: Q) -> Weight {
        Weight(self.0.iter().map(|c| c * r).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn dot(&self, other: &Weight) -> Q {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<Q> for &Weight {
    type Output = Weight;
    fn mul(self, rhs: Q) -> Weight {
        self.scale(rhs)
    }
}

/// `(a1,a2,...)` rendering of Dynkin coordinates.
pub fn fmt_dynkin(a: &[i64]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Immutable Lie-theoretic data of one simple type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    ambient_dim: usize,
    form_scale: Q,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Weight>,
    fundamental_weights: Vec<Weight>,
    fundamental_coweights: Vec<Weight>,
    positive_roots: Vec<Weight>,
    positive_roots_dynkin: Vec<Vec<i64>>,
    positive_roots_simple: Vec<Vec<i64>>,
    rho: Weight,
    theta: Weight,
    theta_dynkin: Vec<i64>,
    comarks: Vec<i64>,
    dual_coxeter: i64,
    /// `cartan[i][j] = <alpha_i, coroot_j>`
    cartan: Vec<Vec<i64>>,
    cartan_det: i64,
    lattice_index: i64,
    gram: Vec<Vec<Q>>,
    gram_num: Vec<Vec<i64>>,
    gram_den: i64,
}

/// Builds the root system of a simple type.
pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem> {
    RootSystem::new(CartanType { series, rank })
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        let cartan_type = cartan_type.validate()?;
        let (ambient_dim, raw) = simple_roots_ambient(cartan_type);
        let simple_roots: Vec<Weight> = raw.into_iter().map(Weight).collect();
        let n = simple_roots.len();

        let max_len = simple_roots
            .iter()
            .map(|a| a.dot(a))
            .max()
            .expect("rank >= 1");
        let form_scale = Q::from_integer(2) / max_len;
        let inner = |a: &Weight, b: &Weight| a.dot(b) * form_scale;

        let simple_coroots: Vec<Weight> = simple_roots
            .iter()
            .map(|a| a.scale(Q::from_integer(2) / inner(a, a)))
            .collect();

        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = inner(&simple_roots[i], &simple_coroots[j]);
                debug_assert!(v.is_integer());
                cartan[i][j] = v.to_integer();
            }
        }
        let cartan_q: Vec<Vec<Q>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
            .collect();
        let cartan_det = det(&cartan_q).to_integer();

        // omega_i = sum_l (A^-1)_{il} alpha_l
        let a_inv = invert(&cartan_q);
        let combine = |coeffs: &[Q], basis: &[Weight]| {
            let mut w = Weight::zero(ambient_dim);
            for (c, b) in coeffs.iter().zip(basis) {
                w = &w + &b.scale(*c);
            }
            w
        };
        let fundamental_weights: Vec<Weight> =
            (0..n).map(|i| combine(&a_inv[i], &simple_roots)).collect();
        // coweights dual to the simple roots: N = (A^T)^-1 against the coroots
        let at_inv = invert(&transpose(&cartan_q));
        let fundamental_coweights: Vec<Weight> = (0..n)
            .map(|i| combine(&at_inv[i], &simple_coroots))
            .collect();

        let coroot_gram: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| inner(&simple_coroots[i], &simple_coroots[j]))
                    .collect()
            })
            .collect();
        let lattice_index = det(&coroot_gram).to_integer();

        // positive roots via closure of the simple roots under simple reflections,
        // in simple-root coordinates
        let reflect_simple = |i: usize, c: &[i64]| -> Vec<i64> {
            let pairing: i64 = (0..n).map(|l| c[l] * cartan[l][i]).sum();
            let mut out = c.to_vec();
            out[i] -= pairing;
            out
        };
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(c) = queue.pop_front() {
            for i in 0..n {
                let r = reflect_simple(i, &c);
                if !seen.contains_key(&r) {
                    seen.insert(r.clone(), ());
                    queue.push_back(r);
                }
            }
        }
        let mut positive_roots_simple: Vec<Vec<i64>> = seen
            .into_keys()
            .filter(|c| c.iter().all(|&x| x >= 0))
            .collect();
        positive_roots_simple.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then(b.cmp(a))
        });
        let positive_roots_dynkin: Vec<Vec<i64>> = positive_roots_simple
            .iter()
            .map(|c| {
                (0..n)
                    .map(|j| (0..n).map(|l| c[l] * cartan[l][j]).sum())
                    .collect()
            })
            .collect();
        let positive_roots: Vec<Weight> = positive_roots_simple
            .iter()
            .map(|c| {
                let cq: Vec<Q> = c.iter().map(|&x| Q::from_integer(x)).collect();
                combine(&cq, &simple_roots)
            })
            .collect();

        let theta_pos = positive_roots_simple.len() - 1;
        let theta = positive_roots[theta_pos].clone();
        let theta_dynkin = positive_roots_dynkin[theta_pos].clone();

        let gram: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| inner(&fundamental_weights[i], &fundamental_weights[j]))
                    .collect()
            })
            .collect();
        let gram_den = gram
            .iter()
            .flatten()
            .fold(1i64, |acc, q| acc.lcm(q.denom()));
        let gram_num: Vec<Vec<i64>> = gram
            .iter()
            .map(|r| r.iter().map(|q| (q * gram_den).to_integer()).collect())
            .collect();

        let rho = fundamental_weights
            .iter()
            .fold(Weight::zero(ambient_dim), |acc, w| &acc + w);
        let comarks: Vec<i64> = (0..n)
            .map(|j| inner(&fundamental_weights[j], &theta).to_integer())
            .collect();
        let dual_coxeter = 1 + inner(&theta, &rho).to_integer();

        Ok(RootSystem {
            cartan_type,
            ambient_dim,
            form_scale,
            simple_roots,
            simple_coroots,
            fundamental_weights,
            fundamental_coweights,
            positive_roots,
            positive_roots_dynkin,
            positive_roots_simple,
            rho,
            theta,
            theta_dynkin,
            comarks,
            dual_coxeter,
            cartan,
            cartan_det,
            lattice_index,
            gram,
            gram_num,
            gram_den,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }
    pub fn series(&self) -> Series {
        self.cartan_type.series
    }
    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    /// Factor turning the ambient dot product into the normalized form.
    pub fn form_scale(&self) -> Q {
        self.form_scale
    }
    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }
    pub fn simple_coroots(&self) -> &[Weight] {
        &self.simple_coroots
    }
    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }
    /// Positive roots in Dynkin coordinates, sorted by height; the last is θ.
    pub fn positive_roots_dynkin(&self) -> &[Vec<i64>] {
        &self.positive_roots_dynkin
    }
    /// Positive roots as nonnegative combinations of simple roots.
    pub fn positive_roots_simple(&self) -> &[Vec<i64>] {
        &self.positive_roots_simple
    }
    pub fn rho(&self) -> &Weight {
        &self.rho
    }
    pub fn rho_dynkin(&self) -> Vec<i64> {
        vec![1; self.rank()]
    }
    pub fn theta(&self) -> &Weight {
        &self.theta
    }
    pub fn theta_dynkin(&self) -> &[i64] {
        &self.theta_dynkin
    }
    /// `<omega_j, theta>` for each fundamental weight.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }
    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }
    pub fn cartan_det(&self) -> i64 {
        self.cartan_det
    }
    /// |Λ/Γ| under the normalized form, i.e. det of the simple-coroot Gram
    /// matrix. Equals `cartan_det` for the simply-laced types only.
    pub fn lattice_index(&self) -> i64 {
        self.lattice_index
    }
    pub fn name(&self) -> String {
        self.cartan_type.to_string()
    }

    /// The normalized invariant form on ambient coordinates.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        a.dot(b) * self.form_scale
    }

    /// `<omega_i, omega_j>`.
    pub fn weight_gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    /// Common denominator `D` with `D * <omega_i, omega_j>` integral.
    pub fn gram_den(&self) -> i64 {
        self.gram_den
    }

    /// `gram_den * <a, b>` for Dynkin coordinates, exact.
    pub fn inner_dynkin_scaled(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = 0i64;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            let row = &self.gram_num[i];
            let mut s = 0i64;
            for j in 0..n {
                s += row[j] * b[j];
            }
            acc += a[i] * s;
        }
        acc
    }

    pub fn inner_dynkin(&self, a: &[i64], b: &[i64]) -> Q {
        Q::new(self.inner_dynkin_scaled(a, b), self.gram_den)
    }

    /// Rational Dynkin coordinates `<x, coroot_i>`.
    pub fn dynkin_of(&self, x: &Weight) -> Vec<Q> {
        self.simple_coroots
            .iter()
            .map(|c| self.inner(x, c))
            .collect()
    }

    pub fn from_dynkin(&self, a: &[i64]) -> Weight {
        let mut w = Weight::zero(self.ambient_dim);
        for (c, om) in a.iter().zip(&self.fundamental_weights) {
            if *c != 0 {
                w = &w + &om.scale(Q::from_integer(*c));
            }
        }
        w
    }

    pub fn from_dynkin_q(&self, a: &[Q]) -> Weight {
        let mut w = Weight::zero(self.ambient_dim);
        for (c, om) in a.iter().zip(&self.fundamental_weights) {
            if !c.is_zero() {
                w = &w + &om.scale(*c);
            }
        }
        w
    }

    /// Whether `x` lies in the real span of the roots.
    pub fn in_span(&self, x: &Weight) -> bool {
        self.from_dynkin_q(&self.dynkin_of(x)) == *x
    }

    /// Integer Dynkin coordinates of `x` if `x` lies in the weight lattice Λ.
    pub fn integral_dynkin(&self, x: &Weight) -> Option<Vec<i64>> {
        if !self.in_span(x) {
            return None;
        }
        let d = self.dynkin_of(x);
        if d.iter().all(|q| q.is_integer()) {
            Some(d.iter().map(|q| q.to_integer()).collect())
        } else {
            None
        }
    }

    /// Membership in Λ: all coroot pairings integral.
    pub fn in_weight_lattice(&self, x: &Weight) -> bool {
        self.integral_dynkin(x).is_some()
    }

    /// Coefficients of `x` against the simple coroots.
    pub fn coroot_coords(&self, x: &Weight) -> Vec<Q> {
        // <coroot_i, omega_j> = delta_ij
        self.fundamental_weights
            .iter()
            .map(|om| self.inner(x, om))
            .collect()
    }

    /// Membership in the coroot lattice Γ.
    pub fn in_coroot_lattice(&self, x: &Weight) -> bool {
        self.in_span(x) && self.coroot_coords(x).iter().all(|q| q.is_integer())
    }

    /// Coefficients of `x` against the simple roots.
    pub fn root_coords(&self, x: &Weight) -> Vec<Q> {
        self.fundamental_coweights
            .iter()
            .map(|c| self.inner(x, c))
            .collect()
    }

    pub fn is_dominant(a: &[i64]) -> bool {
        a.iter().all(|&x| x >= 0)
    }

    /// Dynkin coordinates of θ-style pairing `<x, theta>`.
    pub fn pair_theta<T>(&self, y: &[T]) -> T
    where
        T: Clone + Zero + From<i64> + Mul<Output = T>,
    {
        y.iter()
            .zip(&self.comarks)
            .fold(T::zero(), |acc, (a, &m)| acc + a.clone() * T::from(m))
    }

    /// In-place simple reflection on Dynkin coordinates.
    pub fn reflect_dynkin<T>(&self, i: usize, y: &mut [T])
    where
        T: Clone + From<i64> + Sub<Output = T> + Mul<Output = T>,
    {
        let yi = y[i].clone();
        for (l, c) in self.cartan[i].iter().enumerate() {
            if *c != 0 {
                y[l] = y[l].clone() - yi.clone() * T::from(*c);
            }
        }
    }

    /// Dominant representative of the W-orbit of `a`, with the sign of the
    /// Weyl element used.
    pub fn to_dominant(&self, a: &[i64]) -> (Vec<i64>, i8) {
        let mut y = a.to_vec();
        let mut sign = 1i8;
        while let Some(i) = y.iter().position(|&x| x < 0) {
            self.reflect_dynkin(i, &mut y);
            sign = -sign;
        }
        (y, sign)
    }

    /// W-orbit of a weight, by breadth-first search over simple reflections.
    pub fn weyl_orbit(&self, a: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut out = vec![a.to_vec()];
        seen.insert(a.to_vec(), ());
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].clone();
            head += 1;
            for i in 0..self.rank() {
                if cur[i] == 0 {
                    continue;
                }
                let mut r = cur.clone();
                self.reflect_dynkin(i, &mut r);
                if !seen.contains_key(&r) {
                    seen.insert(r.clone(), ());
                    out.push(r);
                }
            }
        }
        out
    }

    /// Concatenated word of simple reflections equal to the reflection s_θ.
    pub fn theta_reflection_word(&self) -> Vec<usize> {
        // walk θ down to a simple root: θ = s_{j1} ... s_{jm} alpha_i
        let n = self.rank();
        let mut beta = self.positive_roots_simple.last().unwrap().clone();
        let mut path = Vec::new();
        loop {
            let height: i64 = beta.iter().sum();
            if height == 1 {
                break;
            }
            let j = (0..n)
                .find(|&j| {
                    let pairing: i64 = (0..n).map(|l| beta[l] * self.cartan[l][j]).sum();
                    pairing > 0
                })
                .expect("non-simple positive root has a descent");
            let pairing: i64 = (0..n).map(|l| beta[l] * self.cartan[l][j]).sum();
            beta[j] -= pairing;
            path.push(j);
        }
        let i = beta.iter().position(|&x| x == 1).unwrap();
        let mut word = path.clone();
        word.push(i);
        word.extend(path.iter().rev().copied());
        word
    }
}

fn simple_roots_ambient(t: CartanType) -> (usize, Vec<Vec<Q>>) {
    let n = t.rank;
    let q = Q::from_integer;
    let half = Q::new(1, 2);
    let unit = |dim: usize, i: usize| {
        let mut v = vec![Q::zero(); dim];
        v[i] = Q::one();
        v
    };
    let diff = |dim: usize, i: usize, j: usize| {
        let mut v = vec![Q::zero(); dim];
        v[i] = Q::one();
        v[j] = -Q::one();
        v
    };
    match t.series {
        Series::A => (n + 1, (0..n).map(|i| diff(n + 1, i, i + 1)).collect()),
        Series::B => {
            let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            r.push(unit(n, n - 1));
            (n, r)
        }
        Series::C => {
            let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![Q::zero(); n];
            last[n - 1] = q(2);
            r.push(last);
            (n, r)
        }
        Series::D => {
            let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
            let mut last = vec![Q::zero(); n];
            last[n - 2] = Q::one();
            last[n - 1] = Q::one();
            r.push(last);
            (n, r)
        }
        Series::E => {
            // Bourbaki numbering inside R^8; E6/E7 use the first 6/7 roots
            let mut a1 = vec![-half; 8];
            a1[0] = half;
            a1[7] = half;
            let mut a2 = vec![Q::zero(); 8];
            a2[0] = Q::one();
            a2[1] = Q::one();
            let mut r = vec![a1, a2, diff(8, 1, 0)];
            for i in 2..7 {
                r.push(diff(8, i, i - 1));
            }
            r.truncate(n);
            (8, r)
        }
        Series::F => {
            let r = vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                unit(4, 3),
                vec![half, -half, -half, -half],
            ];
            (4, r)
        }
        Series::G => (3, vec![diff(3, 0, 1), vec![q(-2), q(1), q(1)]]),
    }
}

fn transpose(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let p = a[col][col];
        d *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            if !f.is_zero() {
                for c in col..n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    d
}

fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        a.swap(piv, col);
        let p = a[col][col];
        for c in 0..2 * n {
            a[col][c] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if !f.is_zero() {
                    for c in 0..2 * n {
                        let v = a[col][c];
                        a[r][c] -= f * v;
                    }
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// An element of the finite Weyl group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Vec<Vec<Q>>,
    dynkin_matrix: Vec<Vec<i64>>,
    sign: i8,
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        let d = rs.ambient_dim();
        let n = rs.rank();
        WeylElement {
            word: Vec::new(),
            matrix: (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| if i == j { Q::one() } else { Q::zero() })
                        .collect()
                })
                .collect(),
            dynkin_matrix: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
            sign: 1,
        }
    }

    /// The product `s_{w[0]} s_{w[1]} ... s_{w[m-1]}`.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut e = WeylElement::identity(rs);
        for &i in word.iter().rev() {
            e = e.left_reflect(rs, i);
        }
        e
    }

    /// `s_i * self`.
    pub fn left_reflect(&self, rs: &RootSystem, i: usize) -> Self {
        let n = rs.rank();
        let mut dm = self.dynkin_matrix.clone();
        for j in 0..n {
            let ci = dm[i][j];
            if ci != 0 {
                for l in 0..n {
                    dm[l][j] -= ci * rs.cartan[i][l];
                }
            }
        }
        let alpha = &rs.simple_roots[i];
        let coroot = &rs.simple_coroots[i];
        let d = rs.ambient_dim();
        let mut m = self.matrix.clone();
        for j in 0..d {
            // column j: m - <m, coroot> alpha
            let mut pairing = Q::zero();
            for r in 0..d {
                pairing += m[r][j] * coroot.0[r];
            }
            pairing *= rs.form_scale;
            if !pairing.is_zero() {
                for r in 0..d {
                    m[r][j] -= pairing * alpha.0[r];
                }
            }
        }
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.push(i);
        word.extend_from_slice(&self.word);
        WeylElement {
            word,
            matrix: m,
            dynkin_matrix: dm,
            sign: -self.sign,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> Self {
        let d = self.matrix.len();
        let n = self.dynkin_matrix.len();
        let matrix = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        (0..d).fold(Q::zero(), |a, l| a + self.matrix[i][l] * other.matrix[l][j])
                    })
                    .collect()
            })
            .collect();
        let dynkin_matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|l| self.dynkin_matrix[i][l] * other.dynkin_matrix[l][j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement {
            word,
            matrix,
            dynkin_matrix,
            sign: self.sign * other.sign,
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> Self {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement::from_word(rs, &word)
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }
    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.matrix
    }
    /// Column j holds the Dynkin coordinates of `w(omega_j)`.
    pub fn dynkin_matrix(&self) -> &[Vec<i64>] {
        &self.dynkin_matrix
    }
    /// `(-1)^length`, the determinant.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn apply(&self, x: &Weight) -> Weight {
        Weight(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&x.0).fold(Q::zero(), |a, (m, c)| a + m * c))
                .collect(),
        )
    }

    pub fn apply_dynkin(&self, a: &[i64]) -> Vec<i64> {
        self.dynkin_matrix
            .iter()
            .map(|row| row.iter().zip(a).map(|(m, c)| m * c).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.dynkin_matrix
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, &v)| v == i64::from(i == j)))
    }
}

/// All elements of W, found by breadth-first search over simple-reflection
/// words and deduplicated by the image of ρ. Words are therefore reduced.
pub fn weyl_group(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>> {
    let order = rs.cartan_type().weyl_order();
    if order > cap as u64 {
        return Err(Error::WeylCapExceeded { order, cap });
    }
    let rho = rs.rho_dynkin();
    let id = WeylElement::identity(rs);
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::with_capacity(order as usize);
    seen.insert(rho.clone(), ());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        head += 1;
        let image = cur.apply_dynkin(&rho);
        for i in 0..rs.rank() {
            let mut next_image = image.clone();
            rs.reflect_dynkin(i, &mut next_image);
            if seen.insert(next_image, ()).is_none() {
                out.push(cur.left_reflect(rs, i));
            }
        }
    }
    debug_assert_eq!(out.len() as u64, order);
    Ok(out)
}

/// The label set Λ₊^k in Dynkin coordinates, graded-lex ordered.
pub fn level_labels(rs: &RootSystem, k: i64) -> Result<Vec<Vec<i64>>> {
    if k <= rs.dual_coxeter() {
        return Err(Error::LevelTooLow {
            k,
            dual_coxeter: rs.dual_coxeter(),
        });
    }
    let budget = k - rs.dual_coxeter();
    let n = rs.rank();
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, left: i64, marks: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == marks.len() {
            out.push(cur.clone());
            return;
        }
        let mut a = 0;
        while a * marks[i] <= left {
            cur[i] = a;
            rec(i + 1, left - a * marks[i], marks, cur, out);
            a += 1;
        }
        cur[i] = 0;
    }
    rec(0, budget, rs.comarks(), &mut cur, &mut out);
    sort_graded_lex(&mut out);
    Ok(out)
}

/// Graded order on Dynkin coordinates: total degree first, then larger
/// leading coordinates first.
pub fn sort_graded_lex(labels: &mut [Vec<i64>]) {
    labels.sort_by(|a, b| {
        let da: i64 = a.iter().sum();
        let db: i64 = b.iter().sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
}

/// Λ₊^k = {λ dominant : <λ+ρ, θ> < k}.
pub fn dominant_weights_at_level(rs: &RootSystem, k: i64) -> Result<Vec<Weight>> {
    Ok(level_labels(rs, k)?
        .iter()
        .map(|a| rs.from_dynkin(a))
        .collect())
}

/// One step of the alcove fold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reflection {
    Simple(usize),
    /// Reflection in the wall `<., theta> = k`.
    Affine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub folded: Weight,
    pub sign: i8,
    pub on_boundary: bool,
}

/// Folds `y` (the Dynkin coordinates of `x + ρ`) in place into the closure of
/// `k P`. Returns the sign of the reflections used and whether the result lies
/// on a wall.
pub fn fold_shifted<T>(
    rs: &RootSystem,
    k: i64,
    y: &mut [T],
    mut trace: Option<&mut Vec<Reflection>>,
) -> (i8, bool)
where
    T: Clone + PartialOrd + Zero + From<i64> + Sub<Output = T> + Mul<Output = T>,
{
    let zero = T::zero();
    let level = T::from(k);
    let mut sign = 1i8;
    loop {
        if let Some(i) = y.iter().position(|c| *c < zero) {
            rs.reflect_dynkin(i, y);
            sign = -sign;
            if let Some(t) = trace.as_deref_mut() {
                t.push(Reflection::Simple(i));
            }
            continue;
        }
        let t = rs.pair_theta(y);
        if t > level {
            let excess = t - level.clone();
            for (c, th) in y.iter_mut().zip(rs.theta_dynkin()) {
                *c = c.clone() - excess.clone() * T::from(*th);
            }
            sign = -sign;
            if let Some(tr) = trace.as_deref_mut() {
                tr.push(Reflection::Affine);
            }
            continue;
        }
        let boundary = y.contains(&zero) || t == level;
        return (sign, boundary);
    }
}

/// Folds `x + ρ` by the level-k affine Weyl group into the closure of `k P`
/// and shifts back by ρ.
pub fn fold_to_alcove(rs: &RootSystem, k: i64, x: &Weight) -> Fold {
    let (fold, _) = fold_to_alcove_traced(rs, k, x);
    fold
}

pub fn fold_to_alcove_traced(rs: &RootSystem, k: i64, x: &Weight) -> (Fold, Vec<Reflection>) {
    let d = rs.dynkin_of(x);
    let perp = x - &rs.from_dynkin_q(&d);
    let mut y: Vec<Q> = d.iter().map(|c| c + Q::one()).collect();
    let mut trace = Vec::new();
    let (sign, on_boundary) = fold_shifted(rs, k, &mut y, Some(&mut trace));
    let shifted: Vec<Q> = y.iter().map(|c| c - Q::one()).collect();
    let folded = &perp + &rs.from_dynkin_q(&shifted);
    (
        Fold {
            folded,
            sign,
            on_boundary,
        },
        trace,
    )
}

/// Fold for integral weights given by Dynkin coordinates; returns the folded
/// Dynkin coordinates (shifted back by ρ).
pub fn fold_dynkin(rs: &RootSystem, k: i64, a: &[i64]) -> (Vec<i64>, i8, bool) {
    let mut y: Vec<i64> = a.iter().map(|c| c + 1).collect();
    let (sign, boundary) = fold_shifted(rs, k, &mut y, None);
    for c in y.iter_mut() {
        *c -= 1;
    }
    (y, sign, boundary)
}
