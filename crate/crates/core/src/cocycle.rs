//! Yang-Baxter cochains in degrees 1 and 2, explicit cocycles, and the
//! state-sum invariant.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{is_prime, rank_mod_prime};
use crate::biquandle::Biquandle;
use crate::coloring::{enumerate_colorings, Coloring};
use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// Coefficient group `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Coefficients {
    Mod(u64),
    Integers,
}

impl Coefficients {
    pub fn modulo(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("coefficients Z_n need n >= 2, got {n}")));
        }
        Ok(Coefficients::Mod(n))
    }

    pub fn reduce(self, x: i64) -> i64 {
        match self {
            Coefficients::Mod(n) => x.rem_euclid(n as i64),
            Coefficients::Integers => x,
        }
    }

    pub fn is_zero(self, x: i64) -> bool {
        self.reduce(x) == 0
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Mod(n) => write!(f, "Z{n}"),
            Coefficients::Integers => write!(f, "Z"),
        }
    }
}

/// A function `X → A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain1 {
    coeff: Coefficients,
    table: Vec<i64>,
}

impl Cochain1 {
    pub fn new(coeff: Coefficients, table: Vec<i64>) -> Self {
        let table = table.into_iter().map(|x| coeff.reduce(x)).collect();
        Cochain1 { coeff, table }
    }

    pub fn from_fn(m: usize, coeff: Coefficients, g: impl Fn(usize) -> i64) -> Self {
        Self::new(coeff, (0..m).map(g).collect())
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    pub fn carrier_size(&self) -> usize {
        self.table.len()
    }

    pub fn get(&self, x: usize) -> i64 {
        self.table[x]
    }
}

/// A function `X² → A`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain2 {
    m: usize,
    coeff: Coefficients,
    table: Vec<i64>,
}

impl Cochain2 {
    pub fn new(m: usize, coeff: Coefficients, table: Vec<i64>) -> Result<Self> {
        if table.len() != m * m {
            return Err(Error::Precondition(format!(
                "2-cochain table has {} entries, expected {}",
                table.len(),
                m * m
            )));
        }
        let table = table.into_iter().map(|x| coeff.reduce(x)).collect();
        Ok(Cochain2 { m, coeff, table })
    }

    pub fn from_fn(m: usize, coeff: Coefficients, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut table = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                table.push(coeff.reduce(f(x, y)));
            }
        }
        Cochain2 { m, coeff, table }
    }

    pub fn zero(m: usize, coeff: Coefficients) -> Self {
        Cochain2 {
            m,
            coeff,
            table: vec![0; m * m],
        }
    }

    /// `f(x, y) = x + y` over `Z_n`.
    pub fn additive(n: u64) -> Self {
        let m = n as usize;
        Self::from_fn(m, Coefficients::Mod(n), |x, y| (x + y) as i64)
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    pub fn carrier_size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> i64 {
        self.table[x * self.m + y]
    }

    pub fn table(&self) -> &[i64] {
        &self.table
    }
}

pub fn additive_cocycle(n: u64) -> Result<Cochain2> {
    Coefficients::modulo(n)?;
    Ok(Cochain2::additive(n))
}

/// `h(x, y) = ((x^p + 2y^p) - (x + 2y)^p) / p` reduced mod `p`.
pub fn mochizuki_cocycle(p: u64) -> Result<Cochain2> {
    if p < 3 || !is_prime(p) {
        return Err(Error::Precondition(format!("mochizuki cocycle needs an odd prime, got {p}")));
    }
    let m = p as usize;
    let e = p as u32;
    let pb = BigInt::from(p);
    Ok(Cochain2::from_fn(m, Coefficients::Mod(p), |x, y| {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        let s: BigInt = &x + BigInt::from(2) * &y;
        let num: BigInt = x.pow(e) + BigInt::from(2) * y.pow(e) - s.pow(e);
        debug_assert!((&num % &pb) == BigInt::from(0));
        let q: BigInt = num / &pb;
        let r = ((q % &pb) + &pb) % &pb;
        r.to_i64().expect("residue fits in i64")
    }))
}

/// A function `X³ → A`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain3 {
    m: usize,
    coeff: Coefficients,
    table: Vec<i64>,
}

impl Cochain3 {
    pub fn get(&self, x: usize, y: usize, z: usize) -> i64 {
        self.table[(x * self.m + y) * self.m + z]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    /// First `(x, y, z)` with a nonzero value.
    pub fn first_nonzero(&self) -> Option<[usize; 3]> {
        let m = self.m;
        self.table
            .iter()
            .position(|&v| v != 0)
            .map(|i| [i / (m * m), (i / m) % m, i % m])
    }
}

fn check_carrier(b: &Biquandle, m: usize) {
    assert_eq!(b.order(), m, "cochain carrier does not match the biquandle");
}

/// `(δ₁g)(x, y) = g(x) + g(y) - g(R₁(x, y)) - g(R₂(x, y))`.
pub fn delta1(g: &Cochain1, b: &Biquandle) -> Cochain2 {
    let m = g.carrier_size();
    check_carrier(b, m);
    Cochain2::from_fn(m, g.coeff, |x, y| {
        let (a, c) = b.r(x, y);
        g.get(x) + g.get(y) - g.get(a) - g.get(c)
    })
}

/// `(δ₂f)(x, y, z) = f(x,y) + f(R₂(x,y), z) + f(R₁(x,y), R₁(R₂(x,y), z))
///  - f(y,z) - f(x, R₁(y,z)) - f(R₂(x, R₁(y,z)), R₂(y,z))`.
pub fn delta2(f: &Cochain2, b: &Biquandle) -> Cochain3 {
    let m = f.m;
    check_carrier(b, m);
    let table = (0..m * m * m)
        .into_par_iter()
        .map(|i| {
            let (x, y, z) = (i / (m * m), (i / m) % m, i % m);
            f.coeff.reduce(delta2_at(f, b, x, y, z))
        })
        .collect();
    Cochain3 {
        m,
        coeff: f.coeff,
        table,
    }
}

fn delta2_at(f: &Cochain2, b: &Biquandle, x: usize, y: usize, z: usize) -> i64 {
    let (r1xy, r2xy) = b.r(x, y);
    let (r1yz, r2yz) = b.r(y, z);
    f.get(x, y) + f.get(r2xy, z) + f.get(r1xy, b.r1(r2xy, z))
        - f.get(y, z)
        - f.get(x, r1yz)
        - f.get(b.r2(x, r1yz), r2yz)
}

pub fn is_cocycle(f: &Cochain2, b: &Biquandle) -> bool {
    let m = f.m;
    check_carrier(b, m);
    (0..m).into_par_iter().all(|x| {
        (0..m).all(|y| (0..m).all(|z| f.coeff.is_zero(delta2_at(f, b, x, y, z))))
    })
}

/// `f(x_a, a) = 0` and `f(a, y_a) = 0` for every `a`.
pub fn satisfies_type_one(f: &Cochain2, b: &Biquandle) -> Result<bool> {
    check_carrier(b, f.m);
    let t = b
        .type_one()
        .ok_or_else(|| Error::Precondition(format!("{} is not a biquandle", b.name())))?;
    Ok((0..f.m).all(|a| f.get(t.x[a], a) == 0 && f.get(a, t.y[a]) == 0))
}

/// Formal integer combination of carrier elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Chain1(pub BTreeMap<usize, i64>);

impl Chain1 {
    fn add(&mut self, x: usize, k: i64) {
        let e = self.0.entry(x).or_insert(0);
        *e += k;
        if *e == 0 {
            self.0.remove(&x);
        }
    }

    /// All coefficients vanish in `A`.
    pub fn is_zero_in(&self, coeff: Coefficients) -> bool {
        self.0.values().all(|&k| coeff.is_zero(k))
    }
}

impl fmt::Display for Chain1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (x, k)) in self.0.iter().enumerate() {
            let sign = if *k < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let sp = if i > 0 { " " } else { "" };
            let abs = k.abs();
            if abs == 1 {
                write!(f, "{sep}{sign}{sp}{{{x}}}")?;
            } else {
                write!(f, "{sep}{sign}{sp}{abs}{{{x}}}")?;
            }
        }
        Ok(())
    }
}

/// Formal integer combination of pairs `(x, y)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Chain2(pub BTreeMap<(usize, usize), i64>);

impl Chain2 {
    pub fn from_terms(terms: &[((usize, usize), i64)]) -> Self {
        let mut c = Chain2::default();
        for &(pair, k) in terms {
            let e = c.0.entry(pair).or_insert(0);
            *e += k;
            if *e == 0 {
                c.0.remove(&pair);
            }
        }
        c
    }

    pub fn boundary(&self, b: &Biquandle) -> Chain1 {
        let mut out = Chain1::default();
        for (&(x, y), &k) in &self.0 {
            for (z, s) in boundary2(x, y, b).0 {
                out.add(z, k * s);
            }
        }
        out
    }

    pub fn is_cycle(&self, b: &Biquandle, coeff: Coefficients) -> bool {
        self.boundary(b).is_zero_in(coeff)
    }
}

/// `∂₂(x, y) = {x} + {y} - {R₁(x, y)} - {R₂(x, y)}`.
pub fn boundary2(x: usize, y: usize, b: &Biquandle) -> Chain1 {
    let (a, c) = b.r(x, y);
    let mut out = Chain1::default();
    out.add(x, 1);
    out.add(y, 1);
    out.add(a, -1);
    out.add(c, -1);
    out
}

/// Linear extension of `f` to 2-chains.
pub fn evaluate(f: &Cochain2, c: &Chain2) -> i64 {
    f.coeff
        .reduce(c.0.iter().map(|(&(x, y), &k)| k * f.get(x, y)).sum())
}

/// `dim ker δ₂ - dim im δ₁` with carrier and coefficients over `F_p`.
pub fn h2_rank(b: &Biquandle, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("h2_rank needs a prime, got {p}")));
    }
    let m = b.order();
    // δ₁ as an m² × m matrix
    let mut d1 = vec![vec![0u64; m]; m * m];
    for x in 0..m {
        for y in 0..m {
            let row = &mut d1[x * m + y];
            let (a, c) = b.r(x, y);
            for (e, s) in [(x, 1i64), (y, 1), (a, -1), (c, -1)] {
                row[e] = ((row[e] as i64 + s).rem_euclid(p as i64)) as u64;
            }
        }
    }
    // δ₂ as an m³ × m² matrix
    let d2: Vec<Vec<u64>> = (0..m * m * m)
        .into_par_iter()
        .map(|i| {
            let (x, y, z) = (i / (m * m), (i / m) % m, i % m);
            let (r1xy, r2xy) = b.r(x, y);
            let (r1yz, r2yz) = b.r(y, z);
            let mut row = vec![0i64; m * m];
            for (u, v, s) in [
                (x, y, 1),
                (r2xy, z, 1),
                (r1xy, b.r1(r2xy, z), 1),
                (y, z, -1),
                (x, r1yz, -1),
                (b.r2(x, r1yz), r2yz, -1),
            ] {
                row[u * m + v] += s;
            }
            row.into_iter().map(|v| v.rem_euclid(p as i64) as u64).collect()
        })
        .collect();
    let ker2 = m * m - rank_mod_prime(&d2, p);
    let im1 = rank_mod_prime(&d1, p);
    Ok(ker2 - im1)
}

/// Element of the group ring `Z[A]`, written multiplicatively as `Σ c_k t^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupRingElement {
    pub coefficients: Coefficients,
    pub terms: BTreeMap<i64, u64>,
}

impl GroupRingElement {
    pub fn new(coefficients: Coefficients) -> Self {
        GroupRingElement {
            coefficients,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exponent: i64, multiplicity: u64) {
        if multiplicity == 0 {
            return;
        }
        let k = self.coefficients.reduce(exponent);
        *self.terms.entry(k).or_insert(0) += multiplicity;
    }

    /// Image under `t ↦ 1`.
    pub fn augmentation(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Concentrated at the identity of `A`.
    pub fn is_trivial(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    pub fn coefficient(&self, exponent: i64) -> u64 {
        self.terms
            .get(&self.coefficients.reduce(exponent))
            .copied()
            .unwrap_or(0)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (&k, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (1, c) => write!(f, "{c}*t")?,
                (k, c) => write!(f, "{c}*t^{k}")?,
            }
        }
        if let Coefficients::Mod(n) = self.coefficients {
            write!(f, " (mod {n})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateSum {
    pub phi: GroupRingElement,
    /// `f` is a type I 2-cocycle, so `phi` is a link invariant.
    pub invariant: bool,
}

/// `Σ_τ ε(τ)·f(A1(τ), A2(τ))` for one coloring.
pub fn per_coloring_weight(d: &Diagram, b: &Biquandle, f: &Cochain2, c: &Coloring) -> Result<i64> {
    if f.m != b.order() {
        return Err(Error::Precondition("cochain carrier does not match the biquandle".into()));
    }
    if !c.is_valid(d, b) {
        return Err(Error::Precondition("not a coloring of this diagram".into()));
    }
    Ok(weight_unchecked(d, f, c))
}

fn weight_unchecked(d: &Diagram, f: &Cochain2, c: &Coloring) -> i64 {
    let w = d
        .crossings()
        .iter()
        .map(|x| {
            let [i0, i1] = x.inputs();
            x.sign.value() * f.get(c.0[i0], c.0[i1])
        })
        .sum();
    f.coeff.reduce(w)
}

/// Sum over colorings of `t^(total weight)`.
pub fn state_sum(d: &Diagram, b: &Biquandle, f: &Cochain2) -> Result<StateSum> {
    if f.m != b.order() {
        return Err(Error::Precondition("cochain carrier does not match the biquandle".into()));
    }
    let invariant = is_cocycle(f, b) && satisfies_type_one(f, b).unwrap_or(false);
    let colorings = enumerate_colorings(d, b, None);
    let exps: BTreeMap<i64, u64> = colorings
        .par_iter()
        .map(|c| weight_unchecked(d, f, c))
        .fold(BTreeMap::new, |mut acc: BTreeMap<i64, u64>, w| {
            *acc.entry(w).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut phi = GroupRingElement::new(f.coeff);
    for (k, v) in exps {
        phi.add_term(k, v);
    }
    Ok(StateSum { phi, invariant })
}
