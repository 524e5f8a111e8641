//! Finite groups given by explicit Cayley tables.
//!
//! Element ordering for the built-in families:
//!
//! * `cyclic(n)`: element `i` is the residue `i mod n`.
//! * `dihedral(n)` (order `2n`): element `i + n*j` is `r^i s^j`.
//! * `symmetric(n)`: permutations of `0..n` in lexicographic order of their
//!   one-line notation; `p * q` is the composition `p ∘ q` (apply `q` first).
//! * `semidirect_cyclic(m, k, a)`: element `i + m*j` is `s^i t^j` with
//!   `t s t^-1 = s^a`.
//! * `direct_product(G, H)`: element `g * |H| + h` is `(g, h)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order accepted by the constructors; tables are dense and the
/// associativity check is cubic.
pub const MAX_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Serialized form of a group: a name plus its full multiplication table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CayleyTable {
    pub name: String,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table and checks every
    /// group axiom exhaustively.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Self> {
        let name = name.into();
        if order == 0 {
            return Err(Error::InvalidGroup("empty carrier".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= order) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name,
            order,
            table,
            identity,
            inverse,
        })
    }

    fn from_fn(name: String, order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::InvalidGroup(format!(
                "{name}: order {order} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(f(a, b));
            }
        }
        Self::from_table(name, order, table)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        Self::from_fn(format!("Z{n}"), n, |a, b| (a + b) % n)
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("dihedral group D0".into()));
        }
        let order = n.checked_mul(2).ok_or_else(|| Error::InvalidGroup("dihedral order overflows".into()))?;
        Self::from_fn(format!("D{n}"), order, |a, b| {
            let (i, j) = (a % n, a / n);
            let (k, l) = (b % n, b / n);
            let k = if j == 1 { (n - k) % n } else { k };
            (i + k) % n + n * ((j + l) % 2)
        })
    }

    /// Symmetric group on `n ≤ 5` points.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidGroup(format!("symmetric group S{n} unsupported")));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        Self::from_fn(format!("S{n}"), perms.len(), |a, b| {
            let (p, q) = (&perms[a], &perms[b]);
            let pq: Vec<usize> = (0..n).map(|i| p[q[i]]).collect();
            index(&pq)
        })
    }

    /// `Z_m ⋊ Z_k` where the generator of `Z_k` acts by multiplication by `a`.
    pub fn semidirect_cyclic(m: usize, k: usize, a: usize) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(Error::InvalidGroup("semidirect factors must be nontrivial".into()));
        }
        let order = m
            .checked_mul(k)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidGroup(format!("Z{m}:Z{k} exceeds the supported maximum order {MAX_ORDER}")))?;
        let a = a % m;
        let mut powers = vec![1 % m; k + 1];
        for j in 1..=k {
            powers[j] = powers[j - 1] * a % m;
        }
        if powers[k] != 1 % m {
            return Err(Error::InvalidGroup(format!(
                "{a}^{k} is not 1 mod {m}; no action of Z{k} on Z{m}"
            )));
        }
        Self::from_fn(format!("Z{m}:Z{k}({a})"), order, |x, y| {
            let (i1, j1) = (x % m, x / m);
            let (i2, j2) = (y % m, y / m);
            (i1 + powers[j1] * i2) % m + m * ((j1 + j2) % k)
        })
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let hn = h.order;
        Self::from_fn(format!("{}x{}", g.name, h.name), g.order * hn, |a, b| {
            g.mul(a / hn, b / hn) * hn + h.mul(a % hn, b % hn)
        })
    }

    /// Parses the group mini-language: `z:<n>`, `d:<n>`, `s:<n>`,
    /// `sd:<m>:<k>:<a>`, `prod:<spec>x<spec>[x<spec>...]`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("prod:") {
            let mut factors = rest.split('x').map(Self::parse_spec);
            let first = factors
                .next()
                .ok_or_else(|| Error::parse(0, spec, "empty product"))??;
            let mut acc = first;
            for f in factors {
                acc = Self::direct_product(&acc, &f?)?;
            }
            return Ok(acc);
        }
        let parts: Vec<&str> = spec.split(':').collect();
        let num = |i: usize| -> Result<usize> {
            parts
                .get(i)
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| Error::parse(0, spec, "expected a nonnegative integer parameter"))
        };
        let mut group = match (parts[0], parts.len()) {
            ("z", 2) => Self::cyclic(num(1)?),
            ("d", 2) => Self::dihedral(num(1)?),
            ("s", 2) => Self::symmetric(num(1)?),
            ("sd", 4) => Self::semidirect_cyclic(num(1)?, num(2)?, num(3)?),
            _ => Err(Error::parse(0, spec, "unknown group spec")),
        }?;
        group.name = spec.to_string();
        Ok(group)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let k = k.rem_euclid(self.order as i64);
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn to_cayley(&self) -> CayleyTable {
        CayleyTable {
            name: self.name.clone(),
            table: self.table.chunks(self.order).map(|r| r.to_vec()).collect(),
        }
    }

    pub fn from_cayley(t: &CayleyTable) -> Result<Self> {
        let order = t.table.len();
        if t.table.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        Self::from_table(t.name.clone(), order, t.table.concat())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The fixed test battery: Z2..Z7, S3, D4 (order 8) and F20 = Z5 ⋊ Z4.
pub fn battery() -> Vec<FiniteGroup> {
    let mut groups: Vec<FiniteGroup> = (2..=7).map(|n| FiniteGroup::cyclic(n).unwrap()).collect();
    groups.push(FiniteGroup::parse_spec("s:3").unwrap());
    groups.push(FiniteGroup::parse_spec("d:4").unwrap());
    groups.push(FiniteGroup::parse_spec("sd:5:4:2").unwrap());
    groups
}
