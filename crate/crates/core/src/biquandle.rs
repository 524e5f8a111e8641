//! Biracks and biquandles on finite carriers, built from Wada word pairs.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{FiniteGroup, FreeWord};
use crate::error::{Axiom, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WadaKind {
    W1,
    W2,
    Core,
}

impl WadaKind {
    pub const ALL: [WadaKind; 3] = [WadaKind::W1, WadaKind::W2, WadaKind::Core];

    pub fn pair(self) -> WadaPair {
        WadaPair::of(self)
    }

    pub fn parse(s: &str) -> Option<WadaKind> {
        match s.to_ascii_lowercase().as_str() {
            "w1" => Some(WadaKind::W1),
            "w2" => Some(WadaKind::W2),
            "core" => Some(WadaKind::Core),
            _ => None,
        }
    }
}

impl fmt::Display for WadaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WadaKind::W1 => "W1",
            WadaKind::W2 => "W2",
            WadaKind::Core => "Core",
        })
    }
}

/// Words `u(x, y)`, `v(x, y)`; the pair map is `R(x, y) = (u(x, y), v(x, y))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WadaPair {
    pub u: FreeWord,
    pub v: FreeWord,
    /// `None` for custom pairs.
    pub kind: Option<WadaKind>,
}

impl WadaPair {
    pub fn of(kind: WadaKind) -> Self {
        let (u, v) = match kind {
            WadaKind::W1 => ("y^-1", "y x y"),
            WadaKind::W2 => ("x^-1 y^-1 x", "y^2 x"),
            WadaKind::Core => ("y", "y x^-1 y"),
        };
        WadaPair {
            u: FreeWord::parse(u).unwrap(),
            v: FreeWord::parse(v).unwrap(),
            kind: Some(kind),
        }
    }

    pub fn custom(u: FreeWord, v: FreeWord) -> Self {
        WadaPair { u, v, kind: None }
    }

    pub fn name(&self) -> String {
        match self.kind {
            Some(k) => k.to_string(),
            None => format!("Custom(u={}, v={})", self.u, self.v),
        }
    }
}

/// How much of the axiom sweep to run at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Verify {
    /// All birack axioms including the O(m³) Yang-Baxter sweep.
    #[default]
    Full,
    /// Skip the Yang-Baxter sweep (large carriers).
    SkipYangBaxter,
}

/// Fixpoint tables of the type I condition: `R(x_a, a) = (x_a, a)` and
/// `R(a, y_a) = (a, y_a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeOne {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// A birack on `{0, …, m-1}` with all derived tables; a biquandle when the
/// type I tables exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biquandle {
    name: String,
    m: usize,
    r1: Vec<usize>,
    r2: Vec<usize>,
    rbar: Vec<(usize, usize)>,
    /// `left_inv[a1 * m + a3] = a2` with `R1(a1, a2) = a3`.
    left_inv: Vec<usize>,
    /// `right_inv[a2 * m + a4] = a1` with `R2(a1, a2) = a4`.
    right_inv: Vec<usize>,
    type_one: Option<TypeOne>,
}

impl Biquandle {
    /// Builds a birack from row-major tables `r1[x*m + y]`, `r2[x*m + y]`,
    /// verifying the axioms and reporting the first counterexample.
    pub fn from_tables(
        name: impl Into<String>,
        m: usize,
        r1: Vec<usize>,
        r2: Vec<usize>,
        verify: Verify,
    ) -> Result<Self> {
        if m == 0 || r1.len() != m * m || r2.len() != m * m {
            return Err(Error::Precondition("tables must be m×m with m ≥ 1".into()));
        }
        if r1.iter().chain(&r2).any(|&v| v >= m) {
            return Err(Error::Precondition("table entry outside the carrier".into()));
        }
        let mut rbar = vec![(usize::MAX, usize::MAX); m * m];
        for x in 0..m {
            for y in 0..m {
                let (a, b) = (r1[x * m + y], r2[x * m + y]);
                if rbar[a * m + b].0 != usize::MAX {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::Invertible,
                        witness: vec![x, y],
                    });
                }
                rbar[a * m + b] = (x, y);
            }
        }
        let mut left_inv = vec![usize::MAX; m * m];
        for a1 in 0..m {
            for a2 in 0..m {
                let a3 = r1[a1 * m + a2];
                if left_inv[a1 * m + a3] != usize::MAX {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::LeftInvertible,
                        witness: vec![a1, a3],
                    });
                }
                left_inv[a1 * m + a3] = a2;
            }
        }
        let mut right_inv = vec![usize::MAX; m * m];
        for a2 in 0..m {
            for a1 in 0..m {
                let a4 = r2[a1 * m + a2];
                if right_inv[a2 * m + a4] != usize::MAX {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::RightInvertible,
                        witness: vec![a2, a4],
                    });
                }
                right_inv[a2 * m + a4] = a1;
            }
        }
        let mut b = Biquandle {
            name: name.into(),
            m,
            r1,
            r2,
            rbar,
            left_inv,
            right_inv,
            type_one: None,
        };
        if verify == Verify::Full {
            if let Err(w) = ybe_check(&b) {
                return Err(Error::AxiomViolation {
                    axiom: Axiom::YangBaxter,
                    witness: w.to_vec(),
                });
            }
        }
        b.type_one = b.compute_type_one().ok();
        Ok(b)
    }

    /// Finds the unique `x_a`, `y_a` for every `a`, or the first `a` where
    /// uniqueness or existence fails.
    fn compute_type_one(&self) -> std::result::Result<TypeOne, usize> {
        let m = self.m;
        let mut xs = Vec::with_capacity(m);
        let mut ys = Vec::with_capacity(m);
        for a in 0..m {
            let x: Vec<usize> = (0..m)
                .filter(|&x| self.r1(x, a) == x && self.r2(x, a) == a)
                .collect();
            let y: Vec<usize> = (0..m)
                .filter(|&y| self.r2(a, y) == y && self.r1(a, y) == a)
                .collect();
            match (x.as_slice(), y.as_slice()) {
                ([x], [y]) => {
                    xs.push(*x);
                    ys.push(*y);
                }
                _ => return Err(a),
            }
        }
        Ok(TypeOne { x: xs, y: ys })
    }

    /// Like [`Biquandle::from_tables`] but fails unless the type I condition holds.
    pub fn biquandle_from_tables(
        name: impl Into<String>,
        m: usize,
        r1: Vec<usize>,
        r2: Vec<usize>,
        verify: Verify,
    ) -> Result<Self> {
        let b = Self::from_tables(name, m, r1, r2, verify)?;
        if let Err(a) = b.compute_type_one() {
            return Err(Error::AxiomViolation {
                axiom: Axiom::TypeOne,
                witness: vec![a],
            });
        }
        Ok(b)
    }

    /// Group birack `R1 = u`, `R2 = v` evaluated in `group`.
    pub fn from_wada(pair: &WadaPair, group: &FiniteGroup) -> Result<Self> {
        Self::from_wada_with(pair, group, Verify::Full)
    }

    pub fn from_wada_with(pair: &WadaPair, group: &FiniteGroup, verify: Verify) -> Result<Self> {
        let m = group.order();
        let mut r1 = Vec::with_capacity(m * m);
        let mut r2 = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                r1.push(pair.u.eval(x, y, group));
                r2.push(pair.v.eval(x, y, group));
            }
        }
        Self::from_tables(format!("{}({})", pair.name(), group.name()), m, r1, r2, verify)
    }

    /// The abelian Wada biquandle on `Z_n`: `R(x, y) = (-y, 2y + x)`.
    pub fn abelian_wada(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!(
                "abelian Wada biquandle needs n >= 2, got {n}"
            )));
        }
        let mut r1 = Vec::with_capacity(n * n);
        let mut r2 = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                r1.push((n - y) % n);
                r2.push((x + 2 * y) % n);
            }
        }
        Self::from_tables(format!("abelian(Z{n})"), n, r1, r2, Verify::Full)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn r1(&self, x: usize, y: usize) -> usize {
        self.r1[x * self.m + y]
    }

    #[inline]
    pub fn r2(&self, x: usize, y: usize) -> usize {
        self.r2[x * self.m + y]
    }

    #[inline]
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.r1(x, y), self.r2(x, y))
    }

    #[inline]
    pub fn rbar(&self, a: usize, b: usize) -> (usize, usize) {
        self.rbar[a * self.m + b]
    }

    /// The `a2` with `R1(a1, a2) = a3`.
    #[inline]
    pub fn left_inverse(&self, a1: usize, a3: usize) -> usize {
        self.left_inv[a1 * self.m + a3]
    }

    /// The `a1` with `R2(a1, a2) = a4`.
    #[inline]
    pub fn right_inverse(&self, a2: usize, a4: usize) -> usize {
        self.right_inv[a2 * self.m + a4]
    }

    pub fn is_biquandle(&self) -> bool {
        self.type_one.is_some()
    }

    pub fn type_one(&self) -> Option<&TypeOne> {
        self.type_one.as_ref()
    }

    pub fn r1_table(&self) -> &[usize] {
        &self.r1
    }

    pub fn r2_table(&self) -> &[usize] {
        &self.r2
    }
}

/// Exhaustive set-theoretic Yang-Baxter check; returns the first failing triple.
pub fn ybe_check(b: &Biquandle) -> std::result::Result<(), [usize; 3]> {
    let m = b.order();
    let bad = (0..m).into_par_iter().find_map_first(|x| {
        for y in 0..m {
            for z in 0..m {
                // (R×1)(1×R)(R×1) applied left to right
                let (a1, a2) = b.r(x, y);
                let (a2, a3) = b.r(a2, z);
                let (a1, a2) = b.r(a1, a2);
                // (1×R)(R×1)(1×R)
                let (c2, c3) = b.r(y, z);
                let (c1, c2) = b.r(x, c2);
                let (c2, c3) = b.r(c2, c3);
                if (a1, a2, a3) != (c1, c2, c3) {
                    return Some([x, y, z]);
                }
            }
        }
        None
    });
    match bad {
        Some(w) => Err(w),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WadaCondition {
    T,
    M,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WadaReport {
    pub t: bool,
    pub m: bool,
    pub b: bool,
    /// First failing condition and triple, in T, M, B order of discovery.
    pub witness: Option<(WadaCondition, [usize; 3])>,
}

impl WadaReport {
    pub fn all(&self) -> bool {
        self.t && self.m && self.b
    }
}

/// Tests Wada's conditions T, M, B over all triples of `group` by direct word
/// evaluation (independent of any birack tables).
pub fn wada_conditions(pair: &WadaPair, group: &FiniteGroup) -> WadaReport {
    let u = |x, y| pair.u.eval(x, y, group);
    let v = |x, y| pair.v.eval(x, y, group);
    let mut report = WadaReport {
        t: true,
        m: true,
        b: true,
        witness: None,
    };
    let n = group.order();
    for x in 0..n {
        for y in 0..n {
            let (uxy, vxy) = (u(x, y), v(x, y));
            for z in 0..n {
                let (uyz, vyz) = (u(y, z), v(y, z));
                let u_vxy_z = u(vxy, z);
                let v_x_uyz = v(x, uyz);
                let checks = [
                    (WadaCondition::T, u(uxy, u_vxy_z) == u(x, uyz)),
                    (WadaCondition::M, v(uxy, u_vxy_z) == u(v_x_uyz, vyz)),
                    (WadaCondition::B, v(vxy, z) == v(v_x_uyz, vyz)),
                ];
                for (cond, ok) in checks {
                    if ok {
                        continue;
                    }
                    match cond {
                        WadaCondition::T => report.t = false,
                        WadaCondition::M => report.m = false,
                        WadaCondition::B => report.b = false,
                    }
                    if report.witness.is_none() {
                        report.witness = Some((cond, [x, y, z]));
                    }
                }
            }
        }
    }
    report
}
