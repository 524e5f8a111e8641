//! Alexander numberings, the checkerboard obstruction, and coloring spans over
//! the infinite abelian Wada biquandle `Z`.
//!
//! With a crossing rotated so both strands point down, the left edges carry
//! `i` and the right edges `i + 1`. In positional terms (see
//! [`crate::diagram`]) this reads, at every crossing,
//! `A(out0) = A(in0)`, `A(in1) = A(in0) + 1`, `A(out1) = A(in0) + 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{integer_kernel, solve_affine_mod_prime, solve_integer, IntMatrix};
use crate::biquandle::Biquandle;
use crate::cocycle::{per_coloring_weight, Cochain2};
use crate::coloring::Colorings;
use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// Edge id → `Z_2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Mod2Numbering(Vec<u8>);

impl Mod2Numbering {
    pub fn new(values: Vec<u8>) -> Self {
        Mod2Numbering(values)
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn is_valid(&self, d: &Diagram) -> bool {
        self.0.len() == d.edge_count()
            && self.0.iter().all(|&x| x < 2)
            && d.crossings().iter().all(|c| {
                let [i0, i1] = c.inputs();
                let [o0, o1] = c.outputs();
                let a = self.0[i0];
                self.0[o0] == a && self.0[i1] == 1 - a && self.0[o1] == 1 - a
            })
    }
}

/// Edge id → `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntNumbering(Vec<i64>);

impl IntNumbering {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn is_valid(&self, d: &Diagram) -> bool {
        self.0.len() == d.edge_count()
            && d.crossings().iter().all(|c| {
                let [i0, i1] = c.inputs();
                let [o0, o1] = c.outputs();
                let a = self.0[i0];
                self.0[o0] == a && self.0[i1] == a + 1 && self.0[o1] == a + 1
            })
    }

    pub fn to_mod2(&self) -> Mod2Numbering {
        Mod2Numbering(self.0.iter().map(|x| x.rem_euclid(2) as u8).collect())
    }
}

/// Affine system `A x = b` of the numbering constraints (three rows per crossing).
fn numbering_system(d: &Diagram) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = d.edge_count();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for c in d.crossings() {
        let [i0, i1] = c.inputs();
        let [o0, o1] = c.outputs();
        for (e, b) in [(o0, 0), (i1, 1), (o1, 1)] {
            let mut r = vec![0i64; n];
            r[e] += 1;
            r[i0] -= 1;
            rows.push(r);
            rhs.push(b);
        }
    }
    (rows, rhs)
}

/// Any mod-2 Alexander numbering of this diagram, normalized so edge 0 is 0.
pub fn mod2_numbering(d: &Diagram) -> Option<Mod2Numbering> {
    let (rows, rhs) = numbering_system(d);
    if rows.is_empty() {
        return Some(Mod2Numbering(vec![0; d.edge_count()]));
    }
    let rows: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(2) as u64).collect())
        .collect();
    let rhs: Vec<u64> = rhs.iter().map(|&b| b as u64).collect();
    let x = solve_affine_mod_prime(&rows, &rhs, 2)?;
    let shift = x[0];
    Some(Mod2Numbering(x.iter().map(|&v| ((v + shift) % 2) as u8).collect()))
}

/// Any integer Alexander numbering, normalized so edge 0 is 0.
pub fn integer_numbering(d: &Diagram) -> Option<IntNumbering> {
    let (rows, rhs) = numbering_system(d);
    let a = IntMatrix::from_rows(&rows, d.edge_count());
    let b: Vec<BigInt> = rhs.into_iter().map(BigInt::from).collect();
    let x = solve_integer(&a, &b)?;
    let x: Vec<i64> = x.iter().map(|v| v.to_i64().expect("numbering fits in i64")).collect();
    let shift = x[0];
    Some(IntNumbering(x.iter().map(|v| v - shift).collect()))
}

/// Linear system of colorings by the abelian Wada biquandle over `Z`:
/// `A3 = -A2`, `A4 = A1 + 2·A2` at every crossing.
pub fn coloring_system(d: &Diagram) -> IntMatrix {
    let n = d.edge_count();
    let mut rows = Vec::new();
    for c in d.crossings() {
        let [i0, i1] = c.inputs();
        let [o0, o1] = c.outputs();
        let mut r = vec![0i64; n];
        r[o0] += 1;
        r[i1] += 1;
        rows.push(r);
        let mut r = vec![0i64; n];
        r[o1] += 1;
        r[i0] -= 1;
        r[i1] -= 2;
        rows.push(r);
    }
    IntMatrix::from_rows(&rows, n)
}

pub fn is_integer_coloring(d: &Diagram, c: &[i64]) -> bool {
    c.len() == d.edge_count()
        && d.crossings().iter().all(|x| {
            let [i0, i1] = x.inputs();
            let [o0, o1] = x.outputs();
            c[o0] == -c[i1] && c[o1] == c[i0] + 2 * c[i1]
        })
}

/// Basis of the lattice of colorings over `Z` (Hermite normal form rows).
pub fn coloring_lattice(d: &Diagram) -> Vec<Vec<i64>> {
    integer_kernel(&coloring_system(d))
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().expect("basis entry fits in i64")).collect())
        .collect()
}

/// Total additive-cocycle weight `Σ ε(τ)·(A1 + A2)` of an integer coloring.
pub fn integer_weight(d: &Diagram, c: &[i64]) -> i64 {
    d.crossings()
        .iter()
        .map(|x| {
            let [i0, i1] = x.inputs();
            x.sign.value() * (c[i0] + c[i1])
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    /// Coefficient modulus; 0 means `Z`.
    pub modulus: u64,
    /// Some coloring has nonzero total additive weight.
    pub obstructed: bool,
    pub witness: Option<Vec<i64>>,
    pub weight: Option<i64>,
}

/// Searches for a coloring by the abelian Wada biquandle (`Z_n`, `n` odd, or
/// `Z` for `n = 0`) whose additive-cocycle weight is nonzero.
pub fn checkerboard_obstruction(d: &Diagram, n: u64) -> Result<ObstructionReport> {
    if n == 0 {
        for v in coloring_lattice(d) {
            let w = integer_weight(d, &v);
            if w != 0 {
                return Ok(ObstructionReport {
                    modulus: 0,
                    obstructed: true,
                    witness: Some(v),
                    weight: Some(w),
                });
            }
        }
        return Ok(ObstructionReport {
            modulus: 0,
            obstructed: false,
            witness: None,
            weight: None,
        });
    }
    if n < 3 || n % 2 == 0 {
        return Err(Error::Precondition(format!("obstruction needs n odd >= 3 or n = 0, got {n}")));
    }
    let b = Biquandle::abelian_wada(n as usize)?;
    let f = Cochain2::additive(n);
    for c in Colorings::new(d, &b) {
        let w = per_coloring_weight(d, &b, &f, &c)?;
        if w != 0 {
            return Ok(ObstructionReport {
                modulus: n,
                obstructed: true,
                witness: Some(c.0.iter().map(|&x| x as i64).collect()),
                weight: Some(w),
            });
        }
    }
    Ok(ObstructionReport {
        modulus: n,
        obstructed: false,
        witness: None,
        weight: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub basis: Vec<Vec<i64>>,
    /// Smallest span found among nonzero lattice vectors in the search box.
    pub span: Option<i64>,
    pub witness: Option<Vec<i64>>,
    /// Coefficients of the witness over `basis`.
    pub coefficients: Option<Vec<i64>>,
    /// Search radius used on each basis coefficient.
    pub bound: u64,
    /// Radius that provably contains every nonzero vector of span at most
    /// `span`.
    pub required_bound: Option<u64>,
    /// The reported span is the diagram's true minimum.
    pub exact: bool,
}

fn span_of(v: &[i64]) -> i64 {
    let max = v.iter().copied().max().unwrap_or(0);
    let min = v.iter().copied().min().unwrap_or(0);
    max - min
}

/// Minimal span over nonzero integer colorings whose basis coefficients lie
/// in `[-bound, bound]`.
pub fn min_span(d: &Diagram, bound: u64) -> SpanReport {
    let basis = coloring_lattice(d);
    let r = basis.len();
    let edges = d.edge_count();
    let b = bound as i64;
    let combine = |coef: &[i64]| -> Vec<i64> {
        let mut v = vec![0i64; edges];
        for (c, row) in coef.iter().zip(&basis) {
            if *c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x += c * y;
                }
            }
        }
        v
    };
    // v and -v have equal span: the first nonzero coefficient is positive
    let best = (0..=b)
        .into_par_iter()
        .filter_map(|c0| {
            let mut best: Option<(i64, Vec<i64>)> = None;
            let mut coef = vec![-b; r];
            if r == 0 {
                return None;
            }
            coef[0] = c0;
            loop {
                let first = coef.iter().find(|&&c| c != 0);
                if matches!(first, Some(&c) if c > 0) {
                    let s = span_of(&combine(&coef));
                    if best.as_ref().map_or(true, |(bs, _)| s < *bs) {
                        best = Some((s, coef.clone()));
                    }
                }
                // odometer over coordinates 1..r
                let mut k = r - 1;
                loop {
                    if k == 0 {
                        return best;
                    }
                    if coef[k] < b {
                        coef[k] += 1;
                        break;
                    }
                    coef[k] = -b;
                    k -= 1;
                }
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .min_by(|(s1, c1), (s2, c2)| s1.cmp(s2).then_with(|| c1.cmp(c2)));
    let Some((span, coefficients)) = best else {
        return SpanReport {
            basis,
            span: None,
            witness: None,
            coefficients: None,
            bound,
            required_bound: None,
            exact: false,
        };
    };
    let witness = combine(&coefficients);
    let required = if span == 0 {
        0
    } else if d.crossing_count() == 0 {
        // spans are attained by any vector; only span 0 is certain
        u64::MAX
    } else {
        required_coefficient_bound(&basis, span + span / 2)
    };
    SpanReport {
        basis,
        span: Some(span),
        witness: Some(witness),
        coefficients: Some(coefficients),
        bound,
        required_bound: Some(required),
        exact: bound >= required,
    }
}

/// Over each crossing the colors `a` and `-a` both appear on the over strand,
/// so a vector of span `s` has an entry of size at most `s/2` and all entries
/// bounded by `s + s/2`. This maps that entry bound to a coefficient bound
/// through the triangular pivot block of the Hermite basis.
fn required_coefficient_bound(basis: &[Vec<i64>], entry_bound: i64) -> u64 {
    let r = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("nonzero basis vector"))
        .collect();
    // m[i][k] = basis[k][pivots[i]] is lower triangular with positive diagonal
    let m: Vec<Vec<BigInt>> = (0..r)
        .map(|i| (0..r).map(|k| BigInt::from(basis[k][pivots[i]])).collect())
        .collect();
    let det: BigInt = (0..r).map(|i| m[i][i].clone()).product();
    // adj = det · m^-1 by forward substitution; every division is exact
    let mut adj = vec![vec![BigInt::zero(); r]; r];
    for j in 0..r {
        for i in 0..r {
            let mut acc = if i == j { det.clone() } else { BigInt::zero() };
            for k in 0..i {
                acc -= &m[i][k] * &adj[k][j];
            }
            debug_assert!(acc.is_multiple_of(&m[i][i]));
            adj[i][j] = acc / &m[i][i];
        }
    }
    let e = BigInt::from(entry_bound);
    (0..r)
        .map(|i| {
            let row_sum: BigInt = adj[i].iter().map(|x| x.abs()).sum();
            let num = row_sum * &e;
            let (q, rem) = num.div_rem(&det);
            let q = if rem.is_zero() { q } else { q + 1 };
            q.to_u64().unwrap_or(u64::MAX)
        })
        .max()
        .unwrap_or(0)
}
