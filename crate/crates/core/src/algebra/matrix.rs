//! Exact integer linear algebra: Smith normal form, integer kernels, and
//! congruence systems. Entries are arbitrary precision.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// Zero matrix. A matrix with zero rows is allowed: it is the relation
    /// matrix of a presentation without relators.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of small integers. All rows must share a length;
    /// `cols` is needed only when `rows` is empty.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row {i}");
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * &self[(src, j)];
            self[(dst, j)] -= delta;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * &self[(i, src)];
            self[(i, dst)] -= delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -&self[(i, j)];
            self[(i, j)] = x;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Invariant factors of a matrix, read as the relation matrix of a finitely
/// generated abelian group (rows are relations, columns generators).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries d1 | d2 | ... | dr, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    /// Free rank of the cokernel: `cols - rank`.
    pub free_rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one (the torsion of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

impl fmt::Display for SmithForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion().iter().map(|d| format!("Z{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn form(&self) -> SmithForm {
        SmithForm {
            factors: self.diagonal(),
            rank: self.rank,
            free_rank: self.d.cols() - self.rank,
        }
    }
}

/// Row/column reduction with pivot of minimal absolute value (ties: lowest
/// row, then lowest column).
pub fn smith_decomposition(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let pivot = d[(t, t)].clone();
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let q = d[(i, t)].div_floor(&pivot);
                    d.row_axpy(i, t, &q);
                    u.row_axpy(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let q = d[(t, j)].div_floor(&pivot);
                    d.col_axpy(j, t, &q);
                    v.col_axpy(j, t, &q);
                }
            }
            let clean = (t + 1..rows).all(|i| d[(i, t)].is_zero())
                && (t + 1..cols).all(|j| d[(t, j)].is_zero());
            if clean {
                let bad_row = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
                match bad_row {
                    None => break,
                    Some(i) => {
                        // row_t += row_i brings a non-multiple into row t
                        let minus_one = -BigInt::one();
                        d.row_axpy(t, i, &minus_one);
                        u.row_axpy(t, i, &minus_one);
                    }
                }
            }
            let (pi, pj) = min_pivot(&d, t).expect("nonzero pivot remains");
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition { u, v, d, rank: t }
}

fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    smith_decomposition(a).form()
}

/// Basis of the lattice `{x ∈ Z^cols : a x = 0}` in row Hermite normal form
/// (first nonzero entry of each vector positive).
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let sd = smith_decomposition(a);
    let basis: Vec<Vec<BigInt>> = (sd.rank..a.cols())
        .map(|j| (0..a.cols()).map(|i| sd.v[(i, j)].clone()).collect())
        .collect();
    hermite_rows(basis)
}

/// Row-style Hermite normal form of a set of linearly independent vectors;
/// the result spans the same lattice.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(cols) = rows.first().map(Vec::len) else {
        return rows;
    };
    let mut p = 0;
    for col in 0..cols {
        if p == rows.len() {
            break;
        }
        loop {
            let pick = (p..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()));
            let Some(i) = pick else { break };
            rows.swap(p, i);
            let mut done = true;
            for i in p + 1..rows.len() {
                if !rows[i][col].is_zero() {
                    let q = rows[i][col].div_floor(&rows[p][col]);
                    sub_scaled(&mut rows, i, p, &q);
                    if !rows[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[p][col].is_zero() {
            continue;
        }
        if rows[p][col].is_negative() {
            for x in rows[p].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..p {
            let q = rows[i][col].div_floor(&rows[p][col]);
            if !q.is_zero() {
                sub_scaled(&mut rows, i, p, &q);
            }
        }
        p += 1;
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows
}

fn sub_scaled(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let delta: Vec<BigInt> = rows[src].iter().map(|x| q * x).collect();
    for (x, dx) in rows[dst].iter_mut().zip(delta) {
        *x -= dx;
    }
}

/// One integer solution of `a x = b`, or `None` if there is none.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let sd = smith_decomposition(a);
    let c = sd.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < sd.rank {
            let di = &sd.d[(i, i)];
            if !ci.is_multiple_of(di) {
                return None;
            }
            y[i] = ci / di;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(sd.v.mul_vec(&y))
}

/// Solutions of the homogeneous congruence `a x ≡ 0 (mod n)`.
#[derive(Debug, Clone)]
pub struct ModSolutions {
    modulus: u64,
    /// `v` reduced mod n, column-major by y-coordinate.
    v: Vec<Vec<u64>>,
    /// For each y-coordinate: (step, number of choices).
    steps: Vec<(u64, u64)>,
}

impl ModSolutions {
    pub fn count(&self) -> BigUint {
        self.steps
            .iter()
            .fold(BigUint::one(), |acc, &(_, k)| acc * BigUint::from(k))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Lazily enumerates all solutions; order is mixed-radix in the Smith
    /// coordinates.
    pub fn iter(&self) -> ModSolutionIter<'_> {
        ModSolutionIter {
            sol: self,
            digits: vec![0; self.steps.len()],
            done: false,
        }
    }
}

pub struct ModSolutionIter<'a> {
    sol: &'a ModSolutions,
    digits: Vec<u64>,
    done: bool,
}

impl Iterator for ModSolutionIter<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let n = self.sol.modulus as u128;
        let cols = self.sol.v.len();
        let mut x = vec![0u64; cols];
        for (j, (&digit, &(step, _))) in self.digits.iter().zip(&self.sol.steps).enumerate() {
            let yj = (digit as u128 * step as u128) % n;
            if yj == 0 {
                continue;
            }
            for (i, xi) in x.iter_mut().enumerate() {
                *xi = ((*xi as u128 + self.sol.v[i][j] as u128 * yj) % n) as u64;
            }
        }
        // advance the mixed-radix counter
        let mut k = 0;
        loop {
            if k == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[k] += 1;
            if self.digits[k] < self.sol.steps[k].1 {
                break;
            }
            self.digits[k] = 0;
            k += 1;
        }
        Some(x)
    }
}

/// `x ↦ a x (mod n)`: solution count is `n^cols / |image|`.
pub fn solve_mod(a: &IntMatrix, n: u64) -> ModSolutions {
    assert!(n >= 2, "modulus must be at least 2");
    let sd = smith_decomposition(a);
    let nb = BigInt::from(n);
    let v = (0..a.cols())
        .map(|i| {
            (0..a.cols())
                .map(|j| sd.v[(i, j)].mod_floor(&nb).to_u64().unwrap())
                .collect()
        })
        .collect();
    let steps = (0..a.cols())
        .map(|j| {
            if j < sd.rank {
                let g = sd.d[(j, j)].gcd(&nb).to_u64().unwrap();
                (n / g, g)
            } else {
                (1, n)
            }
        })
        .collect();
    ModSolutions {
        modulus: n,
        v,
        steps,
    }
}

/// Rank of a matrix over the prime field `Z_p`.
pub fn rank_mod_prime(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    echelon_mod_prime(&mut m, p, None)
}

/// One solution of `a x = b` over `Z_p`, free variables set to zero.
pub fn solve_affine_mod_prime(rows: &[Vec<u64>], b: &[u64], p: u64) -> Option<Vec<u64>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut r: Vec<u64> = r.iter().map(|x| x % p).collect();
            r.push(bi % p);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    echelon_mod_prime(&mut m, p, Some(&mut pivots));
    // a pivot in the augmented column means inconsistency
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols];
    }
    Some(x)
}

/// Reduced row echelon form in place; returns the rank.
fn echelon_mod_prime(m: &mut [Vec<u64>], p: u64, mut pivots: Option<&mut Vec<usize>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, i);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
                }
            }
        }
        if let Some(pv) = pivots.as_deref_mut() {
            pv.push(c);
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}
