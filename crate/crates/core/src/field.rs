//! Prime-field arithmetic and exact dense linear algebra.
//!
//! Everything in the crate reduces to ranks and kernels of matrices over
//! `Z/p`. Elements are plain `u32` residues in `[0, p)`; the [`PrimeField`]
//! handle carries the modulus and is `Copy`, so matrices and subspaces hold
//! their own copy and never consult global state.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default session modulus.
pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    /// Requires `p > 2 * (parameter + 3)` so that lattice distraction
    /// coordinates and line sample parameters stay distinct.
    pub fn check_parameter(self, parameter: u64) -> Result<()> {
        let required = 2 * (parameter + 3);
        if (self.p as u64) <= required {
            return Err(Error::ModulusTooSmall { modulus: self.p, required });
        }
        Ok(())
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.p - b % self.p)
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> u32 {
        rng.gen_range(1..self.p)
    }

    /// Signed representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// In-place Gaussian elimination on a list of rows of length `cols`.
///
/// Zero rows are dropped; the surviving rows are in row echelon form with
/// leading coefficient 1 (fully reduced when `reduced` is set). Columns are
/// visited in the order given by `column_order`.
fn eliminate(
    field: PrimeField,
    rows: &mut Vec<Vec<u32>>,
    column_order: &[usize],
    reduced: bool,
) -> Vec<usize> {
    let p = field.modulus() as u64;
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in column_order {
        if r == n {
            break;
        }
        let Some(found) = (r..n).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let mut pivot_row = std::mem::take(&mut rows[r]);
        let inv = field.inv(pivot_row[c]);
        if inv != 1 {
            for x in pivot_row.iter_mut() {
                if *x != 0 {
                    *x = ((*x as u64 * inv as u64) % p) as u32;
                }
            }
        }
        let support: Vec<usize> = (0..pivot_row.len()).filter(|&k| pivot_row[k] != 0).collect();
        let start = if reduced { 0 } else { r + 1 };
        for (i, row) in rows.iter_mut().enumerate().skip(start) {
            if i == r {
                continue;
            }
            let f = row[c];
            if f == 0 {
                continue;
            }
            let neg = p - f as u64;
            for &k in &support {
                row[k] = ((row[k] as u64 + neg * pivot_row[k] as u64) % p) as u32;
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Dense row-major matrix over a prime field. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl ExactMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        let p = field.modulus();
        Ok(ExactMatrix { field, rows, cols, data: data.into_iter().map(|x| x % p).collect() })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        ExactMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Self::new(field, n, cols, data)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![0; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        ExactMatrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rank_with_column_order(&order)
    }

    /// Rank computed with pivots searched in the given column order; any
    /// permutation of `0..cols` yields the same value.
    pub fn rank_with_column_order(&self, order: &[usize]) -> usize {
        let mut rows = self.row_vectors();
        eliminate(self.field, &mut rows, order, false).len()
    }

    /// Reduced row echelon form: the nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Vec<Vec<u32>>, Vec<usize>) {
        let mut rows = self.row_vectors();
        let order: Vec<usize> = (0..self.cols).collect();
        let pivots = eliminate(self.field, &mut rows, &order, true);
        (rows, pivots)
    }

    /// Basis of the right kernel as a list of vectors of length `cols`.
    pub fn kernel_vectors(&self) -> Vec<Vec<u32>> {
        let (rows, pivots) = self.rref();
        kernel_from_rref(self.field, self.cols, &rows, &pivots)
    }

    /// Basis of the right kernel, one basis vector per column.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let vecs = self.kernel_vectors();
        let k = vecs.len();
        let mut data = vec![0; self.cols * k];
        for (j, v) in vecs.iter().enumerate() {
            for i in 0..self.cols {
                data[i * k + j] = v[i];
            }
        }
        ExactMatrix { field: self.field, rows: self.cols, cols: k, data }
    }
}

fn kernel_from_rref(field: PrimeField, cols: usize, rows: &[Vec<u32>], pivots: &[usize]) -> Vec<Vec<u32>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(pivots) {
            v[pc] = field.neg(row[free]);
        }
        out.push(v);
    }
    out
}

/// Vectors `x` with `sum_i x_i * rows[i] = 0`, i.e. the left kernel.
pub fn left_kernel(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let k = rows.len();
    let mut aug: Vec<Vec<u32>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = Vec::with_capacity(cols + k);
            v.extend_from_slice(r);
            v.resize(cols + k, 0);
            v[cols + i] = 1;
            v
        })
        .collect();
    let order: Vec<usize> = (0..cols + k).collect();
    eliminate(field, &mut aug, &order, false);
    aug.into_iter()
        .filter(|r| r[..cols].iter().all(|&x| x == 0))
        .map(|r| r[cols..].to_vec())
        .collect()
}

/// Which subspace operation to run in [`subspace_ops`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersection,
    Membership,
    QuotientDim,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceOutcome {
    Basis(Subspace),
    Count(usize),
    Flag(bool),
}

/// Dispatcher over the subspace algebra. For `Membership` the single basis
/// vector of `b` is tested against `a`; `QuotientDim` returns `dim a/(a∩b)`.
pub fn subspace_ops(a: &Subspace, b: &Subspace, which: SubspaceOp) -> Result<SubspaceOutcome> {
    match which {
        SubspaceOp::Sum => a.sum(b).map(SubspaceOutcome::Basis),
        SubspaceOp::Intersection => a.intersection(b).map(SubspaceOutcome::Basis),
        SubspaceOp::Membership => {
            a.check_ambient(b.ambient)?;
            Ok(SubspaceOutcome::Flag(b.basis.iter().all(|v| a.contains(v))))
        }
        SubspaceOp::QuotientDim => a.quotient_dim(b).map(SubspaceOutcome::Count),
    }
}

/// A subspace of `F_p^ambient` kept in reduced row echelon form.
///
/// The RREF basis is canonical, so two subspaces are equal iff their
/// `Subspace` values compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { field, ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span<I>(field: PrimeField, ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let p = field.modulus();
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
            if v.iter().any(|&x| x % p != 0) {
                rows.push(v.into_iter().map(|x| x % p).collect::<Vec<_>>());
            }
        }
        let order: Vec<usize> = (0..ambient).collect();
        let pivots = eliminate(field, &mut rows, &order, true);
        Ok(Subspace { field, ambient, basis: rows, pivots })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; they index a basis of the quotient
    /// `F^ambient / self`.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    fn check_ambient(&self, other: usize) -> Result<()> {
        if self.ambient != other {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other });
        }
        Ok(())
    }

    /// Normal form of `v` modulo the subspace: the unique representative
    /// vanishing on every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let p = f.modulus() as u64;
        let mut out: Vec<u32> = v.iter().map(|&x| x % f.modulus()).collect();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            let neg = p - c as u64;
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o = ((*o as u64 + neg * r as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        if other.dim() == 0 {
            return Ok(self.clone());
        }
        if self.dim() == 0 {
            return Ok(other.clone());
        }
        let vectors = self.basis.iter().chain(other.basis.iter()).cloned();
        Subspace::span(self.field, self.ambient, vectors)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        // x·A lies in B iff reduce_B(x·A) = 0, and reduce_B is linear.
        let reduced: Vec<Vec<u32>> = self.basis.iter().map(|a| other.reduce(a)).collect();
        let combos = left_kernel(self.field, self.ambient, &reduced);
        let f = self.field;
        let vectors = combos.into_iter().map(|x| {
            let mut v = vec![0u32; self.ambient];
            for (coef, a) in x.iter().zip(&self.basis) {
                if *coef == 0 {
                    continue;
                }
                for (o, &ai) in v.iter_mut().zip(a) {
                    *o = f.add(*o, f.mul(*coef, ai));
                }
            }
            v
        });
        Subspace::span(self.field, self.ambient, vectors)
    }

    /// `dim self / (self ∩ other)` = `dim(self + other) - dim other`.
    pub fn quotient_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.sum(other)?.dim() - other.dim())
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_rows(self.field, self.ambient, self.basis.clone())
            .expect("basis rows have ambient length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ExactMatrix {
        let data = (0..rows * cols).map(|_| f().random(rng)).collect();
        ExactMatrix::new(f(), rows, cols, data).unwrap()
    }

    #[test]
    fn rejects_composite_and_tiny_moduli() {
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(7).is_ok());
        assert!(f().check_parameter(10).is_ok());
        assert!(PrimeField::new(23).unwrap().check_parameter(9).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(ExactMatrix::zeros(f(), 0, 0).rank(), 0);
        assert_eq!(ExactMatrix::identity(f(), 5).rank(), 5);
    }

    #[test]
    fn rank_of_duplicated_column_space() {
        // Three independent columns, each repeated; a hand row reduction of
        // the 8x3 core gives rank 3 because its top 3x3 block is unitriangular.
        let core = [
            [1, 5, 7],
            [0, 1, 9],
            [0, 0, 1],
            [2, 3, 4],
            [6, 6, 6],
            [1, 0, 1],
            [0, 2, 0],
            [3, 1, 4],
        ];
        let mut data = Vec::new();
        for row in &core {
            data.extend_from_slice(&[row[0], row[1], row[2], row[0], row[2]]);
        }
        let m = ExactMatrix::new(f(), 8, 5, data).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.transpose().rank(), 3);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ExactMatrix::identity(f(), 4).kernel_basis().cols(), 0);
        assert_eq!(ExactMatrix::zeros(f(), 3, 4).kernel_basis().cols(), 4);
        // degree-1 monomials x0..x3 evaluated at [1:2:3:4]
        let m = ExactMatrix::new(f(), 1, 4, vec![1, 2, 3, 4]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 3);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn subspace_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Subspace::span(f(), 6, random_matrix(&mut rng, 3, 6).row_vectors()).unwrap();
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);

        let e = |i: usize| {
            let mut v = vec![0; 4];
            v[i] = 1;
            v
        };
        let left = Subspace::span(f(), 4, vec![e(0), e(1)]).unwrap();
        let right = Subspace::span(f(), 4, vec![e(2), e(3)]).unwrap();
        assert_eq!(left.intersection(&right).unwrap().dim(), 0);
        assert_eq!(left.sum(&right).unwrap().dim(), 4);

        let wrong = Subspace::zero(f(), 5);
        assert!(left.sum(&wrong).is_err());
        assert!(matches!(
            subspace_ops(&left, &Subspace::span(f(), 4, vec![e(1)]).unwrap(), SubspaceOp::Membership),
            Ok(SubspaceOutcome::Flag(true))
        ));
    }

    #[test]
    fn generic_subspaces_meet_in_expected_dimension() {
        // 4 + 5 - 7 = 2 for seeded random subspaces of 7-space.
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = Subspace::span(f(), 7, random_matrix(&mut rng, 4, 7).row_vectors()).unwrap();
            let b = Subspace::span(f(), 7, random_matrix(&mut rng, 5, 7).row_vectors()).unwrap();
            let i = a.intersection(&b).unwrap();
            assert_eq!(i.dim(), 2);
            assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
            assert_eq!(a.quotient_dim(&b).unwrap(), 2);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rank_is_pivot_order_independent(seed in 0u64..500, rows in 1usize..9, cols in 1usize..9, k in 1usize..5) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                // rank-deficient by construction: product of rows×k and k×cols
                let a = random_matrix(&mut rng, rows, k);
                let b = random_matrix(&mut rng, k, cols);
                let m = a.mul(&b).unwrap();
                let reversed: Vec<usize> = (0..cols).rev().collect();
                prop_assert_eq!(m.rank(), m.rank_with_column_order(&reversed));
                prop_assert_eq!(m.rank(), m.transpose().rank());
                prop_assert!(m.rank() <= k.min(rows).min(cols));
                let ker = m.kernel_basis();
                prop_assert_eq!(m.rank() + ker.cols(), cols);
                prop_assert!(m.mul(&ker).unwrap().is_zero());
                prop_assert_eq!(ker.rank(), ker.cols());
            }

            #[test]
            fn modular_law(seed in 0u64..500, n in 2usize..9, da in 0usize..6, db in 0usize..6) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let da = da.min(n);
                let db = db.min(n);
                // share one random vector to make intersections nontrivial
                let shared = random_matrix(&mut rng, 1, n).row_vectors();
                let mut av = random_matrix(&mut rng, da, n).row_vectors();
                let mut bv = random_matrix(&mut rng, db, n).row_vectors();
                av.extend(shared.clone());
                bv.extend(shared);
                let a = Subspace::span(f(), n, av).unwrap();
                let b = Subspace::span(f(), n, bv).unwrap();
                let s = a.sum(&b).unwrap();
                let i = a.intersection(&b).unwrap();
                prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
                prop_assert!(i.dim() >= 1);
            }
        }
    }
}
