//! Graded monomials and dense homogeneous forms.
//!
//! A form of degree `t` in `n` variables is a coefficient vector indexed by
//! the [`GradedBasis`] of that degree. Monomials of a fixed degree are in
//! lexicographic order with `x0` largest, so `x0^t` has index 0.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{ExactMatrix, PrimeField, Subspace};

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `dim R_t` for `nvars` variables.
pub fn monomial_count(nvars: usize, degree: usize) -> usize {
    if nvars == 0 {
        return usize::from(degree == 0);
    }
    binomial((degree + nvars - 1) as u64, (nvars - 1) as u64) as usize
}

/// Position of an exponent vector inside its graded basis.
pub fn monomial_index(exps: &[u32]) -> usize {
    let n = exps.len();
    let mut rem: u32 = exps.iter().sum();
    let mut idx = 0usize;
    for k in 0..n.saturating_sub(1) {
        let ek = exps[k];
        for e in (ek + 1)..=rem {
            idx += monomial_count(n - k - 1, (rem - e) as usize);
        }
        rem -= ek;
    }
    idx
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().sum::<u32>() as usize
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn index(&self) -> usize {
        monomial_index(&self.exps)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x[{i}]")?;
            } else {
                write!(f, "x[{i}]^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Ordered monomial basis of `R_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    nvars: usize,
    degree: usize,
    monomials: Vec<Monomial>,
}

fn push_monomials(prefix: &mut Vec<u32>, nvars: usize, rem: u32, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 == nvars {
        prefix.push(rem);
        out.push(Monomial::new(prefix.clone()));
        prefix.pop();
        return;
    }
    for e in (0..=rem).rev() {
        prefix.push(e);
        push_monomials(prefix, nvars, rem - e, out);
        prefix.pop();
    }
}

impl GradedBasis {
    pub fn new(nvars: usize, degree: usize) -> Self {
        let mut monomials = Vec::with_capacity(monomial_count(nvars, degree));
        if nvars > 0 {
            push_monomials(&mut Vec::with_capacity(nvars), nvars, degree as u32, &mut monomials);
        }
        GradedBasis { nvars, degree, monomials }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
}

/// Projective point stored with first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<u32>,
}

impl ProjectivePoint {
    pub fn new(field: PrimeField, coords: Vec<u32>) -> Result<Self> {
        let p = field.modulus();
        let coords: Vec<u32> = coords.into_iter().map(|c| c % p).collect();
        let Some(&lead) = coords.iter().find(|&&c| c != 0) else {
            return Err(Error::Genericity {
                stage: "point normalization".into(),
                detail: "all coordinates vanish".into(),
            });
        };
        let inv = field.inv(lead);
        Ok(ProjectivePoint { coords: coords.into_iter().map(|c| field.mul(c, inv)).collect() })
    }

    pub fn from_i64(field: PrimeField, coords: &[i64]) -> Result<Self> {
        Self::new(field, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }
}

/// Table `powers[i][k] = coords[i]^k` for `k <= degree`.
fn power_table(field: PrimeField, coords: &[u32], degree: usize) -> Vec<Vec<u32>> {
    coords
        .iter()
        .map(|&c| {
            let mut row = Vec::with_capacity(degree + 1);
            let mut acc = 1u32;
            for _ in 0..=degree {
                row.push(acc);
                acc = field.mul(acc, c);
            }
            row
        })
        .collect()
}

/// Values of every degree-`degree` monomial at the given affine vectors;
/// one row per vector.
pub fn evaluation_rows(field: PrimeField, vectors: &[Vec<u32>], basis: &GradedBasis) -> Vec<Vec<u32>> {
    vectors
        .iter()
        .map(|v| {
            let pw = power_table(field, v, basis.degree());
            basis
                .monomials()
                .iter()
                .map(|m| {
                    m.exponents()
                        .iter()
                        .enumerate()
                        .fold(1u32, |acc, (i, &e)| field.mul(acc, pw[i][e as usize]))
                })
                .collect()
        })
        .collect()
}

pub fn evaluation_matrix(field: PrimeField, points: &[ProjectivePoint], basis: &GradedBasis) -> ExactMatrix {
    let vectors: Vec<Vec<u32>> = points.iter().map(|p| p.coords.clone()).collect();
    ExactMatrix::from_rows(field, basis.len(), evaluation_rows(field, &vectors, basis))
        .expect("evaluation rows have basis length")
}

/// A homogeneous polynomial with a dense coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomForm {
    field: PrimeField,
    nvars: usize,
    degree: usize,
    coeffs: Vec<u32>,
}

impl HomForm {
    pub fn zero(field: PrimeField, nvars: usize, degree: usize) -> Self {
        HomForm { field, nvars, degree, coeffs: vec![0; monomial_count(nvars, degree)] }
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        HomForm { field, nvars, degree: 0, coeffs: vec![1] }
    }

    pub fn from_coeffs(field: PrimeField, nvars: usize, degree: usize, coeffs: Vec<u32>) -> Result<Self> {
        let expected = monomial_count(nvars, degree);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: coeffs.len() });
        }
        let p = field.modulus();
        Ok(HomForm { field, nvars, degree, coeffs: coeffs.into_iter().map(|c| c % p).collect() })
    }

    /// Builds a form from `(coefficient, exponents)` terms; all terms must
    /// share one degree.
    pub fn from_terms(field: PrimeField, nvars: usize, terms: &[(i64, Vec<u32>)]) -> Result<Self> {
        let degree = terms.first().map(|(_, e)| e.iter().sum::<u32>() as usize).unwrap_or(0);
        let mut form = Self::zero(field, nvars, degree);
        for (c, exps) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: exps.len() });
            }
            let d = exps.iter().sum::<u32>() as usize;
            if d != degree {
                return Err(Error::DimensionMismatch { expected: degree, found: d });
            }
            let idx = monomial_index(exps);
            form.coeffs[idx] = field.add(form.coeffs[idx], field.from_i64(*c));
        }
        Ok(form)
    }

    pub fn monomial(field: PrimeField, exps: Vec<u32>) -> Self {
        let nvars = exps.len();
        let m = Monomial::new(exps);
        let mut form = Self::zero(field, nvars, m.degree());
        form.coeffs[m.index()] = 1;
        form
    }

    pub fn variable(field: PrimeField, nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(field, exps)
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear(field: PrimeField, coeffs: &[u32]) -> Self {
        let nvars = coeffs.len();
        let mut form = Self::zero(field, nvars, 1);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; nvars];
            exps[i] = 1;
            form.coeffs[monomial_index(&exps)] = c % field.modulus();
        }
        form
    }

    pub fn random<R: Rng + ?Sized>(field: PrimeField, nvars: usize, degree: usize, rng: &mut R) -> Self {
        let coeffs = (0..monomial_count(nvars, degree)).map(|_| field.random(rng)).collect();
        HomForm { field, nvars, degree, coeffs }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Coefficients of a linear form, indexed by variable.
    pub fn linear_coeffs(&self) -> Option<Vec<u32>> {
        if self.degree != 1 {
            return None;
        }
        // degree-1 basis order is x0, x1, ..., matching variable order
        Some(self.coeffs.clone())
    }

    pub fn terms(&self) -> Vec<(u32, Monomial)> {
        let basis = GradedBasis::new(self.nvars, self.degree);
        self.coeffs
            .iter()
            .zip(basis.monomials())
            .filter(|(c, _)| **c != 0)
            .map(|(c, m)| (*c, m.clone()))
            .collect()
    }

    pub fn add(&self, other: &HomForm) -> Result<HomForm> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, found: other.degree });
        }
        let f = self.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(HomForm { coeffs, ..self.clone() })
    }

    pub fn scale(&self, c: u32) -> HomForm {
        let f = self.field;
        HomForm { coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    fn check_compatible(&self, other: &HomForm) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &HomForm) -> Result<HomForm> {
        self.check_compatible(other)?;
        let f = self.field;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(f, self.nvars, degree);
        let rhs = other.terms();
        for (a, ma) in self.terms() {
            for (b, mb) in &rhs {
                let idx = ma.times(mb).index();
                out.coeffs[idx] = f.add(out.coeffs[idx], f.mul(a, *b));
            }
        }
        Ok(out)
    }

    pub fn product(field: PrimeField, nvars: usize, factors: &[HomForm]) -> Result<HomForm> {
        factors.iter().try_fold(HomForm::one(field, nvars), |acc, g| acc.multiply(g))
    }

    pub fn evaluate(&self, point: &ProjectivePoint) -> Result<u32> {
        if point.nvars() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: point.nvars() });
        }
        Ok(self.evaluate_vector(point.coords()))
    }

    /// Value at an affine representative (not necessarily normalized).
    pub fn evaluate_vector(&self, v: &[u32]) -> u32 {
        let f = self.field;
        let pw = power_table(f, v, self.degree);
        self.terms().iter().fold(0u32, |acc, (c, m)| {
            let val = m
                .exponents()
                .iter()
                .enumerate()
                .fold(*c, |acc, (i, &e)| f.mul(acc, pw[i][e as usize]));
            f.add(acc, val)
        })
    }

    /// Ring homomorphism `x_i ↦ images[i]`; the images are linear forms in
    /// a common (possibly different) number of variables.
    pub fn substitute_linear(&self, images: &[HomForm]) -> Result<HomForm> {
        let sub = LinearSubstitution::new(images.to_vec(), self.degree)?;
        if sub.source_nvars() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: sub.source_nvars() });
        }
        let coeffs = sub.apply(&self.coeffs, self.degree);
        HomForm::from_coeffs(self.field, sub.target_nvars(), self.degree, coeffs)
    }

    /// True iff `self ∈ l · R_{deg-1}`.
    pub fn divisible_by_linear(&self, l: &HomForm) -> Result<bool> {
        if l.degree != 1 || l.is_zero() {
            return Err(Error::DimensionMismatch { expected: 1, found: l.degree });
        }
        if self.is_zero() {
            return Ok(true);
        }
        if self.degree == 0 {
            return Ok(false);
        }
        Ok(multiples_subspace(std::slice::from_ref(l), self.degree)?.contains(&self.coeffs))
    }
}

impl fmt::Display for HomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in terms.iter().enumerate() {
            let c = self.field.signed(*c);
            let sign = if c < 0 { "-" } else { "+" };
            if i > 0 || c < 0 {
                write!(f, "{sign}")?;
            }
            let a = c.unsigned_abs();
            if m.degree() == 0 {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Linear map `R_s → R_{s+e}` given by multiplication with a fixed form.
#[derive(Clone, Debug)]
pub struct MultiplicationMap {
    field: PrimeField,
    source_degree: usize,
    target_len: usize,
    // for each source monomial, its image as (target index, coefficient)
    columns: Vec<Vec<(usize, u32)>>,
}

impl MultiplicationMap {
    pub fn new(form: &HomForm, source_degree: usize) -> Self {
        let nvars = form.nvars();
        let source = GradedBasis::new(nvars, source_degree);
        let terms = form.terms();
        let columns = source
            .monomials()
            .iter()
            .map(|m| terms.iter().map(|(c, t)| (t.times(m).index(), *c)).collect())
            .collect();
        MultiplicationMap {
            field: form.field(),
            source_degree,
            target_len: monomial_count(nvars, source_degree + form.degree()),
            columns,
        }
    }

    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.target_len];
        for (j, &vj) in v.iter().enumerate() {
            if vj == 0 {
                continue;
            }
            for &(idx, c) in &self.columns[j] {
                out[idx] = f.add(out[idx], f.mul(vj, c));
            }
        }
        out
    }

    /// Image of the `j`-th source monomial.
    pub fn image_of_monomial(&self, j: usize) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.target_len];
        for &(idx, c) in &self.columns[j] {
            out[idx] = f.add(out[idx], c);
        }
        out
    }
}

/// Span of `{g · m : g ∈ forms, m monomial}` in the given degree.
pub fn multiples_subspace(forms: &[HomForm], degree: usize) -> Result<Subspace> {
    let first = forms.first().ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
    let field = first.field();
    let nvars = first.nvars();
    let mut vectors = Vec::new();
    for g in forms {
        if g.nvars() != nvars {
            return Err(Error::DimensionMismatch { expected: nvars, found: g.nvars() });
        }
        if g.degree() > degree || g.is_zero() {
            continue;
        }
        let map = MultiplicationMap::new(g, degree - g.degree());
        vectors.extend((0..monomial_count(nvars, degree - g.degree())).map(|j| map.image_of_monomial(j)));
    }
    Subspace::span(field, monomial_count(nvars, degree), vectors)
}

/// Precomputed images of all monomials up to a degree under a linear
/// change of variables `x_i ↦ images[i]`.
#[derive(Clone, Debug)]
pub struct LinearSubstitution {
    field: PrimeField,
    source_nvars: usize,
    target_nvars: usize,
    // levels[t][j] = dense image of the j-th source monomial of degree t
    levels: Vec<Vec<Vec<u32>>>,
}

impl LinearSubstitution {
    pub fn new(images: Vec<HomForm>, max_degree: usize) -> Result<Self> {
        let first = images.first().ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        let field = first.field();
        let target_nvars = first.nvars();
        for g in &images {
            if g.degree() != 1 || g.nvars() != target_nvars {
                return Err(Error::DimensionMismatch { expected: 1, found: g.degree() });
            }
        }
        let source_nvars = images.len();
        let mut levels: Vec<Vec<Vec<u32>>> = vec![vec![vec![1]]];
        for t in 1..=max_degree {
            let prev_basis = GradedBasis::new(source_nvars, t - 1);
            let basis = GradedBasis::new(source_nvars, t);
            let muls: Vec<MultiplicationMap> = images.iter().map(|g| MultiplicationMap::new(g, t - 1)).collect();
            let prev = &levels[t - 1];
            let mut level = Vec::with_capacity(basis.len());
            for m in basis.monomials() {
                // peel off the first variable present
                let i = m.exponents().iter().position(|&e| e > 0).expect("positive degree");
                let mut lower = m.exponents().to_vec();
                lower[i] -= 1;
                let j = monomial_index(&lower);
                debug_assert!(j < prev_basis.len());
                level.push(muls[i].apply(&prev[j]));
            }
            levels.push(level);
        }
        Ok(LinearSubstitution { field, source_nvars, target_nvars, levels })
    }

    pub fn source_nvars(&self) -> usize {
        self.source_nvars
    }

    pub fn target_nvars(&self) -> usize {
        self.target_nvars
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    /// Image of a degree-`t` coefficient vector.
    pub fn apply(&self, v: &[u32], t: usize) -> Vec<u32> {
        let f = self.field;
        let p = f.modulus() as u64;
        let level = &self.levels[t];
        let mut acc = vec![0u64; monomial_count(self.target_nvars, t)];
        for (&c, img) in v.iter().zip(level) {
            if c == 0 {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(img) {
                if x != 0 {
                    *a = (*a + c as u64 * x as u64) % p;
                }
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
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

    #[test]
    fn basis_sizes() {
        assert_eq!(GradedBasis::new(4, 0).len(), 1);
        assert_eq!(GradedBasis::new(4, 2).len(), 10);
        // C(10,3) = 120, counted directly by enumeration
        let b = GradedBasis::new(4, 7);
        assert_eq!(b.len(), 120);
        let mut count = 0;
        for a in 0..=7u32 {
            for bb in 0..=7 - a {
                for c in 0..=7 - a - bb {
                    let _ = c;
                    count += 1;
                }
            }
        }
        assert_eq!(count, 120);
    }

    #[test]
    fn index_matches_enumeration() {
        for nvars in 1..5 {
            for t in 0..6 {
                let b = GradedBasis::new(nvars, t);
                for (i, m) in b.monomials().iter().enumerate() {
                    assert_eq!(m.index(), i);
                    assert_eq!(m.degree(), t);
                }
            }
        }
        assert_eq!(GradedBasis::new(4, 3).monomials()[0].exponents(), &[3, 0, 0, 0]);
    }

    #[test]
    fn multiply_examples() {
        let fld = f();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = HomForm::random(fld, 4, 3, &mut rng);
        assert_eq!(g.multiply(&HomForm::one(fld, 4)).unwrap(), g);
        let l1 = HomForm::random(fld, 4, 1, &mut rng);
        let l2 = HomForm::random(fld, 4, 1, &mut rng);
        assert_eq!(l1.multiply(&l2).unwrap(), l2.multiply(&l1).unwrap());

        // (x - z)(y - z) = xy - xz - yz + z^2 in variables (x, y, z)
        let a = HomForm::from_terms(fld, 3, &[(1, vec![1, 0, 0]), (-1, vec![0, 0, 1])]).unwrap();
        let b = HomForm::from_terms(fld, 3, &[(1, vec![0, 1, 0]), (-1, vec![0, 0, 1])]).unwrap();
        let prod = a.multiply(&b).unwrap();
        let expected = HomForm::from_terms(
            fld,
            3,
            &[(1, vec![1, 1, 0]), (-1, vec![1, 0, 1]), (-1, vec![0, 1, 1]), (1, vec![0, 0, 2])],
        )
        .unwrap();
        assert_eq!(prod, expected);
        assert_eq!(prod.terms().len(), 4);
    }

    #[test]
    fn evaluate_examples() {
        let fld = f();
        let x2 = HomForm::monomial(fld, vec![0, 2, 0, 0]);
        let p = ProjectivePoint::from_i64(fld, &[1, 2, 0, 0]).unwrap();
        assert_eq!(x2.evaluate(&p).unwrap(), 4);
        let l = HomForm::linear(fld, &[2, fld.neg(1), 0, 0]);
        assert_eq!(l.evaluate(&p).unwrap(), 0);
        // normalization: first nonzero coordinate becomes 1
        let q = ProjectivePoint::from_i64(fld, &[0, 3, 6, 9]).unwrap();
        assert_eq!(q.coords(), &[0, 1, 2, 3]);
        assert!(ProjectivePoint::from_i64(fld, &[0, 0, 0]).is_err());
    }

    #[test]
    fn substitution_examples() {
        let fld = f();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = HomForm::random(fld, 4, 4, &mut rng);
        let identity: Vec<HomForm> = (0..4).map(|i| HomForm::variable(fld, 4, i)).collect();
        assert_eq!(g.substitute_linear(&identity).unwrap(), g);

        let x0g = HomForm::variable(fld, 4, 0).multiply(&g).unwrap();
        let mut kill = identity.clone();
        kill[0] = HomForm::zero(fld, 4, 1);
        assert!(x0g.substitute_linear(&kill).unwrap().is_zero());

        // a unitriangular change of coordinates and its inverse
        // x0 ↦ x0 + a x1, x1 ↦ x1 + b x2, x2 ↦ x2, x3 ↦ x3 + c x0
        let (a, b, c) = (5u32, 11u32, 17u32);
        let fwd = vec![
            HomForm::linear(fld, &[1, a, 0, 0]),
            HomForm::linear(fld, &[0, 1, b, 0]),
            HomForm::linear(fld, &[0, 0, 1, 0]),
            HomForm::linear(fld, &[c, 0, 0, 1]),
        ];
        // inverse: x2 ↦ x2, x1 ↦ x1 - b x2, x0 ↦ x0 - a(x1 - b x2), x3 ↦ x3 - c·x0'
        let n = |v: u32| fld.neg(v);
        let x0_inv = [1, n(a), fld.mul(a, b), 0];
        let inv = vec![
            HomForm::linear(fld, &x0_inv),
            HomForm::linear(fld, &[0, 1, n(b), 0]),
            HomForm::linear(fld, &[0, 0, 1, 0]),
            HomForm::linear(fld, &[n(c), fld.mul(c, a), n(fld.mul(c, fld.mul(a, b))), 1]),
        ];
        let there = g.substitute_linear(&fwd).unwrap();
        assert_eq!(there.substitute_linear(&inv).unwrap(), g);
    }

    #[test]
    fn divisibility_examples() {
        let fld = f();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let l = HomForm::random(fld, 4, 1, &mut rng);
        let m = HomForm::monomial(fld, vec![1, 0, 2, 0]);
        assert!(l.multiply(&m).unwrap().divisible_by_linear(&l).unwrap());
        let x1 = HomForm::variable(fld, 4, 1);
        let x2_cubed = HomForm::monomial(fld, vec![0, 0, 3, 0]);
        assert!(!x2_cubed.divisible_by_linear(&x1).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn evaluation_is_multiplicative(seed in 0u64..1000, da in 0usize..4, db in 0usize..4) {
                let fld = f();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = HomForm::random(fld, 4, da, &mut rng);
                let b = HomForm::random(fld, 4, db, &mut rng);
                let coords: Vec<u32> = (0..4).map(|_| fld.random_nonzero(&mut rng)).collect();
                let p = ProjectivePoint::new(fld, coords).unwrap();
                let ab = a.multiply(&b).unwrap();
                prop_assert_eq!(ab.evaluate(&p).unwrap(), fld.mul(a.evaluate(&p).unwrap(), b.evaluate(&p).unwrap()));
            }

            #[test]
            fn substitution_is_a_ring_map(seed in 0u64..1000, da in 0usize..4, db in 0usize..3) {
                let fld = f();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = HomForm::random(fld, 4, da, &mut rng);
                let b = HomForm::random(fld, 4, da, &mut rng);
                let c = HomForm::random(fld, 4, db, &mut rng);
                let images: Vec<HomForm> = (0..4).map(|_| HomForm::random(fld, 3, 1, &mut rng)).collect();
                let s = |g: &HomForm| g.substitute_linear(&images).unwrap();
                prop_assert_eq!(s(&a.multiply(&c).unwrap()), s(&a).multiply(&s(&c)).unwrap());
                prop_assert_eq!(s(&a.add(&b).unwrap()), s(&a).add(&s(&b)).unwrap());
            }

            #[test]
            fn divisible_forms_vanish_on_the_plane(seed in 0u64..300) {
                let fld = f();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let l = HomForm::random(fld, 4, 1, &mut rng);
                let g = l.multiply(&HomForm::random(fld, 4, 2, &mut rng)).unwrap();
                prop_assert!(g.divisible_by_linear(&l).unwrap());
                // sample points on V(l): solve for the last coordinate
                let lc = l.linear_coeffs().unwrap();
                for _ in 0..5 {
                    let mut v: Vec<u32> = (0..3).map(|_| fld.random(&mut rng)).collect();
                    let partial = (0..3).fold(0u32, |acc, i| fld.add(acc, fld.mul(lc[i], v[i])));
                    v.push(fld.mul(fld.neg(partial), fld.inv(lc[3])));
                    if v.iter().all(|&x| x == 0) { continue; }
                    prop_assert_eq!(l.evaluate_vector(&v), 0);
                    prop_assert_eq!(g.evaluate_vector(&v), 0);
                }
            }
        }
    }
}
