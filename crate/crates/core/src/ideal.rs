//! Homogeneous ideals stored one graded piece at a time.
//!
//! A [`GradedIdeal`] is a cheap handle (`Arc`) to an immutable description
//! plus a lazily filled cache of graded pieces. Each piece `(I)_t` is a
//! [`Subspace`] of `R_t` in the monomial basis of [`GradedBasis`].

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{ExactMatrix, PrimeField, Subspace, left_kernel};
use crate::hcalc::{HVector, difference};
use crate::poly::{
    GradedBasis, HomForm, MultiplicationMap, ProjectivePoint, evaluation_matrix, evaluation_rows,
    monomial_count, monomial_index,
};

#[derive(Debug)]
enum Backend {
    Points(Vec<ProjectivePoint>),
    /// Each line is spanned by two affine vectors.
    Lines(Vec<[Vec<u32>; 2]>),
    Family(Rule),
}

#[derive(Debug)]
enum Rule {
    Unit,
    Generators(Vec<HomForm>),
    Sum(GradedIdeal, GradedIdeal),
    Product(GradedIdeal, HomForm),
    Intersection(GradedIdeal, GradedIdeal),
    Colon(GradedIdeal, Vec<HomForm>),
    Cone(GradedIdeal),
}

#[derive(Debug)]
struct Inner {
    field: PrimeField,
    nvars: usize,
    max_degree: usize,
    /// Projective dimension of the scheme; selects how often the Hilbert
    /// function is differenced.
    dim: usize,
    backend: Backend,
    pieces: Vec<OnceLock<Subspace>>,
}

#[derive(Clone)]
pub struct GradedIdeal(Arc<Inner>);

impl fmt::Debug for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.0.backend {
            Backend::Points(p) => format!("points({})", p.len()),
            Backend::Lines(l) => format!("lines({})", l.len()),
            Backend::Family(r) => match r {
                Rule::Unit => "unit".into(),
                Rule::Generators(g) => format!("generators({})", g.len()),
                Rule::Sum(..) => "sum".into(),
                Rule::Product(..) => "product".into(),
                Rule::Intersection(..) => "intersection".into(),
                Rule::Colon(..) => "colon".into(),
                Rule::Cone(..) => "cone".into(),
            },
        };
        f.debug_struct("GradedIdeal")
            .field("nvars", &self.0.nvars)
            .field("max_degree", &self.0.max_degree)
            .field("backend", &kind)
            .finish()
    }
}

impl GradedIdeal {
    fn build(field: PrimeField, nvars: usize, max_degree: usize, dim: usize, backend: Backend) -> Self {
        let pieces = (0..=max_degree).map(|_| OnceLock::new()).collect();
        GradedIdeal(Arc::new(Inner { field, nvars, max_degree, dim, backend, pieces }))
    }

    /// Ideal of a reduced set of points.
    pub fn points(field: PrimeField, points: Vec<ProjectivePoint>, max_degree: usize) -> Result<Self> {
        let nvars = points.first().map_or(0, |p| p.nvars());
        if let Some(p) = points.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::DimensionMismatch { expected: nvars, found: p.nvars() });
        }
        Self::points_in(field, nvars, points, max_degree)
    }

    /// Like [`GradedIdeal::points`] but allows an empty point list.
    pub fn points_in(field: PrimeField, nvars: usize, points: Vec<ProjectivePoint>, max_degree: usize) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::DimensionMismatch { expected: nvars, found: p.nvars() });
        }
        Ok(Self::build(field, nvars, max_degree, 0, Backend::Points(points)))
    }

    /// Ideal of a union of lines, each given by two spanning vectors.
    pub fn lines(field: PrimeField, nvars: usize, lines: Vec<[Vec<u32>; 2]>, max_degree: usize) -> Result<Self> {
        // sample points P + cQ for c = 0..=t must be distinct
        field.check_parameter(max_degree as u64)?;
        for l in &lines {
            for v in l {
                if v.len() != nvars {
                    return Err(Error::DimensionMismatch { expected: nvars, found: v.len() });
                }
            }
        }
        Ok(Self::build(field, nvars, max_degree, 1, Backend::Lines(lines)))
    }

    pub fn unit(field: PrimeField, nvars: usize, max_degree: usize) -> Self {
        Self::build(field, nvars, max_degree, 0, Backend::Family(Rule::Unit))
    }

    /// Ideal generated by `forms`; `dim` is the projective dimension of the
    /// scheme it cuts out.
    pub fn generated(
        field: PrimeField,
        nvars: usize,
        forms: Vec<HomForm>,
        dim: usize,
        max_degree: usize,
    ) -> Result<Self> {
        for g in &forms {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: g.nvars() });
            }
        }
        Ok(Self::build(field, nvars, max_degree, dim, Backend::Family(Rule::Generators(forms))))
    }

    fn check_same_ring(&self, other: &GradedIdeal) -> Result<()> {
        if self.0.nvars != other.0.nvars {
            return Err(Error::DimensionMismatch { expected: self.0.nvars, found: other.0.nvars });
        }
        Ok(())
    }

    /// `I + J`; the scheme is the intersection, so its dimension is the
    /// smaller one unless the caller overrides it.
    pub fn sum(&self, other: &GradedIdeal) -> Result<Self> {
        self.check_same_ring(other)?;
        let dim = self.0.dim.min(other.0.dim);
        let max = self.0.max_degree.min(other.0.max_degree);
        Ok(Self::build(self.0.field, self.0.nvars, max, dim, Backend::Family(Rule::Sum(self.clone(), other.clone()))))
    }

    pub fn product_by_form(&self, form: &HomForm) -> Result<Self> {
        if form.nvars() != self.0.nvars {
            return Err(Error::DimensionMismatch { expected: self.0.nvars, found: form.nvars() });
        }
        let max = self.0.max_degree + form.degree();
        let rule = Rule::Product(self.clone(), form.clone());
        Ok(Self::build(self.0.field, self.0.nvars, max, self.0.dim, Backend::Family(rule)))
    }

    pub fn intersect(&self, other: &GradedIdeal) -> Result<Self> {
        self.check_same_ring(other)?;
        let dim = self.0.dim.max(other.0.dim);
        let max = self.0.max_degree.min(other.0.max_degree);
        let rule = Rule::Intersection(self.clone(), other.clone());
        Ok(Self::build(self.0.field, self.0.nvars, max, dim, Backend::Family(rule)))
    }

    /// `(self : (gens))`, computed degreewise as a kernel.
    pub fn colon(&self, gens: &[HomForm]) -> Result<Self> {
        for g in gens {
            if g.nvars() != self.0.nvars {
                return Err(Error::DimensionMismatch { expected: self.0.nvars, found: g.nvars() });
            }
        }
        let shift = gens.iter().map(|g| g.degree()).max().unwrap_or(0);
        let max = self.0.max_degree.checked_sub(shift).ok_or(Error::BeyondCutoff {
            requested: shift,
            cutoff: self.0.max_degree,
        })?;
        let rule = Rule::Colon(self.clone(), gens.to_vec());
        Ok(Self::build(self.0.field, self.0.nvars, max, self.0.dim, Backend::Family(rule)))
    }

    /// Extension to one more variable: the cone with vertex at the new
    /// coordinate point.
    pub fn cone(&self) -> Self {
        let rule = Rule::Cone(self.clone());
        Self::build(self.0.field, self.0.nvars + 1, self.0.max_degree, self.0.dim + 1, Backend::Family(rule))
    }

    /// `I_C + (F)`, checked against `h_C(t) - h_C(t - deg F)`.
    pub fn hypersurface_section(&self, form: &HomForm) -> Result<Self> {
        if self.0.dim == 0 {
            return Err(Error::ZeroDivisor("cannot cut a zero-dimensional scheme".into()));
        }
        let field = self.0.field;
        let gens = GradedIdeal::generated(field, self.0.nvars, vec![form.clone()], self.0.dim, self.0.max_degree)?;
        let out = self.sum(&gens)?.with_dim(self.0.dim - 1);
        let hc = self.hilbert_function()?;
        let hs = out.hilbert_function()?;
        let d = form.degree();
        for t in 0..hs.len() {
            let want = hc[t] - if t >= d { hc[t - d] } else { 0 };
            if hs[t] != want {
                return Err(Error::ZeroDivisor(format!(
                    "h({t}) = {} but a regular section predicts {want}",
                    hs[t]
                )));
            }
        }
        Ok(out)
    }

    /// `F·I_{Z1} + I_C` for `Z1 ⊆ C` and `F` regular on `C`.
    pub fn basic_double_link(z1: &GradedIdeal, curve: &GradedIdeal, form: &HomForm) -> Result<Self> {
        z1.check_same_ring(curve)?;
        let top = z1.0.max_degree.min(curve.0.max_degree);
        if !curve.contained_in(z1, top)? {
            return Err(Error::Containment("I_C is not contained in I_Z1".into()));
        }
        curve.hypersurface_section(form)?;
        let out = z1.product_by_form(form)?.sum(curve)?;
        Ok(out.with_dim(z1.0.dim))
    }

    /// Same ideal with a different recorded dimension.
    pub fn with_dim(&self, dim: usize) -> Self {
        let zero = GradedIdeal::generated(self.0.field, self.0.nvars, vec![], dim, self.0.max_degree)
            .expect("no generators to check");
        let rule = Rule::Sum(self.clone(), zero);
        Self::build(self.0.field, self.0.nvars, self.0.max_degree, dim, Backend::Family(rule))
    }

    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars
    }

    pub fn max_degree(&self) -> usize {
        self.0.max_degree
    }

    pub fn scheme_dim(&self) -> usize {
        self.0.dim
    }

    /// Explicit points, when the backend stores them.
    pub fn point_list(&self) -> Option<&[ProjectivePoint]> {
        match &self.0.backend {
            Backend::Points(p) => Some(p),
            _ => None,
        }
    }

    /// Basis of `(I)_t`.
    pub fn graded_piece(&self, t: usize) -> Result<&Subspace> {
        let cell = self.0.pieces.get(t).ok_or(Error::BeyondCutoff { requested: t, cutoff: self.0.max_degree })?;
        if let Some(s) = cell.get() {
            return Ok(s);
        }
        let s = self.compute(t)?;
        let _ = cell.set(s);
        Ok(cell.get().expect("just set"))
    }

    pub fn dim_in_degree(&self, t: usize) -> Result<usize> {
        Ok(self.graded_piece(t)?.dim())
    }

    fn compute(&self, t: usize) -> Result<Subspace> {
        let field = self.0.field;
        let n = self.0.nvars;
        let ambient = monomial_count(n, t);
        match &self.0.backend {
            Backend::Points(points) => {
                if points.is_empty() {
                    return Ok(Subspace::full(field, ambient));
                }
                let m = evaluation_matrix(field, points, &GradedBasis::new(n, t));
                Subspace::span(field, ambient, m.kernel_vectors())
            }
            Backend::Lines(lines) => {
                if lines.is_empty() {
                    return Ok(Subspace::full(field, ambient));
                }
                let mut samples = Vec::with_capacity(lines.len() * (t + 1));
                for [a, b] in lines {
                    for c in 0..=t as u32 {
                        samples.push(a.iter().zip(b).map(|(&x, &y)| field.add(x, field.mul(c, y))).collect());
                    }
                }
                let rows = evaluation_rows(field, &samples, &GradedBasis::new(n, t));
                let m = ExactMatrix::from_rows(field, ambient, rows)?;
                Subspace::span(field, ambient, m.kernel_vectors())
            }
            Backend::Family(rule) => self.compute_rule(rule, t),
        }
    }

    fn compute_rule(&self, rule: &Rule, t: usize) -> Result<Subspace> {
        let field = self.0.field;
        let n = self.0.nvars;
        let ambient = monomial_count(n, t);
        match rule {
            Rule::Unit => Ok(Subspace::full(field, ambient)),
            Rule::Generators(forms) => {
                let mut vectors = if t > 0 { variable_multiples(self.graded_piece(t - 1)?, n, t - 1) } else { Vec::new() };
                vectors.extend(forms.iter().filter(|g| g.degree() == t).map(|g| g.coeffs().to_vec()));
                Subspace::span(field, ambient, vectors)
            }
            Rule::Sum(a, b) => a.graded_piece(t)?.sum(b.graded_piece(t)?),
            Rule::Intersection(a, b) => a.graded_piece(t)?.intersection(b.graded_piece(t)?),
            Rule::Product(a, form) => {
                let d = form.degree();
                if t < d {
                    return Ok(Subspace::zero(field, ambient));
                }
                let map = MultiplicationMap::new(form, t - d);
                let vectors = a.graded_piece(t - d)?.basis().iter().map(|v| map.apply(v)).collect::<Vec<_>>();
                Subspace::span(field, ambient, vectors)
            }
            Rule::Colon(j, gens) => {
                let mut blocks = Vec::new();
                for g in gens {
                    let map = MultiplicationMap::new(g, t);
                    let target = j.graded_piece(t + g.degree())?;
                    blocks.push((0..ambient).map(|m| target.reduce(&map.image_of_monomial(m))).collect::<Vec<_>>());
                }
                let width: usize = blocks.iter().map(|b| b.first().map_or(0, Vec::len)).sum();
                let rows: Vec<Vec<u32>> = (0..ambient)
                    .map(|m| blocks.iter().flat_map(|b| b[m].iter().copied()).collect())
                    .collect();
                Subspace::span(field, ambient, left_kernel(field, width, &rows))
            }
            Rule::Cone(inner) => {
                let mut vectors = Vec::new();
                let target = GradedBasis::new(n, t);
                for s in 0..=t {
                    let piece = inner.graded_piece(s)?;
                    if piece.dim() == 0 {
                        continue;
                    }
                    let src = GradedBasis::new(n - 1, s);
                    let embed: Vec<usize> = src
                        .monomials()
                        .iter()
                        .map(|m| {
                            let mut e = m.exponents().to_vec();
                            e.push((t - s) as u32);
                            monomial_index(&e)
                        })
                        .collect();
                    for v in piece.basis() {
                        let mut w = vec![0u32; target.len()];
                        for (j, &c) in v.iter().enumerate() {
                            w[embed[j]] = c;
                        }
                        vectors.push(w);
                    }
                }
                Subspace::span(field, ambient, vectors)
            }
        }
    }

    /// `h(t) = dim R_t - dim (I)_t` for `t = 0..=max_degree`.
    pub fn hilbert_function(&self) -> Result<Vec<i64>> {
        (0..=self.0.max_degree)
            .map(|t| Ok(monomial_count(self.0.nvars, t) as i64 - self.dim_in_degree(t)? as i64))
            .collect()
    }

    /// `Δ^{dim+1} h`, required to vanish before the cutoff.
    pub fn h_vector(&self) -> Result<HVector> {
        let mut seq = self.hilbert_function()?;
        for _ in 0..=self.0.dim {
            seq = difference(&seq);
        }
        if seq.last().is_some_and(|&x| x != 0) {
            return Err(Error::CutoffTooSmall(self.0.max_degree));
        }
        Ok(HVector::new(seq))
    }

    /// `(I)_t ⊆ (J)_t` for every `t ≤ upto`.
    pub fn contained_in(&self, other: &GradedIdeal, upto: usize) -> Result<bool> {
        self.check_same_ring(other)?;
        for t in 0..=upto {
            if !self.graded_piece(t)?.is_subspace_of(other.graded_piece(t)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x_i · (I)_t ⊆ (I)_{t+1}` for all variables.
    pub fn closed_under_variables(&self, t: usize) -> Result<bool> {
        let next = self.graded_piece(t + 1)?;
        Ok(variable_multiples(self.graded_piece(t)?, self.0.nvars, t).iter().all(|v| next.contains(v)))
    }

    /// Basis elements of `(I)_t` not in `R_1·(I)_{t-1}`: new generators in
    /// degree `t`.
    pub fn fresh_generators(&self, t: usize) -> Result<Vec<Vec<u32>>> {
        let field = self.0.field;
        let ambient = monomial_count(self.0.nvars, t);
        let old = if t > 0 { variable_multiples(self.graded_piece(t - 1)?, self.0.nvars, t - 1) } else { Vec::new() };
        let mut span = Subspace::span(field, ambient, old)?;
        let mut out = Vec::new();
        for v in self.graded_piece(t)?.basis() {
            if !span.contains(v) {
                span = span.sum(&Subspace::span(field, ambient, [v.clone()])?)?;
                out.push(v.clone());
            }
        }
        Ok(out)
    }

    /// Basis of `(I)_t` as forms.
    pub fn forms_in_degree(&self, t: usize) -> Result<Vec<HomForm>> {
        self.graded_piece(t)?
            .basis()
            .iter()
            .map(|v| HomForm::from_coeffs(self.0.field, self.0.nvars, t, v.clone()))
            .collect()
    }
}

/// `{x_i · v}` for a basis of a degree-`t` subspace.
fn variable_multiples(piece: &Subspace, nvars: usize, t: usize) -> Vec<Vec<u32>> {
    if piece.dim() == 0 {
        return Vec::new();
    }
    let field = piece.field();
    let maps: Vec<MultiplicationMap> = (0..nvars).map(|i| MultiplicationMap::new(&HomForm::variable(field, nvars, i), t)).collect();
    piece.basis().iter().flat_map(|v| maps.iter().map(move |m| m.apply(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_i64(f(), c).unwrap()
    }

    fn lin(c: &[i64]) -> HomForm {
        HomForm::linear(f(), &c.iter().map(|&x| f().from_i64(x)).collect::<Vec<_>>())
    }

    #[test]
    fn single_point() {
        let i = GradedIdeal::points(f(), vec![pt(&[1, 2, 3, 4])], 4).unwrap();
        assert_eq!(i.dim_in_degree(1).unwrap(), 3);
        assert_eq!(i.h_vector().unwrap().entries(), &[1]);
        assert!(matches!(i.graded_piece(5), Err(Error::BeyondCutoff { .. })));
    }

    #[test]
    fn four_coplanar_points() {
        let pts = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 2, 5, 0]].iter().map(|c| pt(c)).collect();
        let i = GradedIdeal::points(f(), pts, 5).unwrap();
        assert_eq!(i.h_vector().unwrap().entries(), &[1, 2, 1]);
        for t in 0..5 {
            assert!(i.closed_under_variables(t).unwrap());
        }
    }

    #[test]
    fn cutoff_too_small_is_reported() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts = (0..20)
            .map(|_| ProjectivePoint::new(f(), (0..4).map(|_| f().random(&mut rng)).collect()).unwrap())
            .collect();
        let i = GradedIdeal::points(f(), pts, 2).unwrap();
        assert_eq!(i.h_vector(), Err(Error::CutoffTooSmall(2)));
    }

    #[test]
    fn conic_curve_ideal() {
        let q1 = lin(&[1, 0, 0, 0]).multiply(&lin(&[0, 1, 0, 0])).unwrap();
        let q2 = lin(&[0, 0, 1, 0]).multiply(&lin(&[0, 0, 0, 1])).unwrap();
        let ci = GradedIdeal::generated(f(), 4, vec![q1, q2], 1, 6).unwrap();
        assert_eq!(ci.dim_in_degree(2).unwrap(), 2);
        assert_eq!(ci.h_vector().unwrap().entries(), &[1, 2, 1]);
        let sec = ci.hypersurface_section(&lin(&[1, 1, 1, 1])).unwrap();
        assert_eq!(sec.h_vector().unwrap().entries(), &[1, 2, 1]);
        // x0 kills the components V(x0, x2), V(x0, x3)
        assert!(matches!(ci.hypersurface_section(&lin(&[1, 0, 0, 0])), Err(Error::ZeroDivisor(_))));
    }

    #[test]
    fn algebra_identities() {
        let pts = vec![pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[1, 1, 1, 1])];
        let i = GradedIdeal::points(f(), pts, 4).unwrap();
        let ii = i.sum(&i).unwrap();
        let cap = i.intersect(&i).unwrap();
        for t in 0..=4 {
            assert_eq!(ii.graded_piece(t).unwrap(), i.graded_piece(t).unwrap());
            assert_eq!(cap.graded_piece(t).unwrap(), i.graded_piece(t).unwrap());
        }
        let col = i.colon(&[HomForm::one(f(), 4)]).unwrap();
        for t in 0..=4 {
            assert_eq!(col.graded_piece(t).unwrap(), i.graded_piece(t).unwrap());
        }
    }

    #[test]
    fn product_with_linear_ideal_matches_brute_force() {
        let pts = vec![pt(&[1, 0, 0, 0]), pt(&[1, 1, 0, 3]), pt(&[1, 4, 2, 0]), pt(&[0, 1, 1, 1])];
        let i = GradedIdeal::points(f(), pts, 5).unwrap();
        let (l1, l2) = (lin(&[1, 2, 0, 5]), lin(&[0, 1, 7, 1]));
        let prod = i.product_by_form(&l1).unwrap().sum(&i.product_by_form(&l2).unwrap()).unwrap();
        for t in 1..=5 {
            // brute force: products of basis pairs of I_{t-1} and (L1, L2)
            let mut vecs = Vec::new();
            for g in i.forms_in_degree(t - 1).unwrap() {
                vecs.push(g.multiply(&l1).unwrap().into_coeffs());
                vecs.push(g.multiply(&l2).unwrap().into_coeffs());
            }
            let brute = Subspace::span(f(), monomial_count(4, t), vecs).unwrap();
            assert_eq!(prod.graded_piece(t).unwrap(), &brute);
        }
    }

    #[test]
    fn cone_over_point_is_a_line() {
        let planar = GradedIdeal::points(f(), vec![pt(&[1, 2, 3])], 5).unwrap();
        let cone = planar.cone();
        assert_eq!(cone.nvars(), 4);
        let hf = cone.hilbert_function().unwrap();
        assert_eq!(hf, vec![1, 2, 3, 4, 5, 6]);
        let empty = GradedIdeal::unit(f(), 3, 3).cone();
        assert!(empty.h_vector().unwrap().is_empty());
    }

    #[test]
    fn lines_backend() {
        // two skew lines: h = 2t + 2 from degree 1 on
        let lines = vec![
            [vec![1, 0, 0, 0], vec![0, 1, 0, 0]],
            [vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        ];
        let i = GradedIdeal::lines(f(), 4, lines, 5).unwrap();
        assert_eq!(i.hilbert_function().unwrap(), vec![1, 4, 6, 8, 10, 12]);
        // two meeting lines: a planar conic
        let lines = vec![
            [vec![1, 0, 0, 0], vec![0, 1, 0, 0]],
            [vec![1, 0, 0, 0], vec![0, 0, 1, 0]],
        ];
        let i = GradedIdeal::lines(f(), 4, lines, 5).unwrap();
        assert_eq!(i.h_vector().unwrap().entries(), &[1, 1]);
    }

    #[test]
    fn colon_of_points_removes_them() {
        // (I_{P ∪ Q} : l) = I_Q when l vanishes at P and not at Q
        let p = pt(&[1, 0, 0]);
        let q = pt(&[0, 1, 0]);
        let both = GradedIdeal::points(f(), vec![p, q.clone()], 6).unwrap();
        let only_q = GradedIdeal::points(f(), vec![q], 6).unwrap();
        let l = lin(&[0, 1, 0]);
        let col = both.colon(&[l]).unwrap();
        for t in 0..=5 {
            assert_eq!(col.graded_piece(t).unwrap(), only_q.graded_piece(t).unwrap());
        }
    }

    #[test]
    fn fresh_generators_of_ci() {
        let g1 = lin(&[1, 0, 0]).multiply(&lin(&[0, 1, 0])).unwrap();
        let g2 = HomForm::product(f(), 3, &[lin(&[0, 0, 1]), lin(&[1, 1, 1]), lin(&[1, 2, 3])]).unwrap();
        let ci = GradedIdeal::generated(f(), 3, vec![g1, g2], 0, 6).unwrap();
        let counts: Vec<usize> = (0..=6).map(|t| ci.fresh_generators(t).unwrap().len()).collect();
        assert_eq!(counts, vec![0, 0, 1, 1, 0, 0, 0]);
        assert_eq!(ci.h_vector().unwrap().entries(), &[1, 2, 2, 1]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn points_hilbert_function_saturates(seed in 0u64..1000, n in 1usize..10) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let pts: Vec<ProjectivePoint> = (0..n)
                    .map(|_| ProjectivePoint::new(f(), (0..4).map(|_| f().random(&mut rng)).collect()).unwrap())
                    .collect();
                let i = GradedIdeal::points(f(), pts, n + 1).unwrap();
                let hf = i.hilbert_function().unwrap();
                prop_assert!(hf.windows(2).all(|w| w[0] <= w[1]));
                prop_assert_eq!(*hf.last().unwrap(), n as i64);
                prop_assert_eq!(i.h_vector().unwrap().sum(), n as i64);
                for t in 0..=n {
                    prop_assert!(i.closed_under_variables(t).unwrap());
                }
            }
        }
    }
}
