//! Artinian reductions and Lefschetz-type rank computations.
//!
//! The reduction by a linear form `L1` is realized by solving `L1 = 0` for
//! one variable and substituting. The quotient `A_t = S_t / J_t` then lives
//! in three variables, with the non-pivot monomials of `J_t` as a basis.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ExactMatrix, PrimeField, Subspace};
use crate::ideal::GradedIdeal;
use crate::poly::{HomForm, LinearSubstitution, MultiplicationMap, monomial_count, multiples_subspace};

pub use crate::hcalc::unimodal;

/// Maximum number of redraws when looking for a reduction form that avoids
/// the points.
pub const REDRAW_LIMIT: usize = 20;

#[derive(Clone, Debug)]
pub struct ArtinianAlgebra {
    field: PrimeField,
    l1: HomForm,
    substitution: LinearSubstitution,
    /// `J_t` for `t = 0..=cutoff`.
    reduced: Vec<Subspace>,
}

impl ArtinianAlgebra {
    /// `R/(I + (L1))` presented in the three remaining variables.
    pub fn new(ideal: &GradedIdeal, l1: &HomForm) -> Result<Self> {
        let field = ideal.field();
        let n = ideal.nvars();
        let c = l1.linear_coeffs().ok_or(Error::DimensionMismatch { expected: 1, found: l1.degree() })?;
        if c.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: c.len() });
        }
        if let Some(points) = ideal.point_list() {
            if points.iter().any(|p| l1.evaluate_vector(p.coords()) == 0) {
                return Err(Error::Genericity {
                    stage: "artinian reduction".into(),
                    detail: "reduction form passes through a point".into(),
                });
            }
        }
        let pivot = c.iter().rposition(|&x| x != 0).ok_or(Error::Genericity {
            stage: "artinian reduction".into(),
            detail: "zero reduction form".into(),
        })?;
        // x_pivot = -(1/c_pivot) Σ_{i≠pivot} c_i x_i; other variables keep their order
        let scale = field.neg(field.inv(c[pivot]));
        let images: Vec<HomForm> = (0..n)
            .map(|i| {
                let mut v = vec![0u32; n - 1];
                if i == pivot {
                    for (k, j) in (0..n).filter(|&j| j != pivot).enumerate() {
                        v[k] = field.mul(scale, c[j]);
                    }
                } else {
                    v[if i < pivot { i } else { i - 1 }] = 1;
                }
                HomForm::linear(field, &v)
            })
            .collect();
        let cutoff = ideal.max_degree();
        let substitution = LinearSubstitution::new(images, cutoff)?;
        let reduced = (0..=cutoff)
            .map(|t| {
                let piece = ideal.graded_piece(t)?;
                let vectors = piece.basis().iter().map(|v| substitution.apply(v, t));
                Subspace::span(field, monomial_count(n - 1, t), vectors)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ArtinianAlgebra { field, l1: l1.clone(), substitution, reduced })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn reduction_form(&self) -> &HomForm {
        &self.l1
    }

    pub fn cutoff(&self) -> usize {
        self.reduced.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.substitution.target_nvars()
    }

    pub fn dim(&self, t: usize) -> usize {
        self.reduced.get(t).map_or(0, |j| j.ambient() - j.dim())
    }

    /// `dim A_t` for `t = 0..=cutoff`.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.cutoff()).map(|t| self.dim(t)).collect()
    }

    /// Last degree with `A_t ≠ 0`, provided `A` vanishes at the cutoff.
    pub fn socle_degree(&self) -> Result<usize> {
        let dims = self.dims();
        if dims.last().is_some_and(|&d| d != 0) {
            return Err(Error::CutoffTooSmall(self.cutoff()));
        }
        Ok(dims.iter().rposition(|&d| d != 0).unwrap_or(0))
    }

    /// Image of a form of the source ring in the reduced ring.
    pub fn reduce_form(&self, form: &HomForm) -> Result<HomForm> {
        if form.nvars() != self.substitution.source_nvars() {
            return Err(Error::DimensionMismatch { expected: self.substitution.source_nvars(), found: form.nvars() });
        }
        if form.degree() > self.cutoff() {
            return Err(Error::BeyondCutoff { requested: form.degree(), cutoff: self.cutoff() });
        }
        let coeffs = self.substitution.apply(form.coeffs(), form.degree());
        HomForm::from_coeffs(self.field, self.nvars(), form.degree(), coeffs)
    }

    /// Matrix of `×F : A_t → A_{t+e}` in the standard quotient bases, one
    /// row per source basis element.
    fn map_rows(&self, map: &MultiplicationMap, t: usize, e: usize) -> Vec<Vec<u32>> {
        let source = self.reduced[t].non_pivots();
        let target = &self.reduced[t + e];
        let keep = target.non_pivots();
        source
            .iter()
            .map(|&j| {
                let img = target.reduce(&map.image_of_monomial(j));
                keep.iter().map(|&k| img[k]).collect()
            })
            .collect()
    }

    /// Rank of multiplication by `form` (in the reduced variables) from
    /// degree `t`.
    pub fn mult_rank(&self, form: &HomForm, t: usize) -> Result<usize> {
        if form.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: form.nvars() });
        }
        let e = form.degree();
        if t + e > self.cutoff() {
            return Err(Error::BeyondCutoff { requested: t + e, cutoff: self.cutoff() });
        }
        if form.is_zero() || self.dim(t) == 0 || self.dim(t + e) == 0 {
            return Ok(0);
        }
        let rows = self.map_rows(&MultiplicationMap::new(form, t), t, e);
        Ok(ExactMatrix::from_rows(self.field, self.dim(t + e), rows)?.rank())
    }

    /// Largest rank over `trials` random forms of degree `e`.
    pub fn max_rank<R: Rng + ?Sized>(&self, e: usize, t: usize, trials: usize, rng: &mut R) -> Result<usize> {
        let mut best = 0;
        for _ in 0..trials.max(1) {
            let f = HomForm::random(self.field, self.nvars(), e, rng);
            best = best.max(self.mult_rank(&f, t)?);
        }
        Ok(best)
    }

    pub fn map_record<R: Rng + ?Sized>(&self, e: usize, t: usize, trials: usize, rng: &mut R) -> Result<MapRecord> {
        let rank = self.max_rank(e, t, trials, rng)?;
        Ok(MapRecord::new(t, t + e, self.dim(t), self.dim(t + e), rank))
    }

    /// Consecutive-degree maps up to the socle degree.
    pub fn wlp_profile<R: Rng + ?Sized>(&self, trials: usize, rng: &mut R) -> Result<WlpProfile> {
        let top = self.socle_degree()?;
        let maps = (0..top).map(|t| self.map_record(1, t, trials, rng)).collect::<Result<Vec<_>>>()?;
        let holds = maps.iter().all(|m| m.maximal);
        Ok(WlpProfile { holds, maps, trials: trials.max(1) })
    }

    pub fn slp_check<R: Rng + ?Sized>(&self, e: usize, t: usize, trials: usize, rng: &mut R) -> Result<MapRecord> {
        self.map_record(e, t, trials, rng)
    }

    /// Socle dimension in each degree up to the socle degree.
    pub fn socle_profile(&self) -> Result<SocleProfile> {
        let top = self.socle_degree()?;
        let n = self.nvars();
        let mut dims = Vec::with_capacity(top + 1);
        for t in 0..=top {
            let a = self.dim(t);
            if a == 0 {
                dims.push(0);
                continue;
            }
            let width = self.dim(t + 1);
            if width == 0 {
                dims.push(a);
                continue;
            }
            let blocks: Vec<Vec<Vec<u32>>> = (0..n)
                .map(|i| self.map_rows(&MultiplicationMap::new(&HomForm::variable(self.field, n, i), t), t, 1))
                .collect();
            let rows = (0..a).map(|r| blocks.iter().flat_map(|b| b[r].iter().copied()).collect()).collect();
            let rank = ExactMatrix::from_rows(self.field, n * width, rows)?.rank();
            dims.push(a - rank);
        }
        Ok(SocleProfile::from_dims(dims, top))
    }
}

/// Seeded random linear form vanishing at none of the known points.
pub fn choose_reduction_form<R: Rng + ?Sized>(ideal: &GradedIdeal, rng: &mut R) -> Result<HomForm> {
    let field = ideal.field();
    for _ in 0..REDRAW_LIMIT {
        let l = HomForm::random(field, ideal.nvars(), 1, rng);
        let avoids = match ideal.point_list() {
            Some(points) => points.iter().all(|p| l.evaluate_vector(p.coords()) != 0),
            None => true,
        };
        if avoids && !l.is_zero() {
            return Ok(l);
        }
    }
    Err(Error::Genericity {
        stage: "reduction form".into(),
        detail: format!("no form avoiding the points after {REDRAW_LIMIT} draws"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapRecord {
    pub from: usize,
    pub to: usize,
    pub dim_from: usize,
    pub dim_to: usize,
    pub rank: usize,
    pub maximal: bool,
}

impl MapRecord {
    pub fn new(from: usize, to: usize, dim_from: usize, dim_to: usize, rank: usize) -> Self {
        debug_assert!(rank <= dim_from.min(dim_to));
        MapRecord { from, to, dim_from, dim_to, rank, maximal: rank == dim_from.min(dim_to) }
    }

    pub fn surjective(&self) -> bool {
        self.rank == self.dim_to
    }

    pub fn injective(&self) -> bool {
        self.rank == self.dim_from
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WlpProfile {
    pub holds: bool,
    pub maps: Vec<MapRecord>,
    #[serde(skip)]
    pub trials: usize,
}

impl WlpProfile {
    pub fn map(&self, from: usize) -> Option<&MapRecord> {
        self.maps.iter().find(|m| m.from == from)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleProfile {
    /// Socle dimension per degree.
    pub dims: Vec<usize>,
    pub level: bool,
    /// Total socle dimension; the type when the algebra is level.
    #[serde(rename = "type")]
    pub socle_type: usize,
    pub degree: usize,
}

impl SocleProfile {
    fn from_dims(dims: Vec<usize>, degree: usize) -> Self {
        let nonzero = dims.iter().filter(|&&d| d > 0).count();
        SocleProfile { level: nonzero == 1, socle_type: dims.iter().sum(), degree, dims }
    }
}

/// `dim (I)_t - dim (I ∩ I_λ)_t` for the line `λ = V(L1, L2)`.
pub fn conditions_imposed(ideal: &GradedIdeal, l1: &HomForm, l2: &HomForm, t: usize) -> Result<usize> {
    let piece = ideal.graded_piece(t)?;
    let line = line_piece(ideal.field(), l1, l2, t)?;
    Ok(piece.dim() - piece.intersection(&line)?.dim())
}

fn line_piece(field: PrimeField, l1: &HomForm, l2: &HomForm, t: usize) -> Result<Subspace> {
    if t == 0 {
        return Ok(Subspace::zero(field, 1));
    }
    multiples_subspace(&[l1.clone(), l2.clone()], t)
}

/// Outcome of one of the two line criteria together with the direct rank
/// of `×L2 : A_{t-1} → A_t` in the reduction by `L1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionCheck {
    pub t: usize,
    pub criterion: bool,
    pub direct: bool,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl CriterionCheck {
    pub fn agrees(&self) -> bool {
        self.criterion == self.direct
    }
}

fn direct_map(alg: &ArtinianAlgebra, l2: &HomForm, t: usize) -> Result<MapRecord> {
    let form = alg.reduce_form(l2)?;
    let rank = alg.mult_rank(&form, t - 1)?;
    Ok(MapRecord::new(t - 1, t, alg.dim(t - 1), alg.dim(t), rank))
}

/// Surjectivity of `A_{t-1} → A_t` read off from the number of conditions
/// the line imposes on `(I)_t`.
pub fn surjectivity_via_criterion(
    ideal: &GradedIdeal,
    alg: &ArtinianAlgebra,
    l2: &HomForm,
    t: usize,
) -> Result<CriterionCheck> {
    if t == 0 {
        return Err(Error::BeyondCutoff { requested: 0, cutoff: 0 });
    }
    let conditions = conditions_imposed(ideal, alg.reduction_form(), l2, t)?;
    let direct = direct_map(alg, l2, t)?;
    Ok(CriterionCheck {
        t,
        criterion: conditions == t + 1,
        direct: direct.surjective(),
        left_dim: conditions,
        right_dim: t + 1,
    })
}

/// Injectivity of `A_{t-1} → A_t` as equality of `(I·I_λ)_t` and
/// `(I ∩ I_λ)_t`.
pub fn injectivity_via_criterion(
    ideal: &GradedIdeal,
    alg: &ArtinianAlgebra,
    l2: &HomForm,
    t: usize,
) -> Result<CriterionCheck> {
    if t == 0 {
        return Err(Error::BeyondCutoff { requested: 0, cutoff: 0 });
    }
    let field = ideal.field();
    let l1 = alg.reduction_form();
    let lower = ideal.graded_piece(t - 1)?;
    let (m1, m2) = (MultiplicationMap::new(l1, t - 1), MultiplicationMap::new(l2, t - 1));
    let products = lower.basis().iter().flat_map(|v| [m1.apply(v), m2.apply(v)]);
    let product = Subspace::span(field, monomial_count(ideal.nvars(), t), products)?;
    let meet = ideal.graded_piece(t)?.intersection(&line_piece(field, l1, l2, t)?)?;
    let direct = direct_map(alg, l2, t)?;
    Ok(CriterionCheck {
        t,
        criterion: product.dim() == meet.dim(),
        direct: direct.injective(),
        left_dim: product.dim(),
        right_dim: meet.dim(),
    })
}

/// True iff `(I)_t ≠ 0` and every form in it is divisible by `plane`.
pub fn base_locus_certificate(ideal: &GradedIdeal, plane: &HomForm, t: usize) -> Result<bool> {
    let piece = ideal.graded_piece(t)?;
    if piece.dim() == 0 || t == 0 {
        return Ok(false);
    }
    let multiples = multiples_subspace(std::slice::from_ref(plane), t)?;
    Ok(piece.is_subspace_of(&multiples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::random_points;
    use crate::hcalc::HVector;
    use crate::poly::ProjectivePoint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn random_ideal(n: usize, seed: u64) -> GradedIdeal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_points(f(), 4, n, &mut rng).unwrap().ideal(f(), 6).unwrap()
    }

    #[test]
    fn single_point_reduction() {
        let i = GradedIdeal::points(f(), vec![ProjectivePoint::from_i64(f(), &[1, 2, 3, 4]).unwrap()], 3).unwrap();
        let l1 = HomForm::linear(f(), &[1, 0, 0, 0]);
        let a = ArtinianAlgebra::new(&i, &l1).unwrap();
        assert_eq!(a.dims(), vec![1, 0, 0, 0]);
        let s = a.socle_profile().unwrap();
        assert!(s.level);
        assert_eq!((s.socle_type, s.degree), (1, 0));
        let w = a.wlp_profile(2, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert!(w.holds && w.maps.is_empty());
        // a reduction form through the point is rejected
        assert!(ArtinianAlgebra::new(&i, &HomForm::linear(f(), &[4, 0, 0, 32002])).is_err());
    }

    #[test]
    fn reduction_dims_are_the_h_vector() {
        for seed in 0..4 {
            let i = random_ideal(9, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = ArtinianAlgebra::new(&i, &choose_reduction_form(&i, &mut rng).unwrap()).unwrap();
            let dims: Vec<i64> = a.dims().iter().map(|&d| d as i64).collect();
            assert_eq!(HVector::new(dims), i.h_vector().unwrap());
        }
    }

    #[test]
    fn zero_form_and_high_powers() {
        let i = random_ideal(9, 7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = ArtinianAlgebra::new(&i, &choose_reduction_form(&i, &mut rng).unwrap()).unwrap();
        assert_eq!(a.mult_rank(&HomForm::zero(f(), 3, 1), 1).unwrap(), 0);
        let top = a.socle_degree().unwrap();
        assert_eq!(a.slp_check(top + 1, 0, 2, &mut rng).unwrap().rank, 0);
        // e = 1 agrees with the WLP map
        let w = a.wlp_profile(3, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        let s = a.slp_check(1, 1, 3, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(w.map(1).unwrap().dim_to, s.dim_to);
        assert!(s.rank <= w.map(1).unwrap().dim_from.min(s.dim_to));
    }

    #[test]
    fn criteria_on_the_empty_scheme() {
        let unit = GradedIdeal::unit(f(), 4, 5);
        let (l1, l2) = (HomForm::linear(f(), &[1, 2, 3, 4]), HomForm::linear(f(), &[0, 1, 5, 2]));
        for t in 1..=5 {
            assert_eq!(conditions_imposed(&unit, &l1, &l2, t).unwrap(), t + 1);
        }
        let a = ArtinianAlgebra::new(&unit, &l1).unwrap();
        assert!(surjectivity_via_criterion(&unit, &a, &l2, 3).unwrap().criterion);
    }

    #[test]
    fn certificate_needs_a_nonzero_piece() {
        let i = GradedIdeal::points(f(), vec![ProjectivePoint::from_i64(f(), &[1, 0, 0, 0]).unwrap()], 3).unwrap();
        let plane = HomForm::linear(f(), &[0, 1, 0, 0]);
        assert!(!base_locus_certificate(&i, &plane, 1).unwrap());
        let j = GradedIdeal::generated(f(), 4, vec![plane.clone()], 2, 3).unwrap();
        assert!(base_locus_certificate(&j, &plane, 2).unwrap());
        assert!(!base_locus_certificate(&GradedIdeal::generated(f(), 4, vec![], 3, 3).unwrap(), &plane, 2).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]

            #[test]
            fn criteria_match_direct_ranks(seed in 0u64..10_000, n in 1usize..12) {
                let i = random_ideal(n, seed);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
                let l1 = choose_reduction_form(&i, &mut rng).unwrap();
                let l2 = HomForm::random(f(), 4, 1, &mut rng);
                let a = ArtinianAlgebra::new(&i, &l1).unwrap();
                for t in 1..=5 {
                    prop_assert!(surjectivity_via_criterion(&i, &a, &l2, t).unwrap().agrees());
                    prop_assert!(injectivity_via_criterion(&i, &a, &l2, t).unwrap().agrees());
                }
            }

            #[test]
            fn ranks_never_exceed_dimensions(seed in 0u64..10_000, n in 1usize..12, trials in 1usize..4) {
                let i = random_ideal(n, seed);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = ArtinianAlgebra::new(&i, &choose_reduction_form(&i, &mut rng).unwrap()).unwrap();
                let w = a.wlp_profile(trials, &mut rng).unwrap();
                for m in &w.maps {
                    prop_assert!(m.rank <= m.dim_from.min(m.dim_to));
                }
                let s = a.socle_profile().unwrap();
                prop_assert_eq!(s.level, s.dims.iter().filter(|&&d| d > 0).count() == 1);
            }
        }
    }
}
