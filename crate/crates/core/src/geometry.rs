//! Explicit point and line configurations.
//!
//! Everything here is built from a seeded RNG and exact arithmetic, so a
//! configuration is a pure function of `(seed, prime, parameters)`.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ExactMatrix, PrimeField};
use crate::hcalc::{HVector, difference, integrate};
use crate::ideal::GradedIdeal;
use crate::poly::{GradedBasis, HomForm, ProjectivePoint, evaluation_rows, multiples_subspace, monomial_count};

/// Order ideal of lattice cells `(i, j)`, the standard monomials `x^i y^j`
/// of a monomial ideal in two variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Staircase {
    cells: BTreeSet<(u32, u32)>,
}

impl Staircase {
    pub fn new(cells: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let cells: BTreeSet<(u32, u32)> = cells.into_iter().collect();
        for &(i, j) in &cells {
            if (i > 0 && !cells.contains(&(i - 1, j))) || (j > 0 && !cells.contains(&(i, j - 1))) {
                return Err(Error::Staircase(format!("cell ({i},{j}) is not supported from below")));
            }
        }
        Ok(Staircase { cells })
    }

    /// Complement of the monomial ideal generated by `x^a y^b` for the given
    /// exponent pairs; the ideal must contain pure powers of both variables.
    pub fn complement_of(generators: &[(u32, u32)]) -> Result<Self> {
        let xbound = generators.iter().filter(|g| g.1 == 0).map(|g| g.0).min();
        let ybound = generators.iter().filter(|g| g.0 == 0).map(|g| g.1).min();
        let (Some(xb), Some(yb)) = (xbound, ybound) else {
            return Err(Error::Staircase("ideal is not Artinian".into()));
        };
        let cells = (0..xb)
            .flat_map(|i| (0..yb).map(move |j| (i, j)))
            .filter(|&(i, j)| !generators.iter().any(|&(a, b)| i >= a && j >= b));
        Self::new(cells)
    }

    pub fn rectangle(a: u32, b: u32) -> Self {
        Staircase { cells: (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect() }
    }

    pub fn cells(&self) -> &BTreeSet<(u32, u32)> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains_rectangle(&self, a: u32, b: u32) -> bool {
        (0..a).all(|i| (0..b).all(|j| self.cells.contains(&(i, j))))
    }

    pub fn max_exponent(&self) -> u32 {
        self.cells.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(0)
    }

    /// Number of cells on each antidiagonal.
    pub fn hvector(&self) -> HVector {
        let mut out = vec![0i64; self.cells.iter().map(|&(i, j)| (i + j) as usize + 1).max().unwrap_or(0)];
        for &(i, j) in &self.cells {
            out[(i + j) as usize] += 1;
        }
        HVector::new(out)
    }
}

/// Finite set of distinct projective points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointConfig {
    nvars: usize,
    #[serde(serialize_with = "serialize_points")]
    points: Vec<ProjectivePoint>,
}

fn serialize_points<S: serde::Serializer>(pts: &[ProjectivePoint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(pts.len()))?;
    for p in pts {
        seq.serialize_element(p.coords())?;
    }
    seq.end()
}

impl PointConfig {
    pub fn new(nvars: usize, points: Vec<ProjectivePoint>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut dup = 0;
        for p in &points {
            if p.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: p.nvars() });
            }
            if !seen.insert(p.clone()) {
                dup += 1;
            }
        }
        if dup > 0 {
            return Err(Error::Overlap(dup));
        }
        Ok(PointConfig { nvars, points })
    }

    pub fn empty(nvars: usize) -> Self {
        PointConfig { nvars, points: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ideal(&self, field: PrimeField, max_degree: usize) -> Result<GradedIdeal> {
        GradedIdeal::points_in(field, self.nvars, self.points.clone(), max_degree)
    }

    pub fn subset(&self, keep: &[usize]) -> PointConfig {
        PointConfig { nvars: self.nvars, points: keep.iter().map(|&i| self.points[i].clone()).collect() }
    }
}

/// `A ∪ B`, refusing shared points.
pub fn union(a: &PointConfig, b: &PointConfig) -> Result<PointConfig> {
    if a.nvars != b.nvars && !a.is_empty() && !b.is_empty() {
        return Err(Error::DimensionMismatch { expected: a.nvars, found: b.nvars });
    }
    let nvars = if a.is_empty() { b.nvars } else { a.nvars };
    let left: BTreeSet<&ProjectivePoint> = a.points.iter().collect();
    let shared = b.points.iter().filter(|p| left.contains(p)).count();
    if shared > 0 {
        return Err(Error::Overlap(shared));
    }
    PointConfig::new(nvars, a.points.iter().chain(&b.points).cloned().collect())
}

/// Points `[1 : i : j]` for the cells of `s`.
pub fn distract(field: PrimeField, s: &Staircase) -> Result<PointConfig> {
    field.check_parameter(s.max_exponent() as u64)?;
    let pts = s
        .cells
        .iter()
        .map(|&(i, j)| ProjectivePoint::new(field, vec![1, i, j]))
        .collect::<Result<Vec<_>>>()?;
    PointConfig::new(3, pts)
}

/// Distraction of the `a × b` corner rectangle of `s`.
pub fn ci_subconfig(field: PrimeField, s: &Staircase, a: u32, b: u32) -> Result<PointConfig> {
    if !s.contains_rectangle(a, b) {
        return Err(Error::Staircase(format!("{a}x{b} rectangle is not inside the staircase")));
    }
    distract(field, &Staircase::rectangle(a, b))
}

/// Sections of the cone over planar points.
///
/// A planar point `q` sits in `P^3` as `[q : 0]`, on the plane `source`.
/// Its image is where the line through `vertex` and `q` meets `target`.
pub fn cone_section(
    field: PrimeField,
    pts: &PointConfig,
    vertex: &ProjectivePoint,
    source: &HomForm,
    target: &HomForm,
) -> Result<PointConfig> {
    if pts.nvars != 3 || vertex.nvars() != 4 {
        return Err(Error::DimensionMismatch { expected: 3, found: pts.nvars });
    }
    let hv = target.evaluate(vertex)?;
    if hv == 0 || source.evaluate(vertex)? == 0 {
        return Err(Error::Genericity { stage: "cone section".into(), detail: "vertex lies on a plane".into() });
    }
    let mut out = Vec::with_capacity(pts.len());
    for q in &pts.points {
        let mut lifted = q.coords().to_vec();
        lifted.push(0);
        if source.evaluate_vector(&lifted) != 0 {
            return Err(Error::Genericity {
                stage: "cone section".into(),
                detail: "planar point is off the source plane".into(),
            });
        }
        let hq = target.evaluate_vector(&lifted);
        // H(V)·q - H(q)·V lies on the line and on H
        let v: Vec<u32> = lifted
            .iter()
            .zip(vertex.coords())
            .map(|(&a, &b)| field.sub(field.mul(hv, a), field.mul(hq, b)))
            .collect();
        out.push(ProjectivePoint::new(field, v)?);
    }
    PointConfig::new(4, out).map_err(|e| match e {
        Error::Overlap(n) => Error::Genericity {
            stage: "cone section".into(),
            detail: format!("{n} coincident image point(s)"),
        },
        other => other,
    })
}

/// Two pencils of planes `L_0..L_{a-1}`, `M_0..M_{b-1}` in general position.
#[derive(Clone, Debug)]
pub struct PlaneGrid {
    field: PrimeField,
    l: Vec<HomForm>,
    m: Vec<HomForm>,
}

impl PlaneGrid {
    pub fn random<R: Rng + ?Sized>(field: PrimeField, a: usize, b: usize, rng: &mut R) -> Result<Self> {
        let l = (0..a).map(|_| HomForm::random(field, 4, 1, rng)).collect();
        let m = (0..b).map(|_| HomForm::random(field, 4, 1, rng)).collect();
        let grid = PlaneGrid { field, l, m };
        grid.check_general_position()?;
        Ok(grid)
    }

    /// Any four planes of the grid are independent; in particular no three
    /// grid lines are concurrent.
    fn check_general_position(&self) -> Result<()> {
        let all: Vec<Vec<u32>> = self.l.iter().chain(&self.m).map(|f| f.coeffs().to_vec()).collect();
        let n = all.len();
        let k = n.min(4);
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let rows = idx.iter().map(|&i| all[i].clone()).collect();
            if ExactMatrix::from_rows(self.field, 4, rows)?.rank() < k {
                return Err(Error::Genericity {
                    stage: "plane grid".into(),
                    detail: format!("planes {idx:?} are dependent"),
                });
            }
            // next k-subset in lexicographic order
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return Ok(());
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.l.len()
    }

    pub fn cols(&self) -> usize {
        self.m.len()
    }

    pub fn l(&self, i: usize) -> &HomForm {
        &self.l[i]
    }

    pub fn m(&self, j: usize) -> &HomForm {
        &self.m[j]
    }

    pub fn l_product(&self, rows: impl IntoIterator<Item = usize>) -> Result<HomForm> {
        let f: Vec<HomForm> = rows.into_iter().map(|i| self.l[i].clone()).collect();
        HomForm::product(self.field, 4, &f)
    }

    pub fn m_product(&self, cols: impl IntoIterator<Item = usize>) -> Result<HomForm> {
        let f: Vec<HomForm> = cols.into_iter().map(|j| self.m[j].clone()).collect();
        HomForm::product(self.field, 4, &f)
    }
}

/// Common zeros of a set of linear forms in four variables.
fn linear_kernel(field: PrimeField, forms: &[&HomForm]) -> Result<Vec<Vec<u32>>> {
    let rows = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    Ok(ExactMatrix::from_rows(field, 4, rows)?.kernel_vectors())
}

#[derive(Clone, Debug)]
pub struct GridLine {
    pub cell: (usize, usize),
    pub span: [Vec<u32>; 2],
}

/// Union of grid lines `V(L_i, M_j)`.
#[derive(Clone, Debug)]
pub struct LineConfig {
    lines: Vec<GridLine>,
}

impl LineConfig {
    pub fn lines(&self) -> &[GridLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn cells(&self) -> BTreeSet<(usize, usize)> {
        self.lines.iter().map(|l| l.cell).collect()
    }

    pub fn ideal(&self, field: PrimeField, max_degree: usize) -> Result<GradedIdeal> {
        GradedIdeal::lines(field, 4, self.lines.iter().map(|l| l.span.clone()).collect(), max_degree)
    }
}

/// Lines of `grid` for the given cells, checked to form a stick figure.
pub fn grid_lines(grid: &PlaneGrid, cells: &BTreeSet<(usize, usize)>) -> Result<LineConfig> {
    let field = grid.field;
    let mut lines = Vec::with_capacity(cells.len());
    for &(i, j) in cells {
        if i >= grid.rows() || j >= grid.cols() {
            return Err(Error::Genericity { stage: "grid lines".into(), detail: format!("cell ({i},{j}) outside grid") });
        }
        let k = linear_kernel(field, &[grid.l(i), grid.m(j)])?;
        let span: [Vec<u32>; 2] = k.try_into().map_err(|_| Error::Genericity {
            stage: "grid lines".into(),
            detail: format!("planes L{i}, M{j} coincide"),
        })?;
        lines.push(GridLine { cell: (i, j), span });
    }
    let config = LineConfig { lines };
    check_stick_figure(grid, &config)?;
    Ok(config)
}

/// Meeting point of two grid lines sharing a plane.
fn meeting_point(grid: &PlaneGrid, a: (usize, usize), b: (usize, usize)) -> Result<Option<ProjectivePoint>> {
    let forms: Vec<&HomForm> = if a.0 == b.0 {
        vec![grid.l(a.0), grid.m(a.1), grid.m(b.1)]
    } else if a.1 == b.1 {
        vec![grid.l(a.0), grid.l(b.0), grid.m(a.1)]
    } else {
        return Ok(None);
    };
    let k = linear_kernel(grid.field, &forms)?;
    if k.len() != 1 {
        return Err(Error::Genericity { stage: "grid lines".into(), detail: "degenerate plane triple".into() });
    }
    Ok(Some(ProjectivePoint::new(grid.field, k.into_iter().next().expect("one vector"))?))
}

fn check_stick_figure(grid: &PlaneGrid, config: &LineConfig) -> Result<()> {
    let mut through: HashMap<ProjectivePoint, BTreeSet<usize>> = HashMap::new();
    let ls = &config.lines;
    for a in 0..ls.len() {
        for b in a + 1..ls.len() {
            if let Some(p) = meeting_point(grid, ls[a].cell, ls[b].cell)? {
                let set = through.entry(p).or_default();
                set.insert(a);
                set.insert(b);
                if set.len() > 2 {
                    return Err(Error::Genericity {
                        stage: "stick figure".into(),
                        detail: "three lines through one point".into(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Intersection points of lines of `y` with lines of `yp`.
pub fn linkage_points(grid: &PlaneGrid, y: &LineConfig, yp: &LineConfig) -> Result<PointConfig> {
    let shared = y.cells().intersection(&yp.cells()).count();
    if shared > 0 {
        return Err(Error::Overlap(shared));
    }
    let mut pts = Vec::new();
    for a in &y.lines {
        for b in &yp.lines {
            if let Some(p) = meeting_point(grid, a.cell, b.cell)? {
                pts.push(p);
            }
        }
    }
    PointConfig::new(4, pts).map_err(|e| match e {
        Error::Overlap(n) => Error::Genericity {
            stage: "linkage points".into(),
            detail: format!("{n} non-reduced intersection(s)"),
        },
        other => other,
    })
}

/// Random planar complete intersection cut out by two products of lines.
#[derive(Clone, Debug)]
pub struct PlanarCi {
    pub points: PointConfig,
    pub first: HomForm,
    pub second: HomForm,
}

pub fn random_ci_points<R: Rng + ?Sized>(field: PrimeField, a: usize, b: usize, rng: &mut R) -> Result<PlanarCi> {
    let la: Vec<HomForm> = (0..a).map(|_| HomForm::random(field, 3, 1, rng)).collect();
    let lb: Vec<HomForm> = (0..b).map(|_| HomForm::random(field, 3, 1, rng)).collect();
    let mut pts = Vec::with_capacity(a * b);
    for f in &la {
        for g in &lb {
            let (u, v) = (f.coeffs(), g.coeffs());
            // cross product of the coefficient vectors
            let c = vec![
                field.sub(field.mul(u[1], v[2]), field.mul(u[2], v[1])),
                field.sub(field.mul(u[2], v[0]), field.mul(u[0], v[2])),
                field.sub(field.mul(u[0], v[1]), field.mul(u[1], v[0])),
            ];
            pts.push(ProjectivePoint::new(field, c)?);
        }
    }
    let points = PointConfig::new(3, pts).map_err(|_| Error::Genericity {
        stage: "random complete intersection".into(),
        detail: "coincident intersection points".into(),
    })?;
    Ok(PlanarCi { points, first: HomForm::product(field, 3, &la)?, second: HomForm::product(field, 3, &lb)? })
}

pub fn random_points<R: Rng + ?Sized>(field: PrimeField, nvars: usize, n: usize, rng: &mut R) -> Result<PointConfig> {
    let pts = (0..n)
        .map(|_| ProjectivePoint::new(field, (0..nvars).map(|_| field.random(rng)).collect()))
        .collect::<Result<Vec<_>>>()?;
    PointConfig::new(nvars, pts)
}

/// True iff general forms of the given degrees in three variables span all
/// of `R_t`.
pub fn anick_check<R: Rng + ?Sized>(field: PrimeField, degrees: &[usize], t: usize, rng: &mut R) -> Result<bool> {
    let forms: Vec<HomForm> = degrees.iter().map(|&d| HomForm::random(field, 3, d, rng)).collect();
    if forms.is_empty() {
        return Ok(monomial_count(3, t) == 0);
    }
    Ok(multiples_subspace(&forms, t)?.dim() == monomial_count(3, t))
}

/// Subset of `z1` whose h-vector is the truncation `target`.
///
/// Randomized greedy: drop a random point whenever the Hilbert function in
/// degrees `s - 1` and `s` stays at the target, where `s` is the last degree
/// of `target`. Keeping `h(s-1)` forces every lower degree too, because a
/// form of lower degree vanishing on the subset times a power of a linear
/// form is a degree `s - 1` form vanishing on the subset.
pub fn truncation_subset<R: Rng + ?Sized>(
    field: PrimeField,
    z1: &PointConfig,
    target: &HVector,
    budget: usize,
    rng: &mut R,
) -> Result<PointConfig> {
    let Some(s) = target.top_degree() else {
        return Ok(PointConfig::empty(z1.nvars));
    };
    let n = target.sum() as usize;
    let vectors: Vec<Vec<u32>> = z1.points.iter().map(|p| p.coords().to_vec()).collect();
    let rows_at = |t: usize| evaluation_rows(field, &vectors, &GradedBasis::new(z1.nvars, t));
    let hz: Vec<i64> = (0..=s)
        .map(|t| Ok(ExactMatrix::from_rows(field, monomial_count(z1.nvars, t), rows_at(t))?.rank() as i64))
        .collect::<Result<_>>()?;
    let dz = difference(&hz);
    let valid = (0..s).all(|t| target.get(t) == dz[t]) && target.get(s) <= dz[s] && n <= z1.len();
    if !valid {
        return Err(Error::Staircase(format!("{target} is not a truncation of {}", HVector::new(dz))));
    }
    let h = integrate(target.entries(), s + 1);
    let top = rows_at(s);
    let below = if s > 0 { Some(rows_at(s - 1)) } else { None };
    let rank = |rows: &[Vec<u32>], keep: &[usize]| -> Result<usize> {
        let sel = keep.iter().map(|&i| rows[i].clone()).collect();
        Ok(ExactMatrix::from_rows(field, rows[0].len(), sel)?.rank())
    };
    let mut keep: Vec<usize> = (0..z1.len()).collect();
    let mut failures = 0;
    while keep.len() > n {
        let k = rng.gen_range(0..keep.len());
        let mut trial = keep.clone();
        trial.remove(k);
        let ok_top = rank(&top, &trial)? as i64 >= h[s];
        let ok_below = match &below {
            Some(rows) => ok_top && rank(rows, &trial)? as i64 == h[s - 1],
            None => ok_top,
        };
        if ok_below {
            keep = trial;
        } else {
            failures += 1;
            if failures > budget {
                return Err(Error::TruncationExhausted(budget));
            }
        }
    }
    let out = z1.subset(&keep);
    let got = out.ideal(field, s + 2)?.h_vector()?;
    if &got != target {
        return Err(Error::Genericity { stage: "truncation".into(), detail: format!("subset has h-vector {got}") });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn hv(v: &[i64]) -> HVector {
        HVector::from(v)
    }

    fn h_of(c: &PointConfig, cutoff: usize) -> HVector {
        c.ideal(f(), cutoff).unwrap().h_vector().unwrap()
    }

    #[test]
    fn staircases() {
        let s = Staircase::complement_of(&[(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]).unwrap();
        assert_eq!(s.len(), 10);
        assert_eq!(s.hvector(), hv(&[1, 2, 3, 4]));
        assert!(Staircase::new([(0, 0), (1, 1)]).is_err());
        assert!(Staircase::complement_of(&[(1, 1)]).is_err());
        let z7 = Staircase::complement_of(&[(0, 6), (3, 5), (4, 3), (6, 0)]).unwrap();
        assert_eq!(z7.len(), 29);
        assert_eq!(z7.hvector(), hv(&[1, 2, 3, 4, 5, 6, 5, 3]));
    }

    #[test]
    fn distractions_keep_the_hilbert_function() {
        let s = Staircase::complement_of(&[(0, 6), (3, 5), (4, 3), (6, 0)]).unwrap();
        let pts = distract(f(), &s).unwrap();
        assert_eq!(h_of(&pts, 9), s.hvector());
        assert_eq!(h_of(&distract(f(), &Staircase::rectangle(1, 1)).unwrap(), 3), hv(&[1]));
        let small = PrimeField::new(7).unwrap();
        assert!(matches!(distract(small, &s), Err(Error::ModulusTooSmall { .. })));
    }

    #[test]
    fn ci_subconfigs() {
        let odd = Staircase::complement_of(&[(0, 6), (3, 5), (4, 3), (6, 0)]).unwrap();
        let y = ci_subconfig(f(), &odd, 4, 4).unwrap();
        assert_eq!(y.len(), 16);
        assert_eq!(h_of(&y, 8), hv(&[1, 2, 3, 4, 3, 2, 1]));
        let even = Staircase::complement_of(&[(0, 6), (2, 4), (4, 2), (6, 0)]).unwrap();
        assert_eq!(h_of(&ci_subconfig(f(), &even, 4, 3).unwrap(), 7), hv(&[1, 2, 3, 3, 2, 1]));
        assert!(ci_subconfig(f(), &odd, 5, 5).is_err());
        // containment of ideals follows from containment of points
        let zi = distract(f(), &odd).unwrap().ideal(f(), 8).unwrap();
        assert!(zi.contained_in(&y.ideal(f(), 8).unwrap(), 8).unwrap());
    }

    fn x3() -> HomForm {
        HomForm::variable(f(), 4, 3)
    }

    fn vertex() -> ProjectivePoint {
        ProjectivePoint::from_i64(f(), &[0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn cone_sections() {
        let s = Staircase::complement_of(&[(0, 6), (3, 5), (4, 3), (6, 0)]).unwrap();
        let pts = distract(f(), &s).unwrap();
        let same = cone_section(f(), &pts, &vertex(), &x3(), &x3()).unwrap();
        for (q, r) in pts.points().iter().zip(same.points()) {
            assert_eq!(&r.coords()[..3], q.coords());
            assert_eq!(r.coords()[3], 0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h1 = HomForm::random(f(), 4, 1, &mut rng);
        let h2 = HomForm::random(f(), 4, 1, &mut rng);
        let a = cone_section(f(), &pts, &vertex(), &x3(), &h1).unwrap();
        let b = cone_section(f(), &pts, &vertex(), &x3(), &h2).unwrap();
        assert_eq!(h_of(&a, 9), s.hvector());
        assert!(union(&a, &b).is_ok());
        // a target through the vertex direction degenerates
        assert!(cone_section(f(), &pts, &vertex(), &x3(), &HomForm::linear(f(), &[1, 0, 0, 0])).is_err());
    }

    #[test]
    fn unions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_points(f(), 4, 5, &mut rng).unwrap();
        assert_eq!(union(&a, &PointConfig::empty(4)).unwrap(), a);
        assert_eq!(union(&a, &a), Err(Error::Overlap(5)));
    }

    fn grid(a: usize, b: usize, seed: u64) -> PlaneGrid {
        PlaneGrid::random(f(), a, b, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
    }

    #[test]
    fn grid_stick_figures() {
        let g = grid(4, 5, 1);
        let one = grid_lines(&g, &BTreeSet::from([(0, 0)])).unwrap();
        assert_eq!(one.ideal(f(), 4).unwrap().h_vector().unwrap(), hv(&[1]));
        let y: BTreeSet<_> = (0..4).flat_map(|i| (1 + i..5).map(move |j| (i, j))).collect();
        let yp: BTreeSet<_> = (0..4).flat_map(|i| (0..5).map(move |j| (i, j))).filter(|c| !y.contains(c)).collect();
        let (ly, lyp) = (grid_lines(&g, &y).unwrap(), grid_lines(&g, &yp).unwrap());
        assert_eq!(ly.ideal(f(), 7).unwrap().h_vector().unwrap(), hv(&[1, 2, 3, 4]));
        let x1 = linkage_points(&g, &ly, &lyp).unwrap();
        assert_eq!(x1.len(), 30);
        assert_eq!(h_of(&x1, 9), hv(&[1, 3, 6, 10, 6, 3, 1]));
        assert!(linkage_points(&g, &ly, &ly).is_err());
    }

    #[test]
    fn small_gorenstein_linkage() {
        let g = grid(3, 4, 2);
        let y: BTreeSet<_> = (0..3).flat_map(|i| (1 + i..4).map(move |j| (i, j))).collect();
        let yp: BTreeSet<_> = (0..3).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|c| !y.contains(c)).collect();
        let x1 = linkage_points(&g, &grid_lines(&g, &y).unwrap(), &grid_lines(&g, &yp).unwrap()).unwrap();
        assert_eq!(x1.len(), 14);
        assert_eq!(h_of(&x1, 7), hv(&[1, 3, 6, 3, 1]));
    }

    #[test]
    fn planar_cis() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let one = random_ci_points(f(), 1, 1, &mut rng).unwrap();
        assert_eq!(one.points.len(), 1);
        let ci = random_ci_points(f(), 3, 3, &mut rng).unwrap();
        assert_eq!(h_of(&ci.points, 6), hv(&[1, 2, 3, 2, 1]));
        let ci = random_ci_points(f(), 3, 4, &mut rng).unwrap();
        let extra = random_points(f(), 3, 8, &mut rng).unwrap();
        let w = union(&ci.points, &extra).unwrap();
        assert_eq!(h_of(&w, 8), hv(&[1, 2, 3, 4, 5, 5]));
        for p in ci.points.points() {
            assert_eq!(ci.first.evaluate(p).unwrap(), 0);
            assert_eq!(ci.second.evaluate(p).unwrap(), 0);
        }
    }

    #[test]
    fn anick() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(anick_check(f(), &[3, 3, 4, 4], 6, &mut rng).unwrap());
        assert!(!anick_check(f(), &[3, 3, 4, 4], 5, &mut rng).unwrap());
        assert!(!anick_check(f(), &[2], 1, &mut rng).unwrap());
    }

    #[test]
    fn truncations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let z = random_points(f(), 4, 12, &mut rng).unwrap();
        let full = h_of(&z, 6);
        assert_eq!(full, hv(&[1, 3, 6, 2]));
        assert_eq!(truncation_subset(f(), &z, &full, 10, &mut rng).unwrap().len(), 12);
        let sub = truncation_subset(f(), &z, &hv(&[1, 3, 6]), 50, &mut rng).unwrap();
        assert_eq!(sub.len(), 10);
        assert_eq!(truncation_subset(f(), &z, &hv(&[1, 3, 5]), 50, &mut rng).unwrap().len(), 9);
        assert!(truncation_subset(f(), &z, &hv(&[1, 3, 7]), 50, &mut rng).is_err());
    }
}
